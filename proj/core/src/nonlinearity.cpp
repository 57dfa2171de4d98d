#include "dskg/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

#include "dskg/spectral.hpp"

namespace dskg {

namespace {
void check_finite(const Field& f, const char* who) {
    if (!f.all_finite()) throw std::invalid_argument(std::string(who) + ": non-finite samples");
}
}  // namespace

Field eval_h(const Field& u, double t, const PhysicalParams& params,
             const DerivedConstants& derived, bool dealias_result) {
    check_finite(u, "eval_h");
    const double r0 = derived.require_r0();
    const double wc = std::exp(-params.n * params.H * t);        // cubic weight
    const double wq = std::exp(-params.n * params.H * t / 2.0);  // quadratic weight
    Field out = Field::zeros(u.grid);
    for (std::size_t i = 0; i < u.samples.size(); ++i) {
        const double v = u.samples[i];
        out.samples[i] = params.lambda * (wc * v * v * v + 3.0 * r0 * wq * v * v);
    }
    return dealias_result ? dealias(out) : out;
}

Field eval_J(const Field& phi, const PhysicalParams& params,
             const DerivedConstants& derived, bool dealias_result) {
    check_finite(phi, "eval_J");
    const double r0 = derived.require_r0();
    Field out = Field::zeros(phi.grid);
    for (std::size_t i = 0; i < phi.samples.size(); ++i) {
        const double v = phi.samples[i];
        out.samples[i] = params.lambda * (v * v * v + 3.0 * r0 * v * v + 2.0 * r0 * r0 * v);
    }
    return dealias_result ? dealias(out) : out;
}

double shift_identity_residual(const Field& phi, const PhysicalParams& params,
                               const DerivedConstants& derived) {
    const double r0 = derived.require_r0();
    const double mc2 = params.mass * params.c / params.hbar;
    const Field j = eval_J(phi, params, derived, /*dealias_result=*/false);
    double residual = 0.0;
    for (std::size_t i = 0; i < phi.samples.size(); ++i) {
        const double s = phi.samples[i] + r0;
        const double lhs = params.lambda * s * s * s - mc2 * mc2 * s;
        residual = std::max(residual, std::abs(lhs - j.samples[i]));
    }
    return residual;
}

Field eval_gauge_variant(const Field& u, double t, const PhysicalParams& params,
                         int sign, bool dealias_result) {
    check_finite(u, "eval_gauge_variant");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("eval_gauge_variant: sign must be +1 or -1");
    const double w = std::exp(-params.n * (params.p - 1.0) * params.H * t / 2.0);
    Field out = Field::zeros(u.grid);
    for (std::size_t i = 0; i < u.samples.size(); ++i) {
        const double v = u.samples[i];
        const double av = std::abs(v);
        if (sign > 0)
            out.samples[i] = params.lambda * w * std::pow(av, params.p - 1.0) * v;
        else
            out.samples[i] = -w * std::pow(av, params.p);
    }
    return dealias_result ? dealias(out) : out;
}

}  // namespace dskg
