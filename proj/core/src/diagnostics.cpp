#include "dskg/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dskg/quadrature.hpp"

namespace dskg {

EnergyReport energy_report(const StateSnapshot& snapshot, const PhysicalParams& params,
                           const DerivedConstants& derived, EnergyRegime regime) {
    if (regime == EnergyRegime::H_nonneg && params.H < 0.0)
        throw std::invalid_argument("energy_report: H_nonneg regime with H < 0");
    if (regime == EnergyRegime::H_neg && params.H >= 0.0)
        throw std::invalid_argument("energy_report: H_neg regime with H >= 0");

    const double t = snapshot.t;
    const double c2 = params.c * params.c;
    const double Q = derived.Q;
    const double r0 = derived.r0 ? *derived.r0 : 0.0;
    const double H = params.H;
    const double n = params.n;

    // |grad u|^2 pointwise via spectral derivatives along each axis.
    const Grid& g = snapshot.u.grid;
    std::vector<double> grad_sq(g.size(), 0.0);
    {
        const SpectralField su = transform(snapshot.u);
        const double dxi = 2.0 * M_PI / g.L;
        for (int d = 0; d < g.n; ++d) {
            SpectralField der = su;
            std::size_t stride = 1;
            for (int dd = g.n - 1; dd > d; --dd) stride *= static_cast<std::size_t>(g.N);
            for (std::size_t i = 0; i < der.coeffs.size(); ++i) {
                const int idx = static_cast<int>((i / stride) % static_cast<std::size_t>(g.N));
                const double xi = dxi * g.axis_wave_index(idx);
                der.coeffs[i] *= std::complex<double>(0.0, xi);
            }
            const Field dfield = inverse(der);
            for (std::size_t i = 0; i < grad_sq.size(); ++i)
                grad_sq[i] += dfield.samples[i] * dfield.samples[i];
        }
    }

    EnergyReport rep;
    rep.t = t;
    const double vol = g.cell_volume();
    double e0 = 0.0, e0t = 0.0, enp1 = 0.0, enp1t = 0.0;

    if (regime == EnergyRegime::H_nonneg) {
        const double w2 = std::exp(-2.0 * H * t);
        const double wn = std::exp(-n * H * t);
        const double wn2 = std::exp(-n * H * t / 2.0);
        for (std::size_t i = 0; i < grad_sq.size(); ++i) {
            const double u = snapshot.u.samples[i];
            const double ut = snapshot.ut.samples[i];
            // -(nH/2c)^2/2 u^2 plus the equation's mass term collapse to Q/2 u^2
            const double base =
                0.5 / c2 * ut * ut + 0.5 * Q * u * u + 0.5 * w2 * grad_sq[i];
            const double star =
                0.25 * params.lambda * u * u * u * u * wn + params.lambda * r0 * u * u * u * wn2;
            e0 += base;
            e0t += base + star;
            const double diss = H * w2 * grad_sq[i];
            const double disst = diss + 0.25 * params.lambda * n * H * u * u * u * u * wn +
                                 0.5 * params.lambda * r0 * n * H * u * u * u * wn2;
            enp1 += diss;
            enp1t += disst;
        }
    } else {
        const double w2 = std::exp(2.0 * H * t);
        const double wn = std::exp(-(n - 2.0) * H * t);
        const double wn2 = std::exp(-(n - 4.0) * H * t / 2.0);
        for (std::size_t i = 0; i < grad_sq.size(); ++i) {
            const double u = snapshot.u.samples[i];
            const double ut = snapshot.ut.samples[i];
            const double base = 0.5 * w2 / c2 * ut * ut + 0.5 * grad_sq[i] +
                                0.5 * Q * w2 * u * u;
            const double star =
                0.25 * params.lambda * u * u * u * u * wn + params.lambda * r0 * u * u * u * wn2;
            e0 += base;
            e0t += base + star;
            const double diss = -H * w2 / c2 * ut * ut - H * Q * w2 * u * u;
            const double disst = diss +
                                 0.25 * params.lambda * (n - 2.0) * H * u * u * u * u * wn +
                                 0.5 * params.lambda * r0 * (n - 4.0) * H * u * u * u * wn2;
            enp1 += diss;
            enp1t += disst;
        }
    }

    rep.e0_integral = e0 * vol;
    rep.e0_tilde_integral = e0t * vol;
    rep.e_np1_integral = enp1 * vol;
    rep.e_np1_tilde_integral = enp1t * vol;
    return rep;
}

double energy_inequality_residual(const Trajectory& traj, const PhysicalParams& params,
                                  const DerivedConstants& derived, EnergyRegime regime) {
    if (derived.Q < 0.0)
        throw std::invalid_argument("energy_inequality_residual: requires Q >= 0");
    if (traj.snapshots.size() < 2) return 0.0;
    const bool nonlinear =
        params.lambda != 0.0 && traj.equation == Equation::shifted_cubic;

    const std::size_t nt = traj.snapshots.size();
    std::vector<double> e_main(nt), e_diss(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        const EnergyReport rep = energy_report(traj.snapshots[i], params, derived, regime);
        e_main[i] = nonlinear ? rep.e0_tilde_integral : rep.e0_integral;
        e_diss[i] = nonlinear ? rep.e_np1_tilde_integral : rep.e_np1_integral;
    }
    const double dt = traj.dt();
    double worst = 0.0;
    for (std::size_t i = 1; i < nt; ++i) {
        const std::vector<double> w = quad_weights(i, dt);
        double accum = 0.0;
        for (std::size_t j = 0; j <= i; ++j) accum += w[j] * e_diss[j];
        worst = std::max(worst, std::abs(e_main[i] + accum - e_main[0]));
    }
    return worst;
}

}  // namespace dskg
