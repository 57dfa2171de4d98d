#include "dskg/params.hpp"

#include <cmath>
#include <stdexcept>

namespace dskg {

void PhysicalParams::validate() const {
    if (n < 1) throw std::invalid_argument("params: n must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("params: c must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("params: hbar must be > 0");
    if (!(p > 1.0)) throw std::invalid_argument("params: p must be > 1");
    if (mass < 0.0) throw std::invalid_argument("params: mass must be given as |m| >= 0");
    if (mass_squared_sign < -1 || mass_squared_sign > 1)
        throw std::invalid_argument("params: mass_squared_sign must be -1, 0 or +1");
}

double PhysicalParams::mass_term() const {
    const double mc = mass * c / hbar;
    return static_cast<double>(mass_squared_sign) * mc * mc;
}

double DerivedConstants::require_r0() const {
    if (!r0) throw std::domain_error("derived: r0 requested with lambda <= 0");
    return *r0;
}

double DerivedConstants::require_M() const {
    if (!M) throw std::domain_error("derived: M requested with Q > 0");
    return *M;
}

DerivedConstants derive_constants(const PhysicalParams& params) {
    params.validate();
    DerivedConstants d;
    const double mc = params.mass * params.c / params.hbar;
    const double friction = params.n * params.H / (2.0 * params.c);
    if (params.mass_squared_sign > 0) {
        d.Q = 2.0 * mc * mc - friction * friction;
    } else {
        // blow-up path: Q = (m* c / hbar)^2 - (nH/2c)^2 with (m*)^2 = sign * m^2
        d.Q = params.mass_squared_sign * mc * mc - friction * friction;
    }
    if (params.lambda > 0.0)
        d.r0 = params.mass * params.c / (std::sqrt(params.lambda) * params.hbar);
    if (d.Q <= 0.0) d.M = std::sqrt(-d.Q);
    return d;
}

namespace {
Sign sign_of(double x) {
    if (x > 0.0) return Sign::positive;
    if (x < 0.0) return Sign::negative;
    return Sign::zero;
}
}  // namespace

RegimeReport validate_regime(const PhysicalParams& params) {
    params.validate();
    RegimeReport r;
    r.hubble_sign = sign_of(params.H);
    if (params.mass == 0.0 || params.mass_squared_sign == 0)
        r.mass_type = MassType::zero;
    else
        r.mass_type = params.mass_squared_sign > 0 ? MassType::real : MassType::imaginary;
    r.Q_sign = sign_of(derive_constants(params).Q);

    // Both theorem windows assume real mass; the bound collapses to 0 at m = 0.
    const double bound =
        2.0 * std::sqrt(2.0) * params.mass * params.c * params.c / (params.n * params.hbar);
    if (r.mass_type == MassType::real) {
        r.expanding_window = params.H >= 0.0 && params.H < bound;
        r.contracting_window = params.H < 0.0 && params.H > -bound;
    }
    return r;
}

}  // namespace dskg
