#pragma once

#include <optional>

namespace dskg {

/// Physical parameters of the Klein-Gordon field in the flat-slicing
/// de Sitter metric -c^2 dt^2 + e^{2Ht} sum_j (dx^j)^2. Units are
/// caller-defined; everything downstream is dimensionless arithmetic.
///
/// An imaginary mass m in iR is encoded by mass_squared_sign = -1
/// applied to m^2; complex arithmetic never enters the parameter layer.
struct PhysicalParams {
    int n = 1;           // spatial dimension
    double c = 1.0;      // speed of light, > 0
    double hbar = 1.0;   // reduced Planck constant, > 0
    double H = 0.0;      // Hubble constant, any sign
    double mass = 1.0;   // |m|; sign of m^2 carried separately
    int mass_squared_sign = +1;  // +1 real mass, -1 imaginary, 0 massless
    double lambda = 1.0; // coupling
    double p = 3.0;      // nonlinearity power, > 1 (gauge-variant paths)

    void validate() const;  // throws std::invalid_argument on violation

    // (mc/hbar)^2 with the mass_squared_sign applied.
    double mass_term() const;
};

/// Constants derived from PhysicalParams:
///   r0 = |m| c / (sqrt(lambda) hbar)      (vacuum radius; needs lambda > 0)
///   Q  = 2 (mc/hbar)^2 - (nH/2c)^2        (real-mass, shifted equation)
///   Q  = (m*c/hbar)^2 - (nH/2c)^2         (imaginary-mass, blow-up path)
///   M  = sqrt(-Q) when Q <= 0
struct DerivedConstants {
    std::optional<double> r0;  // absent when lambda <= 0
    double Q = 0.0;
    std::optional<double> M;   // absent when Q > 0

    double require_r0() const;  // throws when r0 undefined
    double require_M() const;   // throws when Q > 0
};

enum class MassType { real, imaginary, zero };
enum class Sign { negative, zero, positive };

struct RegimeReport {
    Sign hubble_sign = Sign::zero;
    bool expanding_window = false;  // 0 <= H < 2 sqrt(2) |m| c^2 / (n hbar)
    bool contracting_window = false;  // -2 sqrt(2) |m| c^2 / (n hbar) < H < 0
    MassType mass_type = MassType::real;
    Sign Q_sign = Sign::zero;
};

DerivedConstants derive_constants(const PhysicalParams& params);

RegimeReport validate_regime(const PhysicalParams& params);

}  // namespace dskg
