#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dskg/params.hpp"

namespace dskg {

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Light-cone support radius r(t) = r_support0 + c (1 - e^{-Ht}) / H
/// (r_support0 + c t in the H -> 0 limit).
double support_radius(double t, double r_support0, const PhysicalParams& params);

/// b(t) = e^{-n(p-1)Ht/2} (omega_n r(t)^n)^{1-p}, the comparison weight of the
/// reduced inequality, and its exponential floor constant
///   B = omega_n^{1-p} (r_support0 + c/H)^{-n(p-1)}   (H > 0, valid all t >= 0)
///   B = omega_n^{1-p} (2c/|H|)^{-n(p-1)}             (H < 0, valid for t >= t*)
double b_exact(double t, double r_support0, const PhysicalParams& params);
double b_floor_constant(double r_support0, const PhysicalParams& params);

/// First time beyond which the sampled floor b(t) >= B e^{-n(p-1)|H|t/2} and
/// b'(t) <= 0 hold on a dense grid (0 for H > 0; finite for H < 0).
double b_floor_onset(double r_support0, const PhysicalParams& params,
                     double t_max = 50.0, int samples = 5000);

/// Variation-of-constants value
///   w(t) = cosh(cMt) w0 + sinh(cMt)/(cM) w1 + c^2 int_0^t sinh(cM(t-s))/(cM) h(s) ds
/// with the M -> 0 limits cosh -> 1, sinh(x)/x -> t. The forcing integral is
/// evaluated by Simpson quadrature when a forcing is supplied.
double w_closed_form(double t, double w0, double w1, double M,
                     const PhysicalParams& params,
                     const std::function<double(double)>& forcing = nullptr,
                     std::size_t quad_intervals = 512);

struct EnvelopeCheck {
    std::string bound_id;
    bool passed = true;
    double margin = 0.0;  // min over samples of (lhs - rhs), >= 0 when passed
};

struct WTrajectory {
    std::vector<double> tgrid;
    std::vector<double> w;
    std::vector<double> dw;
    std::optional<double> blowup_time;
    std::vector<EnvelopeCheck> envelope_checks;
};

enum class BModel { exact_b, floor_B, none };  // none: b = 0, linear reduction

struct WOptions {
    double r_support0 = 1.0;
    BModel b_model = BModel::exact_b;
    double t_max = 50.0;            // giving-up horizon when nothing diverges
    double divergence_threshold = 1e12;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

/// Integrates w'' = c^2 (-Q w + b(t) w^p) under the growth hypotheses
/// (Q <= 0, w0 >= 0, w1 > 0, w1 >= cM w0; w0 > 0 when M = n|H|/2c), detects
/// divergence past `divergence_threshold`, and records the growth-envelope
/// checks w(t) >= w0 e^{cMt}, the b floor beyond its onset t*, and the
/// secondary envelope w(t) >= w(t1) e^{cM1 (t - t1)}.
WTrajectory integrate_w(double w0, double w1, const PhysicalParams& params,
                        const DerivedConstants& derived, const WOptions& options);

/// Detected divergence time of the separable comparison flow w' = kappa w^{1+delta},
/// w(0) = w0 (analytic blow-up at T = 1/(delta kappa w0^delta)). Shares the
/// event-detection machinery of integrate_w for cross-validation.
double separable_blowup_time(double kappa, double delta, double w0,
                             double divergence_threshold = 1e12,
                             double abs_tol = 1e-10, double rel_tol = 1e-10);

struct LifespanCertificate {
    std::optional<double> T;  // absent when the LHS never reaches 1/2
    double lhs_at_T = 0.0;
    double D_mu0 = 0.0;
    double mu0 = 0.0;
    double C = 1.0;
    double C0 = 1.0;
};

/// Largest T with
///   C lambda c (-H)^{-1} [ ((e^{-4(1+mu0)HT} - 1)/(4(1+mu0)))^{1/2}
///                            Q^{(n-3-2mu0)/2} C0 D_mu0
///                        + r0 ((e^{-2(1+mu0)HT} - 1)/(2(1+mu0)))^{1/2}
///                            Q^{(n-4-2mu0)/4} ] <= 1/2,
/// located by bisection on the monotone left side (relative tolerance 1e-10).
/// Requires H < 0, Q > 0, and mu0 in [max(0,(n-3)/2), n/2). C and C0 are the
/// universal constants of the estimate, taken as explicit inputs.
LifespanCertificate lifespan_lower_bound(const PhysicalParams& params,
                                         const DerivedConstants& derived,
                                         double D_mu0, double mu0, double C = 1.0,
                                         double C0 = 1.0, double rel_tol = 1e-10);

/// The lifespan left side as a function of T (exposed for monotonicity checks).
double lifespan_lhs(double T, const PhysicalParams& params,
                    const DerivedConstants& derived, double D_mu0, double mu0,
                    double C, double C0);

}  // namespace dskg
