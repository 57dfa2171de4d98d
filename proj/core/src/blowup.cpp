#include "dskg/blowup.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dskg/quadrature.hpp"

namespace dskg {

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be >= 1");
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double support_radius(double t, double r_support0, const PhysicalParams& params) {
    if (params.H == 0.0) return r_support0 + params.c * t;
    return r_support0 + params.c * (1.0 - std::exp(-params.H * t)) / params.H;
}

double b_exact(double t, double r_support0, const PhysicalParams& params) {
    const double r = support_radius(t, r_support0, params);
    const double vol = unit_ball_volume(params.n) * std::pow(r, params.n);
    return std::exp(-params.n * (params.p - 1.0) * params.H * t / 2.0) *
           std::pow(vol, 1.0 - params.p);
}

double b_floor_constant(double r_support0, const PhysicalParams& params) {
    if (params.H == 0.0)
        throw std::invalid_argument("b_floor_constant: requires H != 0");
    const double np1 = params.n * (params.p - 1.0);
    const double cap = params.H > 0.0 ? r_support0 + params.c / params.H
                                      : 2.0 * params.c / std::abs(params.H);
    return std::pow(unit_ball_volume(params.n), 1.0 - params.p) * std::pow(cap, -np1);
}

double b_floor_onset(double r_support0, const PhysicalParams& params, double t_max,
                     int samples) {
    if (params.H > 0.0) return 0.0;  // floor and monotonicity hold from t = 0
    const double B = b_floor_constant(r_support0, params);
    const double rate = params.n * (params.p - 1.0) * std::abs(params.H) / 2.0;
    const double dt = t_max / samples;
    // last sampled time at which either condition fails
    double last_fail = -1.0;
    double prev_b = b_exact(0.0, r_support0, params);
    for (int i = 1; i <= samples; ++i) {
        const double t = i * dt;
        const double bt = b_exact(t, r_support0, params);
        const bool floor_ok = bt >= B * std::exp(-rate * t) * (1.0 - 1e-12);
        const bool decreasing = bt <= prev_b * (1.0 + 1e-12);
        if (!floor_ok || !decreasing) last_fail = t;
        prev_b = bt;
    }
    return last_fail < 0.0 ? 0.0 : last_fail + dt;
}

double w_closed_form(double t, double w0, double w1, double M,
                     const PhysicalParams& params,
                     const std::function<double(double)>& forcing,
                     std::size_t quad_intervals) {
    if (M < 0.0) throw std::invalid_argument("w_closed_form: M must be >= 0");
    const double c = params.c;
    auto sinhc = [](double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; };
    double w = std::cosh(c * M * t) * w0 + t * sinhc(c * M * t) * w1;
    if (forcing && t > 0.0) {
        std::vector<double> vals(quad_intervals + 1);
        const double ds = t / quad_intervals;
        for (std::size_t j = 0; j <= quad_intervals; ++j) {
            const double s = j * ds;
            vals[j] = (t - s) * sinhc(c * M * (t - s)) * forcing(s);
        }
        w += c * c * integrate_samples(vals, ds);
    }
    return w;
}

namespace {

void check_growth_hypotheses(double w0, double w1, double M,
                            const PhysicalParams& params,
                            const DerivedConstants& derived) {
    if (derived.Q > 0.0)
        throw std::invalid_argument("integrate_w: requires Q <= 0 (imaginary-mass regime)");
    if (w0 < 0.0) throw std::invalid_argument("integrate_w: requires w0 >= 0");
    if (!(w1 > 0.0)) throw std::invalid_argument("integrate_w: requires w1 > 0");
    if (w1 < params.c * M * w0 * (1.0 - 1e-12))
        throw std::invalid_argument("integrate_w: requires w1 >= c M w0");
    const double crit = params.n * std::abs(params.H) / (2.0 * params.c);
    if (std::abs(M - crit) < 1e-14 && !(w0 > 0.0))
        throw std::invalid_argument("integrate_w: requires w0 > 0 when M = n|H|/2c");
}

}  // namespace

WTrajectory integrate_w(double w0, double w1, const PhysicalParams& params,
                        const DerivedConstants& derived, const WOptions& options) {
    if (derived.Q > 0.0)
        throw std::invalid_argument("integrate_w: requires Q <= 0 (imaginary-mass regime)");
    const double M = derived.require_M();
    check_growth_hypotheses(w0, w1, M, params, derived);

    const double c2 = params.c * params.c;
    const double Q = derived.Q;
    auto b_of = [&](double t) {
        switch (options.b_model) {
            case BModel::exact_b:
                return b_exact(t, options.r_support0, params);
            case BModel::floor_B:
                return b_floor_constant(options.r_support0, params) *
                       std::exp(-params.n * (params.p - 1.0) * std::abs(params.H) *
                                t / 2.0);
            case BModel::none:
                return 0.0;
        }
        return 0.0;
    };
    using State = std::array<double, 2>;
    auto rhs = [&](const State& y, State& dydt, double t) {
        dydt[0] = y[1];
        dydt[1] = c2 * (-Q * y[0] + b_of(t) * std::pow(std::max(y[0], 0.0), params.p));
    };

    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                           odeint::runge_kutta_fehlberg78<State>());

    WTrajectory out;
    State y{w0, w1};
    double t = 0.0, dt = 1e-4;
    out.tgrid.push_back(t);
    out.w.push_back(y[0]);
    out.dw.push_back(y[1]);

    while (t < options.t_max) {
        State y_prev = y;
        const double t_prev = t;
        double trial = std::min(dt, options.t_max - t);
        odeint::controlled_step_result res;
        do {
            dt = trial;
            res = stepper.try_step(rhs, y, t, trial);
        } while (res == odeint::fail && std::isfinite(y[0]));
        dt = trial;
        if (!std::isfinite(y[0]) || std::abs(y[0]) > options.divergence_threshold) {
            // bisect inside [t_prev, t] for the threshold crossing
            double lo = t_prev, hi = std::isfinite(y[0]) ? t : t_prev + dt;
            State ylo = y_prev;
            while (hi - lo > 1e-13 * std::max(1.0, hi)) {
                const double mid = 0.5 * (lo + hi);
                State ym = ylo;
                try {
                    odeint::integrate_adaptive(stepper, rhs, ym, lo, mid, (mid - lo) / 8.0);
                } catch (...) {
                    ym[0] = std::numeric_limits<double>::infinity();
                }
                if (std::isfinite(ym[0]) && std::abs(ym[0]) < options.divergence_threshold) {
                    lo = mid;
                    ylo = ym;
                } else {
                    hi = mid;
                }
            }
            out.blowup_time = hi;
            out.tgrid.push_back(lo);
            out.w.push_back(ylo[0]);
            out.dw.push_back(ylo[1]);
            break;
        }
        out.tgrid.push_back(t);
        out.w.push_back(y[0]);
        out.dw.push_back(y[1]);
    }

    // Envelope certificates over the accepted samples.
    const double cM = params.c * M;
    EnvelopeCheck primary{"w>=w0*exp(cMt)", true,
                          std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < out.tgrid.size(); ++i) {
        const double envelope = w0 * std::exp(cM * out.tgrid[i]);
        const double margin = out.w[i] - envelope;
        primary.margin = std::min(primary.margin, margin);
        if (margin < -1e-9 * std::max(1.0, envelope)) primary.passed = false;
    }
    out.envelope_checks.push_back(primary);

    if (params.H != 0.0) {
        const double B = b_floor_constant(options.r_support0, params);
        const double rate = params.n * (params.p - 1.0) * std::abs(params.H) / 2.0;
        const double t_star = b_floor_onset(options.r_support0, params);
        EnvelopeCheck floor{"b>=B*exp(-n(p-1)|H|t/2), t>=t*", true,
                            std::numeric_limits<double>::infinity()};
        for (double tt : out.tgrid) {
            if (tt < t_star) continue;
            const double margin =
                b_exact(tt, options.r_support0, params) - B * std::exp(-rate * tt);
            floor.margin = std::min(floor.margin, margin);
            if (margin < -1e-12) floor.passed = false;
        }
        out.envelope_checks.push_back(floor);

        // secondary growth from the first sample where dw >= c M1 w persists
        const double M1 = std::sqrt(M * M + B * std::pow(w0, params.p - 1.0) / (params.p + 1.0));
        std::size_t i1 = out.tgrid.size();
        for (std::size_t i = 0; i < out.tgrid.size(); ++i) {
            bool persists = true;
            for (std::size_t j = i; j < out.tgrid.size(); ++j)
                if (out.dw[j] < params.c * M1 * out.w[j] * (1.0 - 1e-9)) {
                    persists = false;
                    break;
                }
            if (persists) {
                i1 = i;
                break;
            }
        }
        EnvelopeCheck secondary{"w>=w(t1)*exp(cM1(t-t1))", i1 < out.tgrid.size(),
                                std::numeric_limits<double>::infinity()};
        if (i1 < out.tgrid.size()) {
            const double t1 = out.tgrid[i1], wt1 = out.w[i1];
            for (std::size_t i = i1; i < out.tgrid.size(); ++i) {
                const double envelope = wt1 * std::exp(params.c * M1 * (out.tgrid[i] - t1));
                const double margin = out.w[i] - envelope;
                secondary.margin = std::min(secondary.margin, margin);
                if (margin < -1e-6 * std::max(1.0, envelope)) secondary.passed = false;
            }
        } else {
            secondary.margin = -std::numeric_limits<double>::infinity();
        }
        out.envelope_checks.push_back(secondary);
    }
    return out;
}

double separable_blowup_time(double kappa, double delta, double w0,
                             double divergence_threshold, double abs_tol,
                             double rel_tol) {
    if (!(kappa > 0.0) || !(delta > 0.0) || !(w0 > 0.0))
        throw std::invalid_argument("separable_blowup_time: requires kappa, delta, w0 > 0");
    using State = std::array<double, 1>;
    auto rhs = [&](const State& y, State& dydt, double) {
        dydt[0] = kappa * std::pow(std::max(y[0], 0.0), 1.0 + delta);
    };
    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled(abs_tol, rel_tol,
                                           odeint::runge_kutta_fehlberg78<State>());
    const double t_max = 10.0 / (delta * kappa * std::pow(w0, delta));
    State y{w0};
    double t = 0.0, dt = 1e-6;
    while (t < t_max) {
        State y_prev = y;
        const double t_prev = t;
        double trial = dt;
        odeint::controlled_step_result res;
        do {
            dt = trial;
            res = stepper.try_step(rhs, y, t, trial);
        } while (res == odeint::fail && std::isfinite(y[0]));
        dt = trial;
        if (!std::isfinite(y[0]) || y[0] > divergence_threshold) {
            double lo = t_prev, hi = std::isfinite(y[0]) ? t : t_prev + dt;
            State ylo = y_prev;
            while (hi - lo > 1e-13 * std::max(1.0, hi)) {
                const double mid = 0.5 * (lo + hi);
                State ym = ylo;
                try {
                    odeint::integrate_adaptive(stepper, rhs, ym, lo, mid, (mid - lo) / 8.0);
                } catch (...) {
                    ym[0] = std::numeric_limits<double>::infinity();
                }
                if (std::isfinite(ym[0]) && ym[0] < divergence_threshold) {
                    lo = mid;
                    ylo = ym;
                } else {
                    hi = mid;
                }
            }
            return hi;
        }
    }
    throw std::runtime_error("separable_blowup_time: no divergence before t_max");
}

double lifespan_lhs(double T, const PhysicalParams& params,
                    const DerivedConstants& derived, double D_mu0, double mu0,
                    double C, double C0) {
    const double H = params.H;
    const double Q = derived.Q;
    const double r0 = derived.r0.value_or(0.0);
    const double a = 4.0 * (1.0 + mu0);
    const double b = 2.0 * (1.0 + mu0);
    // zero coefficients kill their term outright (the exponential can overflow)
    const double term1 =
        C0 * D_mu0 == 0.0
            ? 0.0
            : std::sqrt((std::exp(-a * H * T) - 1.0) / a) *
                  std::pow(Q, (params.n - 3.0 - 2.0 * mu0) / 2.0) * C0 * D_mu0;
    const double term2 =
        r0 == 0.0 ? 0.0
                  : r0 * std::sqrt((std::exp(-b * H * T) - 1.0) / b) *
                        std::pow(Q, (params.n - 4.0 - 2.0 * mu0) / 4.0);
    return C * params.lambda * params.c / (-H) * (term1 + term2);
}

LifespanCertificate lifespan_lower_bound(const PhysicalParams& params,
                                         const DerivedConstants& derived,
                                         double D_mu0, double mu0, double C,
                                         double C0, double rel_tol) {
    if (!(params.H < 0.0))
        throw std::invalid_argument("lifespan_lower_bound: requires H < 0");
    if (!(derived.Q > 0.0))
        throw std::invalid_argument("lifespan_lower_bound: requires Q > 0");
    const double mu0_lo = std::max(0.0, (params.n - 3.0) / 2.0);
    if (mu0 < mu0_lo || mu0 >= params.n / 2.0)
        throw std::invalid_argument(
            "lifespan_lower_bound: mu0 outside [max(0,(n-3)/2), n/2)");
    if (D_mu0 < 0.0)
        throw std::invalid_argument("lifespan_lower_bound: D_mu0 must be >= 0");

    LifespanCertificate cert;
    cert.D_mu0 = D_mu0;
    cert.mu0 = mu0;
    cert.C = C;
    cert.C0 = C0;

    auto f = [&](double T) { return lifespan_lhs(T, params, derived, D_mu0, mu0, C, C0); };

    // LHS(0) = 0 and LHS is strictly increasing in T for H < 0.
    double hi = 1.0;
    while (std::isfinite(f(hi)) && f(hi) < 0.5) {
        hi *= 2.0;
        if (hi > 1e6) {  // coefficient identically ~0: no finite root
            cert.T = std::nullopt;
            cert.lhs_at_T = f(1e6);
            return cert;
        }
    }
    double lo = 0.0;
    while (hi - lo > rel_tol * std::max(hi, 1.0)) {
        const double mid = 0.5 * (lo + hi);
        const double v = f(mid);
        if (std::isfinite(v) && v <= 0.5)
            lo = mid;
        else
            hi = mid;
    }
    cert.T = lo;
    cert.lhs_at_T = f(lo);
    return cert;
}

}  // namespace dskg
