// Acceptance harness: one pass/fail line per criterion, nonzero exit when
// anything fails. Each criterion is self-contained and pins its tolerances.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dskg/blowup.hpp"
#include "dskg/diagnostics.hpp"
#include "dskg/mode_ode.hpp"
#include "dskg/nonlinearity.hpp"
#include "dskg/propagator.hpp"
#include "dskg/scattering.hpp"
#include "dskg/spectral.hpp"

using namespace dskg;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& detail) {
    std::printf("criterion %2d [%s] %s (%s)\n", idx, ok ? "pass" : "FAIL",
                what.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

Field gaussian(const Grid& g, double amp, double width) {
    Field f = Field::zeros(g);
    for (int i = 0; i < g.N; ++i) {
        const double x = i * g.dx() - g.L / 2.0;
        f.samples[std::size_t(i)] = amp * std::exp(-x * x / (2 * width * width));
    }
    return f;
}

std::vector<double> uniform_tgrid(double T, std::size_t steps) {
    std::vector<double> t(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) t[i] = T * double(i) / double(steps);
    return t;
}

double l2_diff(const Field& a, const Field& b) {
    Field d = a;
    for (std::size_t i = 0; i < d.samples.size(); ++i) d.samples[i] -= b.samples[i];
    return l2_norm(d);
}

struct SweepCase {
    double ksq, H, Q, c;
};

std::vector<SweepCase> mode_sweep() {
    std::mt19937_64 rng(20250826);
    std::uniform_real_distribution<double> uk(0.0, 100.0), uH(-1.0, 1.0), uQ(0.0, 4.0);
    const double cs[] = {0.5, 1.0, 2.0};
    std::vector<SweepCase> out;
    for (int trial = 0; trial < 100; ++trial)
        out.push_back({uk(rng), uH(rng), uQ(rng), cs[trial % 3]});
    return out;
}

// criteria 1 and 2: Wronskian identity and symbol bounds over a parameter sweep
void criterion_wronskian_and_bounds() {
    const std::vector<double> tgrid = uniform_tgrid(10.0, 100);
    double worst_w = 0.0, worst_param = 0.0;
    bool bounds_ok = true;
    std::string first_violation = "none";
    for (const SweepCase& sc : mode_sweep()) {
        PhysicalParams p;
        p.c = sc.c;
        p.H = sc.H;
        const ModeSolution ms = solve_mode(sc.ksq, tgrid, p, sc.Q);
        const double we = ms.max_wronskian_error();
        if (we > worst_w) {
            worst_w = we;
            worst_param = sc.ksq;
        }
        const BoundReport br = verify_mode_bounds(ms, p, sc.Q, 1e-8);
        if (!br.all_passed && bounds_ok) {
            bounds_ok = false;
            first_violation = br.bound_violations.front().bound_id;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |W-1| = %.3g (worst ksq %.3g), 100 trials",
                  worst_w, worst_param);
    report(1, "mode Wronskian identity <= 1e-10 across sweep", worst_w <= 1e-10, buf);
    report(2, "propagator symbol bounds hold at 1e-8 across sweep", bounds_ok,
           bounds_ok ? "no violations in 100 trials" : "first: " + first_violation);
}

// criterion 3: flat-space nonlinear energy is conserved to 1e-6 relative
void criterion_energy_conservation() {
    Grid g{1, 128, 20.0};
    PhysicalParams p;
    p.H = 0.0;
    p.mass = 1.0;
    p.lambda = 1.0;
    const DerivedConstants d = derive_constants(p);
    const Field u0 = gaussian(g, 0.5, 1.0);
    const Trajectory traj = direct_solve(u0, Field::zeros(g), 10.0, 1e-3,
                                         Equation::shifted_cubic, p, d);
    const EnergyReport e0 = energy_report(traj.snapshots.front(), p, d,
                                          EnergyRegime::H_nonneg);
    const double resid = energy_inequality_residual(traj, p, d, EnergyRegime::H_nonneg);
    const double rel = resid / std::abs(e0.e0_tilde_integral);
    char buf[120];
    std::snprintf(buf, sizeof buf, "relative drift %.3g over T = 10, dt = 1e-3", rel);
    report(3, "H = 0 nonlinear energy drift <= 1e-6", rel <= 1e-6, buf);
}

// criterion 4: Picard iteration contracts and agrees with the direct solver
void criterion_picard_vs_direct() {
    Grid g{1, 64, 20.0};
    PhysicalParams p;
    p.H = 0.3;
    p.mass = 1.0;
    p.lambda = 1.0;
    const DerivedConstants d = derive_constants(p);
    const Field u0 = gaussian(g, 0.01, 1.0);
    const PicardResult pr = picard_solve(u0, Field::zeros(g), 1.0, 64, p, d);
    const Trajectory dir = direct_solve(u0, Field::zeros(g), 1.0, 1.0 / 1024,
                                        Equation::shifted_cubic, p, d, 16);
    double max_ratio = 0.0;
    for (double r : pr.contraction_ratios) max_ratio = std::max(max_ratio, r);
    const double diff = l2_diff(pr.trajectory.snapshots.back().u,
                                dir.snapshots.back().u);
    const bool ok = pr.converged && max_ratio <= 0.5 && diff <= 1e-6;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "converged %d iters, max ratio %.3g, |picard-direct|_L2 = %.3g",
                  pr.iterations, max_ratio, diff);
    report(4, "small-data Picard contracts (ratio <= 1/2) and matches RK4 to 1e-6",
           ok, buf);
}

// criterion 5: flat-space free propagator matches the dispersive closed form
void criterion_free_closed_form() {
    Grid g{1, 64, 10.0};
    PhysicalParams p;
    p.H = 0.0;
    p.c = 2.0;
    p.mass = 0.75;
    const DerivedConstants d = derive_constants(p);
    const int k = 3;
    Field u0 = Field::zeros(g), u1 = Field::zeros(g);
    for (int i = 0; i < g.N; ++i) {
        const double x = i * g.dx();
        u0.samples[std::size_t(i)] = std::cos(2 * M_PI * k * x / g.L);
        u1.samples[std::size_t(i)] = 0.5 * std::sin(2 * M_PI * k * x / g.L);
    }
    const double t = 1.0;
    const StateSnapshot s = apply_free(t, u0, u1, p, d.Q);
    const double xi = 2 * M_PI * k / g.L;
    const double om = std::sqrt(a_tilde(0.0, xi * xi, p, d.Q));
    double err = 0.0;
    for (int i = 0; i < g.N; ++i) {
        const double x = i * g.dx();
        const double exact = std::cos(om * t) * std::cos(2 * M_PI * k * x / g.L) +
                             std::sin(om * t) / om * 0.5 *
                                 std::sin(2 * M_PI * k * x / g.L);
        err = std::max(err, std::abs(s.u.samples[std::size_t(i)] - exact));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max pointwise error %.3g at t = 1", err);
    report(5, "H = 0 free flow matches cos/sin closed form to 1e-10", err <= 1e-10,
           buf);
}

// criterion 6: comparison-ODE blow-up detection and growth envelopes
void criterion_blowup() {
    // separable cross-check against the analytic divergence time
    double worst = 0.0;
    const double cases[][3] = {{1.0, 1.0, 1.0}, {2.0, 0.5, 1.5}, {0.7, 2.0, 0.8}};
    for (const auto& cs : cases) {
        const double kappa = cs[0], delta = cs[1], w0 = cs[2];
        const double exact = 1.0 / (delta * kappa * std::pow(w0, delta));
        const double got = separable_blowup_time(kappa, delta, w0);
        worst = std::max(worst, std::abs(got - exact));
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "max |T - 1/(delta kappa w0^delta)| = %.3g", worst);
    const bool sep_ok = worst <= 1e-6;

    PhysicalParams p;
    p.H = 0.3;
    p.mass = 1.0;
    p.mass_squared_sign = -1;
    p.lambda = 1.0;
    p.p = 2;
    const DerivedConstants d = derive_constants(p);
    const double M = d.require_M();
    WOptions opt;
    const WTrajectory wt = integrate_w(1.0, p.c * M, p, d, opt);
    bool env_ok = wt.blowup_time.has_value();
    std::string env_detail =
        wt.blowup_time ? "blow-up at t = " + std::to_string(*wt.blowup_time) : "no blow-up";
    for (const EnvelopeCheck& ec : wt.envelope_checks)
        if (!ec.passed) {
            env_ok = false;
            env_detail += ", violated: " + ec.bound_id;
        }

    WOptions tight = opt;
    tight.abs_tol = tight.rel_tol = 1e-12;
    const WTrajectory wt2 = integrate_w(1.0, p.c * M, p, d, tight);
    const double tol_gap = (wt.blowup_time && wt2.blowup_time)
                               ? std::abs(*wt.blowup_time - *wt2.blowup_time)
                               : 1e9;
    std::snprintf(buf, sizeof buf, "%s; 1e-10 vs 1e-12 tolerance gap %.3g",
                  env_detail.c_str(), tol_gap);
    report(6, "blow-up detection: separable oracle, envelopes, tolerance stability",
           sep_ok && env_ok && tol_gap <= 1e-6, buf);
}

// criterion 7: lifespan certificate is monotone, sharp, and tolerance-stable
void criterion_lifespan() {
    PhysicalParams p;
    p.n = 1;
    p.H = -0.5;
    p.mass = 1.0;
    p.lambda = 1.0;
    const DerivedConstants d = derive_constants(p);
    const double mu0 = 0.25, D = 1.0;
    const LifespanCertificate cert = lifespan_lower_bound(p, d, D, mu0);
    bool ok = cert.T.has_value();
    std::string detail = "no finite root";
    if (ok) {
        const double T = *cert.T;
        const double at = lifespan_lhs(T, p, d, D, mu0, 1.0, 1.0);
        const double beyond = lifespan_lhs(T * (1 + 1e-6), p, d, D, mu0, 1.0, 1.0);
        bool monotone = true;
        double prev = 0.0;
        for (int i = 1; i <= 32; ++i) {
            const double v = lifespan_lhs(1.5 * T * i / 32.0, p, d, D, mu0, 1.0, 1.0);
            monotone = monotone && v >= prev;
            prev = v;
        }
        const LifespanCertificate tight = lifespan_lower_bound(p, d, D, mu0, 1.0, 1.0, 1e-12);
        const double gap = tight.T ? std::abs(*tight.T - T) / T : 1e9;
        ok = at <= 0.5 + 1e-12 && beyond > 0.5 && monotone && gap <= 1e-9;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "T = %.12g, lhs(T) = %.12g, tolerance gap %.3g", T, at, gap);
        detail = buf;
    }
    report(7, "lifespan root: lhs(T) <= 1/2, sharp, monotone, tolerance-stable", ok,
           detail);
}

// criterion 8: scattering data is exact once a compact forcing has switched off
void criterion_scattering_exactness() {
    Grid g{1, 32, 20.0};
    PhysicalParams p;
    p.H = 0.4;
    p.mass = 1.0;
    p.lambda = 1.0;
    const DerivedConstants d = derive_constants(p);
    const double T = 2.0, t0 = 0.5;
    const std::size_t steps = 80;
    const std::vector<double> tgrid = uniform_tgrid(T, steps);
    const ModeTable table(g, tgrid, p, d.Q);

    const Field u0 = gaussian(g, 0.5, 1.0);
    const Field shape = gaussian(g, 1.0, 1.2);
    std::vector<Field> forcing;
    std::vector<SpectralField> h_hat;
    for (double t : tgrid) {
        Field h = shape;
        const double a = (t <= 0.0 || t >= t0)
                             ? 0.0
                             : std::exp(-1.0 / (t * (t0 - t)));
        for (double& v : h.samples) v *= a;
        forcing.push_back(h);
        h_hat.push_back(transform(h));
    }
    Trajectory traj;
    traj.params = p;
    const SpectralField u0_hat = transform(u0), u1_hat = transform(Field::zeros(g));
    for (std::size_t i = 0; i <= steps; ++i) {
        StateSnapshot s = apply_free(table, g, i, u0_hat, u1_hat);
        Field dut = Field::zeros(g);
        const Field duh = duhamel_apply(table, g, i, h_hat, p.c, &dut);
        for (std::size_t m = 0; m < g.size(); ++m) {
            s.u.samples[m] += duh.samples[m];
            s.ut.samples[m] += dut.samples[m];
        }
        s.t = tgrid[i];
        traj.snapshots.push_back(std::move(s));
    }
    const AsymptoticState ast = compute_asymptotic_state(traj, p, d, T, 1e300, &forcing);
    double worst = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
        if (tgrid[i] <= t0) continue;
        const Deviation dev = scattering_deviation(traj, ast, tgrid[i], 1.0, p, d);
        worst = std::max(worst, std::max(dev.dev_u, dev.dev_ut));
    }

    // and the h == 0 flow scatters to its own data bit-exactly
    PhysicalParams pl = p;
    pl.lambda = 0.0;
    const DerivedConstants dl = derive_constants(pl);
    Trajectory lin;
    lin.params = pl;
    for (int i = 0; i <= 8; ++i) {
        StateSnapshot s = apply_free(i * 0.25, u0, Field::zeros(g), pl, dl.Q);
        s.t = i * 0.25;
        lin.snapshots.push_back(std::move(s));
    }
    const AsymptoticState la = compute_asymptotic_state(lin, pl, dl, 2.0);
    bool bitexact = true;
    for (std::size_t i = 0; i < g.size(); ++i)
        bitexact = bitexact && la.u_plus0.samples[i] == u0.samples[i] &&
                   la.u_plus1.samples[i] == 0.0;

    char buf[120];
    std::snprintf(buf, sizeof buf, "max deviation past support %.3g, linear bit-exact %d",
                  worst, int(bitexact));
    report(8, "asymptotic state exact (<= 1e-9) beyond compact forcing support",
           worst <= 1e-9 && bitexact, buf);
}

// criterion 9: fourth-order Richardson ratios in time, spectral decay in space
void criterion_convergence() {
    PhysicalParams p;
    p.H = 0.3;
    p.mass = 1.0;
    p.lambda = 1.0;
    const DerivedConstants d = derive_constants(p);

    Grid g{1, 32, 10.0};
    const Field u0 = gaussian(g, 0.1, 1.0);
    auto final_u = [&](double dt) {
        return direct_solve(u0, Field::zeros(g), 1.0, dt, Equation::shifted_cubic, p,
                            d, std::size_t(std::lround(1.0 / dt)))
            .snapshots.back()
            .u;
    };
    const Field ref = final_u(1.0 / 2048);
    const double e1 = l2_diff(final_u(1.0 / 64), ref);
    const double e2 = l2_diff(final_u(1.0 / 128), ref);
    const double e3 = l2_diff(final_u(1.0 / 256), ref);
    const double r1 = e1 / e2, r2 = e2 / e3;
    const bool temporal_ok = r1 > 12.0 && r1 < 20.0 && r2 > 12.0 && r2 < 20.0;

    auto final_at_N = [&](int N) {
        Grid gn{1, N, 10.0};
        return direct_solve(gaussian(gn, 0.1, 1.0), Field::zeros(gn), 1.0, 1.0 / 512,
                            Equation::shifted_cubic, p, d, 512)
            .snapshots.back()
            .u;
    };
    const Field f8 = final_at_N(8), f16 = final_at_N(16), f32 = final_at_N(32),
                f64 = final_at_N(64);
    auto coarse_err = [&](const Field& coarse, const Field& fine) {
        const int stride = fine.grid.N / coarse.grid.N;
        double err = 0.0;
        for (int i = 0; i < coarse.grid.N; ++i)
            err = std::max(err, std::abs(coarse.samples[std::size_t(i)] -
                                         fine.samples[std::size_t(i * stride)]));
        return err;
    };
    const double s8 = coarse_err(f8, f64), s16 = coarse_err(f16, f64),
                 s32 = coarse_err(f32, f64);
    const bool spatial_ok = s8 / s16 > 10.0 && s16 / s32 > 10.0 && s32 < 1e-6;

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "dt ratios %.2f, %.2f; spatial errors %.3g -> %.3g -> %.3g", r1, r2,
                  s8, s16, s32);
    report(9, "RK4 Richardson ratio near 16, spectral spatial convergence",
           temporal_ok && spatial_ok, buf);
}

// criterion 10: the cubic shift identity, pointwise and at the trajectory level
void criterion_shift_identity() {
    Grid g{1, 48, 10.0};
    PhysicalParams p;
    p.H = 0.2;
    p.mass = 1.0;
    p.lambda = 2.0;
    const DerivedConstants d = derive_constants(p);
    const double r0 = d.require_r0();

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Field phi = Field::zeros(g);
        double sup = 0.0;
        for (double& v : phi.samples) {
            v = u(rng);
            sup = std::max(sup, std::abs(v));
        }
        const double resid = shift_identity_residual(phi, p, d);
        worst_rel = std::max(
            worst_rel, resid / ((1 + sup * sup * sup) * std::max(1.0, p.lambda)));
    }
    const bool pointwise_ok = worst_rel <= 1e-12;

    // evolving phi and its shift psi = phi - r0 are the same flow
    const Field psi0 = dealias(gaussian(g, 0.05, 1.0));
    Field phi0 = psi0;
    for (double& v : phi0.samples) v += r0;
    const double dt = 1.0 / 512;
    const Trajectory t_phi =
        direct_solve(phi0, Field::zeros(g), 1.0, dt, Equation::unshifted, p, d, 512);
    const Trajectory t_psi =
        direct_solve(psi0, Field::zeros(g), 1.0, dt, Equation::shifted_phi, p, d, 512);
    Field shifted_back = t_psi.snapshots.back().u;
    for (double& v : shifted_back.samples) v += r0;
    const double traj_diff = l2_diff(t_phi.snapshots.back().u, shifted_back);

    char buf[140];
    std::snprintf(buf, sizeof buf,
                  "pointwise residual %.3g, trajectory shift gap %.3g", worst_rel,
                  traj_diff);
    report(10, "shift identity: algebraic to 1e-12, trajectories agree to 1e-8",
           pointwise_ok && traj_diff <= 1e-8, buf);
}

}  // namespace

int main() {
    criterion_wronskian_and_bounds();
    criterion_energy_conservation();
    criterion_picard_vs_direct();
    criterion_free_closed_form();
    criterion_blowup();
    criterion_lifespan();
    criterion_scattering_exactness();
    criterion_convergence();
    criterion_shift_identity();
    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    else std::printf("all acceptance criteria passed\n");
    return g_failures ? 1 : 0;
}
