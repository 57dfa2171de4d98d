#include "dskg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "dskg/blowup.hpp"
#include "dskg/diagnostics.hpp"
#include "dskg/mode_ode.hpp"
#include "dskg/propagator.hpp"
#include "dskg/scattering.hpp"
#include "dskg/snapshot_io.hpp"
#include "dskg/spectral.hpp"

namespace dskg {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double lattice_integral(const Field& f) {
    double acc = 0.0;
    for (double v : f.samples) acc += v;
    return acc * f.grid.cell_volume();
}

struct TimeGrid {
    double dt = 0.0;
    std::size_t steps = 0;
};

TimeGrid choose_time_grid(const Config& cfg, double Q) {
    TimeGrid tg;
    if (cfg.dt > 0.0) {
        tg.steps = std::max<std::size_t>(1, std::size_t(std::llround(cfg.T / cfg.dt)));
    } else {
        const double bound = stability_dt_bound(cfg.grid, cfg.T, cfg.params, Q);
        tg.steps = std::max<std::size_t>(1, std::size_t(std::ceil(cfg.T / bound)));
    }
    tg.dt = cfg.T / double(tg.steps);
    return tg;
}

Trajectory evolve_trajectory(const Config& cfg, const DerivedConstants& derived,
                             const Field& u0, const Field& u1, RunManifest& man) {
    if (cfg.method == "picard") {
        PicardResult pr = picard_solve(u0, u1, cfg.T, cfg.picard_steps, cfg.params,
                                       derived, cfg.picard_tol);
        std::string detail = "iterations=" + std::to_string(pr.iterations);
        if (!pr.increments.empty())
            detail += " final_increment=" + fmt17(pr.increments.back());
        man.checks.push_back({"picard_converged", pr.converged, detail});
        return std::move(pr.trajectory);
    }
    TimeGrid tg = choose_time_grid(cfg, derived.Q);
    return direct_solve(u0, u1, cfg.T, tg.dt, cfg.equation, cfg.params, derived,
                        cfg.snapshot_stride);
}

void write_lines(const std::string& path, const std::vector<std::string>& lines,
                 RunManifest& man) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    for (const std::string& l : lines) out << l << '\n';
    man.outputs.push_back(path);
}

std::vector<double> dissipation_accumulation(const std::vector<EnergyReport>& reps,
                                             double dt, bool tilde) {
    std::vector<double> acc(reps.size(), 0.0);
    for (std::size_t i = 1; i < reps.size(); ++i) {
        const double a = tilde ? reps[i - 1].e_np1_tilde_integral
                               : reps[i - 1].e_np1_integral;
        const double b = tilde ? reps[i].e_np1_tilde_integral : reps[i].e_np1_integral;
        acc[i] = acc[i - 1] + 0.5 * dt * (a + b);
    }
    return acc;
}

void run_field_experiment(const Config& cfg, const DerivedConstants& derived,
                          const std::string& out, std::uint64_t seed,
                          bool check_only, RunManifest& man) {
    const Field u0 = make_initial(cfg.u0, cfg.grid, seed);
    const Field u1 = make_initial(cfg.u1, cfg.grid, seed + 1);
    Trajectory traj = evolve_trajectory(cfg, derived, u0, u1, man);
    const double dt = traj.dt();
    const EnergyRegime regime =
        cfg.params.H < 0.0 ? EnergyRegime::H_neg : EnergyRegime::H_nonneg;

    std::vector<EnergyReport> reps;
    reps.reserve(traj.snapshots.size());
    for (const StateSnapshot& s : traj.snapshots)
        reps.push_back(energy_report(s, cfg.params, derived, regime));
    const bool tilde = cfg.params.lambda != 0.0;
    const std::vector<double> diss = dissipation_accumulation(reps, dt, tilde);

    const bool scatter = cfg.experiment == ExperimentKind::scatter;
    AsymptoticState ast;
    if (scatter) {
        const double t_cut = cfg.t_cut > 0.0 ? cfg.t_cut : traj.snapshots.back().t;
        ast = compute_asymptotic_state(traj, cfg.params, derived, t_cut, cfg.tail_tol);
        man.results.emplace_back("tail_rate", fmt17(ast.tail_rate));
        man.results.emplace_back("neglected_tail", fmt17(ast.neglected_tail));
        man.checks.push_back({"tail_below_tolerance",
                              ast.neglected_tail <= cfg.tail_tol,
                              "neglected_tail=" + fmt17(ast.neglected_tail)});
    }

    std::vector<std::string> rows;
    rows.push_back(scatter
                       ? "t,l2,hmu,e0,e0_tilde,dissipation,w_integral,dev_u,dev_ut"
                       : "t,l2,hmu,e0,e0_tilde,dissipation,w_integral");
    double max_ratio = 0.0, fit_ratio = 0.0;
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const StateSnapshot& s = traj.snapshots[i];
        std::string row = fmt17(s.t);
        row += "," + fmt17(l2_norm(s.u));
        row += "," + fmt17(sobolev_norm(transform(s.u), cfg.mu,
                                        NormKind::inhomogeneous));
        row += "," + fmt17(reps[i].e0_integral);
        row += "," + fmt17(reps[i].e0_tilde_integral);
        row += "," + fmt17(diss[i]);
        row += "," + fmt17(lattice_integral(s.u));
        if (scatter) {
            const Deviation dev = scattering_deviation(traj, ast, s.t, cfg.mu,
                                                       cfg.params, derived);
            row += "," + fmt17(dev.dev_u);
            row += "," + fmt17(dev.dev_ut);
            const double tail = ast.tail_bound(s.t);
            if (tail > 0.0) {
                const double ratio = dev.dev_u / tail;
                if (i <= traj.snapshots.size() / 2)
                    fit_ratio = std::max(fit_ratio, ratio);
                else
                    max_ratio = std::max(max_ratio, ratio);
            }
        }
        rows.push_back(std::move(row));
    }

    if (scatter && cfg.params.lambda != 0.0) {
        // the fitted deviation/tail constant must not blow up past the fit window
        const bool ok = max_ratio <= 2.0 * std::max(fit_ratio, 1e-30) ||
                        max_ratio < 1e-9;
        man.checks.push_back({"deviation_within_tail_envelope", ok,
                              "fit_ratio=" + fmt17(fit_ratio) +
                                  " later_ratio=" + fmt17(max_ratio)});
    }

    man.checks.push_back(
        {"trajectory_finite", !traj.diverged_at.has_value(),
         traj.diverged_at ? "diverged_at=" + fmt17(*traj.diverged_at) : "all finite"});
    if (traj.diverged_at)
        man.results.emplace_back("diverged_at", fmt17(*traj.diverged_at));

    if (derived.Q >= 0.0 && !traj.diverged_at) {
        const double residual =
            energy_inequality_residual(traj, cfg.params, derived, regime);
        const double scale = 1.0 + std::abs(tilde ? reps[0].e0_tilde_integral
                                                  : reps[0].e0_integral);
        const double tol = (cfg.params.H == 0.0 ? 1e-6 : 1e-4) * scale;
        man.checks.push_back({"energy_balance_residual", residual <= tol,
                              "residual=" + fmt17(residual) + " tol=" + fmt17(tol)});
        if (cfg.params.H > 0.0)
            man.checks.push_back({"dissipation_nonnegative", diss.back() >= -1e-12,
                                  "accumulated=" + fmt17(diss.back())});
    }

    if (cfg.experiment == ExperimentKind::blowup_pde &&
        cfg.params.mass_squared_sign <= 0) {
        const double M = derived.require_M();
        const double w0 = lattice_integral(traj.snapshots.front().u);
        double worst = std::numeric_limits<double>::infinity();
        for (const StateSnapshot& s : traj.snapshots) {
            if (!s.u.all_finite()) break;
            const double env = w0 * std::exp(cfg.params.c * M * s.t);
            worst = std::min(worst, lattice_integral(s.u) - env);
        }
        man.checks.push_back({"w_growth_envelope", worst >= -1e-6 * std::abs(w0),
                              "min_margin=" + fmt17(worst)});
    }

    if (!check_only && cfg.write_timeseries)
        write_lines(out + "/timeseries.csv", rows, man);
    if (!check_only && cfg.write_snapshots) {
        for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "snapshot_%06zu.bin", i);
            const std::string path = out + "/" + name;
            write_snapshot(path, traj.snapshots[i]);
            man.outputs.push_back(path);
        }
    }
}

void run_blowup_ode(const Config& cfg, const DerivedConstants& derived,
                    const std::string& out, bool check_only, RunManifest& man) {
    const WTrajectory wt =
        integrate_w(cfg.w0, cfg.w1, cfg.params, derived, cfg.w_options);
    for (const EnvelopeCheck& ec : wt.envelope_checks)
        man.checks.push_back({ec.bound_id, ec.passed, "margin=" + fmt17(ec.margin)});
    if (wt.blowup_time)
        man.results.emplace_back("blowup_time", fmt17(*wt.blowup_time));
    else
        man.notes.push_back("no divergence before t_max");

    std::vector<std::string> rows;
    rows.push_back("t,w,dw");
    for (std::size_t i = 0; i < wt.tgrid.size(); ++i)
        rows.push_back(fmt17(wt.tgrid[i]) + "," + fmt17(wt.w[i]) + "," +
                       fmt17(wt.dw[i]));
    if (!check_only && cfg.write_timeseries)
        write_lines(out + "/timeseries.csv", rows, man);
}

void run_lifespan(const Config& cfg, const DerivedConstants& derived,
                  RunManifest& man) {
    const LifespanCertificate cert = lifespan_lower_bound(
        cfg.params, derived, cfg.D_mu0, cfg.mu0, cfg.C, cfg.C0);
    if (cert.T) {
        man.results.emplace_back("T", fmt17(*cert.T));
        man.results.emplace_back("lhs_at_T", fmt17(cert.lhs_at_T));
        man.checks.push_back({"lhs_at_T<=1/2", cert.lhs_at_T <= 0.5 + 1e-12,
                              "lhs=" + fmt17(cert.lhs_at_T)});
        bool monotone = true;
        double prev = 0.0;
        for (int i = 1; i <= 32; ++i) {
            const double v = lifespan_lhs(*cert.T * 1.5 * i / 32.0, cfg.params,
                                          derived, cfg.D_mu0, cfg.mu0, cfg.C, cfg.C0);
            if (v < prev) monotone = false;
            prev = v;
        }
        man.checks.push_back({"lhs_monotone_in_T", monotone, "32 samples"});
    } else {
        man.notes.push_back("certificate unbounded: the left side never reaches 1/2");
        man.checks.push_back({"lhs_at_T<=1/2", true, "lhs identically below 1/2"});
    }
}

void run_modes(const Config& cfg, const DerivedConstants& derived,
               const std::string& out, bool check_only, RunManifest& man) {
    TimeGrid tg = choose_time_grid(cfg, derived.Q);
    std::vector<double> tgrid(tg.steps + 1);
    for (std::size_t i = 0; i <= tg.steps; ++i) tgrid[i] = i * tg.dt;
    const ModeTable table(cfg.grid, tgrid, cfg.params, derived.Q);

    bool bounds_ok = true;
    double max_wronskian = 0.0;
    std::vector<std::string> rows;
    rows.push_back("ksq,t,rho0,drho0,rho1,drho1");
    for (const ModeSolution& ms : table.shells()) {
        max_wronskian = std::max(max_wronskian, ms.max_wronskian_error());
        if (derived.Q >= 0.0) {
            const BoundReport rep = verify_mode_bounds(ms, cfg.params, derived.Q);
            bounds_ok = bounds_ok && rep.all_passed;
        }
        for (std::size_t i = 0; i < ms.tgrid.size(); ++i)
            rows.push_back(fmt17(ms.ksq) + "," + fmt17(ms.tgrid[i]) + "," +
                           fmt17(ms.rho0[i]) + "," + fmt17(ms.drho0[i]) + "," +
                           fmt17(ms.rho1[i]) + "," + fmt17(ms.drho1[i]));
    }
    man.checks.push_back({"wronskian_identity", max_wronskian <= 1e-10,
                          "max_error=" + fmt17(max_wronskian)});
    if (derived.Q >= 0.0)
        man.checks.push_back({"mode_symbol_bounds", bounds_ok,
                              std::to_string(table.shells().size()) + " shells"});
    if (!check_only && cfg.write_timeseries)
        write_lines(out + "/modes.csv", rows, man);
}

}  // namespace

bool RunManifest::all_passed() const {
    for (const CheckResult& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string RunManifest::to_json(const Config& cfg) const {
    ordered_json j;
    j["experiment"] = to_string(experiment);
    j["version"] = kVersion;
    j["seed"] = seed;
    j["wall_seconds"] = wall_seconds;
    j["all_passed"] = all_passed();
    j["checks"] = ordered_json::array();
    for (const CheckResult& c : checks)
        j["checks"].push_back({{"name", c.name}, {"passed", c.passed},
                               {"detail", c.detail}});
    j["results"] = ordered_json::object();
    for (const auto& [k, v] : results) j["results"][k] = v;
    j["notes"] = notes;
    j["outputs"] = outputs;
    j["config"] = cfg.raw_text;
    return j.dump(2);
}

Field make_initial(const InitialData& data, const Grid& grid, std::uint64_t seed) {
    Field f = Field::zeros(grid);
    const double dx = grid.dx();
    switch (data.kind) {
        case InitialKind::zero:
            break;
        case InitialKind::gaussian: {
            const double x0 = grid.L / 2.0 + data.center;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                std::size_t rem = i;
                double r2 = 0.0;
                for (int ax = 0; ax < grid.n; ++ax) {
                    const double x = double(rem % std::size_t(grid.N)) * dx;
                    rem /= std::size_t(grid.N);
                    const double d = x - x0;
                    r2 += d * d;
                }
                f.samples[i] =
                    data.amplitude * std::exp(-r2 / (2.0 * data.width * data.width));
            }
            break;
        }
        case InitialKind::mode: {
            for (std::size_t i = 0; i < grid.size(); ++i) {
                std::size_t rem = i;
                double v = data.amplitude;
                for (int ax = 0; ax < grid.n; ++ax) {
                    const double x = double(rem % std::size_t(grid.N)) * dx;
                    rem /= std::size_t(grid.N);
                    v *= std::cos(2.0 * M_PI * data.k * x / grid.L);
                }
                f.samples[i] = v;
            }
            break;
        }
        case InitialKind::random: {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> dist(-data.amplitude,
                                                        data.amplitude);
            for (double& v : f.samples) v = dist(rng);
            f = dealias(f);  // keep random data representable on the grid
            break;
        }
        case InitialKind::file: {
            const StateSnapshot snap = read_snapshot(data.path);
            if (!(snap.u.grid == grid))
                throw std::runtime_error("snapshot grid mismatch: " + data.path);
            f = snap.u;
            break;
        }
    }
    return f;
}

RunManifest run_experiment(const Config& cfg, const std::string& out_dir,
                           std::uint64_t seed, bool check_only) {
    const auto t_start = std::chrono::steady_clock::now();
    RunManifest man;
    man.experiment = cfg.experiment;
    man.seed = seed;

    const std::string out = out_dir.empty() ? cfg.out_dir : out_dir;
    if (!check_only) fs::create_directories(out);

    const DerivedConstants derived = derive_constants(cfg.params);
    const RegimeReport regime = validate_regime(cfg.params);
    if (regime.mass_type == MassType::real && cfg.params.H != 0.0 &&
        !regime.expanding_window && !regime.contracting_window)
        man.notes.push_back("H outside both existence windows");
    man.results.emplace_back("Q", fmt17(derived.Q));
    if (derived.r0) man.results.emplace_back("r0", fmt17(*derived.r0));

    switch (cfg.experiment) {
        case ExperimentKind::evolve:
        case ExperimentKind::energy_audit:
        case ExperimentKind::blowup_pde:
        case ExperimentKind::scatter:
            run_field_experiment(cfg, derived, out, seed, check_only, man);
            break;
        case ExperimentKind::blowup_ode:
            run_blowup_ode(cfg, derived, out, check_only, man);
            break;
        case ExperimentKind::lifespan:
            run_lifespan(cfg, derived, man);
            break;
        case ExperimentKind::modes:
            run_modes(cfg, derived, out, check_only, man);
            break;
    }

    man.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    if (!check_only) {
        const std::string path = out + "/manifest.json";
        std::ofstream mf(path, std::ios::binary | std::ios::trunc);
        if (!mf) throw std::runtime_error("cannot write manifest: " + path);
        mf << man.to_json(cfg) << '\n';
        man.outputs.push_back(path);
    }
    return man;
}

}  // namespace dskg
