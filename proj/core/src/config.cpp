#include "dskg/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dskg {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::runtime_error("config line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return d;
    } catch (const std::runtime_error&) {
        throw;
    } catch (...) {
        fail(line, "not a number: '" + v + "'");
    }
}

long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in integer '" + v + "'");
        return d;
    } catch (const std::runtime_error&) {
        throw;
    } catch (...) {
        fail(line, "not an integer: '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(line, "not a boolean: '" + v + "'");
}

ExperimentKind parse_experiment(const std::string& v, int line) {
    if (v == "evolve") return ExperimentKind::evolve;
    if (v == "blowup_ode") return ExperimentKind::blowup_ode;
    if (v == "blowup_pde") return ExperimentKind::blowup_pde;
    if (v == "lifespan") return ExperimentKind::lifespan;
    if (v == "scatter") return ExperimentKind::scatter;
    if (v == "modes") return ExperimentKind::modes;
    if (v == "energy_audit") return ExperimentKind::energy_audit;
    fail(line, "unknown experiment '" + v + "'");
}

Equation parse_equation(const std::string& v, int line) {
    if (v == "shifted_cubic") return Equation::shifted_cubic;
    if (v == "gauge_variant_blowup") return Equation::gauge_variant_blowup;
    if (v == "unshifted") return Equation::unshifted;
    if (v == "shifted_phi") return Equation::shifted_phi;
    fail(line, "unknown equation '" + v + "'");
}

InitialKind parse_kind(const std::string& v, int line) {
    if (v == "gaussian") return InitialKind::gaussian;
    if (v == "mode") return InitialKind::mode;
    if (v == "file") return InitialKind::file;
    if (v == "random") return InitialKind::random;
    if (v == "zero") return InitialKind::zero;
    fail(line, "unknown initial-condition kind '" + v + "'");
}

// handles the shared u0_* / u1_* key family
bool set_data_key(InitialData& d, const std::string& key, const std::string& v,
                  int line) {
    if (key == "kind")
        d.kind = parse_kind(v, line);
    else if (key == "amplitude")
        d.amplitude = parse_double(v, line);
    else if (key == "width")
        d.width = parse_double(v, line);
    else if (key == "center")
        d.center = parse_double(v, line);
    else if (key == "k")
        d.k = int(parse_int(v, line));
    else if (key == "path")
        d.path = v;
    else
        return false;
    return true;
}

}  // namespace

Config parse_config(const std::string& text) {
    Config cfg;
    cfg.raw_text = text;
    cfg.u1.kind = InitialKind::zero;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    bool grid_n_set = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (const auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            static const char* known[] = {"run",     "params",   "grid",
                                          "time",    "data",     "blowup",
                                          "lifespan", "scatter", "output"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) fail(line, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (section.empty()) fail(line, "key before any [section]");

        if (section == "run") {
            if (key == "experiment")
                cfg.experiment = parse_experiment(val, line);
            else if (key == "equation")
                cfg.equation = parse_equation(val, line);
            else if (key == "method") {
                if (val != "rk4" && val != "picard") fail(line, "method is rk4 or picard");
                cfg.method = val;
            } else if (key == "picard_steps")
                cfg.picard_steps = std::size_t(parse_int(val, line));
            else if (key == "picard_tol")
                cfg.picard_tol = parse_double(val, line);
            else
                fail(line, "unknown key '" + key + "' in [run]");
        } else if (section == "params") {
            if (key == "n")
                cfg.params.n = int(parse_int(val, line));
            else if (key == "c")
                cfg.params.c = parse_double(val, line);
            else if (key == "hbar")
                cfg.params.hbar = parse_double(val, line);
            else if (key == "H")
                cfg.params.H = parse_double(val, line);
            else if (key == "mass")
                cfg.params.mass = parse_double(val, line);
            else if (key == "mass_squared_sign")
                cfg.params.mass_squared_sign = int(parse_int(val, line));
            else if (key == "lambda")
                cfg.params.lambda = parse_double(val, line);
            else if (key == "p")
                cfg.params.p = parse_double(val, line);
            else
                fail(line, "unknown key '" + key + "' in [params]");
        } else if (section == "grid") {
            if (key == "n") {
                cfg.grid.n = int(parse_int(val, line));
                grid_n_set = true;
            } else if (key == "N")
                cfg.grid.N = int(parse_int(val, line));
            else if (key == "L")
                cfg.grid.L = parse_double(val, line);
            else
                fail(line, "unknown key '" + key + "' in [grid]");
        } else if (section == "time") {
            if (key == "T")
                cfg.T = parse_double(val, line);
            else if (key == "dt")
                cfg.dt = parse_double(val, line);
            else if (key == "snapshot_stride")
                cfg.snapshot_stride = std::size_t(parse_int(val, line));
            else
                fail(line, "unknown key '" + key + "' in [time]");
        } else if (section == "data") {
            const auto us = key.find('_');
            const std::string slot = us == std::string::npos ? key : key.substr(0, us);
            const std::string sub = us == std::string::npos ? "" : key.substr(us + 1);
            bool handled = false;
            if (slot == "u0") handled = set_data_key(cfg.u0, sub, val, line);
            if (slot == "u1") handled = set_data_key(cfg.u1, sub, val, line);
            if (!handled) fail(line, "unknown key '" + key + "' in [data]");
        } else if (section == "blowup") {
            if (key == "w0")
                cfg.w0 = parse_double(val, line);
            else if (key == "w1")
                cfg.w1 = parse_double(val, line);
            else if (key == "r_support0")
                cfg.w_options.r_support0 = parse_double(val, line);
            else if (key == "b_model") {
                if (val == "exact")
                    cfg.w_options.b_model = BModel::exact_b;
                else if (val == "floor")
                    cfg.w_options.b_model = BModel::floor_B;
                else if (val == "none")
                    cfg.w_options.b_model = BModel::none;
                else
                    fail(line, "b_model is exact, floor, or none");
            } else if (key == "t_max")
                cfg.w_options.t_max = parse_double(val, line);
            else if (key == "divergence_threshold")
                cfg.w_options.divergence_threshold = parse_double(val, line);
            else if (key == "abs_tol")
                cfg.w_options.abs_tol = parse_double(val, line);
            else if (key == "rel_tol")
                cfg.w_options.rel_tol = parse_double(val, line);
            else
                fail(line, "unknown key '" + key + "' in [blowup]");
        } else if (section == "lifespan") {
            if (key == "D_mu0")
                cfg.D_mu0 = parse_double(val, line);
            else if (key == "mu0")
                cfg.mu0 = parse_double(val, line);
            else if (key == "C")
                cfg.C = parse_double(val, line);
            else if (key == "C0")
                cfg.C0 = parse_double(val, line);
            else
                fail(line, "unknown key '" + key + "' in [lifespan]");
        } else if (section == "scatter") {
            if (key == "t_cut")
                cfg.t_cut = parse_double(val, line);
            else if (key == "mu")
                cfg.mu = parse_double(val, line);
            else if (key == "tail_tol")
                cfg.tail_tol = parse_double(val, line);
            else
                fail(line, "unknown key '" + key + "' in [scatter]");
        } else if (section == "output") {
            if (key == "dir")
                cfg.out_dir = val;
            else if (key == "snapshots")
                cfg.write_snapshots = parse_bool(val, line);
            else if (key == "timeseries")
                cfg.write_timeseries = parse_bool(val, line);
            else
                fail(line, "unknown key '" + key + "' in [output]");
        }
    }

    if (!grid_n_set) cfg.grid.n = cfg.params.n;
    cfg.params.validate();
    cfg.grid.validate();
    if (cfg.grid.n != cfg.params.n)
        throw std::runtime_error("config: [grid] n disagrees with [params] n");
    if (!(cfg.T > 0.0)) throw std::runtime_error("config: [time] T must be > 0");
    if (cfg.dt < 0.0) throw std::runtime_error("config: [time] dt must be >= 0");
    if (cfg.snapshot_stride == 0)
        throw std::runtime_error("config: [time] snapshot_stride must be >= 1");
    if (cfg.experiment == ExperimentKind::lifespan && !(cfg.params.H < 0.0))
        throw std::runtime_error("config: lifespan experiment requires H < 0");
    if (cfg.experiment == ExperimentKind::blowup_ode &&
        cfg.params.mass_squared_sign > 0)
        throw std::runtime_error(
            "config: blowup_ode requires mass_squared_sign <= 0 (Q <= 0)");
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::evolve: return "evolve";
        case ExperimentKind::blowup_ode: return "blowup_ode";
        case ExperimentKind::blowup_pde: return "blowup_pde";
        case ExperimentKind::lifespan: return "lifespan";
        case ExperimentKind::scatter: return "scatter";
        case ExperimentKind::modes: return "modes";
        case ExperimentKind::energy_audit: return "energy_audit";
    }
    return "?";
}

std::string to_string(Equation e) {
    switch (e) {
        case Equation::shifted_cubic: return "shifted_cubic";
        case Equation::gauge_variant_blowup: return "gauge_variant_blowup";
        case Equation::unshifted: return "unshifted";
        case Equation::shifted_phi: return "shifted_phi";
    }
    return "?";
}

}  // namespace dskg
