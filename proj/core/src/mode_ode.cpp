#include "dskg/mode_ode.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "dskg/grid.hpp"
#include "dskg/spectral.hpp"

namespace dskg {

double ModeSolution::max_wronskian_error() const {
    double m = 0.0;
    for (std::size_t i = 0; i < tgrid.size(); ++i)
        m = std::max(m, std::abs(wronskian(i) - 1.0));
    return m;
}

double a_tilde(double t, double ksq, const PhysicalParams& params, double Q) {
    const double c2 = params.c * params.c;
    return c2 * std::exp(-2.0 * params.H * t) * ksq + c2 * Q;
}

namespace {

void check_tgrid(const std::vector<double>& tgrid) {
    if (tgrid.empty() || tgrid.front() != 0.0)
        throw std::invalid_argument("solve_mode: tgrid must start at 0");
    for (std::size_t i = 1; i < tgrid.size(); ++i)
        if (!(tgrid[i] > tgrid[i - 1]))
            throw std::invalid_argument("solve_mode: tgrid must be strictly increasing");
}

ModeSolution closed_form_minkowski(double ksq, std::vector<double> tgrid,
                                   const PhysicalParams& params, double Q) {
    const double a = a_tilde(0.0, ksq, params, Q);  // constant in t at H = 0
    ModeSolution ms;
    ms.ksq = ksq;
    ms.tgrid = std::move(tgrid);
    const std::size_t m = ms.tgrid.size();
    ms.rho0.resize(m);
    ms.rho1.resize(m);
    ms.drho0.resize(m);
    ms.drho1.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = ms.tgrid[i];
        if (a > 0.0) {
            const double om = std::sqrt(a);
            ms.rho0[i] = std::cos(om * t);
            ms.rho1[i] = std::sin(om * t) / om;
            ms.drho0[i] = -om * std::sin(om * t);
            ms.drho1[i] = std::cos(om * t);
        } else if (a == 0.0) {
            ms.rho0[i] = 1.0;
            ms.rho1[i] = t;
            ms.drho0[i] = 0.0;
            ms.drho1[i] = 1.0;
        } else {
            const double g = std::sqrt(-a);
            ms.rho0[i] = std::cosh(g * t);
            ms.rho1[i] = std::sinh(g * t) / g;
            ms.drho0[i] = g * std::sinh(g * t);
            ms.drho1[i] = std::cosh(g * t);
        }
    }
    return ms;
}

}  // namespace

ModeSolution solve_mode(double ksq, std::vector<double> tgrid,
                        const PhysicalParams& params, double Q) {
    check_tgrid(tgrid);
    if (params.H == 0.0) return closed_form_minkowski(ksq, std::move(tgrid), params, Q);

    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 4>;  // rho0, drho0, rho1, drho1

    auto rhs = [&](const State& y, State& dydt, double t) {
        const double a = a_tilde(t, ksq, params, Q);
        dydt[0] = y[1];
        dydt[1] = -a * y[0];
        dydt[2] = y[3];
        dydt[3] = -a * y[2];
    };

    ModeSolution ms;
    ms.ksq = ksq;
    ms.tgrid = std::move(tgrid);
    const std::size_t m = ms.tgrid.size();
    ms.rho0.resize(m);
    ms.rho1.resize(m);
    ms.drho0.resize(m);
    ms.drho1.resize(m);

    State y{1.0, 0.0, 0.0, 1.0};
    ms.rho0[0] = 1.0;
    ms.drho0[0] = 0.0;
    ms.rho1[0] = 0.0;
    ms.drho1[0] = 1.0;

    auto stepper =
        odeint::make_controlled(1e-14, 1e-14, odeint::runge_kutta_fehlberg78<State>());
    for (std::size_t i = 1; i < m; ++i) {
        const double span = ms.tgrid[i] - ms.tgrid[i - 1];
        odeint::integrate_adaptive(stepper, rhs, y, ms.tgrid[i - 1], ms.tgrid[i],
                                   span / 16.0);
        ms.rho0[i] = y[0];
        ms.drho0[i] = y[1];
        ms.rho1[i] = y[2];
        ms.drho1[i] = y[3];
    }
    return ms;
}

std::pair<double, double> kernel_coeffs(const ModeSolution& ms, std::size_t it,
                                        std::size_t is) {
    const double rho12 = -ms.rho0[it] * ms.rho1[is] + ms.rho1[it] * ms.rho0[is];
    const double rho22 = -ms.drho0[it] * ms.rho1[is] + ms.drho1[it] * ms.rho0[is];
    return {rho12, rho22};
}

BoundReport verify_mode_bounds(const ModeSolution& ms, const PhysicalParams& params,
                               double Q, double tolerance) {
    BoundReport report;
    report.max_wronskian_error = ms.max_wronskian_error();
    if (report.max_wronskian_error > tolerance)
        report.bound_violations.push_back(
            {"wronskian", 0.0, report.max_wronskian_error, tolerance});

    const double a0 = a_tilde(0.0, ms.ksq, params, Q);
    if (a0 < 0.0 || Q < 0.0)
        throw std::invalid_argument("verify_mode_bounds: requires a_tilde >= 0 (Q >= 0)");

    auto check = [&](const char* id, double t, double lhs, double rhs) {
        if (lhs > rhs + tolerance) report.bound_violations.push_back({id, t, lhs, rhs});
    };

    for (std::size_t i = 0; i < ms.tgrid.size(); ++i) {
        const double t = ms.tgrid[i];
        const double at = a_tilde(t, ms.ksq, params, Q);
        if (at < 0.0)
            throw std::invalid_argument("verify_mode_bounds: a_tilde < 0 on the grid");
        if (params.H >= 0.0) {  // D_t a_tilde <= 0
            if (at > 0.0) check("rho0<=sqrt(a0/a)", t, std::abs(ms.rho0[i]), std::sqrt(a0 / at));
            check("Drho0<=sqrt(a0)", t, std::abs(ms.drho0[i]), std::sqrt(a0));
            if (at > 0.0) check("rho1<=1/sqrt(a)", t, std::abs(ms.rho1[i]), 1.0 / std::sqrt(at));
            check("Drho1<=1", t, std::abs(ms.drho1[i]), 1.0);
        }
        if (params.H <= 0.0) {  // D_t a_tilde >= 0
            check("rho0<=1", t, std::abs(ms.rho0[i]), 1.0);
            check("Drho0<=sqrt(a)", t, std::abs(ms.drho0[i]), std::sqrt(at));
            if (a0 > 0.0) check("rho1<=1/sqrt(a0)", t, std::abs(ms.rho1[i]), 1.0 / std::sqrt(a0));
            if (a0 > 0.0)
                check("Drho1<=sqrt(a/a0)", t, std::abs(ms.drho1[i]), std::sqrt(at / a0));
        }
    }
    report.all_passed = report.bound_violations.empty();
    return report;
}

ModeTable::ModeTable(const Grid& grid, std::vector<double> tgrid,
                     const PhysicalParams& params, double Q)
    : tgrid_(std::move(tgrid)) {
    grid.validate();
    const std::size_t total = grid.size();
    mode_to_shell_.resize(total);

    // Key shells by the exact integer sum of squared wave indices.
    std::map<long, std::size_t> shell_of;
    std::vector<double> shell_ksq;
    const double dxi = 2.0 * M_PI / grid.L;
    for (std::size_t i = 0; i < total; ++i) {
        long ksum = 0;
        std::size_t rest = i;
        for (int d = 0; d < grid.n; ++d) {
            const int idx = static_cast<int>(rest % static_cast<std::size_t>(grid.N));
            rest /= static_cast<std::size_t>(grid.N);
            const long k = grid.axis_wave_index(idx);
            ksum += k * k;
        }
        auto it = shell_of.find(ksum);
        if (it == shell_of.end()) {
            it = shell_of.emplace(ksum, shell_ksq.size()).first;
            shell_ksq.push_back(dxi * dxi * static_cast<double>(ksum));
        }
        mode_to_shell_[i] = it->second;
    }

    shells_.resize(shell_ksq.size());
    for (std::size_t s = 0; s < shell_ksq.size(); ++s)
        shells_[s] = solve_mode(shell_ksq[s], tgrid_, params, Q);
}

}  // namespace dskg
