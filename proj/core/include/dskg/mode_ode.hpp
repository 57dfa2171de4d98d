#pragma once

#include <string>
#include <vector>

#include "dskg/grid.hpp"
#include "dskg/params.hpp"

namespace dskg {

/// Fundamental pair of rho'' + a_tilde(t) rho = 0 with
/// rho_0(0)=1, Drho_0(0)=0, rho_1(0)=0, Drho_1(0)=1, sampled on tgrid.
/// Wronskian rho_0 Drho_1 - rho_1 Drho_0 == 1 identically.
struct ModeSolution {
    double ksq = 0.0;
    std::vector<double> tgrid;
    std::vector<double> rho0, rho1, drho0, drho1;

    double wronskian(std::size_t i) const {
        return rho0[i] * drho1[i] - rho1[i] * drho0[i];
    }
    double max_wronskian_error() const;
};

struct BoundViolation {
    std::string bound_id;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct BoundReport {
    double max_wronskian_error = 0.0;
    std::vector<BoundViolation> bound_violations;
    bool all_passed = true;
};

/// a_tilde(t, xi) = c^2 e^{-2Ht} |xi|^2 + c^2 Q
double a_tilde(double t, double ksq, const PhysicalParams& params, double Q);

/// Solves the fundamental system on tgrid (tgrid[0] == 0, strictly increasing).
/// H == 0 uses the constant-coefficient closed forms; otherwise an adaptive
/// RK8(7) integrator at abs/rel tolerance 1e-14 lands on each grid point.
/// a_tilde may go negative (imaginary-mass path); the integrator handles the
/// hyperbolic growth, but no Lemma-style bound is certified there.
ModeSolution solve_mode(double ksq, std::vector<double> tgrid,
                        const PhysicalParams& params, double Q);

/// The bilinear kernel entries
///   rho12(t,s) = -rho0(t) rho1(s) + rho1(t) rho0(s)
///   rho22(t,s) = -Drho0(t) rho1(s) + Drho1(t) rho0(s)
/// evaluated from samples it (time t) and is (time s) of the same solution.
std::pair<double, double> kernel_coeffs(const ModeSolution& ms, std::size_t it,
                                        std::size_t is);

/// Checks the propagator-symbol bounds, sample by sample at tolerance 1e-8:
/// H >= 0 (a_tilde non-increasing): |rho0| <= sqrt(a(0)/a(t)), |Drho0| <= sqrt(a(0)),
///                                  |rho1| <= 1/sqrt(a(t)),    |Drho1| <= 1;
/// H <= 0 (a_tilde non-decreasing): |rho0| <= 1,               |Drho0| <= sqrt(a(t)),
///                                  |rho1| <= 1/sqrt(a(0)),    |Drho1| <= sqrt(a(t)/a(0)).
/// Requires a_tilde >= 0 on the grid; refuses the imaginary-mass regime.
BoundReport verify_mode_bounds(const ModeSolution& ms, const PhysicalParams& params,
                               double Q, double tolerance = 1e-8);

/// One solve per distinct |xi|^2 shell of a lattice; radially symmetric ksq
/// values repeat heavily, so the N^n mode solves collapse to the shell count.
class ModeTable {
  public:
    ModeTable(const Grid& grid, std::vector<double> tgrid,
              const PhysicalParams& params, double Q);

    const ModeSolution& shell(std::size_t mode_index) const {
        return shells_[mode_to_shell_[mode_index]];
    }
    const std::vector<ModeSolution>& shells() const { return shells_; }
    const std::vector<double>& tgrid() const { return tgrid_; }
    std::size_t modes() const { return mode_to_shell_.size(); }

  private:
    std::vector<double> tgrid_;
    std::vector<ModeSolution> shells_;
    std::vector<std::size_t> mode_to_shell_;
};

}  // namespace dskg
