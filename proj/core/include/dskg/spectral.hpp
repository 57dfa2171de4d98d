#pragma once

#include "dskg/grid.hpp"
#include "dskg/params.hpp"
#include "dskg/state.hpp"

namespace dskg {

// Discrete Fourier convention: unitary transform, coeffs = DFT(samples) / N^{n/2},
// so that sum |u_hat|^2 = sum |u|^2 and the lattice L^2 norm carries the single
// Parseval weight (L/N)^n on both sides.
SpectralField transform(const Field& field);
Field inverse(const SpectralField& sf);

// |xi|^2 for the flat coefficient index i.
double wavenumber_sq(const Grid& g, std::size_t i);

// 2/3-rule truncation: zero every mode with |k| > N/3 on any axis.
void dealias(SpectralField& sf);
Field dealias(const Field& f);

enum class NormKind { homogeneous, inhomogeneous };

/// Sobolev norm of order mu:
///   homogeneous:   ( sum |xi|^{2 mu} |u_hat|^2 w )^{1/2}
///   inhomogeneous: ( sum (1+|xi|^2)^mu |u_hat|^2 w )^{1/2}
/// with w = (L/N)^n. A positive `shift` adds shift * ||u||_{L^2}^2 under the
/// root (the sqrt(Q)-weighted pieces of the X^mu norms). mu < 0 is accepted
/// for the inhomogeneous kind only (negative orders feed the scattering
/// deviation norms); the homogeneous kind rejects it.
double sobolev_norm(const SpectralField& sf, double mu,
                    NormKind kind = NormKind::homogeneous, double shift = 0.0);

double l2_norm(const Field& f);
// ||grad u||_{\dot H^mu} = ( sum |xi|^{2mu+2} |u_hat|^2 w )^{1/2}
double grad_sobolev_norm(const SpectralField& sf, double mu);

enum class NormRegime { H_nonneg, H_neg };

/// Discrete X^mu norm of a trajectory: sup over snapshots for the L^infty
/// terms, trapezoidal rule in time for the L^2-in-time terms.
double x_norm(const Trajectory& traj, double mu, const PhysicalParams& params,
              double Q, NormRegime regime);

/// D^mu data norm: c^{-1} ||u1||_{H^mu} + ||grad u0||_{H^mu} + sqrt(Q) ||u0||_{H^mu}
/// (all homogeneous).
double d_norm(const Field& u0, const Field& u1, double mu,
              const PhysicalParams& params, double Q);

}  // namespace dskg
