#pragma once

#include "dskg/grid.hpp"
#include "dskg/params.hpp"

namespace dskg {

// Every evaluator below is pointwise on real-valued fields (so Re u = u and
// |u|^2 = u^2 are hard-coded), followed by 2/3-rule dealiasing in spectral
// space when `dealias_result` is set.

/// h(u) = lambda e^{-nHt} u^3 + 3 lambda r0 e^{-nHt/2} u^2
Field eval_h(const Field& u, double t, const PhysicalParams& params,
             const DerivedConstants& derived, bool dealias_result = true);

/// J(phi) = lambda (phi^3 + 3 r0 phi^2 + 2 r0^2 phi)
Field eval_J(const Field& phi, const PhysicalParams& params,
             const DerivedConstants& derived, bool dealias_result = true);

/// Max-norm of lambda (phi + r0)^3 - (mc/hbar)^2 (phi + r0) - J(phi),
/// which vanishes identically by lambda r0^2 = (mc/hbar)^2.
double shift_identity_residual(const Field& phi, const PhysicalParams& params,
                               const DerivedConstants& derived);

/// sign = +1: lambda e^{-n(p-1)Ht/2} |u|^{p-1} u   (gauge invariant)
/// sign = -1:       -e^{-n(p-1)Ht/2} |u|^p         (blow-up source)
Field eval_gauge_variant(const Field& u, double t, const PhysicalParams& params,
                         int sign, bool dealias_result = true);

}  // namespace dskg
