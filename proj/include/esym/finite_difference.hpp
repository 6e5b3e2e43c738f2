#pragma once

#include <functional>

#include "esym/deriv.hpp"
#include "esym/poly.hpp"

namespace esym {

enum class FdTarget { H, Q };

/// Default relative step for an order-m stencil: 1e-6 for first
/// derivatives, larger for higher orders where rounding grows like h^{-m}.
double default_fd_step(int order);

/// Central product stencil D_{i_1} ... D_{i_m} f with steps
/// h_k = step * max(1, |e_k|), capped at |e_k| / 100 for small nonzero
/// coordinates, plus one Richardson level (h and h/2). A stencil corner where f throws
/// becomes a Domain error naming that corner.
double fd_derivative(const std::function<double(const ElemSymCoords&)>& f, const ElemSymCoords& e,
                     const MultiIndex& idx, double step);

/// H uses the analytic continuation over the cone, so stencils may straddle
/// the discriminant surface; Q is evaluated from its residue form.
double finite_difference_derivative(const ElemSymCoords& e, const MultiIndex& idx, FdTarget target,
                                    double step = 0.0);

/// Target function used by the oracle.
double fd_target_value(const ElemSymCoords& e, FdTarget target);

}  // namespace esym
