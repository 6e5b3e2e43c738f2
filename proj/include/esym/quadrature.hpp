#pragma once

#include <functional>

#include "esym/error.hpp"

namespace esym {

struct QuadratureSpec {
  enum class Method { SemiInfiniteAdaptive, CircleTrapezoid };

  Method method = Method::SemiInfiniteAdaptive;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  long max_evals = 1'000'000;
  /// Fraction of the gap between the root disc and the origin that the
  /// contour circle uses; must lie in (0, 1).
  double circle_margin = 0.5;

  void validate() const;
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]. Panels are bisected
/// worst-first; the final sum runs in left-to-right panel order, so results
/// are reproducible bit for bit. Throws NumericalFailure (carrying the best
/// value) if max(abs_tol, rel_tol |I|) is not reached within max_evals.
Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec);

/// Integral of f over [0, inf): [0, 1] directly plus the tail mapped by
/// t = 1/u onto (0, 1]. `tail` must be u -> f(1/u) / u^2, supplied by the
/// caller in a cancellation-free form.
Estimate integrate_split_half_line(const std::function<double(double)>& head,
                                   const std::function<double(double)>& tail,
                                   const QuadratureSpec& spec);

}  // namespace esym
