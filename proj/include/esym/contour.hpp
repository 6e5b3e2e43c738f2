#pragma once

// Residue sums sum_j g(x_j) / prod_{i != j}(x_j - x_i) written as
// (1/2 pi i) \oint g(z) / p(z) dz and evaluated by the trapezoid rule on a
// circle that encloses every root but not the branch point z = 0.

#include "esym/poly.hpp"
#include "esym/quadrature.hpp"

namespace esym {

/// sign * z^power * (ln z)^log_power / p(z)^pole_multiplicity.
struct ContourIntegrand {
  int power = 0;
  int log_power = 1;
  int pole_multiplicity = 1;
  int overall_sign = 1;
};

struct CircleContour {
  double center = 0.0;
  double radius = 0.0;
  /// Radius of the smallest centred disc holding every root.
  double root_radius = 0.0;
};

/// Centre c = midpoint of the roots' real extent, radius
/// r = R0 + margin (c - R0) where R0 is the root-disc radius. For real
/// spectra this is r = (x_max - x_min)/2 + margin x_min.
CircleContour choose_circle(const RootSpectrum& spectrum, double margin);

/// Plain n-point trapezoid value of (1/2 pi i) \oint F dz.
Complex trapezoid_circle(const MonicCharPoly& p, const ContourIntegrand& integrand,
                         const CircleContour& circle, long n_nodes);

struct ContourResult {
  Estimate estimate;
  long nodes_used = 0;
  double imaginary_residue = 0.0;
  CircleContour circle;
};

/// Doubles the node count from n_nodes until successive values agree to
/// max(abs_tol, rel_tol |I|, rounding floor). Real part returned.
ContourResult contour_residue_integral(const ElemSymCoords& e, const ContourIntegrand& integrand,
                                       long n_nodes = 16, const QuadratureSpec& quad = {});

}  // namespace esym
