#pragma once
// Numerical inverse Laplace transforms. With the transform pair
// f(t) = \int_0^inf e^{-s t} mu(s) ds, both routines return mu(s).

#include <functional>

#include "esym/poly.hpp"

namespace esym {

/// f evaluated off the negative real axis.
using ComplexTransform = std::function<Complex(Complex)>;

/// Fixed Talbot contour with M nodes: S(theta) = r theta (cot theta + i),
/// r = 2M / (5 s). Needs f analytic on C \ (-inf, 0].
double talbot_invert(const ComplexTransform& f, double s, int nodes = 32);

/// Gaver-Stehfest of even order N <= 14; f sampled at k ln 2 / s only.
double gaver_stehfest_invert(const std::function<double(double)>& f, double s, int order = 14);

/// Stehfest weights V_1..V_N.
std::vector<double> stehfest_weights(int order);

}  // namespace esym
