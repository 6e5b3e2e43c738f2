#include <cmath>

#include "doctest.h"
#include "esym/contour.hpp"
#include "esym/deriv.hpp"

using namespace esym;

TEST_CASE("circle placement") {
  const CircleContour c = choose_circle(make_spectrum(std::vector<double>{0.25, 0.75}), 0.5);
  CHECK(c.center == doctest::Approx(0.5));
  CHECK(c.radius == doctest::Approx(0.25 + 0.5 * 0.25));
  CHECK(c.center - c.radius > 0.0);
}

TEST_CASE("trapezoid converges geometrically") {
  const MonicCharPoly p({1, 0.1875});
  const CircleContour c = choose_circle(make_spectrum(std::vector<double>{0.25, 0.75}), 0.5);
  const double exact = 2 * std::log(3.0);
  double prev = INFINITY;
  for (long n = 4; n <= 64; n *= 2) {
    const double err = std::abs(trapezoid_circle(p, {0, 1, 1, 1}, c, n).real() - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-8);
}

TEST_CASE("no admissible circle") {
  // A root sitting on the cut.
  CHECK_THROWS_AS(contour_residue_integral({0.5, -0.5}, {0, 1, 1, 1}), Error);
}
