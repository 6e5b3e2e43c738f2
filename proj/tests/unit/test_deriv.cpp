#include <cmath>
#include <numbers>

#include "doctest.h"
#include "esym/deriv.hpp"
#include "esym/entro.hpp"
#include "esym/sampling.hpp"

using namespace esym;

namespace {

// Two-outcome closed forms in (e_1, e_2) through the quadratic formula.
struct Quadratic {
  double lo, hi;
  explicit Quadratic(double e1, double e2) {
    const double r = std::sqrt(e1 * e1 - 4 * e2);
    hi = (e1 + r) / 2;
    lo = e2 / hi;
  }
};

double h2(double e1, double e2) {
  const Quadratic q(e1, e2);
  return -q.lo * std::log(q.lo) - q.hi * std::log(q.hi);
}

double q2(double e1, double e2) {
  const Quadratic q(e1, e2);
  const auto f = [](double x) { return x * x * std::log(x); };
  return -(f(q.hi) - f(q.lo)) / (q.hi - q.lo);
}

template <class F>
double central(F f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace

TEST_CASE("dH_dek_fannes closed forms") {
  CHECK(dH_dek_fannes({1, 0.25}, 2).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dH_dek_fannes({2, 1}, 2).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dH_dek_fannes({1, 0.1875}, 2).value == doctest::Approx(2 * std::log(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(dH_dek_fannes({1, 0.25}, 1), Error);
}

TEST_CASE("fannes integral survives complex roots") {
  // P(t) = t^2 + t + 1/2: roots of p are (1 +- i)/2. Antiderivative by arctan.
  const double expected = 2.0 * (std::numbers::pi / 2 - std::atan(1.0));
  CHECK(dH_dek_fannes({1, 0.5}, 2).value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("dH_de1") {
  const double fd = central([](double e1) { return h2(e1, 0.1875); }, 1.0, 1e-5);
  CHECK(fd == doctest::Approx(-1.2616240).epsilon(1e-7));
  CHECK(dH_de1({1, 0.1875}).value == doctest::Approx(fd).epsilon(1e-9));
  CHECK(dH_de1({1, 0.25}).value == doctest::Approx(std::numbers::ln2 - 2).epsilon(1e-12));
  CHECK(dH_de1(ElemSymCoords{1.0}).value == doctest::Approx(-1.0));
}

TEST_CASE("dH_dek_residue") {
  CHECK(dH_dek_residue({1, 0.1875}, 2).value == doctest::Approx(2 * std::log(3.0)).epsilon(1e-13));
  CHECK(dH_dek_residue({6, 11, 6}, 3).value ==
        doctest::Approx(std::numbers::ln2 - std::log(3.0) / 2).epsilon(1e-13));
  CHECK(dH_dek_residue({1, 0.25}, 2).value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("contour integrals") {
  const ElemSymCoords e{1, 0.1875};
  CHECK(contour_residue_integral(e, {1, 0, 1, 1}).estimate.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(contour_residue_integral(e, {0, 1, 1, 1}).estimate.value ==
        doctest::Approx(2 * std::log(3.0)).epsilon(1e-12));
  CHECK(subentropy_contour(e).estimate.value == doctest::Approx(q2(1, 0.1875)).epsilon(1e-12));
  CHECK(dH_dek_contour(e, 1).estimate.value == doctest::Approx(dH_de1(e).value).epsilon(1e-12));
}

TEST_CASE("three engines agree on random probability points") {
  SamplePlan plan;
  plan.seed = 91;
  plan.d_min = 2;
  plan.d_max = 6;
  plan.n_points = 20;
  for (const Sample& s : draw_samples(plan)) {
    for (int k = 2; k <= s.e.d(); ++k) {
      const double f = dH_dek(s.e, k, DerivMethod::Fannes).value;
      const double r = dH_dek(s.e, k, DerivMethod::Residue).value;
      const double c = dH_dek(s.e, k, DerivMethod::Contour).value;
      CHECK(std::abs(f - r) <= 1e-8 * std::max(1.0, std::abs(f)));
      CHECK(std::abs(f - c) <= 1e-8 * std::max(1.0, std::abs(f)));
    }
  }
}

TEST_CASE("repeated_spectrum_coords") {
  CHECK(repeated_spectrum_coords({1, 0.25}, 1) == ElemSymCoords{1, 0.25});
  CHECK(repeated_spectrum_coords({1, 0.25}, 2) == ElemSymCoords{2, 1.5, 0.5, 0.0625});
  CHECK(repeated_spectrum_coords({1, 0.1875}, 2) == ElemSymCoords{2, 11.0 / 8, 3.0 / 8, 9.0 / 256});
  // Against Vieta on the repeated roots.
  const ElemSymCoords t = repeated_spectrum_coords({6, 11, 6}, 3);
  const ElemSymCoords v = elemsym_from_roots(make_spectrum(std::vector<double>{1, 1, 1, 2, 2, 2, 3, 3, 3}));
  for (int k = 1; k <= 9; ++k) CHECK(t(k) == doctest::Approx(v(k)).epsilon(1e-12));
}

TEST_CASE("dH_multi") {
  const ElemSymCoords e{1, 0.1875};
  // -\int dt / ((t + 1/4)(t + 3/4))^2 by partial fractions.
  const double a = 0.25, b = 0.75, c = 1 / (b - a);
  const double closed = -c * c * (1 / a + 1 / b - 2 * c * std::log(b / a));
  CHECK(closed == doctest::Approx(-3.7555367).epsilon(1e-7));
  CHECK(dH_multi(e, MultiIndex({2, 2}, 2)).value == doctest::Approx(closed).epsilon(1e-10));
  CHECK(dH_multi(e, MultiIndex({2}, 2)).value == doctest::Approx(dH_dek_fannes(e, 2).value).epsilon(1e-14));

  // Second derivative against a difference of first derivatives.
  const double fd = central([](double e2) { return dH_dek_fannes({1, e2}, 2).value; }, 0.1875, 1e-5);
  CHECK(dH_multi(e, MultiIndex({2, 2}, 2)).value == doctest::Approx(fd).epsilon(1e-7));

  CHECK_THROWS_AS(MultiIndex({1, 3}, 2), Error);
}

TEST_CASE("dQ_dek") {
  const double fd2 = central([](double e2) { return q2(1, e2); }, 0.1875, 1e-5);
  const double fd1 = central([](double e1) { return q2(e1, 0.1875); }, 1.0, 1e-5);
  CHECK(fd2 == doctest::Approx(0.7041631).epsilon(1e-7));
  CHECK(dQ_dek({1, 0.1875}, 2).value == doctest::Approx(fd2).epsilon(1e-8));
  CHECK(dQ_dek({1, 0.1875}, 1).value == doctest::Approx(fd1).epsilon(1e-8));
  // \int t^2 / (t + 1/2)^4 dt = 2/3.
  CHECK(dQ_dek({1, 0.25}, 2).value == doctest::Approx(2.0 / 3).epsilon(1e-10));
  // The identity with mixed H derivatives.
  CHECK(dQ_dek({1, 0.1875}, 2).value ==
        doctest::Approx(-dH_multi({1, 0.1875}, MultiIndex({1, 1}, 2)).value).epsilon(1e-10));
}

TEST_CASE("dQ_multi against differences of dQ_dek") {
  const double fd = central([](double e2) { return dQ_dek({1, e2}, 2).value; }, 0.1875, 1e-5);
  CHECK(dQ_multi({1, 0.1875}, MultiIndex({2, 2}, 2)).value == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("MultiIndex") {
  const MultiIndex i({3, 1, 2}, 4);
  CHECK(i.order() == 3);
  CHECK(i.index_sum() == 6);
  CHECK(i.str() == "(1,2,3)");
  CHECK(all_multi_indices(3, 2).size() == 6);
}
