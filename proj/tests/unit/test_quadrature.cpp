#include <cmath>
#include <numbers>

#include "doctest.h"
#include "esym/quadrature.hpp"

using namespace esym;

TEST_CASE("integrate_adaptive") {
  const Estimate e = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, {});
  CHECK(e.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(e.error <= 1e-10);
  // Endpoint singularity.
  const Estimate s = integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, {});
  CHECK(s.value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("half line split") {
  // \int_0^inf dt / (1 + t^2) = pi / 2.
  const Estimate e = integrate_split_half_line([](double t) { return 1 / (1 + t * t); },
                                               [](double u) { return 1 / (u * u + 1); }, {});
  CHECK(e.value == doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
}

TEST_CASE("budget exhaustion carries the best value") {
  QuadratureSpec q;
  q.max_evals = 45;
  q.abs_tol = q.rel_tol = 1e-15;
  try {
    integrate_adaptive([](double x) { return std::sin(50 * x); }, 0.0, 3.0, q);
    FAIL("expected NumericalFailure");
  } catch (const NumericalFailure& f) {
    CHECK(std::isfinite(f.best_value()));
    CHECK(f.kind() == ErrorKind::NumericalFailure);
  }
}

TEST_CASE("reproducible bit for bit") {
  const auto f = [](double x) { return std::exp(-x) * std::cos(7 * x); };
  CHECK(integrate_adaptive(f, 0, 5, {}).value == integrate_adaptive(f, 0, 5, {}).value);
}

TEST_CASE("QuadratureSpec validation") {
  QuadratureSpec q;
  q.circle_margin = 1.0;
  CHECK_THROWS_AS(q.validate(), Error);
  q = {};
  q.abs_tol = 0;
  q.rel_tol = 0;
  CHECK_THROWS_AS(q.validate(), Error);
}
