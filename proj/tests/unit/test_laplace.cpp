#include <cmath>

#include "doctest.h"
#include "esym/laplace.hpp"

using namespace esym;

TEST_CASE("Talbot recovers textbook pairs") {
  const auto f = [](Complex t) { return 1.0 / (1.0 + t); };
  for (double s = 0.1; s <= 10.0; s += 0.3) CHECK(std::abs(talbot_invert(f, s) - std::exp(-s)) <= 1e-9);
  // 1/(1+t)^2 <-> s e^{-s}.
  const auto g = [](Complex t) { return 1.0 / ((1.0 + t) * (1.0 + t)); };
  CHECK(talbot_invert(g, 2.0) == doctest::Approx(2 * std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("Stehfest weights") {
  const std::vector<double> w = stehfest_weights(2);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == doctest::Approx(2.0));
  CHECK(w[1] == doctest::Approx(-2.0));
  for (int n = 2; n <= 14; n += 2) {
    double sum = 0.0;
    for (double v : stehfest_weights(n)) sum += v;
    CHECK(std::abs(sum) <= 1e-6);
  }
  CHECK_THROWS_AS(stehfest_weights(7), Error);
  CHECK_THROWS_AS(stehfest_weights(16), Error);
}

TEST_CASE("Gaver-Stehfest near the origin") {
  const auto f = [](double t) { return 1.0 / (1.0 + t); };
  CHECK(std::abs(gaver_stehfest_invert(f, 0.5) - std::exp(-0.5)) <= 1e-6);
}

// Both inversions of 1/(1+t) on [0.1, 10]. Order-14 truncation error of
// Gaver-Stehfest grows past 1e-5 from s of about 2 on.
TEST_CASE("Talbot and Gaver-Stehfest agree on the calibration pair") {
  const auto fc = [](Complex t) { return 1.0 / (1.0 + t); };
  const auto fr = [](double t) { return 1.0 / (1.0 + t); };
  double worst = 0.0;
  for (int i = 0; i <= 99; ++i) {
    const double s = 0.1 + i * (10.0 - 0.1) / 99;
    worst = std::max(worst, std::abs(talbot_invert(fc, s) - gaver_stehfest_invert(fr, s)));
  }
  CHECK(worst <= 1e-5);
}
