#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "esym/divided_difference.hpp"

using namespace esym;

TEST_CASE("Taylor recurrence matches the harmonic-number closed form") {
  for (int p = 0; p <= 8; ++p) {
    for (const Complex x : {Complex(0.3, 0.0), Complex(2.5, 0.0), Complex(0.4, 0.7)}) {
      const std::vector<Complex> t = xpow_log_taylor(x, p, p + 1);
      double factorial = 1.0;
      for (int r = 0; r <= p; ++r) {
        if (r > 0) factorial *= r;
        const Complex h = xpow_log_derivative_harmonic(x, p, r) / factorial;
        CHECK(std::abs(t[r] - h) <= 1e-13 * std::max(1.0, std::abs(h)));
      }
    }
  }
}

TEST_CASE("two distinct nodes") {
  const std::vector<Complex> pts{0.25, 0.75};
  const double direct = (0.75 * std::log(0.75) - 0.25 * std::log(0.25)) / 0.5;
  CHECK(divided_difference_xpow_log(pts, 1).real() == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("confluent limit") {
  // [x, x] f = f'(x); f = x^2 ln x.
  const std::vector<Complex> pts{0.5, 0.5};
  CHECK(divided_difference_xpow_log(pts, 2).real() ==
        doctest::Approx(2 * 0.5 * std::log(0.5) + 0.5).epsilon(1e-14));
  // [x, x, x] f = f''(x) / 2 with f = x^3 ln x: (6x ln x + 5x) / 2.
  const std::vector<Complex> triple{0.4, 0.4, 0.4};
  CHECK(divided_difference_xpow_log(triple, 3).real() ==
        doctest::Approx((6 * 0.4 * std::log(0.4) + 5 * 0.4) / 2).epsilon(1e-13));
}

TEST_CASE("values within the clustering threshold collapse onto their centroid") {
  const std::vector<Complex> a{0.5, 0.5 + 1e-9};
  const ConfluentNodeTable t = make_confluent_table(a, 2);
  CHECK(t.nodes.size() == 1);
  CHECK(t.total() == 2);
  const std::vector<Complex> b{0.5, 0.5 + 1e-5};
  CHECK(make_confluent_table(b, 2).nodes.size() == 2);
}

TEST_CASE("polynomials: [x_0..x_n] x^n = 1") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int n = 1; n <= 7; ++n) {
    std::vector<Complex> pts;
    for (int i = 0; i <= n; ++i) pts.emplace_back(u(rng));
    pts.push_back(pts.front());  // one repeated node
    const int deg = n + 1;
    const auto taylor = [deg](Complex x, int m) {
      std::vector<Complex> out(m);
      double binom = 1.0;
      for (int r = 0; r < m; ++r) {
        out[r] = binom * std::pow(x, deg - r);
        binom = binom * (deg - r) / (r + 1);
      }
      return out;
    };
    CHECK(std::abs(divided_difference_generic(pts, taylor) - 1.0) <= 1e-10);
  }
}

TEST_CASE("permutation invariance") {
  std::vector<Complex> pts{0.1, 0.35, 0.2, 0.9, 0.45};
  const Complex ref = divided_difference_xpow_log(pts, 5);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(pts.begin(), pts.end(), rng);
    CHECK(std::abs(divided_difference_xpow_log(pts, 5) - ref) <= 1e-12 * std::abs(ref));
  }
}

TEST_CASE("branch cut is a domain error") {
  const std::vector<Complex> pts{-0.5, 0.5};
  CHECK_THROWS_AS(divided_difference_xpow_log(pts, 2), Error);
}
