#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "esym/bernstein.hpp"

using namespace esym;

TEST_CASE("exp(-H) and exp(-Q) on the slice") {
  const double quarter[] = {0.25};
  const double frac[] = {0.1875};
  const double tiny[] = {1e-12};
  CHECK(exp_neg_entropy(quarter) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(exp_neg_entropy(frac) == doctest::Approx(std::exp(-0.5623351446188083)).epsilon(1e-12));
  CHECK(exp_neg_entropy(tiny) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(exp_neg_subentropy(quarter) == doctest::Approx(std::exp(0.5) / 2).epsilon(1e-7));
  CHECK(exp_neg_subentropy(frac) == doctest::Approx(std::exp(-0.150355536368267)).epsilon(1e-12));
  CHECK(exp_neg_subentropy(tiny) == doctest::Approx(1.0).epsilon(1e-9));
  const double outside[] = {0.5};
  CHECK_THROWS_AS(exp_neg_entropy(outside), Error);
}

TEST_CASE("exp(-H) is monotone on the probability slice") {
  double prev = 2.0;
  for (double t = 0.005; t <= 0.25; t += 0.005) {
    const double v[] = {t};
    const double f = exp_neg_entropy(v);
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("continued transform matches the real function and the gradient path") {
  for (double t : {0.05, 0.1875, 0.25}) {
    const double v[] = {t};
    CHECK(probe_transform(ProbeTarget::H, t).real() == doctest::Approx(exp_neg_entropy(v)).epsilon(1e-7));
  }
  // Past the discriminant surface the real integral still defines H.
  const double h = entropy_by_gradient_path(1.0).value;
  CHECK(std::exp(-h) == doctest::Approx(probe_transform(ProbeTarget::H, 1.0).real()).epsilon(1e-9));
  const Complex z = probe_transform(ProbeTarget::Q, Complex(0.3, 0.2));
  const Complex zc = probe_transform(ProbeTarget::Q, Complex(0.3, -0.2));
  CHECK(std::abs(z - std::conj(zc)) <= 1e-14);
}

TEST_CASE("divisibility holds exactly in the transform domain") {
  for (ProbeTarget target : {ProbeTarget::H, ProbeTarget::Q}) {
    const PoweredTransform f = target_transform(target);
    for (int m = 2; m <= 4; ++m)
      for (double t : {0.01, 0.2, 3.0, 50.0}) {
        const Complex whole = f(t, 1.0);
        CHECK(std::abs(whole - std::pow(f(t, 1.0 / m), m)) <= 1e-14 * std::abs(whole));
      }
  }
}

TEST_CASE("calibration inversion") {
  LaplaceProbeSpec spec;
  spec.s_grid = make_grid(0.1, 10.0, 60, false);
  const DensityResult r = invert_transform(calibration_transform("1over1plusT"), spec);
  for (std::size_t i = 0; i < r.s.size(); ++i) CHECK(std::abs(r.mu[i] - std::exp(-r.s[i])) <= 1e-6);
  CHECK(r.negative_points.empty());

  // A point mass at 0 leaves nothing on s >= 0.1.
  const DensityResult c = invert_transform(calibration_transform("const1"), spec);
  for (double v : c.mu) CHECK(std::abs(v) <= 1e-6);

  const RoundtripReport rt =
      roundtrip_from_samples(invert_transform(calibration_transform("1over1plusT"),
                                              [] {
                                                LaplaceProbeSpec s;
                                                s.s_grid = make_grid(1e-4, 60.0, 400, true);
                                                return s;
                                              }()),
                             calibration_transform("1over1plusT"), make_grid(0.05, 0.25, 11, false));
  CHECK(rt.max_rel_deviation <= 1e-4);
  CHECK_THROWS_AS(calibration_transform("sin"), Error);
}

TEST_CASE("shifted point mass splits in half") {
  // e^{-a t} = (e^{-a t / 2})^2 in the transform domain.
  const PoweredTransform f = calibration_transform("exp2");
  CHECK(std::abs(f(0.7, 1.0) - std::exp(-1.4)) <= 1e-15);
  CHECK(std::abs(f(0.7, 0.5) - std::exp(-0.7)) <= 1e-15);
}

TEST_CASE("H density probe") {
  LaplaceProbeSpec spec;
  spec.s_grid = make_grid(0.5, 20.0, 40, true);
  const DensityResult r = invert_density(spec, ProbeTarget::H);
  for (std::size_t i = 0; i < r.s.size(); ++i) CHECK(r.mu[i] >= -r.negativity_threshold[i]);
  spec.divisibility_m = 3;
  const DivisibilityReport q = divisibility_probe(spec, ProbeTarget::Q);
  CHECK(q.m == 3);
  CHECK(q.transform_identity_deviation <= 1e-14);
  CHECK(q.convolved.size() == q.s.size());
}

TEST_CASE("probe settings validation") {
  LaplaceProbeSpec spec;
  CHECK_THROWS_AS(spec.validate(), Error);  // empty grid
  spec.s_grid = {1.0, 0.5};
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.s_grid = {0.5, 1.0};
  spec.gs_order = 16;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.gs_order = 14;
  spec.divisibility_m = 1;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.divisibility_m = 2;
  spec.d = 3;
  CHECK_THROWS_AS(spec.validate(), Error);
  LaplaceProbeSpec empty;
  CHECK_THROWS_AS(roundtrip_check(empty, ProbeTarget::H, {0.1}), Error);
}

TEST_CASE("density CSV") {
  LaplaceProbeSpec spec;
  spec.s_grid = make_grid(1.0, 2.0, 3, false);
  const std::string csv = density_csv(invert_transform(calibration_transform("1over1plusT"), spec));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "s,mu,method_delta");
  int rows = 0;
  while (std::getline(in, line)) {
    double s, mu, delta;
    CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf", &s, &mu, &delta) == 3);
    ++rows;
  }
  CHECK(rows == 3);
}
