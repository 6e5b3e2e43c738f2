#include <cmath>

#include "doctest.h"
#include "esym/entro.hpp"
#include "esym/monotone.hpp"
#include "json.hpp"

using namespace esym;

namespace {

SamplePlan make_plan(int d_lo, int d_hi, std::size_t n, std::uint64_t seed = 7,
                     SampleStrategy s = SampleStrategy::Simplex) {
  SamplePlan p;
  p.seed = seed;
  p.d_min = d_lo;
  p.d_max = d_hi;
  p.n_points = n;
  p.strategy = s;
  return p;
}

}  // namespace

TEST_CASE("empty plan is a vacuous pass") {
  const VerificationReport r = check_prop1(make_plan(2, 4, 0), 1e-6);
  CHECK(r.samples == 0);
  CHECK(r.checks == 0);
  CHECK(r.violations == 0);
  CHECK(r.passed());
}

TEST_CASE("derivative identity") {
  CHECK(check_prop1(make_plan(2, 2, 100), 1e-6).passed());
  CHECK(check_prop1(make_plan(4, 4, 50, 1, SampleStrategy::Cone), 1e-6).passed());
  CHECK(check_prop1_fd(make_plan(2, 4, 20), 1e-4).passed());
}

TEST_CASE("sign lattice") {
  const VerificationReport r = check_prop2_signs(make_plan(3, 3, 100), 3, 1e-9);
  CHECK(r.passed());
  CHECK(r.checks > 0);
  CHECK_THROWS_AS(check_prop2_signs(make_plan(3, 3, 1), 0, 1e-9), Error);
}

TEST_CASE("index-sum invariance") {
  CHECK(check_prop3_index_sum(make_plan(3, 3, 30), 2, 1e-8).passed());
  CHECK(check_prop3_index_sum(make_plan(5, 5, 5), 2, 1e-8).passed());
  // d = 1 has only the singleton group K = 2.
  CHECK(check_prop3_index_sum(make_plan(1, 1, 5), 2, 1e-8).violations == 0);
  // Index resolution for (1,5), (2,4) and (3,3) agrees.
  const ElemSymCoords e = draw_sample(make_plan(5, 5, 1, 3), 0).e;
  const double a = index_resolved_derivative(e, MultiIndex({1, 5}, 5), FdTarget::H).value;
  const double b = index_resolved_derivative(e, MultiIndex({2, 4}, 5), FdTarget::H).value;
  const double c = index_resolved_derivative(e, MultiIndex({3, 3}, 5), FdTarget::H).value;
  CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
  CHECK(std::abs(a - c) <= 1e-8 * std::max(1.0, std::abs(a)));
  CHECK(a == doctest::Approx(dH_multi(e, MultiIndex({3, 3}, 5)).value).epsilon(1e-8));
  CHECK_THROWS_AS(index_resolved_derivative(e, MultiIndex({1, 1}, 5), FdTarget::H), Error);
}

TEST_CASE("repeated-spectrum reduction") {
  CHECK(check_prop4_reduction(make_plan(2, 4, 10), 1e-4).passed());
  CHECK(check_repeated_coords(make_plan(2, 6, 20), 1e-9).passed());
}

TEST_CASE("complete monotonicity") {
  CHECK(check_complete_monotonicity(make_plan(2, 2, 20), 2, 3, 1e-9).passed());
  CHECK(check_complete_monotonicity(make_plan(2, 3, 10, 2, SampleStrategy::Cone), 2, 2, 1e-9).passed());
  CHECK_THROWS_AS(check_complete_monotonicity(make_plan(2, 2, 1), 1, 2, 1e-9), Error);
}

TEST_CASE("positivity") {
  CHECK(check_positivity(make_plan(2, 6, 100), 1e-10).passed());
  // Near the vertex (1, 0+, ..., 0+) both functions tend to zero.
  const RootSpectrum s = make_spectrum(std::vector<double>{1e-9, 1e-8, 1 - 1.1e-8});
  CHECK(entropy_from_roots(s) < 1e-6);
  CHECK(subentropy_from_roots(s) < 1e-6);
}

TEST_CASE("violations are counted and the payload is capped") {
  const VerificationReport r = check_prop1(make_plan(6, 6, 60), 1e-300);
  CHECK(r.violations > VerificationReport::kPayloadCap);
  CHECK(r.payload.size() == VerificationReport::kPayloadCap);
  CHECK_FALSE(r.passed());
  CHECK(r.max_abs_deviation > r.tolerance);
  CHECK_THROWS_AS(check_prop1(make_plan(2, 2, 1), 0.0), Error);
}

TEST_CASE("reports are byte-identical for identical plans") {
  CheckOptions one;
  one.threads = 1;
  CheckOptions many;
  many.threads = 4;
  const SamplePlan p = make_plan(2, 5, 25, 99);
  const std::string a = report_to_text(check_prop2_signs(p, 2, 1e-9, one));
  const std::string b = report_to_text(check_prop2_signs(p, 2, 1e-9, many));
  CHECK(a == b);
  CHECK(report_to_json(check_prop3_index_sum(p, 2, 1e-8, one)) ==
        report_to_json(check_prop3_index_sum(p, 2, 1e-8, many)));
}

TEST_CASE("report formats") {
  const VerificationReport r = check_positivity(make_plan(2, 3, 5), 1e-10);
  const std::string text = report_to_text(r);
  CHECK(text.find("property: positivity") != std::string::npos);
  CHECK(text.find("status: PASS") != std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["violations"] == 0);
  CHECK(j["samples"] == 5);
}
