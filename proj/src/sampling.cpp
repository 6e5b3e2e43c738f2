#include "esym/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace esym {

const char* to_string(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::Simplex: return "simplex";
    case SampleStrategy::Cone: return "cone";
    case SampleStrategy::Boundary: return "boundary";
  }
  return "unknown";
}

SampleStrategy parse_strategy(const std::string& name) {
  if (name == "simplex") return SampleStrategy::Simplex;
  if (name == "cone") return SampleStrategy::Cone;
  if (name == "boundary") return SampleStrategy::Boundary;
  throw Error(ErrorKind::Usage, "unknown sampling strategy '" + name + "'");
}

namespace {

// std::mt19937_64 output is fixed by the standard; the distributions are
// not, so variates are built by hand from raw 64-bit draws.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
  }

  // Uniform on (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  double exponential() { return -std::log(uniform()); }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<double> probability_vector(Stream& s, int d) {
  std::vector<double> x(d);
  double total = 0.0;
  for (double& v : x) total += (v = s.exponential());
  for (double& v : x) v /= total;
  return x;
}

}  // namespace

Sample draw_sample(const SamplePlan& plan, std::size_t i) {
  if (plan.d_min < 1 || plan.d_max < plan.d_min)
    throw Error(ErrorKind::Usage, "sample plan needs 1 <= d_min <= d_max");
  Stream s(plan.seed, i);
  const int d = plan.d_min == plan.d_max ? plan.d_min : s.integer(plan.d_min, plan.d_max);
  Sample out;
  out.index = i;
  switch (plan.strategy) {
    case SampleStrategy::Simplex: {
      out.roots = probability_vector(s, d);
      break;
    }
    case SampleStrategy::Boundary: {
      out.roots = probability_vector(s, d);
      if (d >= 2) {
        std::sort(out.roots.begin(), out.roots.end());
        const int j = s.integer(0, d - 2);
        const double delta = std::pow(10.0, -6.0 + 4.0 * s.uniform());
        out.roots[j + 1] = out.roots[j] * (1.0 + delta);
        double total = 0.0;
        for (double v : out.roots) total += v;
        for (double& v : out.roots) v /= total;
      }
      break;
    }
    case SampleStrategy::Cone: {
      std::vector<double> e(d);
      for (double& v : e) v = std::pow(10.0, -3.0 + 4.0 * s.uniform());
      out.e = ElemSymCoords(std::move(e));
      return out;
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.e = elemsym_from_roots(make_spectrum(out.roots));
  return out;
}

std::vector<Sample> draw_samples(const SamplePlan& plan) {
  std::vector<Sample> out;
  out.reserve(plan.n_points);
  for (std::size_t i = 0; i < plan.n_points; ++i) out.push_back(draw_sample(plan, i));
  return out;
}

}  // namespace esym
