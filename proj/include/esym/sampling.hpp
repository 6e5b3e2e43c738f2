#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esym/poly.hpp"

namespace esym {

enum class SampleStrategy {
  Simplex,   // uniform probability vectors, e_1 = 1
  Cone,      // independent log-uniform e_k in [1e-3, 10]
  Boundary,  // probability vectors with one near-confluent pair
};

const char* to_string(SampleStrategy s);
SampleStrategy parse_strategy(const std::string& name);

struct SamplePlan {
  std::uint64_t seed = 0;
  int d_min = 2;
  int d_max = 2;
  std::size_t n_points = 0;
  SampleStrategy strategy = SampleStrategy::Simplex;
};

struct Sample {
  std::size_t index = 0;
  ElemSymCoords e;
  /// Generating probability vector (empty for cone samples).
  std::vector<double> roots;
};

/// Sample i of the plan. Each index owns an independently seeded stream, so
/// samples can be drawn in any order or in parallel with identical results.
Sample draw_sample(const SamplePlan& plan, std::size_t i);

std::vector<Sample> draw_samples(const SamplePlan& plan);

}  // namespace esym
