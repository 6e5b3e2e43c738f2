#pragma once

// Divided differences [x_1, ..., x_n] f = sum_i f(x_i) / prod_{j != i} (x_i - x_j),
// extended to repeated nodes by the confluent (Hermite) table. Every
// residue sum in this library is one of these for f(x) = x^p ln x.

#include <complex>
#include <span>
#include <vector>

#include "esym/poly.hpp"

namespace esym {

/// Distinct nodes with multiplicities and, per node, the scaled derivatives
/// f^{(r)}(x) / r! for r < multiplicity of f(x) = x^power ln x.
struct ConfluentNodeTable {
  int power = 0;
  std::vector<Complex> nodes;
  std::vector<int> multiplicities;
  std::vector<std::vector<Complex>> derivative_values;

  int total() const;
};

/// Groups points closer than the clustering threshold (each group collapses to
/// its centroid) and fills in derivative values of x^power ln x.
ConfluentNodeTable make_confluent_table(std::span<const Complex> points, int power);

/// f^{(r)}(x) / r! for r = 0..count-1, f(x) = x^power ln x (principal log).
/// Uses f^{(r)} = a_r x^{p-r} ln x + c_r x^{p-r} with a_{r+1} = a_r (p - r),
/// c_{r+1} = c_r (p - r) + a_r.
std::vector<Complex> xpow_log_taylor(Complex x, int power, int count);

/// f^{(r)}(x) itself (not divided by r!) through harmonic numbers; valid
/// for r <= power only. Kept as an independent check of the recurrence.
Complex xpow_log_derivative_harmonic(Complex x, int power, int r);

/// Newton-form divided difference over the table's nodes.
Complex divided_difference(const ConfluentNodeTable& table);

/// Convenience: [points] (x^power ln x).
Complex divided_difference_xpow_log(std::span<const Complex> points, int power);

/// Generic confluent divided difference. `taylor(x, m)` must return
/// f^{(r)}(x) / r! for r = 0..m-1. Nodes are grouped exactly as above.
template <class Taylor>
Complex divided_difference_generic(std::span<const Complex> points, Taylor&& taylor);

namespace detail {
struct NodeGroups {
  std::vector<Complex> nodes;
  std::vector<int> multiplicities;
};
NodeGroups group_points(std::span<const Complex> points);
Complex newton_table(const std::vector<Complex>& nodes,
                     const std::vector<int>& multiplicities,
                     const std::vector<std::vector<Complex>>& taylor);
}  // namespace detail

template <class Taylor>
Complex divided_difference_generic(std::span<const Complex> points, Taylor&& taylor) {
  detail::NodeGroups g = detail::group_points(points);
  std::vector<std::vector<Complex>> t;
  t.reserve(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    t.push_back(taylor(g.nodes[i], g.multiplicities[i]));
  return detail::newton_table(g.nodes, g.multiplicities, t);
}

}  // namespace esym
