#include "esym/divided_difference.hpp"

#include <algorithm>
#include <numeric>

#include "esym/detail/ipow.hpp"

namespace esym {

using detail::ipow;

int ConfluentNodeTable::total() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

namespace {

using ComplexExt = std::complex<long double>;

template <class R>
std::vector<std::complex<R>> taylor_impl(std::complex<R> x, int power, int count) {
  if (x.imag() == 0 && x.real() <= 0)
    throw Error(ErrorKind::Domain, "x^p ln x evaluated on the branch cut (-inf, 0]");
  std::vector<std::complex<R>> out(count);
  const std::complex<R> lx = std::log(x);
  R a = 1;  // a_r / r!
  R c = 0;  // c_r / r!
  for (int r = 0; r < count; ++r) {
    const std::complex<R> xp = ipow(x, power - r);
    out[r] = a * xp * lx + c * xp;
    const R next_a = a * (power - r) / (r + 1);
    const R next_c = (c * (power - r) + a) / (r + 1);
    a = next_a;
    c = next_c;
  }
  return out;
}

// Nodes with small gaps cancel digits at every level of the table, so the
// table runs in extended precision.
ComplexExt newton_ext(const std::vector<ComplexExt>& nodes, const std::vector<int>& multiplicities,
                      const std::vector<std::vector<ComplexExt>>& taylor) {
  std::vector<ComplexExt> z;
  std::vector<std::size_t> id;
  std::vector<ComplexExt> c;
  for (std::size_t g = 0; g < nodes.size(); ++g) {
    for (int r = 0; r < multiplicities[g]; ++r) {
      z.push_back(nodes[g]);
      id.push_back(g);
      c.push_back(taylor[g][0]);
    }
  }
  const std::size_t n = z.size();
  if (n == 0) throw Error(ErrorKind::Usage, "divided difference needs at least one node");
  // After level j, c[i] holds [z_{i-j}, ..., z_i] f.
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      if (id[i] == id[i - j]) {
        c[i] = taylor[id[i]][j];
      } else {
        c[i] = (c[i] - c[i - 1]) / (z[i] - z[i - j]);
      }
    }
  }
  return c[n - 1];
}

ComplexExt widen(Complex z) { return {z.real(), z.imag()}; }
Complex narrow(ComplexExt z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

std::vector<Complex> xpow_log_taylor(Complex x, int power, int count) {
  return taylor_impl<double>(x, power, count);
}

Complex xpow_log_derivative_harmonic(Complex x, int power, int r) {
  if (r < 0 || r > power) throw Error(ErrorKind::Usage, "harmonic form needs 0 <= r <= power");
  double falling = 1.0;
  for (int i = 0; i < r; ++i) falling *= power - i;
  double harmonic_gap = 0.0;  // H_p - H_{p-r}
  for (int i = power - r + 1; i <= power; ++i) harmonic_gap += 1.0 / i;
  const Complex xp = ipow(x, power - r);
  return falling * xp * (std::log(x) + harmonic_gap);
}

namespace detail {

NodeGroups group_points(std::span<const Complex> points) {
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (confluent(points[i], points[j])) parent[find(i)] = find(j);

  std::vector<Complex> sum(n, 0.0);
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[find(i)] += points[i];
    ++count[find(i)];
  }
  NodeGroups g;
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) continue;
    Complex c = sum[i] / static_cast<double>(count[i]);
    // A real cluster centroid should stay on the axis.
    if (std::abs(c.imag()) <= 1e-15 * std::abs(c)) c = Complex(c.real(), 0.0);
    g.nodes.push_back(c);
    g.multiplicities.push_back(count[i]);
  }
  std::vector<std::size_t> order(g.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Complex x = g.nodes[a], y = g.nodes[b];
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  NodeGroups sorted;
  for (std::size_t i : order) {
    sorted.nodes.push_back(g.nodes[i]);
    sorted.multiplicities.push_back(g.multiplicities[i]);
  }
  return sorted;
}

Complex newton_table(const std::vector<Complex>& nodes,
                     const std::vector<int>& multiplicities,
                     const std::vector<std::vector<Complex>>& taylor) {
  std::vector<ComplexExt> z;
  std::vector<std::vector<ComplexExt>> t;
  for (const Complex& x : nodes) z.push_back(widen(x));
  for (const auto& row : taylor) {
    t.emplace_back();
    for (const Complex& v : row) t.back().push_back(widen(v));
  }
  return narrow(newton_ext(z, multiplicities, t));
}

}  // namespace detail

ConfluentNodeTable make_confluent_table(std::span<const Complex> points, int power) {
  detail::NodeGroups g = detail::group_points(points);
  ConfluentNodeTable t;
  t.power = power;
  t.nodes = std::move(g.nodes);
  t.multiplicities = std::move(g.multiplicities);
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    t.derivative_values.push_back(xpow_log_taylor(t.nodes[i], power, t.multiplicities[i]));
  return t;
}

Complex divided_difference(const ConfluentNodeTable& table) {
  return detail::newton_table(table.nodes, table.multiplicities, table.derivative_values);
}

Complex divided_difference_xpow_log(std::span<const Complex> points, int power) {
  const detail::NodeGroups g = detail::group_points(points);
  std::vector<ComplexExt> z;
  std::vector<std::vector<ComplexExt>> t;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    z.push_back(widen(g.nodes[i]));
    t.push_back(taylor_impl<long double>(z.back(), power, g.multiplicities[i]));
  }
  return narrow(newton_ext(z, g.multiplicities, t));
}

}  // namespace esym
