#include "esym/deriv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "esym/divided_difference.hpp"
#include "esym/entro.hpp"

namespace esym {

const char* to_string(DerivMethod m) {
  switch (m) {
    case DerivMethod::Auto: return "auto";
    case DerivMethod::Fannes: return "fannes";
    case DerivMethod::Residue: return "residue";
    case DerivMethod::Contour: return "contour";
  }
  return "unknown";
}

DerivMethod parse_deriv_method(const std::string& name) {
  if (name == "auto") return DerivMethod::Auto;
  if (name == "fannes") return DerivMethod::Fannes;
  if (name == "residue") return DerivMethod::Residue;
  if (name == "contour") return DerivMethod::Contour;
  throw Error(ErrorKind::Usage, "unknown derivative method '" + name + "'");
}

MultiIndex::MultiIndex(std::vector<int> indices, int d) : indices_(std::move(indices)), d_(d) {
  if (indices_.empty()) throw Error(ErrorKind::Usage, "multi-index needs order >= 1");
  for (int i : indices_) {
    if (i < 1 || i > d) throw Error(ErrorKind::Usage, "multi-index entries must lie in 1..d");
  }
  std::sort(indices_.begin(), indices_.end());
  sum_ = std::accumulate(indices_.begin(), indices_.end(), 0);
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < indices_.size(); ++i) os << (i ? "," : "") << indices_[i];
  os << ')';
  return os.str();
}

std::vector<MultiIndex> all_multi_indices(int d, int order) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(order, 1);
  while (true) {
    out.emplace_back(cur, d);
    int pos = order - 1;
    while (pos >= 0 && cur[pos] == d) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int q = pos + 1; q < order; ++q) cur[q] = cur[pos];
  }
  return out;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double parity(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

// Rejects denominators t^D + c_1 t^{D-1} + ... that vanish on [0, inf).
void check_positive_denominator(std::span<const double> coeffs) {
  if (std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c > 0.0; })) return;
  if (coeffs.back() <= 0.0)
    throw Error(ErrorKind::Domain, "integral denominator is not positive at t = 0");
  // P(t) = (-1)^D p(-t): a zero at t > 0 is a root of p on the negative axis.
  const RootSpectrum s = roots_from_elemsym(ElemSymCoords(std::vector<double>(coeffs.begin(), coeffs.end())));
  for (const Complex& z : s.roots) {
    if (z.imag() == 0.0 && z.real() <= 0.0)
      throw Error(ErrorKind::Domain, "integral denominator vanishes on (0, inf)");
  }
}

std::vector<Complex> repeat_roots(const RootSpectrum& s, int m) {
  std::vector<Complex> out;
  out.reserve(s.roots.size() * m);
  for (const Complex& z : s.roots)
    for (int r = 0; r < m; ++r) out.push_back(z);
  return out;
}

double real_or_fail(Complex v, const char* what) {
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    throw NumericalFailure(std::string(what) + ": residue sum has a non-negligible imaginary part",
                           v.real(), std::abs(v.imag()));
  return v.real();
}

// (-1)^K (1/2 pi i) \oint z^{nd-K} ln z / p(z)^n dz, the pure residue part of
// dH~/de~_K on the n-fold repeated spectrum.
Estimate repeated_kernel(const ElemSymCoords& e, int n, int K, DerivMethod method,
                         const QuadratureSpec& quad) {
  const int d = e.d();
  const int D = n * d;
  if (K < 1 || K > D) throw Error(ErrorKind::Usage, "index sum out of range for the repeated system");
  if (method == DerivMethod::Auto) {
    if (K >= 2) {
      method = quad.method == QuadratureSpec::Method::CircleTrapezoid ? DerivMethod::Contour
                                                                      : DerivMethod::Fannes;
    } else {
      // Contour first; tiny or badly placed roots defeat it (no circle, or
      // too slow a geometric rate), and the residue sum takes over.
      try {
        return repeated_kernel(e, n, K, DerivMethod::Contour, quad);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::Geometry && err.kind() != ErrorKind::NumericalFailure) throw;
        method = DerivMethod::Residue;
      }
    }
  }
  switch (method) {
    case DerivMethod::Fannes: {
      if (K < 2) throw Error(ErrorKind::Usage, "the real integral needs index sum >= 2");
      const ElemSymCoords rep = repeated_spectrum_coords(e, n);
      return fannes_integral(rep.values(), D - K, quad);
    }
    case DerivMethod::Residue: {
      const RootSpectrum s = roots_from_elemsym(e);
      const std::vector<Complex> nodes = repeat_roots(s, n);
      const Complex dd = divided_difference_xpow_log(nodes, D - K);
      Estimate out;
      out.value = parity(K) * real_or_fail(dd, "residue route");
      out.error = 64 * kEps * std::max(1.0, std::abs(out.value)) + std::max(s.residual, kEps);
      out.evaluations = static_cast<long>(nodes.size());
      return out;
    }
    case DerivMethod::Contour: {
      ContourIntegrand f{D - K, 1, n, K % 2 == 0 ? 1 : -1};
      return contour_residue_integral(e, f, 16, quad).estimate;
    }
    case DerivMethod::Auto: break;
  }
  throw Error(ErrorKind::Usage, "unreachable derivative method");
}

Estimate scaled(Estimate v, double factor, double shift = 0.0) {
  v.value = factor * v.value + shift;
  v.error *= std::abs(factor);
  return v;
}

}  // namespace

Estimate fannes_integral(std::span<const double> coeffs, int power, const QuadratureSpec& quad) {
  const int D = static_cast<int>(coeffs.size());
  if (power < 0 || power > D - 2)
    throw Error(ErrorKind::Usage, "real integral needs 0 <= power <= degree - 2");
  check_positive_denominator(coeffs);
  const std::vector<double> c(coeffs.begin(), coeffs.end());
  // Head: t^power / P(t) on [0, 1].
  auto head = [&c, power](double t) {
    double den = 1.0;
    for (double ck : c) den = den * t + ck;
    double num = 1.0;
    for (int i = 0; i < power; ++i) num *= t;
    return num / den;
  };
  // Tail, t = 1/u: u^{D-2-power} / (1 + c_1 u + ... + c_D u^D) on (0, 1].
  const int tail_power = D - 2 - power;
  auto tail = [&c, tail_power](double u) {
    double den = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) den = den * u + *it;
    den = den * u + 1.0;
    double num = 1.0;
    for (int i = 0; i < tail_power; ++i) num *= u;
    return num / den;
  };
  return integrate_split_half_line(head, tail, quad);
}

Estimate dH_dek_fannes(const ElemSymCoords& e, int k, const QuadratureSpec& quad) {
  const int d = e.d();
  if (k == 1) throw Error(ErrorKind::Usage, "k = 1 has no real-integral form; use dH_de1");
  if (k < 2 || k > d) throw Error(ErrorKind::Usage, "coordinate index must lie in 2..d");
  return fannes_integral(e.values(), d - k, quad);
}

Estimate dH_de1(const ElemSymCoords& e, const QuadratureSpec&) {
  const RootSpectrum s = roots_from_elemsym(e);
  for (const Complex& z : s.roots) {
    if (std::abs(z) == 0.0) throw Error(ErrorKind::Domain, "dH/de_1 is singular at a zero root");
  }
  const Complex dd = divided_difference_xpow_log(s.roots, e.d() - 1);
  Estimate out;
  out.value = -real_or_fail(dd, "dH/de_1") - 1.0;
  out.error = 64 * kEps * std::max(1.0, std::abs(out.value)) + std::max(s.residual, kEps);
  out.evaluations = e.d();
  return out;
}

Estimate dH_dek_residue(const ElemSymCoords& e, int k) {
  if (k < 2 || k > e.d()) throw Error(ErrorKind::Usage, "coordinate index must lie in 2..d");
  return repeated_kernel(e, 1, k, DerivMethod::Residue, {});
}

ContourResult dH_dek_contour(const ElemSymCoords& e, int k, const QuadratureSpec& quad,
                             long n_nodes) {
  const int d = e.d();
  if (k < 1 || k > d) throw Error(ErrorKind::Usage, "coordinate index must lie in 1..d");
  ContourIntegrand f{d - k, 1, 1, k % 2 == 0 ? 1 : -1};
  ContourResult r = contour_residue_integral(e, f, n_nodes, quad);
  if (k == 1) r.estimate.value -= 1.0;
  return r;
}

ContourResult subentropy_contour(const ElemSymCoords& e, const QuadratureSpec& quad, long n_nodes) {
  ContourIntegrand f{e.d(), 1, 1, -1};
  return contour_residue_integral(e, f, n_nodes, quad);
}

Estimate dH_dek(const ElemSymCoords& e, int k, DerivMethod method, const QuadratureSpec& quad) {
  if (k < 1 || k > e.d()) throw Error(ErrorKind::Usage, "coordinate index must lie in 1..d");
  if (method == DerivMethod::Auto) {
    if (k == 1) {
      method = DerivMethod::Residue;
    } else {
      method = quad.method == QuadratureSpec::Method::CircleTrapezoid ? DerivMethod::Contour
                                                                      : DerivMethod::Fannes;
    }
  }
  switch (method) {
    case DerivMethod::Fannes: return dH_dek_fannes(e, k, quad);
    case DerivMethod::Residue: return k == 1 ? dH_de1(e, quad) : dH_dek_residue(e, k);
    case DerivMethod::Contour: return dH_dek_contour(e, k, quad).estimate;
    case DerivMethod::Auto: break;
  }
  throw Error(ErrorKind::Usage, "unreachable derivative method");
}

ElemSymCoords repeated_spectrum_coords(const ElemSymCoords& e, int m) {
  if (m < 1) throw Error(ErrorKind::Usage, "repetition count must be >= 1");
  // With unsigned coefficients (1, e_1, ..., e_d) the alternating signs of p
  // factor out of the product, so plain convolution gives p^m.
  std::vector<double> base(e.d() + 1);
  base[0] = 1.0;
  for (int k = 1; k <= e.d(); ++k) base[k] = e(k);
  std::vector<double> acc = base;
  for (int r = 1; r < m; ++r) {
    std::vector<double> next(acc.size() + base.size() - 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < base.size(); ++j) next[i + j] += acc[i] * base[j];
    acc = std::move(next);
  }
  return ElemSymCoords(std::vector<double>(acc.begin() + 1, acc.end()));
}

Estimate dH_multi(const ElemSymCoords& e, const MultiIndex& idx, const QuadratureSpec& quad,
                  DerivMethod method) {
  if (idx.dimension() != e.d()) throw Error(ErrorKind::Usage, "multi-index dimension does not match d");
  const int m = idx.order();
  const int K = idx.index_sum();
  if (m == 1 && K == 1) {
    if (method == DerivMethod::Fannes)
      throw Error(ErrorKind::Usage, "dH/de_1 has no real-integral form");
    if (method == DerivMethod::Contour) return dH_dek_contour(e, 1, quad).estimate;
    return dH_de1(e, quad);
  }
  const double factor = parity(m - 1) * factorial(m - 1);
  return scaled(repeated_kernel(e, m, K, method, quad), factor);
}

Estimate dQ_multi(const ElemSymCoords& e, const MultiIndex& idx, const QuadratureSpec& quad,
                  DerivMethod method) {
  if (idx.dimension() != e.d()) throw Error(ErrorKind::Usage, "multi-index dimension does not match d");
  const int m = idx.order();
  const int K = idx.index_sum();
  // -d^{m+1} H with index sum K = -(-1)^m m! * kernel(m + 1, K).
  const double factor = -parity(m) * factorial(m);
  return scaled(repeated_kernel(e, m + 1, K, method, quad), factor);
}

Estimate dQ_dek(const ElemSymCoords& e, int k, const QuadratureSpec& quad, DerivMethod method) {
  if (k < 1 || k > e.d()) throw Error(ErrorKind::Usage, "coordinate index must lie in 1..d");
  return dQ_multi(e, MultiIndex({k}, e.d()), quad, method);
}

}  // namespace esym
