#include "esym/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace esym {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::MalformedSpectrum: return "malformed-spectrum";
    case ErrorKind::DegenerateSpectrum: return "degenerate-spectrum";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

const char* to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::RealPositive: return "real-positive";
    case SpectrumKind::ComplexPairs: return "complex-pairs";
    case SpectrumKind::BoundaryCluster: return "boundary-cluster";
    case SpectrumKind::RealSigned: return "real-signed";
  }
  return "unknown";
}

const char* to_string(ConeClass c) {
  switch (c) {
    case ConeClass::OutsideCone: return "outside-cone";
    case ConeClass::ProbabilityRegion: return "probability-region";
    case ConeClass::ConeComplex: return "cone-complex";
    case ConeClass::Boundary: return "boundary";
  }
  return "unknown";
}

bool confluent(Complex a, Complex b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kClusterRel * scale;
}

namespace {

bool is_real(Complex z, double tol) {
  return std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real()));
}

void sort_roots(std::vector<Complex>& roots) {
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Error-free transformations (Knuth TwoSum, FMA-based TwoProd).
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// True when every non-real root has a conjugate partner.
bool conjugation_closed(const std::vector<Complex>& roots, double tol) {
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || is_real(roots[i], tol)) continue;
    bool found = false;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i || used[j]) continue;
      const double scale = std::max(1.0, std::abs(roots[i]));
      if (std::abs(roots[j] - std::conj(roots[i])) <= 1e-9 * scale) {
        used[i] = used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

SpectrumKind classify(const std::vector<Complex>& roots, double tol) {
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (confluent(roots[i], roots[j])) return SpectrumKind::BoundaryCluster;
    }
  }
  bool real = true;
  bool positive = true;
  for (const Complex& r : roots) {
    if (!is_real(r, tol)) real = false;
    if (r.real() <= 0.0) positive = false;
  }
  if (!real) return SpectrumKind::ComplexPairs;
  return positive ? SpectrumKind::RealPositive : SpectrumKind::RealSigned;
}

// Snaps nearly real roots onto the axis and makes conjugate partners exact
// mirror images of each other.
void symmetrize(std::vector<Complex>& roots, double tol) {
  std::vector<std::size_t> upper, lower;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (is_real(roots[i], tol)) {
      roots[i] = Complex(roots[i].real(), 0.0);
    } else if (roots[i].imag() > 0) {
      upper.push_back(i);
    } else {
      lower.push_back(i);
    }
  }
  // A real polynomial has as many roots above the axis as below; surplus
  // roots on one side are perturbed real roots, the flattest ones first.
  while (upper.size() != lower.size()) {
    auto& side = upper.size() > lower.size() ? upper : lower;
    auto flattest = std::min_element(side.begin(), side.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(roots[a].imag()) < std::abs(roots[b].imag());
    });
    roots[*flattest] = Complex(roots[*flattest].real(), 0.0);
    side.erase(flattest);
  }
  std::vector<bool> taken(lower.size(), false);
  for (std::size_t u : upper) {
    std::size_t best = lower.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < lower.size(); ++l) {
      if (taken[l]) continue;
      const double gap = std::abs(roots[lower[l]] - std::conj(roots[u]));
      if (gap < best_gap) {
        best_gap = gap;
        best = l;
      }
    }
    taken[best] = true;
    const Complex mean = 0.5 * (roots[u] + std::conj(roots[lower[best]]));
    roots[u] = mean;
    roots[lower[best]] = std::conj(mean);
  }
}

// Replaces every confluent group by its centroid. Returns true when any
// group has more than one member.
bool merge_clusters(std::vector<Complex>& roots) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (confluent(roots[i], roots[j])) {
        parent[find(i)] = find(j);
        any = true;
      }
    }
  }
  if (!any) return false;
  std::vector<Complex> sum(n, 0.0);
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[find(i)] += roots[i];
    ++count[find(i)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    roots[i] = sum[r] / static_cast<double>(count[r]);
  }
  return true;
}

}  // namespace

bool RootSpectrum::all_real() const {
  return std::all_of(roots.begin(), roots.end(),
                     [](Complex z) { return z.imag() == 0.0; });
}

std::vector<double> RootSpectrum::real_parts() const {
  std::vector<double> out;
  out.reserve(roots.size());
  for (const Complex& z : roots) out.push_back(z.real());
  return out;
}

RootSpectrum make_spectrum(std::vector<Complex> roots) {
  if (roots.empty()) throw Error(ErrorKind::Usage, "spectrum needs at least one root");
  for (const Complex& z : roots) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::Usage, "spectrum contains a non-finite root");
  }
  if (!conjugation_closed(roots, 0.0))
    throw Error(ErrorKind::MalformedSpectrum,
                "non-real roots are not closed under conjugation");
  sort_roots(roots);
  RootSpectrum s;
  s.kind = classify(roots, 0.0);
  s.roots = std::move(roots);
  return s;
}

RootSpectrum make_spectrum(std::span<const double> roots) {
  return make_spectrum(std::vector<Complex>(roots.begin(), roots.end()));
}

ElemSymCoords::ElemSymCoords(std::vector<double> e) : e_(std::move(e)) {
  for (double v : e_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Usage, "coordinates must be finite");
  }
}

bool ElemSymCoords::in_positive_cone() const {
  return !e_.empty() &&
         std::all_of(e_.begin(), e_.end(), [](double v) { return v > 0.0; });
}

std::string format_coords(const ElemSymCoords& e) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (int k = 1; k <= e.d(); ++k) os << (k > 1 ? ", " : "") << e(k);
  os << ')';
  return os.str();
}

MonicCharPoly::MonicCharPoly(const ElemSymCoords& e) {
  coeffs_.resize(e.d() + 1);
  coeffs_[0] = 1.0;
  for (int j = 1; j <= e.d(); ++j) coeffs_[j] = (j % 2 ? -1.0 : 1.0) * e(j);
}

// Compensated Horner for real coefficients at a complex point.
Complex MonicCharPoly::operator()(Complex z) const {
  const double zr = z.real(), zi = z.imag();
  double sr = coeffs_[0], si = 0.0;
  double cr = 0.0, ci = 0.0;  // running correction, itself Horner-evaluated
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    double p1, e1, p2, e2, p3, e3, p4, e4, r, er, q, eq, s, es;
    two_prod(sr, zr, p1, e1);
    two_prod(si, zi, p2, e2);
    two_sum(p1, -p2, r, er);
    two_prod(sr, zi, p3, e3);
    two_prod(si, zr, p4, e4);
    two_sum(p3, p4, q, eq);
    two_sum(r, coeffs_[k], s, es);
    const double local_r = e1 - e2 + er + es;
    const double local_i = e3 + e4 + eq;
    const double ncr = cr * zr - ci * zi + local_r;
    const double nci = cr * zi + ci * zr + local_i;
    cr = ncr;
    ci = nci;
    sr = s;
    si = q;
  }
  return {sr + cr, si + ci};
}

Complex MonicCharPoly::derivative(Complex z) const {
  const int d = degree();
  Complex acc = 0.0;
  for (int j = 0; j < d; ++j) acc = acc * z + static_cast<double>(d - j) * coeffs_[j];
  return acc;
}

double MonicCharPoly::magnitude(double abs_z) const {
  double acc = 0.0;
  for (double c : coeffs_) acc = acc * abs_z + std::abs(c);
  return acc;
}

ElemSymCoords elemsym_from_roots(const RootSpectrum& spectrum) {
  const auto& roots = spectrum.roots;
  if (roots.empty()) throw Error(ErrorKind::Usage, "spectrum needs at least one root");
  if (!conjugation_closed(roots, 0.0))
    throw Error(ErrorKind::MalformedSpectrum,
                "non-real roots are not closed under conjugation");
  std::vector<Complex> e(roots.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t n = 0; n < roots.size(); ++n) {
    for (std::size_t k = n + 1; k >= 1; --k) e[k] += roots[n] * e[k - 1];
  }
  std::vector<double> out(roots.size());
  for (std::size_t k = 1; k < e.size(); ++k) out[k - 1] = e[k].real();
  return ElemSymCoords(std::move(out));
}

Complex charpoly_eval(const ElemSymCoords& e, Complex z) {
  return MonicCharPoly(e)(z);
}

namespace {

std::vector<Complex> companion_eigenvalues(const MonicCharPoly& p) {
  const int d = p.degree();
  const auto c = p.signed_coeffs();
  // Rescale z = s w so that the coefficients of the polynomial in w are O(1).
  double s = 0.0;
  for (int j = 1; j <= d; ++j) {
    if (c[j] != 0.0) s = std::max(s, std::pow(std::abs(c[j]), 1.0 / j));
  }
  if (s == 0.0) return std::vector<Complex>(d, 0.0);

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  double scale = 1.0;
  for (int j = 1; j <= d; ++j) {
    scale *= s;
    comp(0, j - 1) = -c[j] / scale;
  }
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("companion eigenvalue iteration did not converge",
                           std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::infinity());
  std::vector<Complex> roots(d);
  for (int i = 0; i < d; ++i) roots[i] = solver.eigenvalues()[i] * s;
  return roots;
}

// Gauss-Seidel Aberth-Ehrlich sweeps. A move is kept only if it lowers the
// (compensated) residual at that root.
void aberth_polish(const MonicCharPoly& p, std::vector<Complex>& roots,
                   int max_iterations) {
  const std::size_t n = roots.size();
  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) resid[i] = std::abs(p(roots[i]));
  for (int it = 0; it < max_iterations; ++it) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (resid[i] == 0.0) continue;
      const Complex dp = p.derivative(roots[i]);
      if (dp == 0.0) continue;
      const Complex w = p(roots[i]) / dp;
      Complex repel = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && roots[j] != roots[i]) repel += 1.0 / (roots[i] - roots[j]);
      }
      const Complex corr = w / (1.0 - w * repel);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) continue;
      const Complex cand = roots[i] - corr;
      const double r = std::abs(p(cand));
      if (r < resid[i]) {
        if (std::abs(corr) > 4 * std::numeric_limits<double>::epsilon() * std::abs(cand))
          moved = true;
        roots[i] = cand;
        resid[i] = r;
      }
    }
    if (!moved) break;
  }
}

// Aberth sweeps keep a conjugate pair conjugate, so a pair seeded off the
// axis can never split into two close real roots. Each pair gets one
// attempt from the real axis; the split is kept if both residuals drop.
void split_conjugate_pairs(const MonicCharPoly& p, std::vector<Complex>& roots,
                           int max_iterations) {
  for (std::size_t u = 0; u < roots.size(); ++u) {
    if (roots[u].imag() <= 0.0) continue;
    std::size_t l = roots.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (roots[j].imag() >= 0.0) continue;
      const double gap = std::abs(roots[j] - std::conj(roots[u]));
      if (gap < best) {
        best = gap;
        l = j;
      }
    }
    if (l == roots.size()) continue;
    const double before = std::max(std::abs(p(roots[u])), std::abs(p(roots[l])));
    if (before == 0.0) continue;
    std::vector<Complex> trial = roots;
    const double re = roots[u].real(), im = roots[u].imag();
    trial[u] = Complex(re - im, 0.0);
    trial[l] = Complex(re + im, 0.0);
    aberth_polish(p, trial, max_iterations);
    const double after = std::max(std::abs(p(trial[u])), std::abs(p(trial[l])));
    if (after < before) roots = std::move(trial);
  }
}

}  // namespace

RootSpectrum roots_from_elemsym(const ElemSymCoords& e, const RootOptions& options) {
  const int d = e.d();
  if (d == 0) throw Error(ErrorKind::Usage, "need at least one coordinate (d >= 1)");
  if (!(options.imag_tol > 0.0)) throw Error(ErrorKind::Usage, "tolerance must be positive");

  const MonicCharPoly p(e);
  std::vector<Complex> roots;
  if (d == 1) {
    roots = {Complex(e(1), 0.0)};
  } else {
    roots = companion_eigenvalues(p);
    aberth_polish(p, roots, options.max_polish_iterations);
    split_conjugate_pairs(p, roots, options.max_polish_iterations);
  }
  symmetrize(roots, options.imag_tol);
  const bool clustered = merge_clusters(roots);
  symmetrize(roots, options.imag_tol);
  sort_roots(roots);

  RootSpectrum s;
  s.roots = std::move(roots);
  s.kind = clustered ? SpectrumKind::BoundaryCluster : classify(s.roots, 0.0);

  const ElemSymCoords back = elemsym_from_roots(s);
  double residual = 0.0;
  for (int k = 1; k <= d; ++k) {
    residual = std::max(residual, std::abs(back(k) - e(k)) / std::max(1.0, std::abs(e(k))));
  }
  s.residual = residual;
  if (!std::isfinite(residual))
    throw NumericalFailure("root solver produced non-finite roots", residual, residual);
  return s;
}

ConeClass cone_membership(const ElemSymCoords& e, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Usage, "tolerance must be positive");
  bool has_zero = false;
  for (double v : e.values()) {
    if (v < 0.0) return ConeClass::OutsideCone;
    if (v == 0.0) has_zero = true;
  }
  const RootSpectrum s = roots_from_elemsym(e, {.imag_tol = tol});
  if (has_zero) {
    // Closure of the probability region: real, nonnegative roots.
    const bool ok = s.all_real() &&
                    std::all_of(s.roots.begin(), s.roots.end(),
                                [](Complex z) { return z.real() >= 0.0; });
    return ok ? ConeClass::Boundary : ConeClass::OutsideCone;
  }
  if (s.kind == SpectrumKind::BoundaryCluster) return ConeClass::Boundary;
  double scale = 0.0;
  for (const Complex& z : s.roots) scale = std::max(scale, std::abs(z));
  for (const Complex& z : s.roots) {
    if (std::abs(z) <= tol * scale) return ConeClass::Boundary;
  }
  return s.kind == SpectrumKind::RealPositive ? ConeClass::ProbabilityRegion
                                              : ConeClass::ConeComplex;
}

double implicit_root_sensitivity(const ElemSymCoords& e, int j, int k) {
  const int d = e.d();
  if (j < 1 || j > d || k < 1 || k > d)
    throw Error(ErrorKind::Usage, "root and coordinate indices must lie in 1..d");
  const RootSpectrum s = roots_from_elemsym(e);
  if (s.kind == SpectrumKind::BoundaryCluster)
    throw Error(ErrorKind::DegenerateSpectrum,
                "repeated roots: dx_j/de_k has a vanishing denominator");
  if (s.kind != SpectrumKind::RealPositive)
    throw Error(ErrorKind::Domain, std::string("root sensitivity needs a real-positive spectrum, got ") +
                                       to_string(s.kind));
  const std::vector<double> x = s.real_parts();
  const double xj = x[j - 1];
  double denom = 1.0;
  for (int i = 0; i < d; ++i) {
    if (i != j - 1) denom *= xj - x[i];
  }
  const double sign = ((k + 1) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(xj, d - k) / denom;
}

}  // namespace esym
