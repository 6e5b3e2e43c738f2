#include "esym/entro.hpp"

#include <cmath>
#include <limits>

#include "esym/divided_difference.hpp"

namespace esym {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_off_cut(std::span<const Complex> roots, const char* what) {
  for (const Complex& z : roots) {
    if (z.imag() == 0.0 && z.real() <= 0.0)
      throw Error(ErrorKind::Domain, std::string(what) + ": root on (-inf, 0], where ln is singular");
  }
}

// First-order size of the root errors implied by a relative coefficient
// residual.
std::vector<double> root_uncertainty(const ElemSymCoords& e, const RootSpectrum& s) {
  const MonicCharPoly p(e);
  std::vector<double> dx;
  const double resid = std::max(s.residual, kEps);
  for (const Complex& z : s.roots) {
    const double scale = resid * p.magnitude(std::abs(z));
    const double slope = std::abs(p.derivative(z));
    dx.push_back(slope > std::sqrt(scale) ? scale / slope : std::sqrt(scale));
  }
  return dx;
}

}  // namespace

double entropy_from_roots(const RootSpectrum& spectrum) {
  double h = 0.0;
  for (const Complex& z : spectrum.roots) {
    if (z.imag() != 0.0)
      throw Error(ErrorKind::Domain, "entropy needs a real spectrum; got complex-pairs");
    if (z.real() < 0.0) throw Error(ErrorKind::Domain, "entropy needs nonnegative roots");
    if (z.real() > 0.0) h -= z.real() * std::log(z.real());
  }
  return h;
}

Complex subentropy_continued(std::span<const Complex> roots) {
  require_off_cut(roots, "subentropy");
  const int d = static_cast<int>(roots.size());
  return -divided_difference_xpow_log(roots, d);
}

double subentropy_from_roots(const RootSpectrum& spectrum) {
  const Complex q = subentropy_continued(spectrum.roots);
  if (std::abs(q.imag()) > 1e-9 * std::max(std::abs(q.real()), 1.0))
    throw NumericalFailure("subentropy has a non-negligible imaginary part", q.real(),
                           std::abs(q.imag()));
  return q.real();
}

Estimate entropy_from_elemsym(const ElemSymCoords& e) {
  const ConeClass c = cone_membership(e);
  if (c != ConeClass::ProbabilityRegion && c != ConeClass::Boundary)
    throw Error(ErrorKind::Domain, std::string("entropy in root form needs the probability region; point is ") +
                                       to_string(c));
  const RootSpectrum s = roots_from_elemsym(e);
  Estimate out;
  out.value = entropy_from_roots(s);
  const auto dx = root_uncertainty(e, s);
  double err = 0.0;
  for (std::size_t i = 0; i < s.roots.size(); ++i) {
    const double x = s.roots[i].real();
    const double slope = x > 0.0 ? std::abs(std::log(x) + 1.0) : 1.0;
    err += slope * dx[i];
  }
  out.error = std::max(err, 4 * kEps * std::abs(out.value));
  out.evaluations = 1;
  return out;
}

Estimate subentropy_from_elemsym(const ElemSymCoords& e) {
  const ConeClass c = cone_membership(e);
  if (c == ConeClass::OutsideCone)
    throw Error(ErrorKind::Domain, "subentropy needs a point in the cone; point is outside-cone");
  const RootSpectrum s = roots_from_elemsym(e);
  for (const Complex& z : s.roots) {
    if (std::abs(z) == 0.0) throw Error(ErrorKind::Domain, "subentropy is undefined with a zero root (e_d = 0)");
  }
  Estimate out;
  out.value = subentropy_from_roots(s);
  const auto dx = root_uncertainty(e, s);
  double worst = 0.0;
  for (double v : dx) worst = std::max(worst, v);
  out.error = std::max(worst * e.d() * (1.0 + std::abs(out.value)), 8 * kEps * std::abs(out.value));
  out.evaluations = 1;
  return out;
}

Complex entropy_continued(std::span<const Complex> roots) {
  Complex h = 0.0;
  for (const Complex& z : roots) {
    if (z == 0.0) continue;
    if (z.imag() == 0.0 && z.real() < 0.0)
      throw Error(ErrorKind::Domain, "entropy continuation: root on the negative real axis");
    h -= z * std::log(z);
  }
  return h;
}

double entropy_continued(const ElemSymCoords& e) {
  const RootSpectrum s = roots_from_elemsym(e);
  return entropy_continued(s.roots).real();
}

}  // namespace esym
