#include "esym/finite_difference.hpp"

#include <cmath>
#include <sstream>

#include "esym/entro.hpp"

namespace esym {

double default_fd_step(int order) {
  switch (order) {
    case 1: return 1e-6;
    case 2: return 1e-3;
    case 3: return 3e-3;
    default: return 1e-2;
  }
}

double fd_target_value(const ElemSymCoords& e, FdTarget target) {
  const RootSpectrum s = roots_from_elemsym(e);
  for (const Complex& z : s.roots) {
    if (z.imag() == 0.0 && z.real() <= 0.0)
      throw Error(ErrorKind::Domain, "root on (-inf, 0] at " + format_coords(e));
  }
  if (target == FdTarget::H) return entropy_continued(s.roots).real();
  return subentropy_from_roots(s);
}

namespace {

double stencil(const std::function<double(const ElemSymCoords&)>& f, const ElemSymCoords& e,
               const MultiIndex& idx, const std::vector<double>& h) {
  const int m = idx.order();
  const auto ind = idx.indices();
  double acc = 0.0;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    ElemSymCoords corner = e;
    double sign = 1.0;
    for (int q = 0; q < m; ++q) {
      const bool plus = (mask >> q) & 1u;
      corner(ind[q]) += plus ? h[ind[q] - 1] : -h[ind[q] - 1];
      if (!plus) sign = -sign;
    }
    double v;
    try {
      v = f(corner);
    } catch (const Error& err) {
      throw Error(ErrorKind::Domain, "finite-difference stencil left the domain at corner " +
                                         format_coords(corner) + ": " + err.what());
    }
    acc += sign * v;
  }
  double denom = 1.0;
  for (int q = 0; q < m; ++q) denom *= 2.0 * h[ind[q] - 1];
  return acc / denom;
}

}  // namespace

double fd_derivative(const std::function<double(const ElemSymCoords&)>& f, const ElemSymCoords& e,
                     const MultiIndex& idx, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::Usage, "finite-difference step must be positive");
  std::vector<double> h(e.d());
  // Small coordinates (small roots) vary on their own scale: cap at 1%.
  for (int k = 1; k <= e.d(); ++k) {
    h[k - 1] = step * std::max(1.0, std::abs(e(k)));
    if (e(k) != 0.0) h[k - 1] = std::min(h[k - 1], 1e-2 * std::abs(e(k)));
  }
  std::vector<double> half = h;
  for (double& v : half) v *= 0.5;
  const double coarse = stencil(f, e, idx, h);
  const double fine = stencil(f, e, idx, half);
  return (4.0 * fine - coarse) / 3.0;
}

double finite_difference_derivative(const ElemSymCoords& e, const MultiIndex& idx, FdTarget target,
                                    double step) {
  if (step == 0.0) step = default_fd_step(idx.order());
  return fd_derivative([target](const ElemSymCoords& x) { return fd_target_value(x, target); }, e,
                       idx, step);
}

}  // namespace esym
