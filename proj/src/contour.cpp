#include "esym/contour.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "esym/detail/ipow.hpp"

namespace esym {

CircleContour choose_circle(const RootSpectrum& spectrum, double margin) {
  if (!(margin > 0.0 && margin < 1.0))
    throw Error(ErrorKind::Usage, "circle_margin must lie in (0, 1)");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Complex& z : spectrum.roots) {
    lo = std::min(lo, z.real());
    hi = std::max(hi, z.real());
  }
  CircleContour c;
  c.center = 0.5 * (lo + hi);
  for (const Complex& z : spectrum.roots)
    c.root_radius = std::max(c.root_radius, std::abs(z - c.center));
  const double clearance = c.center - c.root_radius;
  if (!(clearance > 1e-12 * std::max(1.0, c.center)))
    throw Error(ErrorKind::Geometry,
                "no circle encloses every root while excluding the origin and the cut");
  c.radius = c.root_radius + margin * clearance;
  return c;
}

namespace {

struct Sum {
  Complex value = 0.0;
  double magnitude = 0.0;
};

// Adds the nodes j = first, first + stride, ... < n of an n-point rule.
Sum partial_sum(const MonicCharPoly& p, const ContourIntegrand& f, const CircleContour& c, long n,
                long first, long stride) {
  Sum s;
  for (long j = first; j < n; j += stride) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    const Complex w = std::polar(1.0, theta);
    const Complex z = c.center + c.radius * w;
    Complex num = detail::ipow(z, f.power);
    if (f.log_power == 1) num *= std::log(z);
    Complex den = p(z);
    if (f.pole_multiplicity > 1) den = detail::ipow(den, f.pole_multiplicity);
    const Complex term = static_cast<double>(f.overall_sign) * num / den * (c.radius * w);
    s.value += term;
    s.magnitude += std::abs(term);
  }
  return s;
}

void check_integrand(const ContourIntegrand& f) {
  if (f.power < 0 || (f.log_power != 0 && f.log_power != 1) || f.pole_multiplicity < 1 ||
      (f.overall_sign != 1 && f.overall_sign != -1))
    throw Error(ErrorKind::Usage, "contour integrand needs power >= 0, log_power in {0,1}, "
                                  "pole multiplicity >= 1 and sign +-1");
}

}  // namespace

Complex trapezoid_circle(const MonicCharPoly& p, const ContourIntegrand& integrand,
                         const CircleContour& circle, long n_nodes) {
  check_integrand(integrand);
  if (n_nodes < 1) throw Error(ErrorKind::Usage, "trapezoid rule needs at least one node");
  return partial_sum(p, integrand, circle, n_nodes, 0, 1).value / static_cast<double>(n_nodes);
}

ContourResult contour_residue_integral(const ElemSymCoords& e, const ContourIntegrand& integrand,
                                       long n_nodes, const QuadratureSpec& quad) {
  quad.validate();
  check_integrand(integrand);
  if (n_nodes < 16) throw Error(ErrorKind::Usage, "contour rule needs n_nodes >= 16");
  const RootSpectrum s = roots_from_elemsym(e);
  const MonicCharPoly p(e);

  ContourResult out;
  out.circle = choose_circle(s, quad.circle_margin);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  long n = n_nodes;
  Sum acc = partial_sum(p, integrand, out.circle, n, 0, 1);
  long evals = n;
  Complex prev = acc.value / static_cast<double>(n);
  while (true) {
    if (evals + n > quad.max_evals)
      throw NumericalFailure("contour trapezoid did not converge within max_evals", prev.real(),
                             std::numeric_limits<double>::infinity());
    // The 2n rule reuses the n existing nodes and adds the odd ones.
    const Sum odd = partial_sum(p, integrand, out.circle, 2 * n, 1, 2);
    evals += n;
    n *= 2;
    acc.value += odd.value;
    acc.magnitude += odd.magnitude;
    const Complex cur = acc.value / static_cast<double>(n);
    const double diff = std::abs(cur - prev);
    const double floor = 64 * eps * acc.magnitude / static_cast<double>(n);
    const double target = std::max({quad.abs_tol, quad.rel_tol * std::abs(cur), floor});
    prev = cur;
    if (diff <= target) {
      out.estimate.value = cur.real();
      out.estimate.error = std::max(diff, floor);
      out.estimate.evaluations = evals;
      out.nodes_used = n;
      out.imaginary_residue = cur.imag();
      return out;
    }
  }
}

}  // namespace esym
