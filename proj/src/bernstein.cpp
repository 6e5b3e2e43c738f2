#include "esym/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "esym/deriv.hpp"
#include "esym/entro.hpp"

namespace esym {

const char* to_string(ProbeTarget t) { return t == ProbeTarget::H ? "H" : "Q"; }

const char* to_string(InversionMethod m) {
  return m == InversionMethod::Talbot ? "talbot" : "gaver-stehfest";
}

ProbeTarget parse_probe_target(const std::string& name) {
  if (name == "H" || name == "h") return ProbeTarget::H;
  if (name == "Q" || name == "q") return ProbeTarget::Q;
  throw Error(ErrorKind::Usage, "target must be H or Q, got '" + name + "'");
}

InversionMethod parse_inversion_method(const std::string& name) {
  if (name == "talbot") return InversionMethod::Talbot;
  if (name == "gaver-stehfest" || name == "stehfest") return InversionMethod::GaverStehfest;
  throw Error(ErrorKind::Usage, "inversion method must be talbot or gaver-stehfest");
}

void LaplaceProbeSpec::validate() const {
  if (d != 2)
    throw Error(ErrorKind::Usage, "density inversion is implemented for d = 2 only");
  if (s_grid.empty()) throw Error(ErrorKind::Usage, "s grid is empty");
  if (!(s_grid.front() > 0.0)) throw Error(ErrorKind::Usage, "s grid must be positive");
  for (std::size_t i = 1; i < s_grid.size(); ++i)
    if (!(s_grid[i] > s_grid[i - 1]))
      throw Error(ErrorKind::Usage, "s grid must be strictly increasing");
  if (gs_order < 2 || gs_order > 14 || gs_order % 2 != 0)
    throw Error(ErrorKind::Usage, "Gaver-Stehfest order must be even and at most 14");
  if (talbot_nodes < 2) throw Error(ErrorKind::Usage, "Talbot needs at least 2 nodes");
  if (divisibility_m < 2) throw Error(ErrorKind::Usage, "divisibility m must be >= 2");
  if (!(convolution_step > 0.0)) throw Error(ErrorKind::Usage, "convolution step must be positive");
}

std::vector<double> make_grid(double lo, double hi, std::size_t count, bool log) {
  if (count == 0) throw Error(ErrorKind::Usage, "grid needs at least one point");
  if (!(hi >= lo) || (log && !(lo > 0.0)))
    throw Error(ErrorKind::Usage, "grid bounds must satisfy 0 < lo <= hi (lo > 0 for log)");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    g[i] = log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

namespace {

ElemSymCoords slice_point(std::span<const double> e_rest) {
  std::vector<double> e{1.0};
  e.insert(e.end(), e_rest.begin(), e_rest.end());
  return ElemSymCoords(std::move(e));
}

void require_probability(const ElemSymCoords& e) {
  const ConeClass c = cone_membership(e);
  if (c != ConeClass::ProbabilityRegion && c != ConeClass::Boundary)
    throw Error(ErrorKind::Domain, std::string("probe needs the probability region; point is ") +
                                       to_string(c));
}

bool geometric(const std::vector<double>& g) {
  if (g.size() < 3) return false;
  const double ratio = g[1] / g[0];
  for (std::size_t i = 2; i < g.size(); ++i)
    if (std::abs(g[i] / g[i - 1] - ratio) > 1e-9 * ratio) return false;
  return true;
}

// \int w(s) ds over the grid: trapezoid in ln s on geometric grids, in s
// otherwise.
double grid_integral(const std::vector<double>& s, const std::vector<double>& w) {
  double acc = 0.0;
  const bool log = geometric(s);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (log)
      acc += 0.5 * std::log(s[i] / s[i - 1]) * (s[i] * w[i] + s[i - 1] * w[i - 1]);
    else
      acc += 0.5 * (s[i] - s[i - 1]) * (w[i] + w[i - 1]);
  }
  return acc;
}

double invert_one(const PoweredTransform& f, double power, double s, InversionMethod method,
                  const LaplaceProbeSpec& spec) {
  if (method == InversionMethod::Talbot)
    return talbot_invert([&](Complex t) { return f(t, power); }, s, spec.talbot_nodes);
  return gaver_stehfest_invert([&](double t) { return f(Complex(t, 0.0), power).real(); }, s,
                               spec.gs_order);
}

}  // namespace

double exp_neg_entropy(std::span<const double> e_rest) {
  const ElemSymCoords e = slice_point(e_rest);
  return std::exp(-entropy_from_elemsym(e).value);
}

double exp_neg_subentropy(std::span<const double> e_rest) {
  const ElemSymCoords e = slice_point(e_rest);
  require_probability(e);
  return std::exp(-subentropy_from_elemsym(e).value);
}

Complex probe_transform(ProbeTarget target, Complex t, double power) {
  if (t.imag() == 0.0 && t.real() <= 0.0) {
    if (t.real() == 0.0) return 1.0;
    throw Error(ErrorKind::Domain, "transform argument on the cut (-inf, 0)");
  }
  // Roots of z^2 - z + t without cancellation: q = (1 + sqrt(1 - 4t)) / 2, t / q.
  const Complex q = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * t));
  const Complex roots[2] = {q, t / q};
  const Complex v = target == ProbeTarget::H ? entropy_continued(roots) : subentropy_continued(roots);
  return std::exp(-power * v);
}

Estimate entropy_by_gradient_path(double t, const QuadratureSpec& quad) {
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "gradient path needs t >= 0");
  if (t == 0.0) return {};
  QuadratureSpec inner = quad;
  inner.abs_tol = quad.abs_tol * 1e-2;
  inner.rel_tol = quad.rel_tol * 1e-2;
  long evals = 0;
  Estimate out = integrate_adaptive(
      [&](double tau) {
        const double c[2] = {1.0, tau};
        const Estimate g = fannes_integral(c, 0, inner);
        evals += g.evaluations;
        return g.value;
      },
      0.0, t, quad);
  out.evaluations += evals;
  return out;
}

PoweredTransform target_transform(ProbeTarget target) {
  return [target](Complex t, double power) { return probe_transform(target, t, power); };
}

PoweredTransform calibration_transform(const std::string& name) {
  if (name == "1over1plusT")
    return [](Complex t, double power) { return std::pow(1.0 + t, -power); };
  if (name == "const1") return [](Complex, double) { return Complex(1.0, 0.0); };
  if (name.rfind("exp", 0) == 0 && name.size() > 3) {
    double a = 0.0;
    std::istringstream is(name.substr(3));
    is.imbue(std::locale::classic());
    if (!(is >> a) || !is.eof() || !(a > 0.0))
      throw Error(ErrorKind::Usage, "exp self-test needs a positive rate, e.g. exp2");
    return [a](Complex t, double power) { return std::exp(-power * a * t); };
  }
  throw Error(ErrorKind::Usage, "unknown self-test '" + name + "' (1over1plusT, const1, exp<a>)");
}

DensityResult invert_transform(const PoweredTransform& f, const LaplaceProbeSpec& spec) {
  spec.validate();
  DensityResult out;
  out.method = spec.method;
  out.s = spec.s_grid;
  const InversionMethod other = spec.method == InversionMethod::Talbot
                                    ? InversionMethod::GaverStehfest
                                    : InversionMethod::Talbot;
  std::vector<double> failing;
  for (double s : spec.s_grid) {
    const double primary = invert_one(f, 1.0, s, spec.method, spec);
    const double check = invert_one(f, 1.0, s, other, spec);
    if (!std::isfinite(primary)) failing.push_back(s);
    const double delta = std::abs(primary - check);
    out.mu.push_back(primary);
    out.method_delta.push_back(delta);
    out.negativity_threshold.push_back(10.0 * delta + 1e-12);
    if (primary < -out.negativity_threshold.back()) out.negative_points.push_back(out.mu.size() - 1);
  }
  if (!failing.empty()) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "inversion diverged at s =";
    for (double s : failing) os << ' ' << s;
    throw NumericalFailure(os.str(), std::numeric_limits<double>::quiet_NaN(), 0.0);
  }
  out.grid_mass = grid_integral(out.s, out.mu);
  return out;
}

DensityResult invert_density(const LaplaceProbeSpec& spec, ProbeTarget target) {
  return invert_transform(target_transform(target), spec);
}

DivisibilityReport divisibility_probe_transform(const PoweredTransform& f,
                                                const LaplaceProbeSpec& spec) {
  spec.validate();
  DivisibilityReport rep;
  const int m = spec.divisibility_m;
  rep.m = m;
  rep.s = spec.s_grid;

  for (double t : make_grid(1e-3, 1e2, 64, true)) {
    const Complex whole = f(Complex(t, 0.0), 1.0);
    Complex root = f(Complex(t, 0.0), 1.0 / m);
    Complex pw = 1.0;
    for (int q = 0; q < m; ++q) pw *= root;
    rep.transform_identity_deviation =
        std::max(rep.transform_identity_deviation, std::abs(whole - pw));
  }

  // nu on a uniform grid from 0; the probe densities vanish at s = 0.
  const double h = spec.convolution_step;
  const std::size_t n = static_cast<std::size_t>(std::ceil(spec.s_grid.back() / h)) + 1;
  std::vector<double> nu(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) nu[j] = invert_one(f, 1.0 / m, j * h, spec.method, spec);

  std::vector<double> conv = nu;
  for (int fold = 1; fold < m; ++fold) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      double acc = 0.5 * (nu[0] * conv[i] + nu[i] * conv[0]);
      for (std::size_t j = 1; j < i; ++j) acc += nu[j] * conv[i - j];
      next[i] = h * acc;
    }
    conv = std::move(next);
  }

  for (double s : rep.s) {
    const double mu = invert_one(f, 1.0, s, spec.method, spec);
    const double x = s / h;
    const std::size_t i = std::min(static_cast<std::size_t>(x), n - 2);
    const double w = x - static_cast<double>(i);
    const double c = (1.0 - w) * conv[i] + w * conv[i + 1];
    rep.mu.push_back(mu);
    rep.convolved.push_back(c);
    rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(c - mu));
  }
  return rep;
}

DivisibilityReport divisibility_probe(const LaplaceProbeSpec& spec, ProbeTarget target) {
  return divisibility_probe_transform(target_transform(target), spec);
}

RoundtripReport roundtrip_from_samples(const DensityResult& density, const PoweredTransform& f,
                                       const std::vector<double>& t_grid) {
  if (density.s.empty() || t_grid.empty())
    throw Error(ErrorKind::Usage, "roundtrip needs a non-empty s grid and t grid");
  RoundtripReport rep;
  rep.t = t_grid;
  std::vector<double> w(density.s.size());
  for (double t : t_grid) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(-density.s[i] * t) * density.mu[i];
    // [0, s_0] as a rectangle at the left end.
    const double forward = density.s[0] * w[0] + grid_integral(density.s, w);
    const double expected = f(Complex(t, 0.0), 1.0).real();
    rep.forward.push_back(forward);
    rep.expected.push_back(expected);
    rep.max_rel_deviation =
        std::max(rep.max_rel_deviation, std::abs(forward - expected) / std::abs(expected));
  }
  return rep;
}

RoundtripReport roundtrip_check(const LaplaceProbeSpec& spec, ProbeTarget target,
                                const std::vector<double>& t_grid) {
  return roundtrip_from_samples(invert_density(spec, target), target_transform(target), t_grid);
}

std::string density_csv(const DensityResult& density) {
  std::string out = "s,mu,method_delta\n";
  char buf[96];
  for (std::size_t i = 0; i < density.s.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", density.s[i], density.mu[i],
                  density.method_delta[i]);
    out += buf;
  }
  return out;
}

}  // namespace esym
