#include "esym/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace esym {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw Error(ErrorKind::Usage, "quadrature tolerances must be positive");
  if (max_evals <= 0) throw Error(ErrorKind::Usage, "max_evals must be positive");
  if (!(circle_margin > 0.0 && circle_margin < 1.0))
    throw Error(ErrorKind::Usage, "circle_margin must lie in (0, 1)");
}

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  Panel p{a, b, resk * half, std::abs((resk - resg) * half)};
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  if (resasc != 0.0 && p.error != 0.0)
    p.error = resasc * std::min(1.0, std::pow(200.0 * p.error / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50 * eps))
    p.error = std::max(50 * eps * resabs, p.error);
  if (!std::isfinite(p.value) || !std::isfinite(p.error))
    throw Error(ErrorKind::NumericalFailure, "integrand is not finite on the panel");
  return p;
}

}  // namespace

Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec) {
  spec.validate();
  constexpr int kEvalsPerPanel = 15;
  std::vector<Panel> panels{gauss_kronrod(f, a, b)};
  long evals = kEvalsPerPanel;
  auto worse = [&](std::size_t x, std::size_t y) { return panels[x].error < panels[y].error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);
  heap.push(0);
  double total = panels[0].value;
  double total_err = panels[0].error;

  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (evals + 2 * kEvalsPerPanel > spec.max_evals)
      throw NumericalFailure("adaptive quadrature: tolerance not met within max_evals",
                             total, total_err);
    const std::size_t worst = heap.top();
    heap.pop();
    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    if (!(mid > old.a && mid < old.b)) {
      // Panel can no longer be split in double precision.
      throw NumericalFailure("adaptive quadrature: panel width reached machine resolution",
                             total, total_err);
    }
    panels[worst] = gauss_kronrod(f, old.a, mid);
    panels.push_back(gauss_kronrod(f, mid, old.b));
    evals += 2 * kEvalsPerPanel;
    heap.push(worst);
    heap.push(panels.size() - 1);

    total = 0.0;
    total_err = 0.0;
    // Running totals are recomputed so accumulated rounding never drifts.
    for (const Panel& p : panels) {
      total += p.value;
      total_err += p.error;
    }
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  Estimate out;
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  out.evaluations = evals;
  return out;
}

Estimate integrate_split_half_line(const std::function<double(double)>& head,
                                   const std::function<double(double)>& tail,
                                   const QuadratureSpec& spec) {
  // Each half gets half of the absolute budget.
  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;
  const Estimate lo = integrate_adaptive(head, 0.0, 1.0, half);
  half.max_evals = std::max<long>(spec.max_evals - lo.evaluations, 30);
  const Estimate hi = integrate_adaptive(tail, 0.0, 1.0, half);
  return {lo.value + hi.value, lo.error + hi.error, lo.evaluations + hi.evaluations};
}

}  // namespace esym
