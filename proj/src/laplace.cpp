#include "esym/laplace.hpp"

#include <cmath>
#include <numbers>

namespace esym {

double talbot_invert(const ComplexTransform& f, double s, int nodes) {
  if (!(s > 0.0)) throw Error(ErrorKind::Usage, "inversion point must be positive");
  if (nodes < 2) throw Error(ErrorKind::Usage, "Talbot needs at least 2 nodes");
  const double r = 2.0 * nodes / (5.0 * s);
  double acc = 0.5 * std::exp(r * s) * f(Complex(r, 0.0)).real();
  for (int k = 1; k < nodes; ++k) {
    const double theta = k * std::numbers::pi / nodes;
    const double cot = 1.0 / std::tan(theta);
    const Complex S(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    acc += (std::exp(s * S) * f(S) * Complex(1.0, sigma)).real();
  }
  return r / nodes * acc;
}

std::vector<double> stehfest_weights(int order) {
  if (order < 2 || order % 2 != 0 || order > 14)
    throw Error(ErrorKind::Usage, "Gaver-Stehfest order must be even and at most 14");
  const int half = order / 2;
  auto fact = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  std::vector<double> v(order);
  for (int k = 1; k <= order; ++k) {
    double sum = 0.0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      sum += std::pow(j, half) * fact(2 * j) /
             (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
    }
    v[k - 1] = ((k + half) % 2 == 0 ? 1.0 : -1.0) * sum;
  }
  return v;
}

double gaver_stehfest_invert(const std::function<double(double)>& f, double s, int order) {
  if (!(s > 0.0)) throw Error(ErrorKind::Usage, "inversion point must be positive");
  const std::vector<double> v = stehfest_weights(order);
  const double a = std::numbers::ln2 / s;
  double acc = 0.0;
  for (int k = 1; k <= order; ++k) acc += v[k - 1] * f(k * a);
  return a * acc;
}

}  // namespace esym
