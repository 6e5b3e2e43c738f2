#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "esym/poly.hpp"

using namespace esym;

namespace {

// Vieta by expansion of prod (z - x_i); independent of the library.
std::vector<double> vieta(const std::vector<double>& x) {
  std::vector<double> e(x.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += x[i] * e[k - 1];
  return {e.begin() + 1, e.end()};
}

}  // namespace

TEST_CASE("elemsym_from_roots") {
  const ElemSymCoords a = elemsym_from_roots(make_spectrum(std::vector<double>{0.5, 0.5}));
  CHECK(a(1) == doctest::Approx(1.0));
  CHECK(a(2) == doctest::Approx(0.25));

  const ElemSymCoords b = elemsym_from_roots(make_spectrum(std::vector<double>{1, 2, 3}));
  CHECK(b == ElemSymCoords{6, 11, 6});

  const double s = std::sqrt(3.0) / 2;
  const ElemSymCoords c = elemsym_from_roots(make_spectrum(std::vector<Complex>{{0.5, s}, {0.5, -s}}));
  CHECK(c(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c(2) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("make_spectrum rejects unpaired complex roots") {
  try {
    make_spectrum(std::vector<Complex>{{0.5, 0.5}, {0.5, 0.25}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedSpectrum);
  }
}

TEST_CASE("roots_from_elemsym") {
  const RootSpectrum a = roots_from_elemsym({6, 11, 6});
  CHECK(a.kind == SpectrumKind::RealPositive);
  REQUIRE(a.d() == 3);
  for (int j = 0; j < 3; ++j) CHECK(a.roots[j].real() == doctest::Approx(j + 1.0).epsilon(1e-13));

  const RootSpectrum b = roots_from_elemsym({1, 0.25});
  CHECK(b.kind == SpectrumKind::BoundaryCluster);
  CHECK(b.roots[0].real() == doctest::Approx(0.5).epsilon(1e-7));

  const RootSpectrum c = roots_from_elemsym({1, 0.5});
  CHECK(c.kind == SpectrumKind::ComplexPairs);
  CHECK(c.roots[0] == Complex(0.5, -0.5));
  CHECK(std::abs(c.roots[1] - Complex(0.5, 0.5)) < 1e-15);

  CHECK(roots_from_elemsym({1, -0.1}).kind == SpectrumKind::RealSigned);
}

TEST_CASE("root round trip on random spectra") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> logu(std::log(1e-3), 0.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 7;
    std::vector<double> x;
    for (int i = 0; i < d; ++i) x.push_back(std::exp(logu(rng)));
    std::sort(x.begin(), x.end());
    double gap = INFINITY;
    for (int i = 1; i < d; ++i) gap = std::min(gap, (x[i] - x[i - 1]) / x[i]);
    if (gap < 1e-2) continue;  // near the clustering threshold the roots are ill-conditioned
    const RootSpectrum r = roots_from_elemsym(ElemSymCoords(vieta(x)));
    REQUIRE(r.d() == d);
    for (int i = 0; i < d; ++i) CHECK(std::abs(r.roots[i].real() / x[i] - 1.0) <= 1e-9);
    // Reported roots are zeros of p up to the polynomial's own scale.
    const MonicCharPoly p(ElemSymCoords(vieta(x)));
    for (const Complex& z : r.roots) CHECK(std::abs(p(z)) <= 1e-10 * p.magnitude(std::abs(z)));
  }
}

TEST_CASE("charpoly_eval") {
  CHECK(std::abs(charpoly_eval({1, 0.25}, 0.5)) == 0.0);
  CHECK(charpoly_eval({6, 11, 6}, 0.0) == Complex(-6.0, 0.0));
  const Complex v = charpoly_eval({1, 0.25}, Complex(0, 1));
  CHECK(v.real() == doctest::Approx(-0.75));
  CHECK(v.imag() == doctest::Approx(-1.0));
}

TEST_CASE("cone_membership") {
  CHECK(cone_membership({1, 0.1875}) == ConeClass::ProbabilityRegion);
  CHECK(cone_membership({1, 0.5}) == ConeClass::ConeComplex);
  CHECK(cone_membership({1, -0.1}) == ConeClass::OutsideCone);
  CHECK(cone_membership({1, 0.25}) == ConeClass::Boundary);
  CHECK(cone_membership({1, 0.0}) == ConeClass::Boundary);
}

TEST_CASE("implicit_root_sensitivity") {
  CHECK(implicit_root_sensitivity({1, 0.1875}, 1, 2) == doctest::Approx(2.0));
  CHECK(implicit_root_sensitivity({1, 0.1875}, 2, 2) == doctest::Approx(-2.0));
  CHECK(implicit_root_sensitivity({6, 11, 6}, 3, 1) == doctest::Approx(4.5));

  // Against a central difference of the root solver.
  const ElemSymCoords e{6, 11, 6};
  const double h = 1e-6;
  ElemSymCoords up = e, dn = e;
  up(1) += h;
  dn(1) -= h;
  const double fd = (roots_from_elemsym(up).roots[2].real() - roots_from_elemsym(dn).roots[2].real()) / (2 * h);
  CHECK(fd == doctest::Approx(4.5).epsilon(1e-6));

  CHECK_THROWS_AS(implicit_root_sensitivity({1, 0.25}, 1, 2), Error);
}
