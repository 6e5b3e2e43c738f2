#pragma once

// Root coordinates x_1..x_d versus elementary symmetric coordinates e_1..e_d,
// linked through the monic polynomial
//
//   p(z) = z^d - e_1 z^{d-1} + e_2 z^{d-2} - ... + (-1)^d e_d.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "esym/error.hpp"

namespace esym {

using Complex = std::complex<double>;

/// Relative gap below which two roots are treated as one repeated root:
/// |a - b| <= kClusterRel * max(1, |a|, |b|).
inline constexpr double kClusterRel = 1e-7;

/// Default threshold for deciding a computed root is real:
/// |imag| <= tol * (1 + |real|).
inline constexpr double kImagTol = 1e-10;

bool confluent(Complex a, Complex b);

enum class SpectrumKind {
  RealPositive,     // all roots real, strictly positive, pairwise separated
  ComplexPairs,     // some non-real roots, closed under conjugation
  BoundaryCluster,  // at least one group of confluent roots
  RealSigned,       // all roots real, at least one <= 0 (outside the cone)
};

const char* to_string(SpectrumKind kind);

/// Roots sorted nondecreasing by real part, then imaginary part.
struct RootSpectrum {
  std::vector<Complex> roots;
  SpectrumKind kind = SpectrumKind::RealPositive;
  /// max_k |e_k(roots) - e_k| / max(1, |e_k|) when produced by the solver.
  double residual = 0.0;

  int d() const { return static_cast<int>(roots.size()); }
  bool all_real() const;
  std::vector<double> real_parts() const;
};

/// Builds a spectrum from user-supplied roots: sorts, checks conjugate
/// closure and classifies. Confluent roots are kept as given.
RootSpectrum make_spectrum(std::vector<Complex> roots);
RootSpectrum make_spectrum(std::span<const double> roots);

/// The coordinates (e_1, ..., e_d). Entries are 1-based through operator().
class ElemSymCoords {
 public:
  ElemSymCoords() = default;
  explicit ElemSymCoords(std::vector<double> e);
  ElemSymCoords(std::initializer_list<double> e)
      : ElemSymCoords(std::vector<double>(e)) {}

  int d() const { return static_cast<int>(e_.size()); }
  double operator()(int k) const { return e_[k - 1]; }
  double& operator()(int k) { return e_[k - 1]; }
  std::span<const double> values() const { return e_; }

  /// Every e_k strictly positive.
  bool in_positive_cone() const;

  friend bool operator==(const ElemSymCoords&, const ElemSymCoords&) = default;

 private:
  std::vector<double> e_;
};

std::string format_coords(const ElemSymCoords& e);

/// Coefficients (1, -e_1, +e_2, ..., (-1)^d e_d), highest degree first.
class MonicCharPoly {
 public:
  explicit MonicCharPoly(const ElemSymCoords& e);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> signed_coeffs() const { return coeffs_; }

  /// Compensated Horner: as accurate as Horner in twice the working
  /// precision, then rounded.
  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  /// sum_j |c_j| |z|^{d-j}, the scale against which residuals are judged.
  double magnitude(double abs_z) const;

 private:
  std::vector<double> coeffs_;
};

ElemSymCoords elemsym_from_roots(const RootSpectrum& spectrum);

struct RootOptions {
  double imag_tol = kImagTol;
  int max_polish_iterations = 80;
};

/// Companion-matrix eigenvalues polished by Aberth-Ehrlich iteration.
/// Confluent groups are replaced by their centroid and flagged.
RootSpectrum roots_from_elemsym(const ElemSymCoords& e,
                                const RootOptions& options = {});

Complex charpoly_eval(const ElemSymCoords& e, Complex z);

enum class ConeClass {
  OutsideCone,        // some e_k < 0 (or = 0 without a real spectrum)
  ProbabilityRegion,  // real, positive, separated spectrum
  ConeComplex,        // in the open cone with conjugate-pair roots
  Boundary,           // confluent roots or a root at (or within tol of) 0
};

const char* to_string(ConeClass c);

ConeClass cone_membership(const ElemSymCoords& e, double tol = kImagTol);

/// dx_j/de_k = (-1)^{k+1} x_j^{d-k} / prod_{i != j} (x_j - x_i),
/// j and k 1-based, roots in sorted order.
double implicit_root_sensitivity(const ElemSymCoords& e, int j, int k);

}  // namespace esym
