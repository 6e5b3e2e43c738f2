#pragma once

// Derivatives of H and Q with respect to the elementary symmetric
// coordinates. Three independent routes are provided:
//
//   Fannes   : real integral  dH/de_k = \int_0^inf t^{d-k} / P(t) dt,
//              P(t) = t^d + e_1 t^{d-1} + ... + e_d            (k >= 2)
//   Residue  : (-1)^k [x_1..x_d](x^{d-k} ln x), confluent when roots repeat
//   Contour  : the same residue sum as a circle integral around the roots
//
// Higher derivatives use the m-fold repeated spectrum: with P~ = P^m of
// degree m d and K the index sum,
//
//   d^m H / de_{i_1}..de_{i_m} = (-1)^{m-1} (m-1)! dH~/de~_K
//   d^m Q / de_{i_1}..de_{i_m} = -d^{m+1} H (any order-(m+1) index, sum K)

#include <span>
#include <string>
#include <vector>

#include "esym/contour.hpp"
#include "esym/error.hpp"
#include "esym/poly.hpp"
#include "esym/quadrature.hpp"

namespace esym {

enum class DerivMethod { Auto, Fannes, Residue, Contour };

const char* to_string(DerivMethod m);
DerivMethod parse_deriv_method(const std::string& name);

/// Derivative multi-index (i_1, ..., i_m), stored sorted.
class MultiIndex {
 public:
  MultiIndex(std::vector<int> indices, int d);
  MultiIndex(std::initializer_list<int> indices, int d)
      : MultiIndex(std::vector<int>(indices), d) {}

  int order() const { return static_cast<int>(indices_.size()); }
  int index_sum() const { return sum_; }
  int dimension() const { return d_; }
  std::span<const int> indices() const { return indices_; }
  std::string str() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> indices_;
  int d_ = 0;
  int sum_ = 0;
};

/// All sorted multi-indices of the given order over 1..d.
std::vector<MultiIndex> all_multi_indices(int d, int order);

/// \int_0^inf t^power / (t^D + c_1 t^{D-1} + ... + c_D) dt, D = coeffs.size(),
/// split at t = 1 with the tail mapped by t = 1/u. Needs power <= D - 2 and a
/// denominator without zeros on [0, inf).
Estimate fannes_integral(std::span<const double> coeffs, int power, const QuadratureSpec& quad);

/// dH/de_k via the real integral; 2 <= k <= d.
Estimate dH_dek_fannes(const ElemSymCoords& e, int k, const QuadratureSpec& quad = {});

/// dH/de_1 = -[x_1..x_d](x^{d-1} ln x) - 1.
Estimate dH_de1(const ElemSymCoords& e, const QuadratureSpec& quad = {});

/// dH/de_k = (-1)^k [x_1..x_d](x^{d-k} ln x); 2 <= k <= d.
Estimate dH_dek_residue(const ElemSymCoords& e, int k);

/// dH/de_k as a contour integral around the roots; 1 <= k <= d.
ContourResult dH_dek_contour(const ElemSymCoords& e, int k, const QuadratureSpec& quad = {},
                             long n_nodes = 16);

/// Q = -(1/2 pi i) \oint z^d ln z / p(z) dz.
ContourResult subentropy_contour(const ElemSymCoords& e, const QuadratureSpec& quad = {},
                                 long n_nodes = 16);

/// First derivative dispatcher. Auto means Fannes for k >= 2 (or Contour if
/// quad.method asks for it) and Residue for k = 1.
Estimate dH_dek(const ElemSymCoords& e, int k, DerivMethod method = DerivMethod::Auto,
                const QuadratureSpec& quad = {});

/// Coefficients of p(z)^m in the same e-convention, degree m d. Obtained by
/// m - 1 convolutions of (1, e_1, ..., e_d); no root finding.
ElemSymCoords repeated_spectrum_coords(const ElemSymCoords& e, int m);

/// Mixed derivative of H of any order. Depends on idx only through K.
Estimate dH_multi(const ElemSymCoords& e, const MultiIndex& idx, const QuadratureSpec& quad = {},
                  DerivMethod method = DerivMethod::Auto);

/// dQ/de_k, 1 <= k <= d. Auto: quadrature for k >= 2, contour (falling
/// back to the residue sum when no circle fits) for k = 1.
Estimate dQ_dek(const ElemSymCoords& e, int k, const QuadratureSpec& quad = {},
                DerivMethod method = DerivMethod::Auto);

/// Mixed derivative of Q of any order.
Estimate dQ_multi(const ElemSymCoords& e, const MultiIndex& idx, const QuadratureSpec& quad = {},
                  DerivMethod method = DerivMethod::Auto);

}  // namespace esym
