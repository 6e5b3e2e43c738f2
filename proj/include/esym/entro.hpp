#pragma once

// Entropy H = -sum x_i ln x_i and subentropy
// Q = -sum_i x_i^d ln x_i / prod_{j != i} (x_i - x_j), in nats.
// Q is minus the (d-1)-st divided difference of x^d ln x, which is how it is
// evaluated here; repeated roots go through the confluent table.

#include <span>

#include "esym/error.hpp"
#include "esym/poly.hpp"

namespace esym {

/// Real nonnegative spectra only; a root at exactly 0 contributes 0.
double entropy_from_roots(const RootSpectrum& spectrum);

/// Accepts real-positive, clustered and conjugate-pair spectra.
double subentropy_from_roots(const RootSpectrum& spectrum);

/// Root solve, then entropy_from_roots. The error estimate propagates the
/// solver's reconstruction residual through the roots.
Estimate entropy_from_elemsym(const ElemSymCoords& e);

/// Root solve, then subentropy_from_roots (conjugate pairs allowed).
Estimate subentropy_from_elemsym(const ElemSymCoords& e);

/// -sum x ln x with the principal logarithm, for arbitrary roots off the
/// cut (-inf, 0]. On conjugate-closed spectra this is the analytic
/// continuation of H across the discriminant surface into the whole cone.
Complex entropy_continued(std::span<const Complex> roots);

/// Real-valued continuation of H(e) on the cone (real or conjugate-pair
/// roots, none on (-inf, 0]).
double entropy_continued(const ElemSymCoords& e);

/// -[x_1..x_d](x^d ln x) without any realness requirement.
Complex subentropy_continued(std::span<const Complex> roots);

}  // namespace esym
