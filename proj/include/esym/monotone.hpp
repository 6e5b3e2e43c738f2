#pragma once
// Seeded property checks over the elementary symmetric coordinates. Each
// check draws samples from a SamplePlan, evaluates per sample (possibly on
// several threads), and reduces in sample order into a VerificationReport.

#include <cstdint>
#include <string>
#include <vector>

#include "esym/deriv.hpp"
#include "esym/finite_difference.hpp"
#include "esym/sampling.hpp"

namespace esym {

struct Violation {
  std::size_t sample = 0;
  std::vector<double> e;
  std::string indices;
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;
  std::string cause;
};

struct VerificationReport {
  static constexpr std::size_t kPayloadCap = 100;

  std::string property;
  SamplePlan plan;
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// Largest deviation seen; +inf if an engine failed.
  double max_abs_deviation = 0.0;
  double tolerance = 0.0;
  /// Largest summed engine error estimate over all checks.
  double error_budget = 0.0;
  std::vector<Violation> payload;
  std::vector<std::string> notes;

  bool passed() const { return violations == 0; }
};

struct CheckOptions {
  QuadratureSpec quad{};
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Relative step for the forward-difference grids.
  double grid_step = 0.1;
};

/// The finite-difference oracle checked against closed forms at
/// e = (1, 1/4), (1, 3/16) and (2, 1).
VerificationReport validate_fd_oracle(double tol = 1e-5);

/// Mixed derivative computed index by index: the order-(m-1) integrand for
/// idx minus its smallest entry, differentiated along that entry by a
/// complex step under the integral. Independent of the index-sum
/// reduction. Throws Usage when the reduced index sum is 1 (no integral).
Estimate index_resolved_derivative(const ElemSymCoords& e, const MultiIndex& idx, FdTarget target,
                                   const QuadratureSpec& quad = {});

/// -dQ/de_k (real integral) against d^2 H/de_l de_m for every split
/// k = l + m (index-resolved route; contour or residue for (1,1)).
VerificationReport check_prop1(const SamplePlan& plan, double tol, const CheckOptions& opt = {});

/// -dQ/de_k from the finite-difference oracle against d^2 H/de_l de_m.
VerificationReport check_prop1_fd(const SamplePlan& plan, double tol,
                                  const CheckOptions& opt = {});

/// (-1)^{m-1} d^m H >= -tol for every order m <= max_order and every
/// reachable index sum; m = 1 covers k >= 2.
VerificationReport check_prop2_signs(const SamplePlan& plan, int max_order, double tol,
                                     const CheckOptions& opt = {});

/// Groups all order-m multi-indices by K and compares the index-resolved
/// values within each group and against the reduced value, for H and Q.
VerificationReport check_prop3_index_sum(const SamplePlan& plan, int m, double tol,
                                         const CheckOptions& opt = {});

/// Repeated-spectrum reduction for orders 2 and 3 against nested finite
/// differences of the analytic first derivative; relative deviation.
VerificationReport check_prop4_reduction(const SamplePlan& plan, double tol,
                                         const CheckOptions& opt = {});

/// Coefficient convolution for m = 2, 3 against the coordinates of the
/// m-fold repeated root list. Needs samples that carry roots.
VerificationReport check_repeated_coords(const SamplePlan& plan, double tol,
                                         const CheckOptions& opt = {});

/// Fannes, residue and contour values of dH/de_k, pairwise.
VerificationReport check_engine_agreement(const SamplePlan& plan, double tol,
                                          const CheckOptions& opt = {});

/// f = dH/de_k: sign lattice of its derivatives up to `depth`, then
/// alternating forward differences on axis-aligned grids.
VerificationReport check_complete_monotonicity(const SamplePlan& plan, int k, int depth,
                                               double tol, const CheckOptions& opt = {});

/// H >= -tol (real spectra only) and Q >= -tol. Cone samples get e_1 = 1.
VerificationReport check_positivity(const SamplePlan& plan, double tol,
                                    const CheckOptions& opt = {});

std::string report_to_text(const VerificationReport& r);
/// Serialized with nlohmann::json; doubles use shortest round-trip form.
std::string report_to_json(const VerificationReport& r);

}  // namespace esym
