#pragma once
// Laplace-transform probes of exp(-H) and exp(-Q) on the slice e_1 = 1.
// For d = 2 the transform variable is t = e_2 and
//   exp(-target(1, t)) = \int_0^inf e^{-s t} mu(s) ds.

#include <span>
#include <string>
#include <vector>

#include "esym/laplace.hpp"
#include "esym/quadrature.hpp"

namespace esym {

enum class ProbeTarget { H, Q };
enum class InversionMethod { Talbot, GaverStehfest };

const char* to_string(ProbeTarget t);
const char* to_string(InversionMethod m);
ProbeTarget parse_probe_target(const std::string& name);
InversionMethod parse_inversion_method(const std::string& name);

struct LaplaceProbeSpec {
  int d = 2;
  InversionMethod method = InversionMethod::Talbot;
  int talbot_nodes = 32;
  int gs_order = 14;
  std::vector<double> s_grid;
  int divisibility_m = 2;
  /// Step of the uniform grid used for convolutions.
  double convolution_step = 0.01;

  void validate() const;
};

/// count points on [lo, hi], geometric if `log`.
std::vector<double> make_grid(double lo, double hi, std::size_t count, bool log);

/// exp(-H(1, e_2, ..., e_d)); the probability region (or its boundary) only.
double exp_neg_entropy(std::span<const double> e_rest);
double exp_neg_subentropy(std::span<const double> e_rest);

/// exp(-power * target(1, t)) for complex t off (-inf, 0], d = 2. The roots
/// of z^2 - z + t stay off the cut there, so this continues the real
/// function analytically from the probability region (0, 1/4].
Complex probe_transform(ProbeTarget target, Complex t, double power = 1.0);

/// H(1, t) = \int_0^t dH/de_2(1, tau) dtau with the real-integral
/// derivative; valid for every t > 0 without root finding.
Estimate entropy_by_gradient_path(double t, const QuadratureSpec& quad = {});

/// f(t)^power for a transform pair; power = 1/m gives the m-th root.
using PoweredTransform = std::function<Complex(Complex t, double power)>;

PoweredTransform target_transform(ProbeTarget target);
/// "1over1plusT": 1/(1+t) <-> e^{-s}; "const1": 1 <-> point mass at 0;
/// "exp<a>" (e.g. "exp2"): e^{-a t} <-> point mass at a.
PoweredTransform calibration_transform(const std::string& name);

struct DensityResult {
  std::vector<double> s;
  std::vector<double> mu;
  /// |primary - cross-check| per point (Talbot vs Gaver-Stehfest).
  std::vector<double> method_delta;
  std::vector<double> negativity_threshold;
  std::vector<std::size_t> negative_points;
  /// \int mu ds over the grid (trapezoid in ln s on geometric grids).
  double grid_mass = 0.0;
  InversionMethod method = InversionMethod::Talbot;
};

DensityResult invert_transform(const PoweredTransform& f, const LaplaceProbeSpec& spec);
DensityResult invert_density(const LaplaceProbeSpec& spec, ProbeTarget target);

struct DivisibilityReport {
  int m = 2;
  std::vector<double> s;
  std::vector<double> mu;
  std::vector<double> convolved;
  /// max |nu^{*m} - mu| over the probe grid.
  double max_abs_deviation = 0.0;
  /// max |f - (f^{1/m})^m| over the probe t-grid.
  double transform_identity_deviation = 0.0;
};

DivisibilityReport divisibility_probe_transform(const PoweredTransform& f,
                                                const LaplaceProbeSpec& spec);
DivisibilityReport divisibility_probe(const LaplaceProbeSpec& spec, ProbeTarget target);

struct RoundtripReport {
  std::vector<double> t;
  std::vector<double> forward;
  std::vector<double> expected;
  double max_rel_deviation = 0.0;
};

/// Forward transform of sampled mu by grid quadrature, compared with f on t_grid.
RoundtripReport roundtrip_from_samples(const DensityResult& density, const PoweredTransform& f,
                                       const std::vector<double>& t_grid);
RoundtripReport roundtrip_check(const LaplaceProbeSpec& spec, ProbeTarget target,
                                const std::vector<double>& t_grid);

/// CSV with columns s, mu, method_delta.
std::string density_csv(const DensityResult& density);

}  // namespace esym
