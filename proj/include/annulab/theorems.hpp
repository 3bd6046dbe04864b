#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "annulab/frames.hpp"
#include "annulab/grid.hpp"
#include "annulab/surfaces.hpp"
#include "json.hpp"

namespace annulab {

struct Hypothesis {
  std::string description;
  double value = 0.0;
  double threshold = 0.0;
  bool satisfied = false;
};

/// Result of one verification. Residuals are normalized so that each one is
/// compared against the same tolerance; quantities are informational.
struct CheckReport {
  std::string name;
  std::string surface;
  nlohmann::json params;
  GridSpec grid;
  double tolerance = 0.0;
  std::vector<Hypothesis> hypotheses;
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::string> notes;

  bool applicable() const;
  /// Vacuously true when a hypothesis fails.
  bool passed() const;
  /// tolerance - max residual (NaN when not applicable or no residuals).
  double margin() const;
  /// "pass", "fail" or "not-applicable".
  std::string status() const;

  double quantity(const std::string& key) const;
  double residual(const std::string& key) const;
};

nlohmann::ordered_json to_json(const CheckReport& report);
std::string to_text(const CheckReport& report);
std::string csv_header();
std::string to_csv_row(const CheckReport& report);

struct CheckOptions {
  std::optional<double> tolerance;  // default: grid tolerance
  std::uint64_t seed = 1;           // random gauges
  std::size_t trials = 10;
};

/// Pluecker, pairing, curvature and Gauss-map energy identities for frame and imm.
CheckReport check_appendix_identities(const Immersion& imm, const Frame& frame,
                                      const CheckOptions& options = {});

/// Smooth random gauge from std::mt19937_64(seed): low modes in s and theta
/// with N(0,1)/(1 + k^2 + m^2) amplitudes, plus the given winding.
GaugeAngle random_gauge(const GridSpec& grid, std::uint64_t seed, int winding = 0);

/// max over gauges of max |K(rotated) - K(frame)|.
CheckReport check_gauge_invariance(const Immersion& imm, const Frame& frame,
                                   const std::vector<GaugeAngle>& gauges,
                                   const CheckOptions& options = {});
/// trials random gauges (seeds seed + t) followed by the pure windings +-1, +-2.
CheckReport check_gauge_invariance(const Immersion& imm, const CheckOptions& options = {});

/// Canonical frame: omega = (-u_theta / r) dr + (1 + r u_r) dtheta, d*omega = 0,
/// and omega(d/dnu) = 0 on circles where u is constant.
CheckReport check_canonical_frame(const Immersion& imm, const CheckOptions& options = {});

/// [(1 + beta/((1 - sqrt(gamma/2pi))(1 - q))) / (1 - sqrt(gamma/2pi))]^2, q = beta/(1 - sqrt(gamma/2pi)).
double explicit_energy_constant(double beta, double gamma);

CheckReport thm12_verify(const Immersion& imm, const CheckOptions& options = {});
CheckReport thm17_check(const Immersion& imm, const CheckOptions& options = {});
CheckReport cor18_check(const Immersion& imm, const CheckOptions& options = {});
CheckReport thm110_verify(const Immersion& imm, const CheckOptions& options = {});
CheckReport conformal_factor_bound(const Immersion& imm, const CheckOptions& options = {});
CheckReport check_minimality(const Immersion& imm, const CheckOptions& options = {});

/// Names accepted by run_check, in declaration order.
const std::vector<std::string>& check_names();

/// Throws Error{unknown_name} for names outside check_names().
CheckReport run_check(const std::string& name, const Immersion& imm, const CheckOptions& options = {});

/// Scalar that should vanish under refinement, per check; used by convergence studies.
/// Throws Error{unknown_name} for checks without one.
double convergence_metric(const std::string& name, const Immersion& imm);
const std::vector<std::string>& convergence_metric_names();

}  // namespace annulab
