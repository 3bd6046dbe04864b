#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "annulab/grid.hpp"

namespace annulab {

struct SolveReport {
  double residual = 0.0;              // normwise backward error of the discrete system
  double compatibility_defect = 0.0;  // Neumann only
  int iterations = 1;                 // direct solver
};

/// -Lap v = rhs with v = g_a on r = a and v = g_b on r = b (one value per theta node).
/// Throws SolverError when the residual exceeds 1e-10.
ScalarField poisson_dirichlet(const ScalarField& rhs, std::span<const double> g_a,
                              std::span<const double> g_b, SolveReport* report = nullptr);
ScalarField poisson_dirichlet(const ScalarField& rhs, double g_a, double g_b,
                              SolveReport* report = nullptr);

/// Lap theta = rhs with outward normal derivative flux_a on r = a and flux_b on r = b.
/// The discrete compatibility defect (integral of rhs minus boundary flux) is removed by
/// a uniform shift of rhs and reported; max_defect turns a large defect into an error.
/// The returned solution has zero area-weighted mean.
ScalarField poisson_neumann(const ScalarField& rhs, std::span<const double> flux_a,
                            std::span<const double> flux_b, SolveReport* report = nullptr,
                            std::optional<double> max_defect = std::nullopt);

/// (c_a - c_b)/log(a/b) * log r + (c_b log a - c_a log b)/log(a/b).
ScalarField harmonic_annulus(const GridSpec& grid, double c_a, double c_b);

/// a_x b_y - a_y b_x, assembled from log-polar derivatives.
ScalarField jacobian(const ScalarField& a, const ScalarField& b);

struct WenteSolution {
  ScalarField v;
  double sup_norm = 0.0;
  double grad_norm = 0.0;
  double energy_product = 0.0;  // sum_k |grad a^k| |grad b^k|
  double bound_infty = 0.0;     // energy_product / (2 pi)
  double bound_l2 = 0.0;        // energy_product * sqrt(3/(64 pi))
  double residual = 0.0;
};

inline constexpr double wente_constant_infty = 0.15915494309189535;  // 1/(2 pi)
inline constexpr double wente_constant_l2 = 0.12215062797572956;     // sqrt(3/(64 pi))

/// Sum over components of the zero-Dirichlet solutions of -Lap v^k = a^k_x b^k_y - a^k_y b^k_x.
WenteSolution wente_solve(const AmbientField& a, const AmbientField& b);
WenteSolution wente_solve(const ScalarField& a, const ScalarField& b);

struct WenteSample {
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  double sup_ratio = 0.0;
  double grad_ratio = 0.0;
};

struct WenteAudit {
  std::vector<WenteSample> samples;
  double max_sup_ratio = 0.0;
  double max_grad_ratio = 0.0;
  std::uint64_t worst_sup_seed = 0;
  std::uint64_t worst_grad_seed = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool passed = false;
};

/// Random pair of band-limited fields vanishing on both circles (modes up to
/// min(8, n_theta/4) in theta, 6 sine modes in s), drawn from std::mt19937_64(seed).
std::pair<ScalarField, ScalarField> wente_random_pair(const GridSpec& grid, std::uint64_t seed);

/// Sample i uses seed + i. Passes when both maxima stay within the constants plus tolerance.
WenteAudit wente_audit(std::size_t n_samples, std::uint64_t seed, const GridSpec& grid,
                       std::optional<double> tolerance = std::nullopt);

struct HodgeParts {
  ScalarField v;                  // normalized v(a, theta=0) = 0
  double alpha = 0.0;
  double closedness_spread = 0.0;  // std-dev of the loop integrals of *omega over s-levels
  double reconstruction_residual = 0.0;  // L2 norm of dv + alpha dtheta - *omega
  std::vector<double> loop_integrals;
};

/// *omega = dv + alpha dtheta. v is the discrete least-squares potential of
/// *omega - alpha dtheta. Throws Error{not_closed} when the loop integrals spread
/// by more than spread_tolerance (default 2 pi tau).
HodgeParts hodge_decompose(const OneForm& omega,
                           std::optional<double> spread_tolerance = std::nullopt);

}  // namespace annulab
