#include "annulab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "annulab/errors.hpp"
#include "annulab/kernels.hpp"
#include "kernels_common.hpp"

namespace annulab {
namespace {

using kernels::Shape;

constexpr double residual_limit = 1e-10;

Shape shape_of(const GridSpec& g) { return {g.n_s(), g.n_theta()}; }

std::vector<double> row_coefficients(std::span<const double> row) {
  std::vector<double> out(row.size());
  kernels::active().dft_forward({1, row.size()}, row, out);
  return out;
}

// Normwise backward error of Lap v = f on interior rows: max |Lap v - f| / (|f| + |Lap| |v|).
double laplace_backward_error(const ScalarField& v, const ScalarField& f) {
  const GridSpec& g = v.grid();
  const ScalarField lap = laplacian(v);
  double res = 0.0, fmax = 0.0;
  for (std::size_t i = 1; i + 1 < g.n_s(); ++i)
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      res = std::max(res, std::abs(lap(i, j) - f(i, j)));
      fmax = std::max(fmax, std::abs(f(i, j)));
    }
  const double op_norm = std::exp(-2.0 * g.s_min()) *
                         (4.0 / (g.ds() * g.ds()) + 4.0 / (g.dtheta() * g.dtheta()));
  const double scale = fmax + op_norm * v.max_abs();
  return scale > 0.0 ? res / scale : 0.0;
}

void require_boundary_size(const GridSpec& g, std::span<const double> data, const char* what) {
  if (data.size() != g.n_theta())
    throw Error(ErrorKind::grid_mismatch,
                std::string(what) + " needs one value per theta node (" + std::to_string(g.n_theta()) + ")");
}

}  // namespace

ScalarField poisson_dirichlet(const ScalarField& rhs, std::span<const double> g_a,
                              std::span<const double> g_b, SolveReport* report) {
  const GridSpec& g = rhs.grid();
  require_boundary_size(g, g_a, "g_a");
  require_boundary_size(g, g_b, "g_b");
  const auto& k = kernels::active();
  const Shape sh = shape_of(g);

  std::vector<double> forcing(g.size());
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    const double w = -std::exp(2.0 * g.s(i));
    for (std::size_t j = 0; j < g.n_theta(); ++j) forcing[g.index(i, j)] = w * rhs(i, j);
  }
  std::vector<double> fhat(g.size()), vhat(g.size()), v(g.size());
  k.dft_forward(sh, forcing, fhat);
  const auto lo = row_coefficients(g_b);
  const auto hi = row_coefficients(g_a);
  k.dirichlet_modes(sh, g.ds(), g.dtheta(), fhat, lo, hi, vhat);
  k.dft_inverse(sh, vhat, v);

  ScalarField out(g, std::move(v));
  for (std::size_t j = 0; j < g.n_theta(); ++j) {
    out(0, j) = g_b[j];
    out(g.n_s() - 1, j) = g_a[j];
  }
  const double residual = laplace_backward_error(out, -1.0 * rhs);
  if (!(residual <= residual_limit))
    throw SolverError("Dirichlet solve residual " + std::to_string(residual) + " above 1e-10", residual);
  if (report) *report = {residual, 0.0, 1};
  return out;
}

ScalarField poisson_dirichlet(const ScalarField& rhs, double g_a, double g_b, SolveReport* report) {
  const std::vector<double> a(rhs.grid().n_theta(), g_a), b(rhs.grid().n_theta(), g_b);
  return poisson_dirichlet(rhs, a, b, report);
}

ScalarField poisson_neumann(const ScalarField& rhs, std::span<const double> flux_a,
                            std::span<const double> flux_b, SolveReport* report,
                            std::optional<double> max_defect) {
  const GridSpec& g = rhs.grid();
  require_boundary_size(g, flux_a, "flux_a");
  require_boundary_size(g, flux_b, "flux_b");
  const auto& k = kernels::active();
  const Shape sh = shape_of(g);

  // d_s theta on the circles: the outward normal is +d_r at r = a and -d_r at r = b.
  std::vector<double> slope_hi(g.n_theta()), slope_lo(g.n_theta());
  double boundary_flux = 0.0;
  for (std::size_t j = 0; j < g.n_theta(); ++j) {
    slope_hi[j] = g.outer_radius() * flux_a[j];
    slope_lo[j] = -g.inner_radius() * flux_b[j];
    boundary_flux += (slope_hi[j] - slope_lo[j]) * g.dtheta();
  }
  const double area = integrate(ScalarField(g, 1.0), Area{});
  const double defect = integrate(rhs, Area{}) - boundary_flux;
  if (max_defect && std::abs(defect) > *max_defect)
    throw Error(ErrorKind::compatibility_defect,
                "Neumann data incompatible: defect " + std::to_string(defect));
  const double shift = defect / area;
  ScalarField balanced = rhs;
  balanced += -shift;

  std::vector<double> forcing(g.size());
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    const double w = std::exp(2.0 * g.s(i));
    for (std::size_t j = 0; j < g.n_theta(); ++j) forcing[g.index(i, j)] = w * balanced(i, j);
  }
  std::vector<double> fhat(g.size()), vhat(g.size()), v(g.size());
  k.dft_forward(sh, forcing, fhat);
  const auto lo = row_coefficients(slope_lo);
  const auto hi = row_coefficients(slope_hi);
  k.neumann_modes(sh, g.ds(), g.dtheta(), fhat, lo, hi, vhat);
  k.dft_inverse(sh, vhat, v);

  ScalarField out(g, std::move(v));
  out += -integrate(out, Area{}) / area;
  const double residual = laplace_backward_error(out, balanced);
  if (!(residual <= residual_limit))
    throw SolverError("Neumann solve residual " + std::to_string(residual) + " above 1e-10", residual);
  if (report) *report = {residual, defect, 1};
  return out;
}

ScalarField harmonic_annulus(const GridSpec& grid, double c_a, double c_b) {
  const double la = grid.s_max(), lb = grid.s_min(), lr = grid.log_ratio();
  const double slope = (c_a - c_b) / lr;
  const double offset = (c_b * la - c_a * lb) / lr;
  return ScalarField::sample(grid, [&](double s, double) { return slope * s + offset; });
}

ScalarField jacobian(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  const auto da = differentiate(a);
  const auto db = differentiate(b);
  const GridSpec& g = a.grid();
  ScalarField out(g);
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    const double w = std::exp(-2.0 * g.s(i));
    for (std::size_t j = 0; j < g.n_theta(); ++j)
      out(i, j) = w * (da.d_s(i, j) * db.d_theta(i, j) - da.d_theta(i, j) * db.d_s(i, j));
  }
  return out;
}

namespace {

WenteSolution finish_wente(ScalarField rhs, double energy_product) {
  SolveReport rep;
  WenteSolution sol{poisson_dirichlet(rhs, 0.0, 0.0, &rep)};
  sol.sup_norm = sol.v.max_abs();
  sol.grad_norm = dirichlet_norm(sol.v);
  sol.energy_product = energy_product;
  sol.bound_infty = wente_constant_infty * energy_product;
  sol.bound_l2 = wente_constant_l2 * energy_product;
  sol.residual = rep.residual;
  return sol;
}

}  // namespace

WenteSolution wente_solve(const AmbientField& a, const AmbientField& b) {
  require_same_grid(a.grid(), b.grid());
  if (a.dim() != b.dim()) throw Error(ErrorKind::grid_mismatch, "ambient dimensions differ");
  ScalarField rhs(a.grid());
  double product = 0.0;
  for (std::size_t c = 0; c < a.dim(); ++c) {
    const ScalarField ak = a.component_field(c), bk = b.component_field(c);
    rhs += jacobian(ak, bk);
    product += dirichlet_norm(ak) * dirichlet_norm(bk);
  }
  return finish_wente(std::move(rhs), product);
}

WenteSolution wente_solve(const ScalarField& a, const ScalarField& b) {
  return finish_wente(jacobian(a, b), dirichlet_norm(a) * dirichlet_norm(b));
}

std::pair<ScalarField, ScalarField> wente_random_pair(const GridSpec& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t k_max = std::min<std::size_t>(8, grid.n_theta() / 4);
  constexpr int m_max = 6;
  const double s0 = grid.s_min(), len = grid.log_ratio();

  auto draw = [&] {
    struct Term {
      int m;
      std::size_t k;
      double c, s;
    };
    std::vector<Term> terms;
    for (int m = 1; m <= m_max; ++m)
      for (std::size_t k = 0; k <= k_max; ++k) {
        const double damp = 1.0 / (1.0 + static_cast<double>(k * k) + m * m);
        const double c = normal(rng) * damp;
        const double s = k > 0 ? normal(rng) * damp : 0.0;
        terms.push_back({m, k, c, s});
      }
    return ScalarField::sample(grid, [&](double s, double theta) {
      double acc = 0.0;
      for (const auto& t : terms) {
        const double radial = std::sin(t.m * std::numbers::pi * (s - s0) / len);
        acc += radial * (t.c * std::cos(t.k * theta) + t.s * std::sin(t.k * theta));
      }
      return acc;
    });
  };
  ScalarField a = draw();
  ScalarField b = draw();
  // Exact zeros on the circles (sin(m pi) is only ~1e-16).
  for (std::size_t j = 0; j < grid.n_theta(); ++j) {
    a(0, j) = b(0, j) = 0.0;
    a(grid.n_s() - 1, j) = b(grid.n_s() - 1, j) = 0.0;
  }
  return {std::move(a), std::move(b)};
}

WenteAudit wente_audit(std::size_t n_samples, std::uint64_t seed, const GridSpec& grid,
                       std::optional<double> tolerance) {
  if (n_samples == 0) throw Error(ErrorKind::invalid_parameter, "wente audit needs at least one sample");
  WenteAudit audit;
  audit.tolerance = tolerance.value_or(grid.tolerance());
  for (std::size_t n = 0; n < n_samples; ++n) {
    const std::uint64_t sample_seed = seed + n;
    const auto [a, b] = wente_random_pair(grid, sample_seed);
    const WenteSolution sol = wente_solve(a, b);
    WenteSample row{n, sample_seed, 0.0, 0.0};
    if (sol.energy_product > 0.0) {
      row.sup_ratio = sol.sup_norm / sol.energy_product;
      row.grad_ratio = sol.grad_norm / sol.energy_product;
    }
    if (n == 0 || row.sup_ratio > audit.max_sup_ratio) {
      audit.max_sup_ratio = row.sup_ratio;
      audit.worst_sup_seed = sample_seed;
    }
    if (n == 0 || row.grad_ratio > audit.max_grad_ratio) {
      audit.max_grad_ratio = row.grad_ratio;
      audit.worst_grad_seed = sample_seed;
    }
    audit.max_residual = std::max(audit.max_residual, sol.residual);
    audit.samples.push_back(row);
  }
  audit.passed = audit.max_sup_ratio <= wente_constant_infty + audit.tolerance &&
                 audit.max_grad_ratio <= wente_constant_l2 + audit.tolerance;
  return audit;
}

HodgeParts hodge_decompose(const OneForm& omega, std::optional<double> spread_tolerance) {
  const GridSpec& g = omega.grid();
  require_same_grid(g, omega.w_theta.grid());
  const OneForm star = hodge_star(omega);

  HodgeParts parts{ScalarField(g), 0.0, 0.0, 0.0, {}};
  double mean = 0.0;
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    parts.loop_integrals.push_back(integrate(star, Loop{i}));
    mean += parts.loop_integrals.back();
  }
  mean /= static_cast<double>(g.n_s());
  double var = 0.0;
  for (double l : parts.loop_integrals) var += (l - mean) * (l - mean);
  parts.closedness_spread = std::sqrt(var / static_cast<double>(g.n_s()));
  parts.alpha = mean / (2.0 * std::numbers::pi);
  const double limit = spread_tolerance.value_or(2.0 * std::numbers::pi * g.tolerance());
  if (parts.closedness_spread > limit)
    throw Error(ErrorKind::not_closed, "loop integrals of *omega spread by " +
                                           std::to_string(parts.closedness_spread) +
                                           " across circles (limit " + std::to_string(limit) + ")");

  // eta = *omega - alpha dtheta = q ds + w dtheta; fit phi with D_s phi ~ q, D_theta phi ~ w.
  const ScalarField& q = omega.w_theta;
  ScalarField w = star.w_theta;
  w += -parts.alpha;
  const ScalarField w_theta = differentiate(w).d_theta;

  const std::size_t ns = g.n_s(), nt = g.n_theta();
  std::vector<double> rhs(g.size(), 0.0);
  for (std::size_t r = 0; r < ns; ++r) {
    const double t = g.trapezoid_weight(r);
    for (auto e : kernels::detail::first_derivative_row(r, ns)) {
      const double c = t * e.coef / (2.0 * g.ds());
      for (std::size_t j = 0; j < nt; ++j) rhs[e.col * nt + j] += c * q(r, j);
    }
  }
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) rhs[i * nt + j] -= g.trapezoid_weight(i) * w_theta(i, j);

  const auto& k = kernels::active();
  std::vector<double> rhat(g.size()), phat(g.size()), phi(g.size());
  k.dft_forward(shape_of(g), rhs, rhat);
  k.gradient_fit_modes(shape_of(g), g.ds(), g.dtheta(), rhat, phat);
  k.dft_inverse(shape_of(g), phat, phi);

  parts.v = ScalarField(g, std::move(phi));
  parts.v += -parts.v(ns - 1, 0);

  OneForm rebuilt = gradient_form(parts.v);
  rebuilt.w_theta += parts.alpha;
  parts.reconstruction_residual = std::sqrt(integrate(pointwise_norm_sq(rebuilt - star), Area{}));
  return parts;
}

}  // namespace annulab
