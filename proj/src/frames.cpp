#include "annulab/frames.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "annulab/errors.hpp"

namespace annulab {
namespace {

using std::numbers::pi;

double wrap_angle(double x) { return std::remainder(x, 2.0 * pi); }

double max_on_rows(const ScalarField& f, std::size_t first, std::size_t last) {
  double m = 0.0;
  for (std::size_t i = first; i <= last; ++i)
    for (std::size_t j = 0; j < f.grid().n_theta(); ++j) m = std::max(m, std::abs(f(i, j)));
  return m;
}

ScalarField row_scaled(const ScalarField& f, double power) {
  ScalarField out = f;
  const GridSpec& g = f.grid();
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    const double w = std::exp(power * g.s(i));
    for (std::size_t j = 0; j < g.n_theta(); ++j) out(i, j) *= w;
  }
  return out;
}

}  // namespace

Frame canonical_frame(const Immersion& imm) {
  auto [e1, e2] = tangent_basis(imm);
  return {std::move(e1), std::move(e2), 0};
}

Frame constant_frame(const GridSpec& grid, std::size_t dim) {
  AmbientField e1(grid, dim), e2(grid, dim);
  for (double& v : e1.component(0)) v = 1.0;
  for (double& v : e2.component(1)) v = 1.0;
  return {std::move(e1), std::move(e2), 0};
}

Frame gauge_rotate(const Frame& frame, const GaugeAngle& gauge) {
  const GridSpec& g = frame.grid();
  require_same_grid(g, gauge.theta.grid());
  const std::size_t n = frame.e1.dim();
  AmbientField e1(g, n), e2(g, n);
  for (std::size_t i = 0; i < g.n_s(); ++i)
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const double phi = gauge.theta(i, j) + gauge.winding * g.theta(j);
      const double c = std::cos(phi), s = std::sin(phi);
      for (std::size_t k = 0; k < n; ++k) {
        const double a = frame.e1(k, i, j), b = frame.e2(k, i, j);
        e1(k, i, j) = c * a + s * b;
        e2(k, i, j) = -s * a + c * b;
      }
    }
  return {std::move(e1), std::move(e2), frame.winding + gauge.winding};
}

OneForm connection_form(const Frame& frame) {
  const auto d = differentiate(frame.e1);
  return {radial_from_log(dot(d.d_s, frame.e2)), dot(d.d_theta, frame.e2)};
}

double orthonormality_defect(const Frame& frame) {
  const ScalarField n1 = norm_sq(frame.e1), n2 = norm_sq(frame.e2), c = dot(frame.e1, frame.e2);
  double m = 0.0;
  for (std::size_t k = 0; k < n1.values().size(); ++k)
    m = std::max({m, std::abs(std::sqrt(n1.values()[k]) - 1.0), std::abs(std::sqrt(n2.values()[k]) - 1.0),
                  std::abs(c.values()[k])});
  return m;
}

ScalarField k_bilinear(const AmbientField& e1, const AmbientField& e2) {
  require_same_grid(e1.grid(), e2.grid());
  if (e1.dim() != e2.dim()) throw Error(ErrorKind::grid_mismatch, "ambient dimensions differ");
  // d_x a d_y b - d_y a d_x b = r^{-1}(a_r b_theta - a_theta b_r) = e^{-2s}(a_s b_theta - a_theta b_s).
  ScalarField out(e1.grid());
  for (std::size_t c = 0; c < e1.dim(); ++c) out += jacobian(e1.component_field(c), e2.component_field(c));
  return out;
}

FrameMetrics frame_metrics(const Immersion& imm, const Frame& frame) {
  require_same_grid(imm.grid(), frame.grid());
  const GridSpec& g = frame.grid();
  FrameMetrics m;
  m.E = integrate(grad_norm_sq(frame.e1) + grad_norm_sq(frame.e2), Area{});
  m.F = integrate(pointwise_norm_sq(connection_form(frame)), Area{});
  const auto d1 = differentiate(frame.e1), d2 = differentiate(frame.e2);
  m.theta_energy = integrate(row_scaled(norm_sq(d1.d_theta) + norm_sq(d2.d_theta), -2.0), Area{});
  ScalarField k = k_bilinear(frame.e1, frame.e2);
  for (double& v : k.values()) v = std::abs(v);
  m.gamma = integrate(k, Area{});
  m.winding = frame.winding;
  const double area = integrate(ScalarField(g, 1.0), Area{});
  m.zero_energy = m.E <= 1e-12 * area;
  m.beta = m.zero_energy ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(m.theta_energy / m.E);
  return m;
}

CoulombResidual coulomb_residual(const Frame& frame) {
  const GridSpec& g = frame.grid();
  const OneForm omega = connection_form(frame);
  const ScalarField closed = exterior_derivative(hodge_star(omega));
  // f -> e1 -> omega -> d*omega nests three s-differences; rows closer to a circle
  // than that see the one-sided stencils and carry an O(1) artifact.
  return {max_on_rows(closed, coulomb_boundary_layer, g.n_s() - 1 - coulomb_boundary_layer),
          std::max(max_on_rows(omega.w_r, 0, 0), max_on_rows(omega.w_r, g.n_s() - 1, g.n_s() - 1))};
}

CoulombResult coulomb_minimize(const Immersion& imm, const Frame& start) {
  require_same_grid(imm.grid(), start.grid());
  const GridSpec& g = start.grid();
  const OneForm omega = connection_form(start);

  // div(omega) = e^{-2s}(d_s(e^s w_r) + d_theta w_theta).
  const ScalarField radial = differentiate(row_scaled(omega.w_r, 1.0)).d_s;
  const ScalarField angular = differentiate(omega.w_theta).d_theta;
  const ScalarField rhs = -1.0 * row_scaled(radial + angular, -2.0);
  std::vector<double> flux_a(g.n_theta()), flux_b(g.n_theta());
  for (std::size_t j = 0; j < g.n_theta(); ++j) {
    flux_a[j] = -omega.w_r(g.n_s() - 1, j);
    flux_b[j] = omega.w_r(0, j);
  }

  CoulombResult result{start, GaugeAngle{ScalarField(g), 0}, 0.0, 0.0, {}, false};
  ScalarField phi = poisson_neumann(rhs, flux_a, flux_b, &result.solve);
  result.F_start = integrate(pointwise_norm_sq(omega), Area{});
  Frame rotated = gauge_rotate(start, GaugeAngle{phi, 0});
  const double F_rot = integrate(pointwise_norm_sq(connection_form(rotated)), Area{});
  if (F_rot > result.F_start) {
    result.F_min = result.F_start;
    result.kept_start = true;
    return result;
  }
  result.frame = std::move(rotated);
  result.gauge.theta = std::move(phi);
  result.F_min = F_rot;
  return result;
}

GaugeReconstruction reconstruct_gauge(const Immersion& imm, const Frame& frame) {
  require_same_grid(imm.grid(), frame.grid());
  const GridSpec& g = imm.grid();
  const std::size_t n = imm.dim();
  const auto d = differentiate(imm.f);
  ScalarField raw(g);
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    const double rinv = std::exp(-g.s(i));
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const double c = std::cos(g.theta(j)), s = std::sin(g.theta(j));
      double p1 = 0.0, p2 = 0.0, len2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        // f_x = cos(theta) f_r - sin(theta) f_theta / r
        const double fx = rinv * (c * d.d_s(k, i, j) - s * d.d_theta(k, i, j));
        p1 += fx * frame.e1(k, i, j);
        p2 += fx * frame.e2(k, i, j);
        len2 += fx * fx;
      }
      const double normal2 = len2 - p1 * p1 - p2 * p2;
      if (!(len2 > 0.0) || normal2 > 1e-12 * len2)
        throw Error(ErrorKind::frame_not_tangent,
                    "frame does not span df at node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      raw(i, j) = std::atan2(p2, p1);
    }
  }

  // Unwrap along the ray theta = 0, then around each circle.
  ScalarField total(g);
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    total(i, 0) = i == 0 ? raw(0, 0) : total(i - 1, 0) + wrap_angle(raw(i, 0) - raw(i - 1, 0));
    for (std::size_t j = 1; j < g.n_theta(); ++j)
      total(i, j) = total(i, j - 1) + wrap_angle(raw(i, j) - raw(i, j - 1));
  }
  const std::size_t mid = g.n_s() / 2, last = g.n_theta() - 1;
  const double closing = total(mid, last) + wrap_angle(total(mid, 0) - total(mid, last));
  const int k = static_cast<int>(std::lround((closing - total(mid, 0)) / (2.0 * pi)));

  GaugeReconstruction out{GaugeAngle{ScalarField(g), k}, 0.0};
  for (std::size_t i = 0; i < g.n_s(); ++i)
    for (std::size_t j = 0; j < g.n_theta(); ++j) out.gauge.theta(i, j) = total(i, j) - k * g.theta(j);

  // d_x theta + d_y u = w(d_x), d_y theta - d_x u = w(d_y), w = <d e2, e1> = -<d e1, e2>.
  ScalarField full = out.gauge.theta;
  full.set_theta_jump(0.0);
  full += static_cast<double>(k) * coordinate_angle(g);
  const OneForm dtheta = gradient_form(full);
  const OneForm du = gradient_form(imm.u);
  const OneForm w = -1.0 * connection_form(frame);
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    const double rinv = std::exp(-g.s(i));
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const double c = std::cos(g.theta(j)), s = std::sin(g.theta(j));
      auto x_part = [&](const OneForm& f) { return c * f.w_r(i, j) - s * rinv * f.w_theta(i, j); };
      auto y_part = [&](const OneForm& f) { return s * f.w_r(i, j) + c * rinv * f.w_theta(i, j); };
      const double r1 = x_part(dtheta) + y_part(du) - x_part(w);
      const double r2 = y_part(dtheta) - x_part(du) - y_part(w);
      out.compat_residual = std::max({out.compat_residual, std::abs(r1), std::abs(r2)});
    }
  }
  return out;
}

}  // namespace annulab
