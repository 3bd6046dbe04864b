#include "annulab/grid.hpp"

#include <cmath>
#include <string>

#include "annulab/errors.hpp"
#include "annulab/kernels.hpp"

namespace annulab {

GridSpec::GridSpec(double b, double a, std::size_t n_s, std::size_t n_theta)
    : b_(b),
      a_(a),
      n_s_(n_s),
      n_theta_(n_theta),
      log_b_(std::log(b)),
      log_a_(std::log(a)),
      ds_((std::log(a) - std::log(b)) / static_cast<double>(n_s - 1)),
      dtheta_(2.0 * std::numbers::pi / static_cast<double>(n_theta)) {}

GridSpec make_grid(double b, double a, std::size_t n_s, std::size_t n_theta) {
  if (!(b > 0.0) || !(a > b) || !std::isfinite(a))
    throw Error(ErrorKind::invalid_domain,
                "annulus needs a > b > 0 (got b=" + std::to_string(b) + ", a=" + std::to_string(a) + ")");
  if (n_s < 8 || n_theta < 8 || n_theta % 2 != 0)
    throw Error(ErrorKind::invalid_resolution,
                "grid needs n_s >= 8 and even n_theta >= 8 (got " + std::to_string(n_s) + "x" +
                    std::to_string(n_theta) + ")");
  return GridSpec(b, a, n_s, n_theta);
}

GridSpec make_symmetric_grid(double half_width, std::size_t n_s, std::size_t n_theta) {
  if (!(half_width > 0.0))
    throw Error(ErrorKind::invalid_domain, "half width must be positive");
  return make_grid(std::exp(-half_width), std::exp(half_width), n_s, n_theta);
}

void require_same_grid(const GridSpec& x, const GridSpec& y) {
  if (!(x == y)) throw Error(ErrorKind::grid_mismatch, "fields live on different grids");
}

// ---------------------------------------------------------------- ScalarField

ScalarField::ScalarField(const GridSpec& grid, double value)
    : grid_(grid), values_(grid.size(), value) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values, double theta_jump)
    : grid_(grid), values_(std::move(values)), theta_jump_(theta_jump) {
  if (values_.size() != grid_.size())
    throw Error(ErrorKind::grid_mismatch, "value count does not match grid");
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += other.values_[n];
  theta_jump_ += other.theta_jump_;
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= other.values_[n];
  theta_jump_ -= other.theta_jump_;
  return *this;
}

ScalarField& ScalarField::operator*=(double k) {
  for (double& v : values_) v *= k;
  theta_jump_ *= k;
  return *this;
}

ScalarField& ScalarField::operator+=(double k) {
  for (double& v : values_) v += k;
  return *this;
}

ScalarField operator+(ScalarField lhs, const ScalarField& rhs) { return lhs += rhs; }
ScalarField operator-(ScalarField lhs, const ScalarField& rhs) { return lhs -= rhs; }
ScalarField operator*(double k, ScalarField f) { return f *= k; }

ScalarField operator*(const ScalarField& lhs, const ScalarField& rhs) {
  require_same_grid(lhs.grid(), rhs.grid());
  if (lhs.theta_jump() != 0.0 || rhs.theta_jump() != 0.0)
    throw Error(ErrorKind::invalid_parameter, "pointwise product of a multivalued field");
  ScalarField out(lhs.grid());
  auto o = out.values();
  auto x = lhs.values();
  auto y = rhs.values();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] = x[n] * y[n];
  return out;
}

// --------------------------------------------------------------- AmbientField

AmbientField::AmbientField(const GridSpec& grid, std::size_t dim)
    : grid_(grid), dim_(dim), values_(grid.size() * dim, 0.0), theta_jumps_(dim, 0.0) {}

ScalarField AmbientField::component_field(std::size_t c) const {
  auto v = component(c);
  return ScalarField(grid_, std::vector<double>(v.begin(), v.end()), theta_jumps_[c]);
}

void AmbientField::set_component(std::size_t c, const ScalarField& field) {
  require_same_grid(grid_, field.grid());
  auto src = field.values();
  std::copy(src.begin(), src.end(), component(c).begin());
  theta_jumps_[c] = field.theta_jump();
}

bool AmbientField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

AmbientField& AmbientField::operator+=(const AmbientField& other) {
  require_same_grid(grid_, other.grid_);
  if (dim_ != other.dim_) throw Error(ErrorKind::grid_mismatch, "ambient dimensions differ");
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += other.values_[n];
  for (std::size_t c = 0; c < dim_; ++c) theta_jumps_[c] += other.theta_jumps_[c];
  return *this;
}

AmbientField& AmbientField::operator-=(const AmbientField& other) {
  require_same_grid(grid_, other.grid_);
  if (dim_ != other.dim_) throw Error(ErrorKind::grid_mismatch, "ambient dimensions differ");
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= other.values_[n];
  for (std::size_t c = 0; c < dim_; ++c) theta_jumps_[c] -= other.theta_jumps_[c];
  return *this;
}

AmbientField& AmbientField::operator*=(double k) {
  for (double& v : values_) v *= k;
  for (double& j : theta_jumps_) j *= k;
  return *this;
}

AmbientField operator+(AmbientField lhs, const AmbientField& rhs) { return lhs += rhs; }
AmbientField operator-(AmbientField lhs, const AmbientField& rhs) { return lhs -= rhs; }
AmbientField operator*(double k, AmbientField f) { return f *= k; }

AmbientField operator*(const ScalarField& k, const AmbientField& f) {
  require_same_grid(k.grid(), f.grid());
  for (double j : f.theta_jumps())
    if (j != 0.0) throw Error(ErrorKind::invalid_parameter, "pointwise product of a multivalued field");
  AmbientField out(f.grid(), f.dim());
  auto kv = k.values();
  for (std::size_t c = 0; c < f.dim(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = kv[n] * src[n];
  }
  return out;
}

ScalarField dot(const AmbientField& x, const AmbientField& y) {
  require_same_grid(x.grid(), y.grid());
  if (x.dim() != y.dim()) throw Error(ErrorKind::grid_mismatch, "ambient dimensions differ");
  ScalarField out(x.grid());
  auto o = out.values();
  for (std::size_t c = 0; c < x.dim(); ++c) {
    auto a = x.component(c);
    auto b = y.component(c);
    for (std::size_t n = 0; n < o.size(); ++n) o[n] += a[n] * b[n];
  }
  return out;
}

ScalarField norm_sq(const AmbientField& x) { return dot(x, x); }

OneForm operator+(const OneForm& x, const OneForm& y) {
  return {x.w_r + y.w_r, x.w_theta + y.w_theta};
}
OneForm operator-(const OneForm& x, const OneForm& y) {
  return {x.w_r - y.w_r, x.w_theta - y.w_theta};
}
OneForm operator*(double k, const OneForm& x) { return {k * x.w_r, k * x.w_theta}; }

// ------------------------------------------------------------------ operators

namespace {

kernels::Shape shape_of(const GridSpec& g) { return {g.n_s(), g.n_theta()}; }

// Multiplies row i of f by e^{p s_i}.
ScalarField scale_rows(ScalarField f, double p) {
  const GridSpec& g = f.grid();
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    const double w = std::exp(p * g.s(i));
    for (std::size_t j = 0; j < g.n_theta(); ++j) f(i, j) *= w;
  }
  return f;
}

}  // namespace

ScalarDerivatives differentiate(const ScalarField& field) {
  const GridSpec& g = field.grid();
  const auto& k = kernels::active();
  ScalarField ds(g), dt(g);
  k.diff_s(shape_of(g), g.ds(), field.values(), ds.values());
  k.diff_theta(shape_of(g), g.dtheta(), field.theta_jump(), field.values(), dt.values());
  return {std::move(ds), std::move(dt)};
}

AmbientDerivatives differentiate(const AmbientField& field) {
  const GridSpec& g = field.grid();
  const auto& k = kernels::active();
  AmbientField ds(g, field.dim()), dt(g, field.dim());
  for (std::size_t c = 0; c < field.dim(); ++c) {
    k.diff_s(shape_of(g), g.ds(), field.component(c), ds.component(c));
    k.diff_theta(shape_of(g), g.dtheta(), field.theta_jumps()[c], field.component(c),
                 dt.component(c));
  }
  return {std::move(ds), std::move(dt)};
}

ScalarField radial_from_log(const ScalarField& d_s) { return scale_rows(d_s, -1.0); }

AmbientField radial_from_log(const AmbientField& d_s) {
  AmbientField out = d_s;
  const GridSpec& g = d_s.grid();
  for (std::size_t c = 0; c < out.dim(); ++c)
    for (std::size_t i = 0; i < g.n_s(); ++i) {
      const double w = std::exp(-g.s(i));
      for (std::size_t j = 0; j < g.n_theta(); ++j) out(c, i, j) *= w;
    }
  return out;
}

ScalarField second_derivative_ss(const ScalarField& field) {
  const GridSpec& g = field.grid();
  ScalarField out(g);
  kernels::active().diff_ss(shape_of(g), g.ds(), field.values(), out.values());
  return out;
}

ScalarField second_derivative_thth(const ScalarField& field) {
  const GridSpec& g = field.grid();
  ScalarField out(g);
  kernels::active().diff_thth(shape_of(g), g.dtheta(), field.theta_jump(), field.values(),
                              out.values());
  return out;
}

AmbientField second_derivative_ss(const AmbientField& field) {
  const GridSpec& g = field.grid();
  AmbientField out(g, field.dim());
  for (std::size_t c = 0; c < field.dim(); ++c)
    kernels::active().diff_ss(shape_of(g), g.ds(), field.component(c), out.component(c));
  return out;
}

AmbientField second_derivative_thth(const AmbientField& field) {
  const GridSpec& g = field.grid();
  AmbientField out(g, field.dim());
  for (std::size_t c = 0; c < field.dim(); ++c)
    kernels::active().diff_thth(shape_of(g), g.dtheta(), field.theta_jumps()[c],
                                field.component(c), out.component(c));
  return out;
}

ScalarField laplacian(const ScalarField& field) {
  return scale_rows(second_derivative_ss(field) + second_derivative_thth(field), -2.0);
}

AmbientField laplacian(const AmbientField& field) {
  AmbientField out(field.grid(), field.dim());
  for (std::size_t c = 0; c < field.dim(); ++c)
    out.set_component(c, laplacian(field.component_field(c)));
  return out;
}

OneForm hodge_star(const OneForm& omega) {
  return {scale_rows(omega.w_theta, -1.0), -1.0 * scale_rows(omega.w_r, 1.0)};
}

ScalarField exterior_derivative(const OneForm& omega) {
  require_same_grid(omega.w_r.grid(), omega.w_theta.grid());
  ScalarField d_theta_part = differentiate(omega.w_r).d_theta;
  return radial_from_log(differentiate(omega.w_theta).d_s) - d_theta_part;
}

OneForm gradient_form(const ScalarField& u) {
  auto d = differentiate(u);
  return {radial_from_log(d.d_s), std::move(d.d_theta)};
}

ScalarField pointwise_norm_sq(const OneForm& omega) {
  return omega.w_r * omega.w_r + scale_rows(omega.w_theta * omega.w_theta, -2.0);
}

ScalarField grad_norm_sq(const ScalarField& field) {
  auto d = differentiate(field);
  return scale_rows(d.d_s * d.d_s + d.d_theta * d.d_theta, -2.0);
}

ScalarField grad_norm_sq(const AmbientField& field) {
  auto d = differentiate(field);
  return scale_rows(norm_sq(d.d_s) + norm_sq(d.d_theta), -2.0);
}

// ---------------------------------------------------------------- quadrature

namespace {

double area_integral(const ScalarField& f) {
  const GridSpec& g = f.grid();
  double total = 0.0;
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < g.n_theta(); ++j) row += f(i, j);
    total += g.trapezoid_weight(i) * std::exp(2.0 * g.s(i)) * row;
  }
  return total * g.ds() * g.dtheta();
}

double loop_integral(const ScalarField& f, std::size_t i) {
  const GridSpec& g = f.grid();
  if (i >= g.n_s())
    throw Error(ErrorKind::level_out_of_range, "s-level " + std::to_string(i) + " outside grid");
  double row = 0.0;
  for (std::size_t j = 0; j < g.n_theta(); ++j) row += f(i, j);
  return row * g.dtheta();
}

double ray_integral(const ScalarField& f, std::size_t j) {
  const GridSpec& g = f.grid();
  if (j >= g.n_theta())
    throw Error(ErrorKind::level_out_of_range, "theta-level " + std::to_string(j) + " outside grid");
  double total = 0.0;
  for (std::size_t i = 0; i < g.n_s(); ++i)
    total += g.trapezoid_weight(i) * std::exp(g.s(i)) * f(i, j);
  return total * g.ds();
}

}  // namespace

double integrate(const ScalarField& field, IntegrationDomain domain) {
  if (std::holds_alternative<Loop>(domain)) return loop_integral(field, std::get<Loop>(domain).s_index);
  if (std::holds_alternative<Ray>(domain)) return ray_integral(field, std::get<Ray>(domain).theta_index);
  return area_integral(field);
}

double integrate(const OneForm& omega, IntegrationDomain domain) {
  if (std::holds_alternative<Loop>(domain))
    return loop_integral(omega.w_theta, std::get<Loop>(domain).s_index);
  if (std::holds_alternative<Ray>(domain))
    return ray_integral(omega.w_r, std::get<Ray>(domain).theta_index);
  throw Error(ErrorKind::invalid_parameter, "a one-form integrates over a loop or a ray, not an area");
}

double l2_norm(const ScalarField& field) { return std::sqrt(integrate(field * field, Area{})); }

double dirichlet_norm(const ScalarField& field) {
  return std::sqrt(integrate(grad_norm_sq(field), Area{}));
}

double dirichlet_norm(const AmbientField& field) {
  return std::sqrt(integrate(grad_norm_sq(field), Area{}));
}

ScalarField coordinate_angle(const GridSpec& grid) {
  ScalarField out = ScalarField::sample(grid, [](double, double theta) { return theta; });
  out.set_theta_jump(2.0 * std::numbers::pi);
  return out;
}

}  // namespace annulab
