#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace annulab {

/**
 * Log-polar discretization of the annulus b < r < a.
 *
 * Nodes sit at s_i = log b + i*ds (i = 0..n_s-1, both circles included) and
 * theta_j = j*dtheta (j = 0..n_theta-1, periodic). Fields are stored row-major
 * with s as the outer index.
 */
class GridSpec {
 public:
  double inner_radius() const { return b_; }
  double outer_radius() const { return a_; }
  std::size_t n_s() const { return n_s_; }
  std::size_t n_theta() const { return n_theta_; }
  std::size_t size() const { return n_s_ * n_theta_; }

  double ds() const { return ds_; }
  double dtheta() const { return dtheta_; }
  double s_min() const { return log_b_; }
  double s_max() const { return log_a_; }
  double log_ratio() const { return log_a_ - log_b_; }

  double s(std::size_t i) const {
    return i + 1 == n_s_ ? log_a_ : log_b_ + static_cast<double>(i) * ds_;
  }
  double r(std::size_t i) const { return std::exp(s(i)); }
  double theta(std::size_t j) const { return static_cast<double>(j) * dtheta_; }

  std::size_t index(std::size_t i, std::size_t j) const { return i * n_theta_ + j; }

  /// Default verification tolerance 50*(ds^2 + dtheta^2).
  double tolerance() const { return 50.0 * (ds_ * ds_ + dtheta_ * dtheta_); }

  /// Trapezoid weight (without ds) of row i: 1/2 on the two circles, 1 inside.
  double trapezoid_weight(std::size_t i) const {
    return (i == 0 || i + 1 == n_s_) ? 0.5 : 1.0;
  }

  bool operator==(const GridSpec&) const = default;

 private:
  GridSpec(double b, double a, std::size_t n_s, std::size_t n_theta);
  friend GridSpec make_grid(double b, double a, std::size_t n_s, std::size_t n_theta);

  double b_ = 0.0;
  double a_ = 0.0;
  std::size_t n_s_ = 0;
  std::size_t n_theta_ = 0;
  double log_b_ = 0.0;
  double log_a_ = 0.0;
  double ds_ = 0.0;
  double dtheta_ = 0.0;
};

/// Throws Error{invalid_domain} unless a > b > 0 and Error{invalid_resolution}
/// unless n_s >= 8 and n_theta >= 8 is even.
GridSpec make_grid(double b, double a, std::size_t n_s, std::size_t n_theta);

/// Symmetric annulus e^{-h} < r < e^{h}.
GridSpec make_symmetric_grid(double half_width, std::size_t n_s, std::size_t n_theta);

/**
 * Real scalar per node. A nonzero theta_jump marks a field that increases by
 * that amount once around the hole (e.g. the angle itself); derivatives are
 * single-valued and account for the jump when wrapping.
 */
class ScalarField {
 public:
  explicit ScalarField(const GridSpec& grid, double value = 0.0);
  ScalarField(const GridSpec& grid, std::vector<double> values, double theta_jump = 0.0);

  template <class Fn>
  static ScalarField sample(const GridSpec& grid, Fn&& fn) {
    ScalarField out(grid);
    for (std::size_t i = 0; i < grid.n_s(); ++i) {
      const double s = grid.s(i);
      for (std::size_t j = 0; j < grid.n_theta(); ++j)
        out.values_[grid.index(i, j)] = fn(s, grid.theta(j));
    }
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[grid_.index(i, j)]; }

  double theta_jump() const { return theta_jump_; }
  void set_theta_jump(double jump) { theta_jump_ = jump; }

  double max_abs() const;
  double max() const;
  double min() const;
  bool all_finite() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double k);
  ScalarField& operator+=(double k);

 private:
  GridSpec grid_;
  std::vector<double> values_;
  double theta_jump_ = 0.0;
};

ScalarField operator+(ScalarField lhs, const ScalarField& rhs);
ScalarField operator-(ScalarField lhs, const ScalarField& rhs);
ScalarField operator*(double k, ScalarField f);
// Pointwise product; both factors must be single-valued.
ScalarField operator*(const ScalarField& lhs, const ScalarField& rhs);

/// R^n-valued field, stored component-major (one n_s x n_theta plane per component).
class AmbientField {
 public:
  AmbientField(const GridSpec& grid, std::size_t dim);

  /// fn(s, theta, std::span<double> out) fills the dim components of a node.
  template <class Fn>
  static AmbientField sample(const GridSpec& grid, std::size_t dim, Fn&& fn) {
    AmbientField out(grid, dim);
    std::vector<double> node(dim);
    for (std::size_t i = 0; i < grid.n_s(); ++i) {
      const double s = grid.s(i);
      for (std::size_t j = 0; j < grid.n_theta(); ++j) {
        std::fill(node.begin(), node.end(), 0.0);
        fn(s, grid.theta(j), std::span<double>(node));
        for (std::size_t c = 0; c < dim; ++c) out(c, i, j) = node[c];
      }
    }
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  std::size_t dim() const { return dim_; }

  std::span<const double> component(std::size_t c) const {
    return {values_.data() + c * grid_.size(), grid_.size()};
  }
  std::span<double> component(std::size_t c) {
    return {values_.data() + c * grid_.size(), grid_.size()};
  }
  double operator()(std::size_t c, std::size_t i, std::size_t j) const {
    return values_[c * grid_.size() + grid_.index(i, j)];
  }
  double& operator()(std::size_t c, std::size_t i, std::size_t j) {
    return values_[c * grid_.size() + grid_.index(i, j)];
  }

  ScalarField component_field(std::size_t c) const;
  void set_component(std::size_t c, const ScalarField& field);

  std::span<const double> theta_jumps() const { return theta_jumps_; }
  void set_theta_jump(std::size_t c, double jump) { theta_jumps_[c] = jump; }

  bool all_finite() const;

  AmbientField& operator+=(const AmbientField& other);
  AmbientField& operator-=(const AmbientField& other);
  AmbientField& operator*=(double k);

 private:
  GridSpec grid_;
  std::size_t dim_;
  std::vector<double> values_;
  std::vector<double> theta_jumps_;
};

AmbientField operator+(AmbientField lhs, const AmbientField& rhs);
AmbientField operator-(AmbientField lhs, const AmbientField& rhs);
AmbientField operator*(double k, AmbientField f);
AmbientField operator*(const ScalarField& k, const AmbientField& f);

ScalarField dot(const AmbientField& x, const AmbientField& y);
ScalarField norm_sq(const AmbientField& x);

/// w_r dr + w_theta dtheta.
struct OneForm {
  ScalarField w_r;
  ScalarField w_theta;

  const GridSpec& grid() const { return w_r.grid(); }
};

OneForm operator+(const OneForm& x, const OneForm& y);
OneForm operator-(const OneForm& x, const OneForm& y);
OneForm operator*(double k, const OneForm& x);

struct ScalarDerivatives {
  ScalarField d_s;
  ScalarField d_theta;
};

struct AmbientDerivatives {
  AmbientField d_s;
  AmbientField d_theta;
};

// Centered second-order differences; theta wraps periodically, s uses
// one-sided second-order stencils on the two boundary rows.
ScalarDerivatives differentiate(const ScalarField& field);
AmbientDerivatives differentiate(const AmbientField& field);

/// d/dr = e^{-s} d/ds.
ScalarField radial_from_log(const ScalarField& d_s);
AmbientField radial_from_log(const AmbientField& d_s);

// Second differences: compact 3-point inside, 4-point one-sided on the circles.
ScalarField second_derivative_ss(const ScalarField& field);
ScalarField second_derivative_thth(const ScalarField& field);
AmbientField second_derivative_ss(const AmbientField& field);
AmbientField second_derivative_thth(const AmbientField& field);

/// Euclidean Laplacian e^{-2s}(d_ss + d_thth).
ScalarField laplacian(const ScalarField& field);
AmbientField laplacian(const AmbientField& field);

/// Convention *dtheta = r^{-1} dr, *dr = -r dtheta.
OneForm hodge_star(const OneForm& omega);

/// g in d(omega) = g dr^dtheta, g = d_r(w_theta) - d_theta(w_r).
ScalarField exterior_derivative(const OneForm& omega);

/// du as a one-form (d_r u, d_theta u).
OneForm gradient_form(const ScalarField& u);

/// |w|^2 = w_r^2 + r^{-2} w_theta^2.
ScalarField pointwise_norm_sq(const OneForm& omega);

/// |d_r f|^2 + r^{-2}|d_theta f|^2 (summed over components for ambient fields).
ScalarField grad_norm_sq(const ScalarField& field);
ScalarField grad_norm_sq(const AmbientField& field);

struct Area {};
/// Circle s = s_index (a dtheta coefficient is integrated).
struct Loop {
  std::size_t s_index;
};
/// Ray theta = theta_index (a dr coefficient is integrated).
struct Ray {
  std::size_t theta_index;
};
using IntegrationDomain = std::variant<Area, Loop, Ray>;

/// Area: trapezoid in s times rectangle in theta against dx = e^{2s} ds dtheta.
/// Loop: rectangle rule of field*dtheta. Ray: trapezoid of field*dr = field*e^s ds.
double integrate(const ScalarField& field, IntegrationDomain domain);
/// Pull-back of a one-form to a loop (dtheta part) or ray (dr part).
double integrate(const OneForm& omega, IntegrationDomain domain);

/// sqrt(integral of f^2 dx).
double l2_norm(const ScalarField& field);
/// sqrt(integral of |grad f|^2 dx).
double dirichlet_norm(const ScalarField& field);
double dirichlet_norm(const AmbientField& field);

/// Coordinate angle theta as a field with jump 2*pi.
ScalarField coordinate_angle(const GridSpec& grid);

void require_same_grid(const GridSpec& x, const GridSpec& y);

}  // namespace annulab
