#include <cmath>
#include <numbers>

#include "annulab/errors.hpp"
#include "annulab/grid.hpp"
#include "doctest.h"

using namespace annulab;
using std::numbers::pi;

TEST_CASE("make_grid spacing and validation") {
  auto g = make_grid(1.0, 2.0, 64, 128);
  CHECK(g.ds() == doctest::Approx(std::log(2.0) / 63.0).epsilon(1e-15));
  CHECK(g.dtheta() == doctest::Approx(2.0 * pi / 128.0));
  CHECK(g.r(0) == 1.0);
  CHECK(g.s(63) == std::log(2.0));

  auto c = make_symmetric_grid(0.5, 128, 256);
  CHECK(c.s_min() == doctest::Approx(-0.5));
  CHECK(c.s_max() == doctest::Approx(0.5));

  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::solver_divergence;
  };
  CHECK(kind_of([] { make_grid(2.0, 1.0, 64, 128); }) == ErrorKind::invalid_domain);
  CHECK(kind_of([] { make_grid(0.0, 1.0, 64, 128); }) == ErrorKind::invalid_domain);
  CHECK(kind_of([] { make_grid(1.0, 2.0, 4, 128); }) == ErrorKind::invalid_resolution);
  CHECK(kind_of([] { make_grid(1.0, 2.0, 64, 127); }) == ErrorKind::invalid_resolution);
}

TEST_CASE("derivative stencils") {
  auto g = make_grid(1.0, 2.0, 32, 64);
  auto d = differentiate(ScalarField::sample(g, [](double s, double) { return s; }));
  CHECK(d.d_s.max() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.d_s.min() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.d_theta.max_abs() == 0.0);

  auto sn = differentiate(ScalarField::sample(g, [](double, double t) { return std::sin(t); }));
  double err = 0.0;
  for (std::size_t i = 0; i < g.n_s(); ++i)
    for (std::size_t j = 0; j < g.n_theta(); ++j)
      err = std::max(err, std::abs(sn.d_theta(i, j) - std::cos(g.theta(j))));
  CHECK(err <= g.dtheta() * g.dtheta() / 6.0);

  auto k = differentiate(ScalarField(g, 3.5));
  CHECK(k.d_s.max_abs() == 0.0);
  CHECK(k.d_theta.max_abs() == 0.0);
}

TEST_CASE("multivalued angle differentiates to one") {
  auto g = make_grid(1.0, 2.0, 16, 32);
  auto d = differentiate(coordinate_angle(g));
  CHECK(d.d_theta.min() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(d.d_theta.max() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(second_derivative_thth(coordinate_angle(g)).max_abs() < 1e-10);
}

TEST_CASE("laplacian examples") {
  auto g = make_grid(1.0, 2.0, 64, 128);
  CHECK(laplacian(ScalarField::sample(g, [](double s, double) { return s; })).max_abs() < 1e-9);

  auto lap_r2 = laplacian(ScalarField::sample(g, [](double s, double) { return std::exp(2 * s); }));
  double err = 0.0;
  for (double v : lap_r2.values()) err = std::max(err, std::abs(v - 4.0));
  CHECK(err / 4.0 < 10.0 * g.ds() * g.ds());

  auto lap_cat =
      laplacian(ScalarField::sample(g, [](double s, double t) { return std::cosh(s) * std::cos(t); }));
  CHECK(lap_cat.max_abs() < g.tolerance());
}

TEST_CASE("hodge star conventions") {
  auto g = make_grid(1.0, 2.0, 16, 32);
  OneForm dtheta{ScalarField(g), ScalarField(g, 1.0)};
  auto s = hodge_star(dtheta);
  for (std::size_t i = 0; i < g.n_s(); ++i) CHECK(s.w_r(i, 3) == doctest::Approx(1.0 / g.r(i)));
  CHECK(s.w_theta.max_abs() == 0.0);

  OneForm dr{ScalarField(g, 1.0), ScalarField(g)};
  auto t = hodge_star(dr);
  for (std::size_t i = 0; i < g.n_s(); ++i) CHECK(t.w_theta(i, 0) == doctest::Approx(-g.r(i)));

  OneForm w{ScalarField::sample(g, [](double s, double t) { return std::sin(t) + s; }),
            ScalarField::sample(g, [](double s, double t) { return s * std::cos(2 * t); })};
  auto ss = hodge_star(hodge_star(w));
  double err = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    err = std::max(err, std::abs(ss.w_r.values()[n] + w.w_r.values()[n]));
    err = std::max(err, std::abs(ss.w_theta.values()[n] + w.w_theta.values()[n]));
  }
  CHECK(err < 1e-15);
}

TEST_CASE("exterior derivative") {
  auto g = make_grid(1.0, 2.0, 64, 128);
  CHECK(exterior_derivative(OneForm{ScalarField(g), ScalarField(g, 1.0)}).max_abs() == 0.0);

  OneForm radial{ScalarField::sample(g, [](double s, double) { return std::sin(3 * s); }), ScalarField(g)};
  CHECK(exterior_derivative(radial).max_abs() == 0.0);

  auto u = ScalarField::sample(g, [](double s, double t) { return std::sin(t) * s * s + std::cos(2 * t); });
  auto ddu = exterior_derivative(gradient_form(u));
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < g.n_s(); ++i)
    for (std::size_t j = 0; j < g.n_theta(); ++j) interior = std::max(interior, std::abs(ddu(i, j)));
  CHECK(interior < 1e-12);
}

TEST_CASE("quadrature") {
  auto g = make_grid(1.0, 2.0, 128, 128);
  CHECK(integrate(ScalarField(g, 1.0), Area{}) == doctest::Approx(3.0 * pi).epsilon(1e-4));
  auto rinv2 = ScalarField::sample(g, [](double s, double) { return std::exp(-2 * s); });
  CHECK(integrate(rinv2, Area{}) == doctest::Approx(2.0 * pi * std::log(2.0)).epsilon(1e-12));

  OneForm star_dtheta = hodge_star(OneForm{ScalarField(g), ScalarField(g, 1.0)});
  CHECK(integrate(star_dtheta, Loop{5}) == 0.0);
  CHECK(integrate(star_dtheta, Ray{0}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(integrate(OneForm{ScalarField(g), ScalarField(g, 1.0)}, Loop{0}) == doctest::Approx(2 * pi));

  CHECK_THROWS_AS(integrate(ScalarField(g), Loop{128}), Error);
  CHECK_THROWS_AS(integrate(ScalarField(g), Ray{128}), Error);
}

TEST_CASE("grad_norm_sq examples") {
  auto g = make_grid(1.0, 2.0, 64, 128);
  auto gl = grad_norm_sq(ScalarField::sample(g, [](double s, double) { return s; }));
  for (std::size_t i = 0; i < g.n_s(); ++i) CHECK(gl(i, 7) == doctest::Approx(1.0 / (g.r(i) * g.r(i))));

  auto e1 = AmbientField::sample(g, 3, [](double, double t, std::span<double> x) {
    x[0] = std::cos(t);
    x[1] = std::sin(t);
  });
  auto ge = grad_norm_sq(e1);
  for (std::size_t i = 0; i < g.n_s(); ++i)
    CHECK(ge(i, 3) == doctest::Approx(1.0 / (g.r(i) * g.r(i))).epsilon(g.dtheta() * g.dtheta()));
  CHECK(grad_norm_sq(ScalarField(g, 2.0)).max_abs() == 0.0);
}

TEST_CASE("log r Dirichlet energy converges at second order") {
  double prev_err = 0.0;
  for (std::size_t n : {16u, 32u, 64u, 128u}) {
    auto g = make_grid(1.0, 2.0, n, 16);
    const double e = integrate(grad_norm_sq(ScalarField::sample(g, [](double s, double) { return s; })), Area{});
    const double err = std::abs(e - 2 * pi * std::log(2.0));
    if (prev_err > 0.0 && err > 1e-13) CHECK(std::log2(prev_err / err) >= 1.9);
    prev_err = err;
  }
}

TEST_CASE("operators are linear") {
  auto g = make_grid(0.7, 1.9, 24, 32);
  auto f = ScalarField::sample(g, [](double s, double t) { return std::sin(t + s) * s; });
  auto h = ScalarField::sample(g, [](double s, double t) { return std::exp(s) * std::cos(3 * t); });
  auto lhs = laplacian(2.0 * f + (-3.0) * h);
  auto rhs = 2.0 * laplacian(f) + (-3.0) * laplacian(h);
  CHECK((lhs - rhs).max_abs() < 1e-9);
}
