#include <cmath>
#include <numbers>

#include "annulab/errors.hpp"
#include "annulab/surfaces.hpp"
#include "doctest.h"

using namespace annulab;
using nlohmann::json;
using std::numbers::pi;

namespace {

GridSpec catenoid_grid(std::size_t ns = 128, std::size_t nt = 256) { return make_symmetric_grid(0.5, ns, nt); }

double area_dmu(const ScalarField& density, const ScalarField& u) {
  ScalarField w(u.grid());
  for (std::size_t n = 0; n < w.values().size(); ++n) w.values()[n] = std::exp(2 * u.values()[n]);
  return integrate(density * w, Area{});
}

}  // namespace

TEST_CASE("catalog surfaces carry their closed-form u") {
  auto g = make_grid(1.0, 2.0, 64, 128);
  auto flat = sample_catalog("flat", json::object(), g);
  CHECK(flat.u.max_abs() == 0.0);
  auto cd = conformal_data(flat);
  CHECK(cd.residual < g.tolerance());
  CHECK(cd.u.max_abs() < g.tolerance());

  auto cyl = sample_catalog("log_cylinder", json{{"c", 0.0}}, g);
  CHECK(cyl.u(10, 3) == doctest::Approx(-g.s(10)));
  auto cyl_cd = conformal_data(cyl);
  CHECK((cyl_cd.u - cyl.u).max_abs() < 1e-12);
  CHECK(cyl_cd.residual < 1e-12);

  auto cg = catenoid_grid();
  auto cat = sample_catalog("catenoid", json{{"h", 0.5}}, cg);
  CHECK(cat.u(cg.n_s() - 1, 0) == doctest::Approx(-0.37988549304172).epsilon(1e-12));
  auto cat_cd = conformal_data(cat);
  CHECK((cat_cd.u - cat.u).max_abs() < cg.tolerance());
  CHECK(cat_cd.residual < cg.tolerance());
}

TEST_CASE("catalog rejects unknown names and parameters") {
  auto g = make_grid(1.0, 2.0, 16, 16);
  try {
    sample_catalog("nosuch", json::object(), g);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unknown_name);
    CHECK(std::string(e.what()) == "unknown surface: nosuch");
  }
  CHECK_THROWS_AS(sample_catalog("flat", json{{"bogus", 1}}, g), Error);
  CHECK_THROWS_AS(sample_catalog("flat", json{{"dim", 2}}, g), Error);
  CHECK(sample_catalog("flat", json{{"dim", 5}}, g).dim() == 5);
}

TEST_CASE("stretched map is flagged as not conformal") {
  auto g = make_grid(1.0, 2.0, 32, 64);
  auto cd = conformal_data(sample_catalog("stretched", json::object(), g));
  CHECK(cd.residual == doctest::Approx(1.2).epsilon(1e-3));
}

TEST_CASE("degenerate map") {
  auto g = make_grid(1.0, 2.0, 16, 16);
  Immersion imm{"zero", json::object(), AmbientField(g, 3), ScalarField(g)};
  CHECK_THROWS_AS(conformal_data(imm), Error);
}

TEST_CASE("fundamental forms: flat and log cylinder vanish") {
  auto g = make_grid(1.0, 2.0, 64, 128);
  for (const char* name : {"flat", "log_cylinder"}) {
    auto ff = fundamental_forms(sample_catalog(name, json::object(), g));
    CHECK(ff.A.norm_sq.max_abs() < 1e-16);
    CHECK(ff.K.max_abs() < g.tolerance());
    CHECK(ff.K_gauss.max_abs() < g.tolerance());
  }
}

TEST_CASE("fundamental forms: catenoid curvature integrals") {
  auto g = catenoid_grid();
  auto cat = sample_catalog("catenoid", json::object(), g);
  auto ff = fundamental_forms(cat);
  ScalarField abs_k = ff.K;
  for (double& v : abs_k.values()) v = std::abs(v);
  const double tau = g.tolerance();
  CHECK(std::abs(area_dmu(abs_k, cat.u) - 5.80713546538338) <= tau);
  CHECK(std::abs(area_dmu(ff.A.norm_sq, cat.u) - 11.6142709307668) <= tau);
  CHECK(ff.normality_residual < 1e-12);
  // K = -sech^4 s pointwise, both routes.
  double err = 0.0, err_gauss = 0.0;
  for (std::size_t i = 1; i + 1 < g.n_s(); ++i) {
    const double exact = -std::pow(std::cosh(g.s(i)), -4);
    err = std::max(err, std::abs(ff.K(i, 0) - exact));
    err_gauss = std::max(err_gauss, std::abs(ff.K_gauss(i, 0) - exact));
  }
  CHECK(err < tau);
  CHECK(err_gauss < tau);
  CHECK(minimality_residual(cat) < tau);
}

TEST_CASE("gauss map") {
  auto g = make_grid(1.0, 2.0, 64, 128);
  auto flat = gauss_map(sample_catalog("flat", json::object(), g));
  CHECK(flat.unit_defect < 1e-12);
  CHECK(flat.energy_density.max_abs() < g.tolerance());
  CHECK(std::abs(flat.X(0, 5, 7) - 1.0) < 1e-12);

  auto cg = catenoid_grid();
  auto cat = sample_catalog("catenoid", json::object(), cg);
  auto gm = gauss_map(cat);
  CHECK(gm.unit_defect < 1e-12);
  CHECK(std::abs(integrate(gm.energy_density, Area{}) - 11.6142709307668) <= cg.tolerance());

  auto high = gauss_map(sample_catalog("catenoid", json{{"dim", 4}}, catenoid_grid(32, 64)));
  CHECK(high.X.dim() == 6);
  CHECK(high.unit_defect < 1e-12);
}

TEST_CASE("minimality residual of a paraboloid") {
  auto g = make_grid(1.0, 2.0, 64, 128);
  const double eps = 0.05;
  auto imm = sample_catalog("paraboloid", json{{"eps", eps}}, g);
  const double res = minimality_residual(imm);
  CHECK(res == doctest::Approx(4 * eps).epsilon(4 * eps * eps + g.tolerance()));
  CHECK(minimality_residual(sample_catalog("flat", json::object(), g)) < g.tolerance());
}

TEST_CASE("weierstrass: catenoid data") {
  auto g = catenoid_grid();
  WeierstrassData data{{{1, 1.0}}, {{-1, 1.0}}, 1.0};
  auto gen = weierstrass_generate(data, g);
  auto cat = sample_catalog("catenoid", json::object(), g);
  CHECK((gen.u - cat.u).max_abs() < 1e-12);
  CHECK((conformal_data(gen).u - cat.u).max_abs() < g.tolerance());
  CHECK(rigid_alignment_residual(cat.f, gen.f) < 1e-9);
  CHECK(minimality_residual(gen) < g.tolerance());
  auto other = weierstrass_generate(data, g, PathOrder::circle_first);
  CHECK(AmbientField(gen.f - other.f).component_field(0).max_abs() < g.tolerance());
}

TEST_CASE("weierstrass: helicoid data has a real period") {
  auto g = catenoid_grid(32, 64);
  WeierstrassData data{{{1, 1.0}}, {{-1, std::complex<double>(0.0, 1.0)}}, 1.0};
  try {
    weierstrass_generate(data, g);
    FAIL("no throw");
  } catch (const PeriodError& e) {
    CHECK(e.periods()[2] == doctest::Approx(-2 * pi).epsilon(1e-9));
    CHECK(std::abs(e.periods()[0]) < 1e-9);
  }
}

TEST_CASE("weierstrass: poles and enneper") {
  auto g = make_grid(0.5, 1.0, 64, 128);
  WeierstrassData pole{{{1, 1.0}, {0, -0.7}}, {{1, 1.0}}, 1.0};
  CHECK_THROWS_AS(weierstrass_generate(pole, g), Error);

  auto enn = sample_catalog("enneper", json::object(), g);
  CHECK(minimality_residual(enn) < g.tolerance());
  auto exact = AmbientField::sample(g, 3, [](double s, double t, std::span<double> x) {
    const std::complex<double> z = std::polar(std::exp(s), t);
    x[0] = (0.5 * (z - z * z * z / 3.0)).real();
    x[1] = (std::complex<double>(0, 0.5) * (z + z * z * z / 3.0)).real();
    x[2] = (0.5 * z * z).real();
  });
  CHECK(rigid_alignment_residual(exact, enn.f) < 1e-10);
  CHECK(enn.u(0, 0) == doctest::Approx(std::log(0.5 * (1 + 0.25))));
}
