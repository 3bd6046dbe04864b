// Acceptance suite: one PASS/FAIL line per criterion at pinned tolerances.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "annulab/errors.hpp"
#include "annulab/frames.hpp"
#include "annulab/pde.hpp"
#include "annulab/surfaces.hpp"
#include "annulab/theorems.hpp"

using namespace annulab;
using nlohmann::json;
using std::numbers::pi;

namespace {

// Collects the sub-conditions of one criterion.
class Criterion {
 public:
  void require(bool ok, const std::string& what, double value, double limit) {
    std::ostringstream os;
    os.precision(6);
    os << what << " = " << value << " (limit " << limit << ")";
    if (!ok) failures_.push_back(os.str());
    else if (summary_.empty()) summary_ = os.str();
  }
  void at_most(const std::string& what, double value, double limit) {
    require(value <= limit, what, value, limit);
  }
  void at_least(const std::string& what, double value, double limit) {
    require(value >= limit, what, value, limit);
  }
  void near(const std::string& what, double value, double target, double abs_tol) {
    require(std::abs(value - target) <= abs_tol, what, value, abs_tol);
  }
  void near_rel(const std::string& what, double value, double target, double rel_tol) {
    require(std::abs(value - target) <= rel_tol * std::abs(target), what, value, rel_tol);
  }
  void holds(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool passed() const { return failures_.empty(); }
  std::string detail() const { return passed() ? summary_ : failures_.front(); }

 private:
  std::vector<std::string> failures_;
  std::string summary_;
};

Immersion catenoid(double h, std::size_t n_s = 128, std::size_t n_theta = 256) {
  return sample_catalog("catenoid", json{{"h", h}}, make_symmetric_grid(h, n_s, n_theta));
}

Immersion on_default(const std::string& name, const json& params = json::object()) {
  const auto d = default_domain(name, params);
  return sample_catalog(name, params, make_grid(d[0], d[1], 128, 256));
}

// Least-squares slope of log(error) against log(spacing).
double fitted_order(const std::vector<double>& spacing, const std::vector<double>& error) {
  const double n = static_cast<double>(spacing.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < spacing.size(); ++k) {
    mx += std::log(spacing[k]) / n;
    my += std::log(error[k]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < spacing.size(); ++k) {
    const double x = std::log(spacing[k]) - mx;
    sxy += x * (std::log(error[k]) - my);
    sxx += x * x;
  }
  return sxy / sxx;
}

double spacing(const GridSpec& g) { return std::hypot(g.ds(), g.dtheta()); }

void appendix_suite(Criterion& c) {
  const Immersion cat = catenoid(0.5);
  const CheckReport r = check_appendix_identities(cat, canonical_frame(cat));
  const double tau = r.tolerance;
  c.near("Gauss map energy vs 8 pi tanh 0.5", r.quantity("gauss_map_energy"), 8 * pi * std::tanh(0.5), 1e-2);
  c.at_most("curvature identity pointwise", r.residual("curvature_identity_pointwise"), tau);
  c.at_most("pairing bound excess", r.residual("pairing_bound_excess"), 1e-12);
  c.at_most("Pluecker identity integrated / E", r.residual("pluecker_identity_integrated"), tau);
  for (const char* metric : {"appendix-3.3", "appendix-3.4"}) {
    std::vector<double> h, e;
    for (std::size_t n : {64u, 128u, 256u}) {
      const Immersion im = catenoid(0.5, n, 2 * n);
      h.push_back(spacing(im.grid()));
      e.push_back(convergence_metric(metric, im));
    }
    c.at_least(std::string("order of ") + metric, fitted_order(h, e), 1.9);
  }
}

void gauge_invariance(Criterion& c) {
  for (const Immersion& im : {on_default("flat"), catenoid(0.5)}) {
    const CheckReport r = check_gauge_invariance(im);
    c.holds(r.quantity("gauges") == 14.0, "gauge count");
    c.at_most(im.name + " max pointwise deviation", r.residual("max_deviation"), r.tolerance);
  }
}

void canonical_frame_law(Criterion& c) {
  for (const auto& entry : catalog()) {
    const Immersion im = on_default(entry.name, entry.defaults);
    const CheckReport r = check_canonical_frame(im);
    if (!r.applicable()) {
      c.holds(conformal_data(im).residual > r.tolerance, entry.name + " skipped although conformal");
      continue;
    }
    c.at_most(entry.name + " connection law", r.residual("connection_law"), r.tolerance);
    c.at_most(entry.name + " interior codifferential", r.residual("interior_codifferential"), r.tolerance);
  }
  for (const char* name : {"flat", "log_cylinder", "catenoid"}) {
    const CheckReport r = check_canonical_frame(on_default(name));
    c.at_most(std::string(name) + " boundary residual", r.quantity("boundary_residual"), 1e-9);
  }
}

void frame_energies(Criterion& c) {
  const Immersion flat = sample_catalog("flat", json::object(), make_grid(1.0, std::exp(1.0), 128, 256));
  c.near_rel("flat E", frame_metrics(flat, canonical_frame(flat)).E, 4 * pi, 1e-2);
  const Immersion cat = catenoid(0.5);
  const FrameMetrics m = frame_metrics(cat, canonical_frame(cat));
  c.near_rel("catenoid E", m.E, 4 * pi, 1e-2);
  c.near_rel("catenoid F", m.F, 4 * pi * (0.5 - std::tanh(0.5)), 1e-2);
  c.near_rel("catenoid beta", m.beta, 0.733404965036364, 5e-3);
}

void energy_estimate_chain(Criterion& c) {
  const CheckReport r = thm12_verify(catenoid(0.01));
  c.holds(r.status() == "pass", "status " + r.status());
  c.near_rel("gamma", r.quantity("gamma"), 0.125659517520932, 1e-2);
  c.near_rel("condition", r.quantity("condition"), 0.823589812894405, 1e-2);
  c.at_most("condition", r.quantity("condition"), 1.0);
  c.at_least("inequality margin", r.quantity("energy_split_margin"), 0.0);
  c.near("alpha", r.quantity("alpha"), 0.0, 1e-6);
  c.near("c_a - c_b", r.quantity("c_a_minus_c_b"), 0.0, 1e-6);
}

void wente(Criterion& c) {
  const GridSpec g = make_grid(1.0, 2.0, 128, 256);
  const WenteAudit audit = wente_audit(50, 7, g);
  c.at_most("sup ratio", audit.max_sup_ratio, wente_constant_infty + g.tolerance());
  c.at_most("gradient ratio", audit.max_grad_ratio, wente_constant_l2 + g.tolerance());
  const auto x = ScalarField::sample(g, [](double s, double t) { return std::exp(s) * std::cos(t); });
  const auto y = ScalarField::sample(g, [](double s, double t) { return std::exp(s) * std::sin(t); });
  c.near("max v for (x, y)", wente_solve(x, y).v.max(), 0.126637687291409, 1e-4);
}

void solvers(Criterion& c) {
  std::vector<double> h, e_dir, e_neu;
  for (std::size_t n : {32u, 64u, 128u, 256u}) {
    const GridSpec g = make_grid(1.0, 2.0, n, 2 * n);
    const double lb = g.s_min(), la = g.s_max();
    const auto exact = ScalarField::sample(g, [&](double s, double t) { return std::sin(t) * (s - lb) * (la - s); });
    const auto rhs = ScalarField::sample(
        g, [&](double s, double t) { return -std::exp(-2 * s) * std::sin(t) * (-2.0 - (s - lb) * (la - s)); });
    e_dir.push_back(l2_norm(poisson_dirichlet(rhs, 0.0, 0.0) - exact));

    auto exact_n = ScalarField::sample(g, [](double s, double t) { return std::sin(t) * s; });
    const auto rhs_n = ScalarField::sample(g, [](double s, double t) { return -std::exp(-2 * s) * s * std::sin(t); });
    std::vector<double> fa(g.n_theta()), fb(g.n_theta());
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      fa[j] = std::sin(g.theta(j)) / g.outer_radius();
      fb[j] = -std::sin(g.theta(j)) / g.inner_radius();
    }
    exact_n += -integrate(exact_n, Area{}) / integrate(ScalarField(g, 1.0), Area{});
    e_neu.push_back(l2_norm(poisson_neumann(rhs_n, fa, fb) - exact_n));
    h.push_back(spacing(g));
  }
  c.at_least("Dirichlet order", fitted_order(h, e_dir), 1.9);
  c.at_least("Neumann order", fitted_order(h, e_neu), 1.9);

  const GridSpec g = make_symmetric_grid(0.5, 128, 256);
  const HodgeParts parts =
      hodge_decompose(OneForm{ScalarField(g), ScalarField::sample(g, [](double s, double) { return std::tanh(s); })});
  c.near("alpha", parts.alpha, 0.0, 1e-8);
  const auto exact = ScalarField::sample(g, [](double s, double) { return std::log(std::cosh(s)) - std::log(std::cosh(0.5)); });
  c.at_most("v - log cosh s", (parts.v - exact).max_abs(), g.tolerance());
}

void dispositions(Criterion& c) {
  const double c0 = 0.3;
  const Immersion cyl = on_default("log_cylinder", json{{"c", c0}});
  const CheckReport rig = cor18_check(cyl);
  c.holds(rig.status() == "pass", "log_cylinder rigidity status " + rig.status());
  c.near("fitted c", rig.quantity("c_fit"), c0, 1e-3);
  const CheckReport small = thm110_verify(cyl);
  c.holds(small.status() == "pass", "log_cylinder small-curvature status " + small.status());

  const double h = 0.5;
  const CheckReport cat = thm110_verify(catenoid(h));
  c.near_rel("catenoid I1", cat.quantity("I1"), 4 * pi * (h - std::tanh(h)), 1e-2);
  c.at_most("catenoid I2", cat.quantity("I2"), 1e-10);
  c.holds(cat.status() == "not-applicable", "catenoid small-curvature status " + cat.status());

  const CheckReport flat = thm110_verify(on_default("flat"));
  c.at_most("flat Coulomb residual", flat.quantity("coulomb_interior"), flat.tolerance);
  c.near_rel("flat E", flat.quantity("E"), 4 * pi * std::log(2.0), 1e-2);
  c.at_most("flat sup |A|", flat.quantity("A_sup"), flat.tolerance);
}

void conformal_bound(Criterion& c) {
  const CheckReport r = conformal_factor_bound(catenoid(0.5));
  c.holds(r.status() == "pass", "status " + r.status());
  c.at_most("reconstruction max error", r.residual("reconstruction"), r.tolerance);
}

void weierstrass(Criterion& c) {
  const GridSpec g = make_symmetric_grid(0.5, 128, 256);
  const Immersion gen = weierstrass_generate(WeierstrassData{{{1, 1.0}}, {{-1, 1.0}}, 1.0}, g);
  const Immersion cat = sample_catalog("catenoid", json{{"h", 0.5}}, g);
  c.at_most("rigid alignment", rigid_alignment_residual(cat.f, gen.f), g.tolerance());
  c.at_most("u from generated map", (conformal_data(gen).u - cat.u).max_abs(), g.tolerance());
  try {
    weierstrass_generate(WeierstrassData{{{1, 1.0}}, {{-1, std::complex<double>(0.0, 1.0)}}, 1.0}, g);
    c.holds(false, "helicoid data accepted");
  } catch (const PeriodError& e) {
    c.near("real period", e.periods()[2], -2 * pi, 1e-6);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"appendix identities on the catenoid", appendix_suite},
      {"gauge invariance of the pairing", gauge_invariance},
      {"canonical frame law on the catalog", canonical_frame_law},
      {"frame energies", frame_energies},
      {"energy estimate chain on a thin catenoid", energy_estimate_chain},
      {"Wente audit", wente},
      {"Poisson and Hodge solvers", solvers},
      {"rigidity and small-curvature dispositions", dispositions},
      {"conformal factor reconstruction", conformal_bound},
      {"Weierstrass generator", weierstrass},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[k].second(c);
    } catch (const std::exception& e) {
      c.holds(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !c.passed();
    std::printf("%s %2zu %-42s %6.1fs  %s\n", c.passed() ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), secs,
                c.detail().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
