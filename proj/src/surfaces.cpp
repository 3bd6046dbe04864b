#include "annulab/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "annulab/errors.hpp"

namespace annulab {
namespace {

using cplx = std::complex<double>;
using nlohmann::json;
using std::numbers::pi;

double param(const json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_number())
    throw Error(ErrorKind::invalid_parameter, std::string("parameter ") + key + " must be a number");
  const double v = p[key].get<double>();
  if (!std::isfinite(v))
    throw Error(ErrorKind::invalid_parameter, std::string("parameter ") + key + " must be finite");
  return v;
}

std::size_t dim_param(const json& p) {
  const double d = param(p, "dim", 3.0);
  if (d < 3.0 || d != std::floor(d) || d > 64.0)
    throw Error(ErrorKind::invalid_parameter, "parameter dim must be an integer >= 3");
  return static_cast<std::size_t>(d);
}

void reject_unknown_keys(const std::string& name, const json& p, std::set<std::string> allowed) {
  if (p.is_null()) return;
  if (!p.is_object()) throw Error(ErrorKind::invalid_parameter, "parameters must be a JSON object");
  allowed.insert("dim");
  for (const auto& [key, value] : p.items())
    if (!allowed.count(key))
      throw Error(ErrorKind::invalid_parameter, "unknown parameter for " + name + ": " + key);
}

Immersion make(std::string name, const json& params, AmbientField f, ScalarField u) {
  return Immersion{std::move(name), params.is_null() ? json::object() : params, std::move(f),
                   std::move(u)};
}

cplx laurent(const std::vector<LaurentTerm>& series, cplx z) {
  cplx acc = 0.0;
  for (const auto& t : series) acc += t.coef * std::pow(z, t.power);
  return acc;
}

std::array<cplx, 3> integrand(const WeierstrassData& d, cplx z) {
  const cplx g = laurent(d.g, z);
  const cplx h = laurent(d.dh, z);
  const cplx ig = 1.0 / g;
  return {0.5 * (ig - g) * h, cplx(0.0, 0.5) * (ig + g) * h, h};
}

constexpr std::array<double, 5> gl_nodes{0.0, -0.5384693101056831, 0.5384693101056831,
                                         -0.9061798459386640, 0.9061798459386640};
constexpr std::array<double, 5> gl_weights{0.5688888888888889, 0.4786286704993665,
                                           0.4786286704993665, 0.2369268850561891,
                                           0.2369268850561891};

// Integral of Phi dz along s from s0 to s1 at fixed theta.
std::array<cplx, 3> radial_segment(const WeierstrassData& d, double s0, double s1, double theta) {
  std::array<cplx, 3> acc{};
  const double half = 0.5 * (s1 - s0), mid = 0.5 * (s1 + s0);
  for (std::size_t q = 0; q < 5; ++q) {
    const cplx z = std::polar(std::exp(mid + half * gl_nodes[q]), theta);
    const auto phi = integrand(d, z);
    for (int c = 0; c < 3; ++c) acc[c] += gl_weights[q] * half * phi[c] * z;
  }
  return acc;
}

// Integral of Phi dz along the circle |z| = e^s from t0 to t1.
std::array<cplx, 3> angular_segment(const WeierstrassData& d, double s, double t0, double t1) {
  std::array<cplx, 3> acc{};
  const double half = 0.5 * (t1 - t0), mid = 0.5 * (t1 + t0);
  for (std::size_t q = 0; q < 5; ++q) {
    const cplx z = std::polar(std::exp(s), mid + half * gl_nodes[q]);
    const auto phi = integrand(d, z);
    for (int c = 0; c < 3; ++c) acc[c] += gl_weights[q] * half * phi[c] * cplx(0.0, 1.0) * z;
  }
  return acc;
}

void add_to(std::array<cplx, 3>& x, const std::array<cplx, 3>& y) {
  for (int c = 0; c < 3; ++c) x[c] += y[c];
}

WeierstrassData enneper_data() { return {{{1, 1.0}}, {{1, 1.0}}, 1.0}; }

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"flat", "plane annulus f = (x, y, 0), u = 0", json::object(), true},
      {"log_cylinder", "flat cylinder f = (e^c log r, e^c theta, 0), u = c - log r", json{{"c", 0.0}}, true},
      {"catenoid", "f = (cosh s cos theta, cosh s sin theta, s) on e^{-h} < r < e^{h}", json{{"h", 0.5}}, true},
      {"enneper", "Weierstrass data g = z, dh = z dz", json::object(), true},
      {"quadratic", "planar holomorphic map z + eps z^2 (u varies on the circles)", json{{"eps", 0.1}}, true},
      {"paraboloid", "graph (x, y, eps (x^2 + y^2)), not minimal, conformal only to O(eps^2)", json{{"eps", 0.1}}, false},
      {"stretched", "linear map (x, 2y, 0), not conformal", json::object(), false},
      {"weierstrass", "Weierstrass data from Laurent coefficients of g and dh",
       json{{"g", json::array({json::array({1, 1.0, 0.0})})},
            {"dh", json::array({json::array({-1, 1.0, 0.0})})},
            {"scale", 1.0}},
       true},
  };
  return entries;
}

std::array<double, 2> default_domain(const std::string& name, const json& params) {
  if (name == "catenoid") {
    const double h = param(params, "h", 0.5);
    if (!(h > 0.0)) throw Error(ErrorKind::invalid_parameter, "parameter h must be positive");
    return {std::exp(-h), std::exp(h)};
  }
  if (name == "enneper") return {0.5, 1.0};
  return {1.0, 2.0};
}

Immersion sample_catalog(const std::string& name, const json& params, const GridSpec& grid) {
  if (name == "flat") {
    reject_unknown_keys(name, params, {});
    AmbientField f = AmbientField::sample(grid, dim_param(params), [](double s, double t, std::span<double> x) {
      x[0] = std::exp(s) * std::cos(t);
      x[1] = std::exp(s) * std::sin(t);
    });
    return make(name, params, std::move(f), ScalarField(grid));
  }
  if (name == "log_cylinder") {
    reject_unknown_keys(name, params, {"c"});
    const double c = param(params, "c", 0.0);
    const double ec = std::exp(c);
    AmbientField f = AmbientField::sample(grid, dim_param(params), [&](double s, double t, std::span<double> x) {
      x[0] = ec * s;
      x[1] = ec * t;
    });
    f.set_theta_jump(1, 2.0 * pi * ec);
    ScalarField u = ScalarField::sample(grid, [&](double s, double) { return c - s; });
    return make(name, params, std::move(f), std::move(u));
  }
  if (name == "catenoid") {
    reject_unknown_keys(name, params, {"h"});
    default_domain(name, params);
    AmbientField f = AmbientField::sample(grid, dim_param(params), [](double s, double t, std::span<double> x) {
      x[0] = std::cosh(s) * std::cos(t);
      x[1] = std::cosh(s) * std::sin(t);
      x[2] = s;
    });
    ScalarField u = ScalarField::sample(grid, [](double s, double) { return std::log(std::cosh(s)) - s; });
    return make(name, params, std::move(f), std::move(u));
  }
  if (name == "quadratic") {
    reject_unknown_keys(name, params, {"eps"});
    const double eps = param(params, "eps", 0.1);
    if (!(2.0 * std::abs(eps) * grid.outer_radius() < 1.0))
      throw Error(ErrorKind::invalid_parameter, "quadratic needs 2|eps| a < 1 (critical point inside)");
    AmbientField f = AmbientField::sample(grid, dim_param(params), [&](double s, double t, std::span<double> x) {
      const cplx z = std::polar(std::exp(s), t);
      const cplx w = z + eps * z * z;
      x[0] = w.real();
      x[1] = w.imag();
    });
    ScalarField u = ScalarField::sample(grid, [&](double s, double t) {
      return std::log(std::abs(1.0 + 2.0 * eps * std::polar(std::exp(s), t)));
    });
    return make(name, params, std::move(f), std::move(u));
  }
  if (name == "paraboloid") {
    reject_unknown_keys(name, params, {"eps"});
    const double eps = param(params, "eps", 0.1);
    AmbientField f = AmbientField::sample(grid, dim_param(params), [&](double s, double t, std::span<double> x) {
      const double r = std::exp(s);
      x[0] = r * std::cos(t);
      x[1] = r * std::sin(t);
      x[2] = eps * r * r;
    });
    ScalarField u = ScalarField::sample(grid, [&](double s, double) {
      return 0.5 * std::log1p(2.0 * eps * eps * std::exp(2.0 * s));
    });
    return make(name, params, std::move(f), std::move(u));
  }
  if (name == "stretched") {
    reject_unknown_keys(name, params, {});
    AmbientField f = AmbientField::sample(grid, dim_param(params), [](double s, double t, std::span<double> x) {
      x[0] = std::exp(s) * std::cos(t);
      x[1] = 2.0 * std::exp(s) * std::sin(t);
    });
    return make(name, params, std::move(f), ScalarField(grid, 0.5 * std::log(2.5)));
  }
  if (name == "enneper" || name == "weierstrass") {
    reject_unknown_keys(name, params, name == "enneper" ? std::set<std::string>{}
                                                        : std::set<std::string>{"g", "dh", "scale"});
    const WeierstrassData data = name == "enneper" ? enneper_data() : weierstrass_from_json(params);
    Immersion imm = weierstrass_generate(data, grid);
    const std::size_t dim = dim_param(params);
    if (dim > 3) {
      AmbientField padded(grid, dim);
      for (std::size_t c = 0; c < 3; ++c) padded.set_component(c, imm.f.component_field(c));
      imm.f = std::move(padded);
    }
    imm.name = name;
    imm.params = params.is_null() ? json::object() : params;
    return imm;
  }
  throw Error(ErrorKind::unknown_name, "unknown surface: " + name);
}

WeierstrassData weierstrass_from_json(const json& params) {
  WeierstrassData data;
  auto series = [&](const char* key) {
    std::vector<LaurentTerm> out;
    if (!params.contains(key) || !params[key].is_array() || params[key].empty())
      throw Error(ErrorKind::invalid_parameter,
                  std::string("weierstrass parameter ") + key + " must be a non-empty list of [power, re, im]");
    for (const auto& term : params[key]) {
      if (!term.is_array() || term.size() < 2 || term.size() > 3 || !term[0].is_number_integer())
        throw Error(ErrorKind::invalid_parameter,
                    std::string("weierstrass parameter ") + key + " entries are [power, re, im]");
      const double im = term.size() == 3 ? term[2].get<double>() : 0.0;
      out.push_back({term[0].get<int>(), cplx(term[1].get<double>(), im)});
    }
    return out;
  };
  data.g = series("g");
  data.dh = series("dh");
  data.scale = param(params, "scale", 1.0);
  if (!(data.scale > 0.0)) throw Error(ErrorKind::invalid_parameter, "weierstrass scale must be positive");
  return data;
}

std::array<double, 3> weierstrass_periods(const WeierstrassData& data, double radius,
                                          std::size_t samples) {
  std::array<cplx, 3> acc{};
  const double dt = 2.0 * pi / static_cast<double>(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const cplx z = std::polar(radius, dt * static_cast<double>(k));
    const auto phi = integrand(data, z);
    for (int c = 0; c < 3; ++c) acc[c] += phi[c] * cplx(0.0, 1.0) * z * dt;
  }
  return {data.scale * acc[0].real(), data.scale * acc[1].real(), data.scale * acc[2].real()};
}

Immersion weierstrass_generate(const WeierstrassData& data, const GridSpec& grid, PathOrder order) {
  // g must stay away from 0 and infinity on the closed annulus; check on a 4x finer grid.
  const std::size_t fine_s = 4 * grid.n_s(), fine_t = 4 * grid.n_theta();
  double gmin = std::numeric_limits<double>::infinity(), gmax = 0.0, hmin = gmin;
  for (std::size_t i = 0; i < fine_s; ++i) {
    const double s = grid.s_min() + grid.log_ratio() * static_cast<double>(i) / static_cast<double>(fine_s - 1);
    for (std::size_t j = 0; j < fine_t; ++j) {
      const cplx z = std::polar(std::exp(s), 2.0 * pi * static_cast<double>(j) / static_cast<double>(fine_t));
      const double g = std::abs(laurent(data.g, z));
      gmin = std::min(gmin, g);
      gmax = std::max(gmax, g);
      hmin = std::min(hmin, std::abs(laurent(data.dh, z)));
    }
  }
  if (!(gmin > 1e-8) || !(gmax < 1e8) || !std::isfinite(gmax))
    throw Error(ErrorKind::pole_on_annulus,
                "Gauss map g has a zero or pole on the annulus (min |g| = " + std::to_string(gmin) + ")");
  if (!(hmin > 1e-10))
    throw Error(ErrorKind::degenerate_immersion, "height differential vanishes on the annulus (branch point)");

  const double core = std::sqrt(grid.inner_radius() * grid.outer_radius());
  const auto periods = weierstrass_periods(data, core, 4 * grid.n_theta());
  double size = 0.0;
  for (std::size_t j = 0; j < 64; ++j) {
    const auto phi = integrand(data, std::polar(core, 2.0 * pi * static_cast<double>(j) / 64.0));
    for (const auto& c : phi) size = std::max(size, std::abs(c) * core * 2.0 * pi * data.scale);
  }
  if (std::max({std::abs(periods[0]), std::abs(periods[1]), std::abs(periods[2])}) > 1e-9 * (1.0 + size))
    throw PeriodError("Weierstrass data has nonvanishing real periods (" + std::to_string(periods[0]) + ", " +
                          std::to_string(periods[1]) + ", " + std::to_string(periods[2]) + ")",
                      periods);

  const std::size_t ns = grid.n_s(), nt = grid.n_theta();
  std::vector<std::array<cplx, 3>> prim(grid.size());
  if (order == PathOrder::ray_first) {
    std::array<cplx, 3> acc{};
    for (std::size_t i = 0; i < ns; ++i) {
      if (i > 0) add_to(acc, radial_segment(data, grid.s(i - 1), grid.s(i), 0.0));
      std::array<cplx, 3> around = acc;
      prim[grid.index(i, 0)] = around;
      for (std::size_t j = 1; j < nt; ++j) {
        add_to(around, angular_segment(data, grid.s(i), grid.theta(j - 1), grid.theta(j)));
        prim[grid.index(i, j)] = around;
      }
    }
  } else {
    std::array<cplx, 3> acc{};
    for (std::size_t j = 0; j < nt; ++j) {
      if (j > 0) add_to(acc, angular_segment(data, grid.s(0), grid.theta(j - 1), grid.theta(j)));
      std::array<cplx, 3> along = acc;
      prim[grid.index(0, j)] = along;
      for (std::size_t i = 1; i < ns; ++i) {
        add_to(along, radial_segment(data, grid.s(i - 1), grid.s(i), grid.theta(j)));
        prim[grid.index(i, j)] = along;
      }
    }
  }

  AmbientField f(grid, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    auto dst = f.component(c);
    for (std::size_t n = 0; n < grid.size(); ++n) dst[n] = data.scale * prim[n][c].real();
  }
  ScalarField u = ScalarField::sample(grid, [&](double s, double t) {
    const cplx z = std::polar(std::exp(s), t);
    const double g = std::abs(laurent(data.g, z));
    return std::log(data.scale * 0.5 * std::abs(laurent(data.dh, z)) * (g + 1.0 / g));
  });
  return Immersion{"weierstrass", json::object(), std::move(f), std::move(u)};
}

Derivatives immersion_derivatives(const Immersion& imm) {
  const auto first = differentiate(imm.f);
  AmbientField f_ss = second_derivative_ss(imm.f);
  AmbientField f_tt = second_derivative_thth(imm.f);
  AmbientField f_st = differentiate(first.d_s).d_theta;
  AmbientField f_r = radial_from_log(first.d_s);
  // f_rr = e^{-2s}(f_ss - f_s), f_rtheta = e^{-s} f_stheta.
  AmbientField f_rr = radial_from_log(radial_from_log(f_ss - first.d_s));
  return {std::move(f_r), first.d_theta, std::move(f_rr), radial_from_log(f_st), std::move(f_tt)};
}

ConformalData conformal_data(const Immersion& imm) {
  const GridSpec& g = imm.grid();
  const auto d = differentiate(imm.f);
  const ScalarField e = norm_sq(d.d_s);      // r^2 |f_r|^2
  const ScalarField gg = norm_sq(d.d_theta);  // r^2 (r^{-2} |f_theta|^2)
  const ScalarField fc = dot(d.d_s, d.d_theta);
  ScalarField u(g);
  double peak = 0.0;
  const ScalarField total = e + gg;
  for (double v : total.values()) peak = std::max(peak, v);
  double residual = 0.0;
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    const double r2 = std::exp(2.0 * g.s(i));
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const double mean = 0.5 * (e(i, j) + gg(i, j));
      if (!(mean > 1e-14 * peak) || !(mean > 0.0))
        throw Error(ErrorKind::degenerate_immersion,
                    "differential of f vanishes at node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      u(i, j) = 0.5 * std::log(mean / r2);
      residual = std::max(residual, std::max(std::abs(e(i, j) - gg(i, j)), std::abs(fc(i, j))) / mean);
    }
  }
  return {std::move(u), residual};
}

std::pair<AmbientField, AmbientField> tangent_basis(const Immersion& imm) {
  const auto d = differentiate(imm.f);
  const GridSpec& g = imm.grid();
  const std::size_t n = imm.dim();
  AmbientField e1(g, n), e2(g, n);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < g.n_s(); ++i)
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      double na = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        a[c] = d.d_s(c, i, j);
        na += a[c] * a[c];
      }
      na = std::sqrt(na);
      if (!(na > 0.0))
        throw Error(ErrorKind::degenerate_immersion, "f_r vanishes at node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      double proj = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        a[c] /= na;
        proj += a[c] * d.d_theta(c, i, j);
      }
      double nb = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        b[c] = d.d_theta(c, i, j) - proj * a[c];
        nb += b[c] * b[c];
      }
      nb = std::sqrt(nb);
      if (!(nb > 0.0))
        throw Error(ErrorKind::degenerate_immersion, "f_theta parallel to f_r at node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      for (std::size_t c = 0; c < n; ++c) {
        e1(c, i, j) = a[c];
        e2(c, i, j) = b[c] / nb;
      }
    }
  return {std::move(e1), std::move(e2)};
}

FundamentalForms fundamental_forms(const Immersion& imm) {
  const GridSpec& g = imm.grid();
  const Derivatives d = immersion_derivatives(imm);
  const auto [t1, t2] = tangent_basis(imm);

  double normality = 0.0;
  auto normal_part = [&](const AmbientField& x) {
    const ScalarField p1 = dot(x, t1), p2 = dot(x, t2);
    AmbientField out = x - p1 * t1 - p2 * t2;
    const ScalarField q1 = dot(out, t1), q2 = dot(out, t2), scale = norm_sq(x);
    for (std::size_t n = 0; n < g.size(); ++n)
      normality = std::max(normality, std::max(std::abs(q1.values()[n]), std::abs(q2.values()[n])) /
                                          std::max(1.0, std::sqrt(scale.values()[n])));
    return out;
  };
  SecondFundamentalForm A{normal_part(d.f_rr), normal_part(d.f_rtheta), normal_part(d.f_thetatheta),
                          ScalarField(g)};
  const ScalarField arr = norm_sq(A.A_rr), art = norm_sq(A.A_rtheta), att = norm_sq(A.A_thetatheta);
  const ScalarField cross = dot(A.A_rr, A.A_thetatheta);
  ScalarField K_gauss(g);
  for (std::size_t i = 0; i < g.n_s(); ++i) {
    const double r2 = std::exp(2.0 * g.s(i));
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const double e4u = std::exp(4.0 * imm.u(i, j));
      A.norm_sq(i, j) = (arr(i, j) + 2.0 * art(i, j) / r2 + att(i, j) / (r2 * r2)) / e4u;
      K_gauss(i, j) = (cross(i, j) - art(i, j)) / (e4u * r2);
    }
  }
  ScalarField e_m2u(g);
  for (std::size_t n = 0; n < g.size(); ++n) e_m2u.values()[n] = std::exp(-2.0 * imm.u.values()[n]);
  ScalarField K = -1.0 * (e_m2u * laplacian(imm.u));
  AmbientField H = e_m2u * laplacian(imm.f);
  return {std::move(A), std::move(K), std::move(K_gauss), std::move(H), normality};
}

GaussMapField gauss_map(const Immersion& imm) {
  const GridSpec& g = imm.grid();
  const auto [e1, e2] = tangent_basis(imm);
  const std::size_t n = imm.dim();
  AmbientField X(g, n * (n - 1) / 2);
  std::size_t slot = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b, ++slot) {
      auto dst = X.component(slot);
      auto e1a = e1.component(a), e1b = e1.component(b), e2a = e2.component(a), e2b = e2.component(b);
      for (std::size_t k = 0; k < g.size(); ++k) dst[k] = e1a[k] * e2b[k] - e1b[k] * e2a[k];
    }
  double unit = 0.0;
  const ScalarField x2 = norm_sq(X);
  for (double v : x2.values()) unit = std::max(unit, std::abs(std::sqrt(v) - 1.0));
  const FundamentalForms forms = fundamental_forms(imm);
  ScalarField k(g);
  for (std::size_t m = 0; m < g.size(); ++m)
    k.values()[m] = forms.K_gauss.values()[m] * std::exp(2.0 * imm.u.values()[m]);
  ScalarField energy = grad_norm_sq(X);
  return {std::move(X), std::move(energy), std::move(k), unit};
}

double max_interior_abs(const ScalarField& field) {
  const GridSpec& g = field.grid();
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < g.n_s(); ++i)
    for (std::size_t j = 0; j < g.n_theta(); ++j) m = std::max(m, std::abs(field(i, j)));
  return m;
}

double minimality_residual(const Immersion& imm) {
  const AmbientField lap = laplacian(imm.f);
  ScalarField h(imm.grid());
  for (std::size_t m = 0; m < h.values().size(); ++m) {
    double acc = 0.0;
    for (std::size_t c = 0; c < imm.dim(); ++c) acc += lap.component(c)[m] * lap.component(c)[m];
    h.values()[m] = std::sqrt(acc) * std::exp(-2.0 * imm.u.values()[m]);
  }
  return max_interior_abs(h);
}

double rigid_alignment_residual(const AmbientField& x, const AmbientField& y) {
  require_same_grid(x.grid(), y.grid());
  if (x.dim() != y.dim()) throw Error(ErrorKind::grid_mismatch, "ambient dimensions differ");
  const std::size_t n = x.dim(), m = x.grid().size();
  Eigen::MatrixXd P(n, m), Q(n, m);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t k = 0; k < m; ++k) {
      P(c, k) = x.component(c)[k];
      Q(c, k) = y.component(c)[k];
    }
  const Eigen::VectorXd pc = P.rowwise().mean(), qc = Q.rowwise().mean();
  P.colwise() -= pc;
  Q.colwise() -= qc;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Q * P.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(n, n);
  D(n - 1, n - 1) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0 ? -1.0 : 1.0;
  const Eigen::MatrixXd R = svd.matrixV() * D * svd.matrixU().transpose();
  const Eigen::MatrixXd diff = P - R * Q;
  return diff.colwise().norm().maxCoeff();
}

}  // namespace annulab
