#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "annulab/grid.hpp"
#include "json.hpp"

namespace annulab {

/// Sampled immersion f with the conformal factor u of |grad f|^2 = 2 e^{2u}.
/// For catalog surfaces u is the closed form; for maps that are not conformal it
/// is the averaged factor (|f_r|^2 + r^{-2}|f_theta|^2)/2 = e^{2u}.
struct Immersion {
  std::string name;
  nlohmann::json params;
  AmbientField f;
  ScalarField u;

  const GridSpec& grid() const { return f.grid(); }
  std::size_t dim() const { return f.dim(); }
};

struct CatalogEntry {
  std::string name;
  std::string description;
  nlohmann::json defaults;
  bool minimal;
};

const std::vector<CatalogEntry>& catalog();

/// Default annulus (b, a) for a surface; catenoid uses e^{-h}, e^{h} with h from params.
std::array<double, 2> default_domain(const std::string& name, const nlohmann::json& params);

/// Throws Error{unknown_name} for names outside the catalog and Error{invalid_parameter}
/// for unknown or out-of-range parameters.
Immersion sample_catalog(const std::string& name, const nlohmann::json& params, const GridSpec& grid);

struct LaurentTerm {
  int power;
  std::complex<double> coef;
};

/// g and h' = dh/dz as finite Laurent series around 0.
struct WeierstrassData {
  std::vector<LaurentTerm> g;
  std::vector<LaurentTerm> dh;
  double scale = 1.0;
};

/// Parses {"g": [[power, re, im], ...], "dh": [...], "scale": s}.
WeierstrassData weierstrass_from_json(const nlohmann::json& params);

enum class PathOrder { ray_first, circle_first };

/// f = scale * Re int (1/2 (1/g - g), i/2 (1/g + g), 1) h' dz from (b, theta=0).
/// Throws Error{pole_on_annulus} when g vanishes or blows up on the closed annulus
/// and PeriodError when a real period over the core circle does not vanish.
Immersion weierstrass_generate(const WeierstrassData& data, const GridSpec& grid,
                               PathOrder order = PathOrder::ray_first);

/// Real periods Re of the contour integral of the three integrands over |z| = radius.
std::array<double, 3> weierstrass_periods(const WeierstrassData& data, double radius,
                                          std::size_t samples);

struct ConformalData {
  ScalarField u;
  double residual;  // max of ||f_r|^2 - r^{-2}|f_theta|^2| and |<f_r, f_theta>|/r over e^{2u}
};

/// Recomputes u from finite differences. Throws Error{degenerate_immersion} where the
/// differential vanishes.
ConformalData conformal_data(const Immersion& imm);

struct Derivatives {
  AmbientField f_r, f_theta, f_rr, f_rtheta, f_thetatheta;
};

Derivatives immersion_derivatives(const Immersion& imm);

struct SecondFundamentalForm {
  AmbientField A_rr, A_rtheta, A_thetatheta;
  ScalarField norm_sq;  // |A|^2 in the induced metric
};

struct FundamentalForms {
  SecondFundamentalForm A;
  ScalarField K;        // Liouville: -e^{-2u} Lap u
  ScalarField K_gauss;  // Gauss equation from A
  AmbientField H;       // e^{-2u} Lap f
  double normality_residual;  // max |<A_ij, tangent>| / (|A| e^u scale)
};

FundamentalForms fundamental_forms(const Immersion& imm);

/// Unit tangent pair by Gram-Schmidt on (f_r, f_theta).
std::pair<AmbientField, AmbientField> tangent_basis(const Immersion& imm);

struct GaussMapField {
  AmbientField X;               // Pluecker coordinates X_ij = e1_i e2_j - e1_j e2_i, i < j
  ScalarField energy_density;   // |grad X|^2
  ScalarField k_curvature;      // K e^{2u}
  double unit_defect;           // max ||X| - 1|
};

GaussMapField gauss_map(const Immersion& imm);

/// max |e^{-2u} Lap f| over interior nodes.
double minimality_residual(const Immersion& imm);

/// Max pointwise distance between x and the best rigid motion of y (Kabsch).
double rigid_alignment_residual(const AmbientField& x, const AmbientField& y);

/// Max |field| over the interior rows (both circles excluded).
double max_interior_abs(const ScalarField& field);

}  // namespace annulab
