#pragma once

#include "annulab/grid.hpp"
#include "annulab/pde.hpp"
#include "annulab/surfaces.hpp"

namespace annulab {

/// Orthonormal tangent pair. winding counts multiples of the coordinate angle
/// by which the frame has been turned relative to the canonical polar frame.
struct Frame {
  AmbientField e1;
  AmbientField e2;
  int winding = 0;

  const GridSpec& grid() const { return e1.grid(); }
};

/// Rotation by theta + winding * (coordinate angle); theta is single-valued.
struct GaugeAngle {
  ScalarField theta;
  int winding = 0;
};

/// (e^{-u} f_r, r^{-1} e^{-u} f_theta), normalized pointwise.
Frame canonical_frame(const Immersion& imm);

/// ((1,0,0,...), (0,1,0,...)).
Frame constant_frame(const GridSpec& grid, std::size_t dim);

/// e1' = cos(phi) e1 + sin(phi) e2, e2' = -sin(phi) e1 + cos(phi) e2 with
/// phi = theta + k theta_c; the connection form becomes omega + d phi.
Frame gauge_rotate(const Frame& frame, const GaugeAngle& gauge);

/// omega = <d e1, e2> as (<d_r e1, e2>, <d_theta e1, e2>).
OneForm connection_form(const Frame& frame);

/// max(||e1| - 1|, ||e2| - 1|, |<e1, e2>|).
double orthonormality_defect(const Frame& frame);

/// Jacobian pairing sum_k (d_x e1^k d_y e2^k - d_y e1^k d_x e2^k).
ScalarField k_bilinear(const AmbientField& e1, const AmbientField& e2);

struct FrameMetrics {
  double E = 0.0;             // integral of |grad e1|^2 + |grad e2|^2
  double F = 0.0;             // integral of |omega|^2
  double beta = 0.0;          // sqrt(theta_energy / E), NaN for zero-energy frames
  double theta_energy = 0.0;  // integral of r^{-2}(|d_theta e1|^2 + |d_theta e2|^2)
  double gamma = 0.0;         // integral of |K(e1, e2)|
  int winding = 0;
  bool zero_energy = false;
};

FrameMetrics frame_metrics(const Immersion& imm, const Frame& frame);

/// Rows next to each circle excluded from the interior residual.
inline constexpr std::size_t coulomb_boundary_layer = 3;

struct CoulombResidual {
  double interior = 0.0;  // max |d * omega| over rows coulomb_boundary_layer .. n_s-1-coulomb_boundary_layer
  double boundary = 0.0;  // max |omega(d/dnu)| = |w_r| on the two circles
};

CoulombResidual coulomb_residual(const Frame& frame);

struct CoulombResult {
  Frame frame;
  GaugeAngle gauge;
  double F_start = 0.0;
  double F_min = 0.0;
  SolveReport solve;
  bool kept_start = false;  // the rotation did not lower F, start returned unchanged
};

/// Minimizes F over single-valued gauges: Lap phi = -div(omega), d phi/d nu = -omega(nu).
CoulombResult coulomb_minimize(const Immersion& imm, const Frame& start);

struct GaugeReconstruction {
  GaugeAngle gauge;
  double compat_residual = 0.0;  // max residual of the two first-order equations for theta
};

/// Angle theta with f_x = e^u (cos theta e1 + sin theta e2). Throws
/// Error{frame_not_tangent} when the frame does not span df.
GaugeReconstruction reconstruct_gauge(const Immersion& imm, const Frame& frame);

}  // namespace annulab
