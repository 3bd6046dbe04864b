#include "annulab/errors.hpp"

namespace annulab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_domain: return "invalid-domain";
    case ErrorKind::invalid_resolution: return "invalid-resolution";
    case ErrorKind::level_out_of_range: return "level-out-of-range";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::unknown_name: return "unknown-name";
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::degenerate_immersion: return "degenerate-immersion";
    case ErrorKind::pole_on_annulus: return "pole-on-annulus";
    case ErrorKind::nonvanishing_real_period: return "nonvanishing-real-period";
    case ErrorKind::frame_not_tangent: return "frame-not-tangent";
    case ErrorKind::not_closed: return "not-closed";
    case ErrorKind::compatibility_defect: return "compatibility-defect";
    case ErrorKind::solver_divergence: return "solver-divergence";
  }
  return "unknown";
}

}  // namespace annulab
