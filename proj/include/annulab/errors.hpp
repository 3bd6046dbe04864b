#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace annulab {

// Error categories surfaced by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
  invalid_domain,
  invalid_resolution,
  level_out_of_range,
  grid_mismatch,
  unknown_name,
  invalid_parameter,
  degenerate_immersion,
  pole_on_annulus,
  nonvanishing_real_period,
  frame_not_tangent,
  not_closed,
  compatibility_defect,
  solver_divergence,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown by the Weierstrass generator when the immersion would be multivalued.
class PeriodError : public Error {
 public:
  PeriodError(const std::string& message, std::array<double, 3> periods)
      : Error(ErrorKind::nonvanishing_real_period, message), periods_(periods) {}
  const std::array<double, 3>& periods() const noexcept { return periods_; }

 private:
  std::array<double, 3> periods_;
};

// Linear solves that miss their residual target.
class SolverError : public Error {
 public:
  SolverError(const std::string& message, double residual)
      : Error(ErrorKind::solver_divergence, message), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace annulab
