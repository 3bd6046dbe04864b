#pragma once

// Stencil coefficients and small helpers shared by both kernel backends.

#include <cstddef>
#include <vector>

#include "annulab/kernels.hpp"

namespace annulab::kernels::detail {

// Row i of the first-derivative matrix D_s (without the 1/(2 ds) factor):
// entries (col, coef).
struct StencilEntry {
  std::size_t col;
  double coef;
};

inline std::vector<StencilEntry> first_derivative_row(std::size_t i, std::size_t n) {
  if (i == 0) return {{0, -3.0}, {1, 4.0}, {2, -1.0}};
  if (i + 1 == n) return {{n - 3, 1.0}, {n - 2, -4.0}, {n - 1, 3.0}};
  return {{i - 1, -1.0}, {i + 1, 1.0}};
}

// Row i of the second-derivative matrix D_ss (without 1/ds^2).
inline std::vector<StencilEntry> second_derivative_row(std::size_t i, std::size_t n) {
  if (i == 0) return {{0, 2.0}, {1, -5.0}, {2, 4.0}, {3, -1.0}};
  if (i + 1 == n) return {{n - 4, -1.0}, {n - 3, 4.0}, {n - 2, -5.0}, {n - 1, 2.0}};
  return {{i - 1, 1.0}, {i, -2.0}, {i + 1, 1.0}};
}

inline bool is_pinned_fit_mode(std::size_t k, std::size_t n_theta) {
  return k == 0 || 2 * k == n_theta;
}

}  // namespace annulab::kernels::detail
