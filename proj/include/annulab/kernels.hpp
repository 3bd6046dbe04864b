#pragma once

// Inner loops of the grid operators and the Fourier/tridiagonal solvers.
//
// Two interchangeable backends share one table of entry points:
//   reference  plain serial loops, direct trig evaluation and dense mode
//              solves; slow, kept as the test oracle for the fast path
//   openmp     row/mode-parallel loops with precomputed DFT tables and
//              banded eliminations
// Every openmp kernel is embarrassingly parallel over rows or Fourier modes
// (no reductions), so results do not depend on the thread count.

#include <cstddef>
#include <span>

namespace annulab::kernels {

struct Shape {
  std::size_t n_s;
  std::size_t n_theta;
  std::size_t size() const { return n_s * n_theta; }
};

using In = std::span<const double>;
using Out = std::span<double>;

struct KernelSet {
  const char* name;

  void (*diff_s)(Shape, double ds, In in, Out out);
  void (*diff_theta)(Shape, double dtheta, double jump, In in, Out out);
  void (*diff_ss)(Shape, double ds, In in, Out out);
  void (*diff_thth)(Shape, double dtheta, double jump, In in, Out out);

  // Real DFT of every s-row. Coefficient layout per row:
  //   [a_0, a_1, b_1, a_2, b_2, ..., a_{N/2-1}, b_{N/2-1}, a_{N/2}]
  // with f_j = a_0 + sum_k (a_k cos k theta_j + b_k sin k theta_j) + a_{N/2}(-1)^j.
  void (*dft_forward)(Shape, In in, Out out);
  void (*dft_inverse)(Shape, In in, Out out);

  // Per Fourier mode m (column m of the coefficient array) solve
  //   (v_{i-1} - 2 v_i + v_{i+1})/ds^2 - lambda_m v_i = forcing_i
  // at interior rows with v_0 = lo[m], v_{n_s-1} = hi[m].
  void (*dirichlet_modes)(Shape, double ds, double dtheta, In forcing, In lo, In hi, Out out);

  // Same operator with ghost-node Neumann rows, d_s v = slope_lo[m] at s_min and
  // slope_hi[m] at s_max. Modes with lambda_m = 0 are pinned with v_0 = 0.
  void (*neumann_modes)(Shape, double ds, double dtheta, In forcing, In slope_lo, In slope_hi,
                        Out out);

  // Normal equations of the discrete gradient fit
  //   min sum_i t_i [ |D_s phi - q|^2 + |D_theta phi - w|^2 ]
  // per mode: (D_s^T T D_s + sigma_m^2 T) phi = rhs, sigma_m = sin(k dtheta)/dtheta.
  // Modes with sigma_m = 0 are pinned with phi_0 = 0.
  void (*gradient_fit_modes)(Shape, double ds, double dtheta, In rhs, Out out);
};

enum class Backend { reference, openmp };

const KernelSet& reference_kernels();
const KernelSet& openmp_kernels();
const KernelSet& kernels(Backend backend);

/// Backend used by the grid operators and solvers (openmp unless changed).
const KernelSet& active();
void set_backend(Backend backend);
Backend backend();

/// Applies the ANNULAB_THREADS cap, if set. Returns the resulting max thread count.
int configure_threads_from_env();
int max_threads();

/// Wavenumber k of coefficient slot m in the layout above.
std::size_t wavenumber(std::size_t m, std::size_t n_theta);
/// Eigenvalue of minus the compact periodic second difference: 4 sin^2(k dt/2)/dt^2.
double compact_eigenvalue(std::size_t k, double dtheta);
/// Eigenvalue of D_theta^T D_theta for the centered first difference: sin^2(k dt)/dt^2.
double centered_eigenvalue(std::size_t k, double dtheta);

}  // namespace annulab::kernels
