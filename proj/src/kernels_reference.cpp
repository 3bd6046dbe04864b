// Serial reference kernels. Written for obviousness, not speed: trig values are
// evaluated directly and every mode solve is a dense Gaussian elimination.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kernels_common.hpp"

namespace annulab::kernels {
namespace {

using detail::first_derivative_row;
using detail::second_derivative_row;

double wrapped(In row, std::size_t n, std::ptrdiff_t j, double jump) {
  const auto nn = static_cast<std::ptrdiff_t>(n);
  if (j < 0) return row[static_cast<std::size_t>(j + nn)] - jump;
  if (j >= nn) return row[static_cast<std::size_t>(j - nn)] + jump;
  return row[static_cast<std::size_t>(j)];
}

void diff_s(Shape sh, double ds, In in, Out out) {
  for (std::size_t i = 0; i < sh.n_s; ++i)
    for (std::size_t j = 0; j < sh.n_theta; ++j) {
      double acc = 0.0;
      for (auto e : first_derivative_row(i, sh.n_s)) acc += e.coef * in[e.col * sh.n_theta + j];
      out[i * sh.n_theta + j] = acc / (2.0 * ds);
    }
}

void diff_ss(Shape sh, double ds, In in, Out out) {
  for (std::size_t i = 0; i < sh.n_s; ++i)
    for (std::size_t j = 0; j < sh.n_theta; ++j) {
      double acc = 0.0;
      for (auto e : second_derivative_row(i, sh.n_s)) acc += e.coef * in[e.col * sh.n_theta + j];
      out[i * sh.n_theta + j] = acc / (ds * ds);
    }
}

void diff_theta(Shape sh, double dt, double jump, In in, Out out) {
  for (std::size_t i = 0; i < sh.n_s; ++i) {
    In row = in.subspan(i * sh.n_theta, sh.n_theta);
    for (std::size_t j = 0; j < sh.n_theta; ++j) {
      const auto jj = static_cast<std::ptrdiff_t>(j);
      out[i * sh.n_theta + j] =
          (wrapped(row, sh.n_theta, jj + 1, jump) - wrapped(row, sh.n_theta, jj - 1, jump)) /
          (2.0 * dt);
    }
  }
}

void diff_thth(Shape sh, double dt, double jump, In in, Out out) {
  for (std::size_t i = 0; i < sh.n_s; ++i) {
    In row = in.subspan(i * sh.n_theta, sh.n_theta);
    for (std::size_t j = 0; j < sh.n_theta; ++j) {
      const auto jj = static_cast<std::ptrdiff_t>(j);
      out[i * sh.n_theta + j] = (wrapped(row, sh.n_theta, jj + 1, jump) - 2.0 * row[j] +
                                 wrapped(row, sh.n_theta, jj - 1, jump)) /
                                (dt * dt);
    }
  }
}

// Basis function of coefficient slot m evaluated at node j.
double basis(std::size_t m, std::size_t j, std::size_t n) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (m == 0) return 1.0;
  if (m == n - 1) return std::cos(std::numbers::pi * static_cast<double>(j));
  const std::size_t k = wavenumber(m, n);
  const double angle = two_pi * static_cast<double>(k) * static_cast<double>(j) /
                       static_cast<double>(n);
  return (m % 2 == 1) ? std::cos(angle) : std::sin(angle);
}

void dft_forward(Shape sh, In in, Out out) {
  const std::size_t n = sh.n_theta;
  for (std::size_t i = 0; i < sh.n_s; ++i)
    for (std::size_t m = 0; m < n; ++m) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += in[i * n + j] * basis(m, j, n);
      const double norm = (m == 0 || m == n - 1) ? 1.0 / n : 2.0 / n;
      out[i * n + m] = acc * norm;
    }
}

void dft_inverse(Shape sh, In in, Out out) {
  const std::size_t n = sh.n_theta;
  for (std::size_t i = 0; i < sh.n_s; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t m = 0; m < n; ++m) acc += in[i * n + m] * basis(m, j, n);
      out[i * n + j] = acc;
    }
}

// Dense Gaussian elimination with partial pivoting; matrix is row-major n x n.
std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0.0) throw std::runtime_error("singular mode system");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
    x[r] = acc / a[r * n + r];
  }
  return x;
}

void dirichlet_modes(Shape sh, double ds, double dt, In forcing, In lo, In hi, Out out) {
  const std::size_t n = sh.n_s;
  const double h2 = 1.0 / (ds * ds);
  for (std::size_t m = 0; m < sh.n_theta; ++m) {
    const double lambda = compact_eigenvalue(wavenumber(m, sh.n_theta), dt);
    std::vector<double> a(n * n, 0.0), b(n, 0.0);
    a[0] = 1.0;
    b[0] = lo[m];
    a[(n - 1) * n + (n - 1)] = 1.0;
    b[n - 1] = hi[m];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      a[i * n + i - 1] = h2;
      a[i * n + i] = -2.0 * h2 - lambda;
      a[i * n + i + 1] = h2;
      b[i] = forcing[i * sh.n_theta + m];
    }
    const auto x = dense_solve(std::move(a), std::move(b));
    for (std::size_t i = 0; i < n; ++i) out[i * sh.n_theta + m] = x[i];
  }
}

void neumann_modes(Shape sh, double ds, double dt, In forcing, In slope_lo, In slope_hi, Out out) {
  const std::size_t n = sh.n_s;
  const double h2 = 1.0 / (ds * ds);
  for (std::size_t m = 0; m < sh.n_theta; ++m) {
    const std::size_t k = wavenumber(m, sh.n_theta);
    const double lambda = compact_eigenvalue(k, dt);
    std::vector<double> a(n * n, 0.0), b(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      a[i * n + i - 1] = h2;
      a[i * n + i] = -2.0 * h2 - lambda;
      a[i * n + i + 1] = h2;
      b[i] = forcing[i * sh.n_theta + m];
    }
    if (k == 0) {
      a[0] = 1.0;
      b[0] = 0.0;
    } else {
      a[0] = -2.0 * h2 - lambda;
      a[1] = 2.0 * h2;
      b[0] = forcing[m] + 2.0 * slope_lo[m] / ds;
    }
    a[(n - 1) * n + (n - 2)] = 2.0 * h2;
    a[(n - 1) * n + (n - 1)] = -2.0 * h2 - lambda;
    b[n - 1] = forcing[(n - 1) * sh.n_theta + m] - 2.0 * slope_hi[m] / ds;
    const auto x = dense_solve(std::move(a), std::move(b));
    for (std::size_t i = 0; i < n; ++i) out[i * sh.n_theta + m] = x[i];
  }
}

void gradient_fit_modes(Shape sh, double ds, double dt, In rhs, Out out) {
  const std::size_t n = sh.n_s;
  // Dense D_s and trapezoid weights.
  std::vector<double> d(n * n, 0.0), t(n, 1.0);
  t.front() = t.back() = 0.5;
  for (std::size_t i = 0; i < n; ++i)
    for (auto e : first_derivative_row(i, n)) d[i * n + e.col] = e.coef / (2.0 * ds);
  for (std::size_t m = 0; m < sh.n_theta; ++m) {
    const std::size_t k = wavenumber(m, sh.n_theta);
    const double sigma2 = centered_eigenvalue(k, dt);
    std::vector<double> a(n * n, 0.0), b(n);
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) acc += d[r * n + p] * t[r] * d[r * n + q];
        a[p * n + q] = acc;
      }
      a[p * n + p] += sigma2 * t[p];
      b[p] = rhs[p * sh.n_theta + m];
    }
    if (detail::is_pinned_fit_mode(k, sh.n_theta)) {
      for (std::size_t q = 0; q < n; ++q) a[q] = a[q * n] = 0.0;
      a[0] = 1.0;
      b[0] = 0.0;
    }
    const auto x = dense_solve(std::move(a), std::move(b));
    for (std::size_t i = 0; i < n; ++i) out[i * sh.n_theta + m] = x[i];
  }
}

}  // namespace

const KernelSet& reference_kernels() {
  static const KernelSet set{
      "reference",   diff_s,          diff_theta,    diff_ss,           diff_thth, dft_forward,
      dft_inverse,   dirichlet_modes, neumann_modes, gradient_fit_modes,
  };
  return set;
}

}  // namespace annulab::kernels
