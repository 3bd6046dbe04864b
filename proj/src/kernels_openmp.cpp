// OpenMP kernels. Loops are split over s-rows (stencils, DFT) or over Fourier
// modes (s-direction solves). No reductions cross iterations, so results are
// bitwise independent of the thread count.

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include <omp.h>

#include "kernels_common.hpp"

namespace annulab::kernels {
namespace {

using detail::first_derivative_row;

using Index = std::ptrdiff_t;

void diff_s(Shape sh, double ds, In in, Out out) {
  const Index ns = static_cast<Index>(sh.n_s);
  const std::size_t nt = sh.n_theta;
  const double c = 1.0 / (2.0 * ds);
#pragma omp parallel for schedule(static)
  for (Index ii = 0; ii < ns; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double* o = out.data() + i * nt;
    if (i == 0) {
      const double* f0 = in.data();
      for (std::size_t j = 0; j < nt; ++j) o[j] = (-3.0 * f0[j] + 4.0 * f0[nt + j] - f0[2 * nt + j]) * c;
    } else if (i + 1 == sh.n_s) {
      const double* fn = in.data() + i * nt;
      for (std::size_t j = 0; j < nt; ++j)
        o[j] = (3.0 * fn[j] - 4.0 * fn[j - nt] + fn[j - 2 * nt]) * c;
    } else {
      const double* lo = in.data() + (i - 1) * nt;
      const double* hi = in.data() + (i + 1) * nt;
      for (std::size_t j = 0; j < nt; ++j) o[j] = (hi[j] - lo[j]) * c;
    }
  }
}

void diff_ss(Shape sh, double ds, In in, Out out) {
  const Index ns = static_cast<Index>(sh.n_s);
  const std::size_t nt = sh.n_theta;
  const double c = 1.0 / (ds * ds);
#pragma omp parallel for schedule(static)
  for (Index ii = 0; ii < ns; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double* o = out.data() + i * nt;
    if (i == 0) {
      const double* f = in.data();
      for (std::size_t j = 0; j < nt; ++j)
        o[j] = (2.0 * f[j] - 5.0 * f[nt + j] + 4.0 * f[2 * nt + j] - f[3 * nt + j]) * c;
    } else if (i + 1 == sh.n_s) {
      const double* f = in.data() + i * nt;
      for (std::size_t j = 0; j < nt; ++j)
        o[j] = (2.0 * f[j] - 5.0 * f[j - nt] + 4.0 * f[j - 2 * nt] - f[j - 3 * nt]) * c;
    } else {
      const double* lo = in.data() + (i - 1) * nt;
      const double* mid = in.data() + i * nt;
      const double* hi = in.data() + (i + 1) * nt;
      for (std::size_t j = 0; j < nt; ++j) o[j] = (lo[j] - 2.0 * mid[j] + hi[j]) * c;
    }
  }
}

void diff_theta(Shape sh, double dt, double jump, In in, Out out) {
  const Index ns = static_cast<Index>(sh.n_s);
  const std::size_t nt = sh.n_theta;
  const double c = 1.0 / (2.0 * dt);
#pragma omp parallel for schedule(static)
  for (Index ii = 0; ii < ns; ++ii) {
    const double* f = in.data() + static_cast<std::size_t>(ii) * nt;
    double* o = out.data() + static_cast<std::size_t>(ii) * nt;
    o[0] = (f[1] - (f[nt - 1] - jump)) * c;
    for (std::size_t j = 1; j + 1 < nt; ++j) o[j] = (f[j + 1] - f[j - 1]) * c;
    o[nt - 1] = ((f[0] + jump) - f[nt - 2]) * c;
  }
}

void diff_thth(Shape sh, double dt, double jump, In in, Out out) {
  const Index ns = static_cast<Index>(sh.n_s);
  const std::size_t nt = sh.n_theta;
  const double c = 1.0 / (dt * dt);
#pragma omp parallel for schedule(static)
  for (Index ii = 0; ii < ns; ++ii) {
    const double* f = in.data() + static_cast<std::size_t>(ii) * nt;
    double* o = out.data() + static_cast<std::size_t>(ii) * nt;
    o[0] = (f[1] - 2.0 * f[0] + (f[nt - 1] - jump)) * c;
    for (std::size_t j = 1; j + 1 < nt; ++j) o[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) * c;
    o[nt - 1] = ((f[0] + jump) - 2.0 * f[nt - 1] + f[nt - 2]) * c;
  }
}

// basis[m * n + j]: value of coefficient slot m's basis function at node j,
// from one cos/sin table indexed by (k*j) mod n.
class DftTable {
 public:
  explicit DftTable(std::size_t n) : n_(n), basis_(n * n) {
    std::vector<double> cos_t(n), sin_t(n);
    for (std::size_t p = 0; p < n; ++p) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(n);
      cos_t[p] = std::cos(angle);
      sin_t[p] = std::sin(angle);
    }
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t k = wavenumber(m, n);
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t p = (k * j) % n;
        double v;
        if (m == 0) v = 1.0;
        else if (m == n - 1) v = (j % 2 == 0) ? 1.0 : -1.0;
        else v = (m % 2 == 1) ? cos_t[p] : sin_t[p];
        basis_[m * n + j] = v;
      }
    }
  }
  std::size_t size() const { return n_; }
  const double* row(std::size_t m) const { return basis_.data() + m * n_; }

 private:
  std::size_t n_;
  std::vector<double> basis_;
};

const DftTable& table_for(std::size_t n) {
  // One table per thread keeps lookup lock-free; sizes rarely change.
  thread_local std::vector<DftTable> cache;
  for (const auto& t : cache)
    if (t.size() == n) return t;
  cache.emplace_back(n);
  return cache.back();
}

void dft_forward(Shape sh, In in, Out out) {
  const std::size_t n = sh.n_theta;
  const DftTable& table = table_for(n);
  const Index ns = static_cast<Index>(sh.n_s);
#pragma omp parallel for schedule(static) firstprivate(n)
  for (Index ii = 0; ii < ns; ++ii) {
    const double* f = in.data() + static_cast<std::size_t>(ii) * n;
    double* o = out.data() + static_cast<std::size_t>(ii) * n;
    for (std::size_t m = 0; m < n; ++m) {
      const double* b = table.row(m);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += f[j] * b[j];
      o[m] = acc * ((m == 0 || m == n - 1) ? 1.0 / n : 2.0 / n);
    }
  }
}

void dft_inverse(Shape sh, In in, Out out) {
  const std::size_t n = sh.n_theta;
  const DftTable& table = table_for(n);
  const Index ns = static_cast<Index>(sh.n_s);
#pragma omp parallel for schedule(static)
  for (Index ii = 0; ii < ns; ++ii) {
    const double* c = in.data() + static_cast<std::size_t>(ii) * n;
    double* o = out.data() + static_cast<std::size_t>(ii) * n;
    for (std::size_t j = 0; j < n; ++j) o[j] = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double* b = table.row(m);
      const double cm = c[m];
      for (std::size_t j = 0; j < n; ++j) o[j] += cm * b[j];
    }
  }
}

// Thomas algorithm; sub[0] and sup[n-1] are ignored. Overwrites rhs with the solution.
void thomas(std::vector<double>& sub, std::vector<double>& diag, std::vector<double>& sup,
            std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

void dirichlet_modes(Shape sh, double ds, double dt, In forcing, In lo, In hi, Out out) {
  const std::size_t n = sh.n_s;
  const std::size_t nt = sh.n_theta;
  const double h2 = 1.0 / (ds * ds);
  const Index modes = static_cast<Index>(nt);
#pragma omp parallel for schedule(static)
  for (Index mm = 0; mm < modes; ++mm) {
    const auto m = static_cast<std::size_t>(mm);
    const double lambda = compact_eigenvalue(wavenumber(m, nt), dt);
    std::vector<double> sub(n, h2), diag(n, -2.0 * h2 - lambda), sup(n, h2), rhs(n);
    diag[0] = 1.0;
    sup[0] = 0.0;
    rhs[0] = lo[m];
    diag[n - 1] = 1.0;
    sub[n - 1] = 0.0;
    rhs[n - 1] = hi[m];
    for (std::size_t i = 1; i + 1 < n; ++i) rhs[i] = forcing[i * nt + m];
    thomas(sub, diag, sup, rhs);
    for (std::size_t i = 0; i < n; ++i) out[i * nt + m] = rhs[i];
  }
}

void neumann_modes(Shape sh, double ds, double dt, In forcing, In slope_lo, In slope_hi, Out out) {
  const std::size_t n = sh.n_s;
  const std::size_t nt = sh.n_theta;
  const double h2 = 1.0 / (ds * ds);
  const Index modes = static_cast<Index>(nt);
#pragma omp parallel for schedule(static)
  for (Index mm = 0; mm < modes; ++mm) {
    const auto m = static_cast<std::size_t>(mm);
    const std::size_t k = wavenumber(m, nt);
    const double lambda = compact_eigenvalue(k, dt);
    std::vector<double> sub(n, h2), diag(n, -2.0 * h2 - lambda), sup(n, h2), rhs(n);
    for (std::size_t i = 1; i + 1 < n; ++i) rhs[i] = forcing[i * nt + m];
    if (k == 0) {
      diag[0] = 1.0;
      sup[0] = 0.0;
      rhs[0] = 0.0;
    } else {
      sup[0] = 2.0 * h2;
      rhs[0] = forcing[m] + 2.0 * slope_lo[m] / ds;
    }
    sub[n - 1] = 2.0 * h2;
    rhs[n - 1] = forcing[(n - 1) * nt + m] - 2.0 * slope_hi[m] / ds;
    thomas(sub, diag, sup, rhs);
    for (std::size_t i = 0; i < n; ++i) out[i * nt + m] = rhs[i];
  }
}

// Symmetric pentadiagonal matrix in band form: band[d][i] = M(i, i+d), d = 0..2.
struct Band5 {
  std::vector<double> band[3];
  explicit Band5(std::size_t n) {
    for (auto& b : band) b.assign(n, 0.0);
  }
};

Band5 fit_operator(std::size_t n, double ds) {
  Band5 m(n);
  const double scale = 1.0 / (2.0 * ds);
  for (std::size_t r = 0; r < n; ++r) {
    const double t = (r == 0 || r + 1 == n) ? 0.5 : 1.0;
    const auto row = first_derivative_row(r, n);
    for (auto p : row)
      for (auto q : row)
        if (q.col >= p.col) m.band[q.col - p.col][p.col] += p.coef * scale * t * q.coef * scale;
  }
  return m;
}

// Banded Cholesky (bandwidth 2), solves in place.
void band_cholesky_solve(Band5 m, std::vector<double>& x) {
  const std::size_t n = x.size();
  // l[d][i] = L(i, i-d)
  std::vector<double> l[3];
  for (auto& v : l) v.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 2; d >= 1; --d) {
      if (i < d) continue;
      const std::size_t j = i - d;
      double acc = m.band[d][j];
      // sum_k L(i,k) L(j,k) for k < j, k >= i-2
      for (std::size_t k = (i >= 2 ? i - 2 : 0); k < j; ++k) acc -= l[i - k][i] * l[j - k][j];
      l[d][i] = acc / l[0][j];
    }
    double diag = m.band[0][i];
    for (std::size_t d = 1; d <= 2 && d <= i; ++d) diag -= l[d][i] * l[d][i];
    l[0][i] = std::sqrt(diag);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double acc = x[i];
    for (std::size_t d = 1; d <= 2 && d <= i; ++d) acc -= l[d][i] * x[i - d];
    x[i] = acc / l[0][i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double acc = x[i];
    for (std::size_t d = 1; d <= 2 && i + d < n; ++d) acc -= l[d][i + d] * x[i + d];
    x[i] = acc / l[0][i];
  }
}

void gradient_fit_modes(Shape sh, double ds, double dt, In rhs, Out out) {
  const std::size_t n = sh.n_s;
  const std::size_t nt = sh.n_theta;
  const Band5 base = fit_operator(n, ds);
  const Index modes = static_cast<Index>(nt);
#pragma omp parallel for schedule(static)
  for (Index mm = 0; mm < modes; ++mm) {
    const auto m = static_cast<std::size_t>(mm);
    const std::size_t k = wavenumber(m, nt);
    Band5 a = base;
    const double sigma2 = centered_eigenvalue(k, dt);
    for (std::size_t i = 0; i < n; ++i) a.band[0][i] += sigma2 * ((i == 0 || i + 1 == n) ? 0.5 : 1.0);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i * nt + m];
    if (detail::is_pinned_fit_mode(k, nt)) {
      a.band[0][0] = 1.0;
      a.band[1][0] = 0.0;
      a.band[2][0] = 0.0;
      x[0] = 0.0;
    }
    band_cholesky_solve(std::move(a), x);
    for (std::size_t i = 0; i < n; ++i) out[i * nt + m] = x[i];
  }
}

}  // namespace

const KernelSet& openmp_kernels() {
  static const KernelSet set{
      "openmp",    diff_s,          diff_theta,    diff_ss,           diff_thth, dft_forward,
      dft_inverse, dirichlet_modes, neumann_modes, gradient_fit_modes,
  };
  return set;
}

int configure_threads_from_env() {
  if (const char* env = std::getenv("ANNULAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) omp_set_num_threads(cap);
    } catch (const std::exception&) {
      // Ignore malformed values; the OpenMP default stays in effect.
    }
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace annulab::kernels
