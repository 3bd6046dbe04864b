#include "annulab/kernels.hpp"

#include <atomic>
#include <cmath>

namespace annulab::kernels {
namespace {

std::atomic<Backend> current{Backend::openmp};

}  // namespace

const KernelSet& kernels(Backend b) {
  return b == Backend::reference ? reference_kernels() : openmp_kernels();
}

const KernelSet& active() { return kernels(current.load(std::memory_order_relaxed)); }

void set_backend(Backend b) { current.store(b, std::memory_order_relaxed); }

Backend backend() { return current.load(std::memory_order_relaxed); }

std::size_t wavenumber(std::size_t m, std::size_t n_theta) {
  if (m == 0) return 0;
  if (m + 1 == n_theta) return n_theta / 2;
  return (m + 1) / 2;
}

double compact_eigenvalue(std::size_t k, double dtheta) {
  const double h = std::sin(0.5 * static_cast<double>(k) * dtheta);
  return 4.0 * h * h / (dtheta * dtheta);
}

double centered_eigenvalue(std::size_t k, double dtheta) {
  const double h = std::sin(static_cast<double>(k) * dtheta);
  return h * h / (dtheta * dtheta);
}

}  // namespace annulab::kernels
