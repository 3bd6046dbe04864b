// Times the reference and openmp kernel backends on identical inputs and
// reports the largest disagreement between them.
//
//   bench_kernels [--grid 128x256] [--repeat 5]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "annulab/cli.hpp"
#include "annulab/grid.hpp"
#include "annulab/kernels.hpp"
#include "annulab/pde.hpp"

using namespace annulab;
namespace k = annulab::kernels;

namespace {

double seconds_per_call(const std::function<void()>& fn, int repeat) {
  fn();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < repeat; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / repeat;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void row(const char* name, double t_ref, double t_omp, double diff) {
  std::printf("%-20s %12.3e %12.3e %8.1fx %12.3e\n", name, t_ref, t_omp, t_ref / t_omp, diff);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reference vs openmp kernel timings"};
  std::string grid = "128x256";
  int repeat = 5;
  app.add_option("--grid", grid, "resolution NSxNTHETA");
  app.add_option("--repeat", repeat, "timed calls per kernel")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  k::configure_threads_from_env();
  const auto [n_s, n_theta] = parse_resolution(grid);
  const GridSpec g = make_grid(1.0, 2.0, n_s, n_theta);
  const k::Shape shape{n_s, n_theta};
  const std::size_t n = shape.size();

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> in(n), lo(n_theta), hi(n_theta);
  for (auto& x : in) x = unif(rng);
  for (auto& x : lo) x = unif(rng);
  for (auto& x : hi) x = unif(rng);

  const k::KernelSet& ref = k::reference_kernels();
  const k::KernelSet& omp = k::openmp_kernels();
  std::vector<double> out_ref(n), out_omp(n);

  std::printf("grid %s, %d threads, %d calls per kernel\n", grid.c_str(), k::max_threads(), repeat);
  std::printf("%-20s %12s %12s %9s %12s\n", "kernel", "reference s", "openmp s", "speedup", "max |diff|");

  auto compare = [&](const char* name, const std::function<void(const k::KernelSet&, std::vector<double>&)>& call) {
    const double t_ref = seconds_per_call([&] { call(ref, out_ref); }, repeat);
    const double t_omp = seconds_per_call([&] { call(omp, out_omp); }, repeat);
    row(name, t_ref, t_omp, max_diff(out_ref, out_omp));
  };

  const double ds = g.ds(), dt = g.dtheta();
  compare("diff_s", [&](const k::KernelSet& ks, std::vector<double>& o) { ks.diff_s(shape, ds, in, o); });
  compare("diff_theta", [&](const k::KernelSet& ks, std::vector<double>& o) { ks.diff_theta(shape, dt, 0.0, in, o); });
  compare("diff_ss", [&](const k::KernelSet& ks, std::vector<double>& o) { ks.diff_ss(shape, ds, in, o); });
  compare("diff_thth", [&](const k::KernelSet& ks, std::vector<double>& o) { ks.diff_thth(shape, dt, 0.0, in, o); });
  compare("dft_forward", [&](const k::KernelSet& ks, std::vector<double>& o) { ks.dft_forward(shape, in, o); });
  compare("dft_inverse", [&](const k::KernelSet& ks, std::vector<double>& o) { ks.dft_inverse(shape, in, o); });
  compare("dirichlet_modes",
          [&](const k::KernelSet& ks, std::vector<double>& o) { ks.dirichlet_modes(shape, ds, dt, in, lo, hi, o); });
  compare("neumann_modes",
          [&](const k::KernelSet& ks, std::vector<double>& o) { ks.neumann_modes(shape, ds, dt, in, lo, hi, o); });
  compare("gradient_fit_modes",
          [&](const k::KernelSet& ks, std::vector<double>& o) { ks.gradient_fit_modes(shape, ds, dt, in, o); });

  // End to end: a Dirichlet solve through the public solver under each backend.
  const ScalarField rhs = ScalarField::sample(g, [](double s, double t) { return std::sin(3 * t) * std::cosh(s); });
  ScalarField v_ref(g), v_omp(g);
  k::set_backend(k::Backend::reference);
  const double t_ref = seconds_per_call([&] { v_ref = poisson_dirichlet(rhs, 0.0, 0.0); }, repeat);
  k::set_backend(k::Backend::openmp);
  const double t_omp = seconds_per_call([&] { v_omp = poisson_dirichlet(rhs, 0.0, 0.0); }, repeat);
  row("poisson_dirichlet", t_ref, t_omp, (v_ref - v_omp).max_abs());
  return 0;
}
