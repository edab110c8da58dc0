// Benchmark of the OpenMP kernels against their serial reference
// implementations, plus one end-to-end right-hand-side assembly.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "surfflow/kernels.hpp"
#include "surfflow/pde.hpp"
#include "surfflow/spectral.hpp"

using namespace surfflow;

namespace {

using Clock = std::chrono::steady_clock;

double time_of(const std::function<void()>& body, int reps) {
  body();  // warm up
  const auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) body();
  const auto t1 = Clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dis(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dis(gen);
  return v;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s %12.3e s %12.3e s %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %14s %14s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    const std::size_t n = 1 << 20;
    const auto a = random_vec(n, 1), b = random_vec(n, 2), c = random_vec(n, 3);
    std::vector<double> out(n);
    report("mul3 (1M)",
           time_of([&] { kernels::mul3_serial(out, a, b, c); }, 50),
           time_of([&] { kernels::mul3(out, a, b, c); }, 50));
    report("dot_sum (1M)",
           time_of([&] { (void)kernels::dot_sum_serial(a, b); }, 50),
           time_of([&] { (void)kernels::dot_sum(a, b); }, 50));
    report("max_abs (1M)",
           time_of([&] { (void)kernels::max_abs_serial(a); }, 50),
           time_of([&] { (void)kernels::max_abs(a); }, 50));
  }

  {
    const std::size_t rows = 2048, cols = 2048;
    const auto m = random_vec(rows * cols, 11);
    const auto x = random_vec(cols, 12);
    std::vector<double> y(rows);
    report("gemv (2048x2048)",
           time_of([&] { kernels::gemv_serial(y, m, rows, cols, x); }, 20),
           time_of([&] { kernels::gemv(y, m, rows, cols, x); }, 20));
  }

  {
    const int n = 192;
    const auto f = random_vec(std::size_t(n) * n, 21);
    report("holder pairs (192^2 grid)",
           time_of([&] { (void)kernels::holder_pair_sup_serial(f, 2, n, 0.5, 1.0, 4); }, 3),
           time_of([&] { (void)kernels::holder_pair_sup(f, 2, n, 0.5, 1.0, 4); }, 3));
  }

  {
    const auto surface = build_reference(SurfaceKind::Torus, {{"R", 2.0}, {"r", 0.5}});
    const auto G = EnergyDensity::exponential();
    Grid grid(2, 48);
    ScalarField rho(grid), u(grid, 1.0);
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j)
        rho.v[grid.index(i, j)] = 0.05 * std::sin(grid.coord(i)) * std::cos(grid.coord(j));
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double serial = time_of([&] { (void)system_rhs(surface, G, rho, u); }, 10);
    omp_set_num_threads(saved);
    const double parallel = time_of([&] { (void)system_rhs(surface, G, rho, u); }, 10);
    report("system rhs (torus 48^2)", serial, parallel);
  }

  return 0;
}
