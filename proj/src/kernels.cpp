#include "surfflow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace surfflow::kernels {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;

inline double periodic_delta(double a, double b) {
  double d = std::fabs(a - b);
  return d > kPi ? kTwoPi - d : d;
}
}  // namespace

void axpby(std::span<double> out, std::span<const double> a, double alpha,
           std::span<const double> b) {
  const std::ptrdiff_t n = std::ptrdiff_t(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] + alpha * b[i];
}

void axpby_serial(std::span<double> out, std::span<const double> a, double alpha,
                  std::span<const double> b) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + alpha * b[i];
}

void mul(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  const std::ptrdiff_t n = std::ptrdiff_t(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_serial(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void mul3(std::span<double> out, std::span<const double> a, std::span<const double> b,
          std::span<const double> c) {
  const std::ptrdiff_t n = std::ptrdiff_t(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i] * c[i];
}

void mul3_serial(std::span<double> out, std::span<const double> a, std::span<const double> b,
                 std::span<const double> c) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i] * c[i];
}

void scale(std::span<double> out, double s, std::span<const double> a) {
  const std::ptrdiff_t n = std::ptrdiff_t(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = s * a[i];
}

void scale_serial(std::span<double> out, double s, std::span<const double> a) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a[i];
}

double dot_sum(std::span<const double> a, std::span<const double> w) {
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  const std::size_t nchunks = std::min(kSumChunks, n);
  std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(nchunks); ++c) {
    const std::size_t lo = std::size_t(c) * n / nchunks;
    const std::size_t hi = std::size_t(c + 1) * n / nchunks;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * w[i];
    partial[c] = s;
  }
  // fixed-order combine keeps the result thread-count independent
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double dot_sum_serial(std::span<const double> a, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * w[i];
  return s;
}

double max_abs(std::span<const double> a) {
  const std::ptrdiff_t n = std::ptrdiff_t(a.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

double max_abs_serial(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

double min_val(std::span<const double> a) {
  const std::ptrdiff_t n = std::ptrdiff_t(a.size());
  double m = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::min(m, a[i]);
  return m;
}

double min_val_serial(std::span<const double> a) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : a) m = std::min(m, x);
  return m;
}

void gemv(std::span<double> y, std::span<const double> a_rowmajor, std::size_t rows,
          std::size_t cols, std::span<const double> x) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < std::ptrdiff_t(rows); ++r) {
    const double* row = a_rowmajor.data() + std::size_t(r) * cols;
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

void gemv_serial(std::span<double> y, std::span<const double> a_rowmajor, std::size_t rows,
                 std::size_t cols, std::span<const double> x) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = a_rowmajor.data() + r * cols;
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

namespace {

inline double pair_ratio(double fi, double fj, double dist, double alpha) {
  return std::fabs(fi - fj) / std::pow(dist, alpha);
}

// shared pair scan body; `Parallel` toggles the omp pragma at compile time
template <bool Parallel>
double holder_pair_sup_impl(std::span<const double> f, int dim, int n, double alpha,
                            double radius, int stride) {
  const double h = kTwoPi / n;
  double sup = 0.0;
  if (dim == 1) {
#pragma omp parallel for schedule(static) reduction(max : sup) if (Parallel)
    for (std::ptrdiff_t i = 0; i < n; i += stride) {
      for (int j = int(i) + 1; j < n; ++j) {
        const double dist = periodic_delta(i * h, j * h);
        if (dist <= 0.0 || dist >= radius) continue;
        sup = std::max(sup, pair_ratio(f[i], f[j], dist, alpha));
      }
    }
    return sup;
  }
  const std::ptrdiff_t total = std::ptrdiff_t(n) * n;
#pragma omp parallel for schedule(static) reduction(max : sup) if (Parallel)
  for (std::ptrdiff_t p = 0; p < total; p += stride) {
    const int pi = int(p / n), pj = int(p % n);
    for (std::ptrdiff_t q = p + 1; q < total; ++q) {
      const int qi = int(q / n), qj = int(q % n);
      const double dx = periodic_delta(pi * h, qi * h);
      const double dy = periodic_delta(pj * h, qj * h);
      const double dist = std::sqrt(dx * dx + dy * dy);
      if (dist <= 0.0 || dist >= radius) continue;
      sup = std::max(sup, pair_ratio(f[p], f[q], dist, alpha));
    }
  }
  return sup;
}

}  // namespace

double holder_pair_sup(std::span<const double> f, int dim, int n, double alpha, double radius,
                       int stride) {
  return holder_pair_sup_impl<true>(f, dim, n, alpha, radius, stride);
}

double holder_pair_sup_serial(std::span<const double> f, int dim, int n, double alpha,
                              double radius, int stride) {
  return holder_pair_sup_impl<false>(f, dim, n, alpha, radius, stride);
}

}  // namespace surfflow::kernels
