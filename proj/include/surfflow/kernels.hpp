#pragma once

#include <cstddef>
#include <span>

namespace surfflow::kernels {

// Data-parallel inner loops used across the solver. Each kernel has an
// OpenMP implementation (the default used by the library) and a plain serial
// reference implementation kept for testing and benchmarking against it.
//
// Reductions that sum floating-point values use a fixed chunk decomposition
// so the result is bitwise identical no matter how many threads run the loop
// (series.csv must byte-reproduce across runs).

inline constexpr std::size_t kSumChunks = 256;

// out[i] = a[i] + alpha*b[i]
void axpby(std::span<double> out, std::span<const double> a, double alpha,
           std::span<const double> b);
void axpby_serial(std::span<double> out, std::span<const double> a, double alpha,
                  std::span<const double> b);

// out[i] = a[i]*b[i]
void mul(std::span<double> out, std::span<const double> a, std::span<const double> b);
void mul_serial(std::span<double> out, std::span<const double> a, std::span<const double> b);

// out[i] = a[i]*b[i]*c[i]
void mul3(std::span<double> out, std::span<const double> a, std::span<const double> b,
          std::span<const double> c);
void mul3_serial(std::span<double> out, std::span<const double> a, std::span<const double> b,
                 std::span<const double> c);

// out[i] = s*a[i]
void scale(std::span<double> out, double s, std::span<const double> a);
void scale_serial(std::span<double> out, double s, std::span<const double> a);

// sum_i a[i]*w[i], deterministic chunked accumulation
double dot_sum(std::span<const double> a, std::span<const double> w);
double dot_sum_serial(std::span<const double> a, std::span<const double> w);

double max_abs(std::span<const double> a);
double max_abs_serial(std::span<const double> a);

double min_val(std::span<const double> a);
double min_val_serial(std::span<const double> a);

// y = A x, A row-major rows x cols
void gemv(std::span<double> y, std::span<const double> a_rowmajor, std::size_t rows,
          std::size_t cols, std::span<const double> x);
void gemv_serial(std::span<double> y, std::span<const double> a_rowmajor, std::size_t rows,
                 std::size_t cols, std::span<const double> x);

// sup over index pairs (i,j), i<j, with 0 < dist(i,j) < radius, of
// |f[i]-f[j]| / dist(i,j)^alpha.  dist is the flat periodic distance on
// [0,2pi)^dim; points per dimension n; stride subsamples the first index of
// each pair (stride 1 = all pairs).
double holder_pair_sup(std::span<const double> f, int dim, int n, double alpha, double radius,
                       int stride);
double holder_pair_sup_serial(std::span<const double> f, int dim, int n, double alpha,
                              double radius, int stride);

}  // namespace surfflow::kernels
