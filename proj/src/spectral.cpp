#include "surfflow/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "surfflow/kernels.hpp"

namespace surfflow {

namespace {

// One reusable r2c/c2r plan pair per line length. FFTW plan creation is not
// thread-safe, so creation is serialized; execution on caller-owned arrays
// goes through the new-array execute interface.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  int n = 0;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  const PlanPair& get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    PlanPair p;
    p.n = n;
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    // FFTW_UNALIGNED: the plans execute on caller-owned arrays whose
    // alignment is not under our control
    p.fwd = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_c2r_1d(n, out, in, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

enum class Order { First, Second };

// In-place spectral derivative of one periodic line of length n.
void derive_line(double* line, int n, Order order) {
  const auto& plans = PlanCache::instance().get(n);
  const int nc = n / 2 + 1;
  std::vector<double> buf(std::size_t(2) * nc);
  auto* spec = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft_r2c(plans.fwd, line, spec);
  const double ninv = 1.0 / n;
  for (int k = 0; k < nc; ++k) {
    double re = spec[k][0] * ninv;
    double im = spec[k][1] * ninv;
    if (k == n / 2) {  // Nyquist derivative zeroed
      spec[k][0] = 0.0;
      spec[k][1] = 0.0;
    } else if (order == Order::First) {
      spec[k][0] = -k * im;
      spec[k][1] = k * re;
    } else {
      spec[k][0] = -double(k) * k * re;
      spec[k][1] = -double(k) * k * im;
    }
  }
  fftw_execute_dft_c2r(plans.bwd, spec, line);
}

// 2nd-order centered differences on the periodic line.
void derive_line_fd2(double* line, int n, Order order) {
  const double h = kTwoPi / n;
  std::vector<double> src(line, line + n);
  if (order == Order::First) {
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n, im = (i + n - 1) % n;
      line[i] = (src[ip] - src[im]) / (2.0 * h);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n, im = (i + n - 1) % n;
      line[i] = (src[ip] - 2.0 * src[i] + src[im]) / (h * h);
    }
  }
}

ScalarField derive(const ScalarField& f, int axis, Order order) {
  const Grid& g = f.grid;
  if (axis < 0 || axis >= g.dim) throw std::invalid_argument("diff: axis out of range");
  ScalarField out = f;
  const int n = g.n;
  auto apply = [&](double* line) {
    if (g.scheme == DiffScheme::Spectral)
      derive_line(line, n, order);
    else
      derive_line_fd2(line, n, order);
  };
  if (g.dim == 1) {
    apply(out.v.data());
    return out;
  }
  std::vector<double> line(n);
  if (axis == 1) {  // contiguous rows
    for (int i = 0; i < n; ++i) apply(out.v.data() + std::size_t(i) * n);
  } else {  // gather/scatter columns
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) line[i] = out.v[std::size_t(i) * n + j];
      apply(line.data());
      for (int i = 0; i < n; ++i) out.v[std::size_t(i) * n + j] = line[i];
    }
  }
  return out;
}

}  // namespace

ScalarField diff(const ScalarField& f, int axis) { return derive(f, axis, Order::First); }

ScalarField diff2(const ScalarField& f, int axis) { return derive(f, axis, Order::Second); }

ScalarField diff_ij(const ScalarField& f, int i, int j) {
  if (i == j) return diff2(f, i);
  return diff(diff(f, j), i);
}

double integrate(const ScalarField& f, const ScalarField& weight) {
  const double hd = std::pow(f.grid.spacing(), f.grid.dim);
  return kernels::dot_sum(f.v, weight.v) * hd;
}

double integrate(const ScalarField& f) {
  ScalarField one(f.grid, 1.0);
  return integrate(f, one);
}

double c1_norm(const ScalarField& f) {
  double m = f.max_abs();
  for (int axis = 0; axis < f.grid.dim; ++axis) m = std::max(m, diff(f, axis).max_abs());
  return m;
}

}  // namespace surfflow
