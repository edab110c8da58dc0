#include "surfflow/linop.hpp"

#include <Eigen/Dense>

#include <map>
#include <mutex>

#include "surfflow/kernels.hpp"
#include "surfflow/spectral.hpp"

namespace surfflow {

namespace {

// 1-D differentiation matrices obtained by applying the spectral (or FD)
// derivative to the identity columns, so matrix and operator agree to
// rounding.  Cached per (n, scheme).
struct DiffMatrices {
  int n = 0;
  std::vector<double> D;   // first derivative, row-major
  std::vector<double> D2;  // second derivative
};

const DiffMatrices& diff_matrices(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, DiffMatrices> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(grid.n, int(grid.scheme));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  DiffMatrices m;
  m.n = grid.n;
  m.D.assign(std::size_t(grid.n) * grid.n, 0.0);
  m.D2.assign(std::size_t(grid.n) * grid.n, 0.0);
  Grid line(1, grid.n, grid.scheme);
  for (int j = 0; j < grid.n; ++j) {
    ScalarField e(line, 0.0);
    e.v[j] = 1.0;
    const ScalarField d1 = diff(e, 0);
    const ScalarField d2 = diff2(e, 0);
    for (int i = 0; i < grid.n; ++i) {
      m.D[std::size_t(i) * grid.n + j] = d1.v[i];
      m.D2[std::size_t(i) * grid.n + j] = d2.v[i];
    }
  }
  return cache.emplace(key, std::move(m)).first->second;
}

}  // namespace

DenseOperator::DenseOperator(const Grid& grid)
    : grid_(grid), a_(grid.size() * grid.size(), 0.0) {}

void DenseOperator::add_second_order(const std::array<ScalarField, 3>& coeff) {
  const auto& dm = diff_matrices(grid_);
  const int n = grid_.n;
  const std::size_t N = size();
  if (grid_.dim == 1) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < std::ptrdiff_t(N); ++r) {
      const double c = coeff[0].v[r];
      double* row = a_.data() + std::size_t(r) * N;
      const double* drow = dm.D2.data() + std::size_t(r) * n;
      for (std::size_t col = 0; col < N; ++col) row[col] += c * drow[col];
    }
    return;
  }
  // d=2 Kronecker blocks: (D1 D1)[r][c] = D2[r1][c1] delta_{r2 c2},
  // (D2 D2)[r][c] = delta_{r1 c1} D2[r2][c2], (D1 D2)[r][c] = D[r1][c1] D[r2][c2];
  // the mixed term enters twice (the operators commute).
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < std::ptrdiff_t(N); ++r) {
    const int r1 = int(r / n), r2 = int(r % n);
    const double c11 = coeff[0].v[r], c12 = coeff[1].v[r], c22 = coeff[2].v[r];
    double* row = a_.data() + std::size_t(r) * N;
    const double* D2r1 = dm.D2.data() + std::size_t(r1) * n;
    const double* D2r2 = dm.D2.data() + std::size_t(r2) * n;
    const double* Dr1 = dm.D.data() + std::size_t(r1) * n;
    const double* Dr2 = dm.D.data() + std::size_t(r2) * n;
    for (int c1 = 0; c1 < n; ++c1) {
      double* rowblock = row + std::size_t(c1) * n;
      const double d11 = c11 * D2r1[c1];
      const double dmix = 2.0 * c12 * Dr1[c1];
      for (int c2 = 0; c2 < n; ++c2) rowblock[c2] += dmix * Dr2[c2];
      rowblock[r2] += d11;
    }
    double* diagblock = row + std::size_t(r1) * n;
    for (int c2 = 0; c2 < n; ++c2) diagblock[c2] += c22 * D2r2[c2];
  }
}

void DenseOperator::add_first_order(int axis, const ScalarField& coeff) {
  const auto& dm = diff_matrices(grid_);
  const int n = grid_.n;
  const std::size_t N = size();
  if (grid_.dim == 1) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < std::ptrdiff_t(N); ++r) {
      const double c = coeff.v[r];
      double* row = a_.data() + std::size_t(r) * N;
      const double* drow = dm.D.data() + std::size_t(r) * n;
      for (std::size_t col = 0; col < N; ++col) row[col] += c * drow[col];
    }
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < std::ptrdiff_t(N); ++r) {
    const int r1 = int(r / n), r2 = int(r % n);
    const double c = coeff.v[r];
    double* row = a_.data() + std::size_t(r) * N;
    if (axis == 0) {
      const double* Dr1 = dm.D.data() + std::size_t(r1) * n;
      for (int c1 = 0; c1 < n; ++c1) row[std::size_t(c1) * n + r2] += c * Dr1[c1];
    } else {
      const double* Dr2 = dm.D.data() + std::size_t(r2) * n;
      double* diagblock = row + std::size_t(r1) * n;
      for (int c2 = 0; c2 < n; ++c2) diagblock[c2] += c * Dr2[c2];
    }
  }
}

void DenseOperator::add_diagonal(const ScalarField& coeff) {
  const std::size_t N = size();
  for (std::size_t r = 0; r < N; ++r) a_[r * N + r] += coeff.v[r];
}

ScalarField DenseOperator::apply(const ScalarField& x) const {
  ScalarField out(grid_);
  kernels::gemv(out.v, a_, size(), size(), x.v);
  return out;
}

DenseOperator height_operator(const ReferenceSurface& surface, const EnergyDensity& G,
                              const ScalarField& rho_star, const ScalarField& u_star) {
  const QuasilinearCurvature qc = mean_curvature_quasilinear(surface, rho_star);
  const MetricData md = assemble_geometry(surface, rho_star);
  ScalarField ga = G.map_g(u_star) * md.a;

  DenseOperator op(rho_star.grid);
  std::array<ScalarField, 3> coeff;
  for (int i = 0; i < qc.dim; ++i)
    for (int j = i; j < qc.dim; ++j) coeff[sym_index(i, j)] = ga * qc.p[sym_index(i, j)];
  op.add_second_order(coeff);
  for (int k = 0; k < qc.dim; ++k) op.add_first_order(k, ga * qc.pk[k]);
  return op;
}

DenseOperator concentration_operator(const ReferenceSurface& surface, const EnergyDensity& G,
                                     const ScalarField& rho_star, const ScalarField& u_star,
                                     bool principal_only) {
  const MetricData md = assemble_geometry(surface, rho_star);
  const ScalarField H = mean_curvature_div(md);
  const ScalarField gu = G.map_g(u_star);
  const ScalarField gpp = G.map_G2(u_star);

  DenseOperator op(rho_star.grid);

  // G''(u*) Delta_{rho*}
  std::array<ScalarField, 3> coeff;
  for (int i = 0; i < md.dim; ++i)
    for (int j = i; j < md.dim; ++j) coeff[sym_index(i, j)] = gpp * md.ginv[sym_index(i, j)];
  op.add_second_order(coeff);
  const auto lower = laplace_lower_coeffs(md);
  for (int k = 0; k < md.dim; ++k) op.add_first_order(k, gpp * lower[k]);
  if (principal_only) return op;

  // g(u*) a H nu_Sigma . grad_{rho*} :  nu_Sigma . grad u = sum_i (g^ij d_j rho*) d_i u
  ScalarField gaH = gu * md.a * H;
  for (int i = 0; i < md.dim; ++i) {
    ScalarField b(rho_star.grid);
    for (int j = 0; j < md.dim; ++j) {
      const ScalarField& gij = md.ginv[sym_index(i, j)];
      for (std::size_t p = 0; p < b.size(); ++p) b.v[p] += gij.v[p] * md.drho[j].v[p];
    }
    op.add_first_order(i, gaH * b);
  }

  // g(u*) H^2
  op.add_diagonal(gu * H * H);
  return op;
}

struct ImplicitSolver::Impl {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

ImplicitSolver::ImplicitSolver(const DenseOperator& op, double dt)
    : grid_(op.grid()), impl_(std::make_unique<Impl>()) {
  const std::size_t N = op.size();
  Eigen::MatrixXd m(N, N);
  const std::vector<double>& a = op.data();
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      m(r, c) = (r == c ? 1.0 : 0.0) - dt * a[r * N + c];
  impl_->lu.compute(m);
}

ImplicitSolver::~ImplicitSolver() = default;
ImplicitSolver::ImplicitSolver(ImplicitSolver&&) noexcept = default;
ImplicitSolver& ImplicitSolver::operator=(ImplicitSolver&&) noexcept = default;

ScalarField ImplicitSolver::solve(const ScalarField& rhs) const {
  Eigen::VectorXd b(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i) = rhs.v[i];
  const Eigen::VectorXd x = impl_->lu.solve(b);
  ScalarField out(grid_);
  for (std::size_t i = 0; i < out.size(); ++i) out.v[i] = x(i);
  return out;
}

}  // namespace surfflow
