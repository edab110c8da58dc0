#include "surfflow/surface.hpp"

#include <cmath>
#include <stdexcept>

#include "surfflow/errors.hpp"

namespace surfflow {

namespace {

using Vec3 = std::array<double, 3>;

inline Vec3 rot90(const Vec3& v) { return {v[1], -v[0], 0.0}; }  // outward for our curves
inline double norm2d(const Vec3& v) { return std::hypot(v[0], v[1]); }

// Plane-curve data from closed-form theta, theta', theta''.
void fill_curve_point(const Vec3& p, const Vec3& t, const Vec3& tt, SurfacePointData& out) {
  out.pos = p;
  out.tangent[0] = t;
  out.second[0][0] = tt;
  const double len = norm2d(t);
  const Vec3 unit{t[0] / len, t[1] / len, 0.0};
  out.normal = rot90(unit);
  // d(nu) = Rot(d(t/|t|)) with d(t/|t|) = t'/|t| - t (t.t')/|t|^3
  const double tdott = t[0] * tt[0] + t[1] * tt[1];
  const Vec3 dunit{tt[0] / len - t[0] * tdott / (len * len * len),
                   tt[1] / len - t[1] * tdott / (len * len * len), 0.0};
  out.dnormal[0] = rot90(dunit);
}

}  // namespace

const char* to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::UnitCircle: return "unit_circle";
    case SurfaceKind::Ellipse: return "ellipse";
    case SurfaceKind::Limacon: return "limacon";
    case SurfaceKind::Torus: return "torus";
  }
  return "?";
}

SurfaceKind surface_kind_from_string(const std::string& name) {
  if (name == "unit_circle") return SurfaceKind::UnitCircle;
  if (name == "ellipse") return SurfaceKind::Ellipse;
  if (name == "limacon") return SurfaceKind::Limacon;
  if (name == "torus") return SurfaceKind::Torus;
  throw ConfigError("unknown surface kind: " + name);
}

SurfacePointData ReferenceSurface::evaluate(double x1, double x2) const {
  SurfacePointData out;
  const double c1 = std::cos(x1), s1 = std::sin(x1);
  switch (kind) {
    case SurfaceKind::UnitCircle: {
      fill_curve_point({c1, s1, 0}, {-s1, c1, 0}, {-c1, -s1, 0}, out);
      break;
    }
    case SurfaceKind::Ellipse: {
      fill_curve_point({a * c1, b * s1, 0}, {-a * s1, b * c1, 0}, {-a * c1, -b * s1, 0}, out);
      break;
    }
    case SurfaceKind::Limacon: {
      // polar r(x) = b + cos x; self-intersects at the origin for b in (0,1)
      const double c2 = std::cos(2 * x1), s2 = std::sin(2 * x1);
      const Vec3 p{b * c1 + 0.5 * (1 + c2), b * s1 + 0.5 * s2, 0};
      const Vec3 t{-b * s1 - s2, b * c1 + c2, 0};
      const Vec3 tt{-b * c1 - 2 * c2, -b * s1 - 2 * s2, 0};
      fill_curve_point(p, t, tt, out);
      break;
    }
    case SurfaceKind::Torus: {
      const double c2 = std::cos(x2), s2 = std::sin(x2);
      const double w = torus_R + torus_r * c2;
      out.pos = {w * c1, w * s1, torus_r * s2};
      out.normal = {c2 * c1, c2 * s1, s2};
      out.tangent[0] = {-w * s1, w * c1, 0};
      out.tangent[1] = {-torus_r * s2 * c1, -torus_r * s2 * s1, torus_r * c2};
      out.dnormal[0] = {-c2 * s1, c2 * c1, 0};
      out.dnormal[1] = {-s2 * c1, -s2 * s1, c2};
      out.second[0][0] = {-w * c1, -w * s1, 0};
      out.second[0][1] = {torus_r * s2 * s1, -torus_r * s2 * c1, 0};
      out.second[1][0] = out.second[0][1];
      out.second[1][1] = {-torus_r * c2 * c1, -torus_r * c2 * s1, -torus_r * s2};
      break;
    }
  }
  return out;
}

namespace {

template <class Pick>
VectorField sample(const ReferenceSurface& surf, const Grid& grid, Pick pick) {
  if (grid.dim != surf.dim())
    throw std::invalid_argument("grid dimension does not match surface dimension");
  VectorField out(grid, surf.ambient());
  const double h = grid.spacing();
  if (grid.dim == 1) {
    for (int i = 0; i < grid.n; ++i) {
      const auto d = surf.evaluate(i * h);
      const auto v = pick(d);
      for (int c = 0; c < out.comps; ++c) out.at(c, i) = v[c];
    }
  } else {
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j) {
        const auto d = surf.evaluate(i * h, j * h);
        const auto v = pick(d);
        for (int c = 0; c < out.comps; ++c) out.at(c, grid.index(i, j)) = v[c];
      }
  }
  return out;
}

}  // namespace

VectorField ReferenceSurface::sample_position(const Grid& grid) const {
  return sample(*this, grid, [](const SurfacePointData& d) { return d.pos; });
}
VectorField ReferenceSurface::sample_normal(const Grid& grid) const {
  return sample(*this, grid, [](const SurfacePointData& d) { return d.normal; });
}
VectorField ReferenceSurface::sample_tangent(const Grid& grid, int axis) const {
  return sample(*this, grid, [axis](const SurfacePointData& d) { return d.tangent[axis]; });
}
VectorField ReferenceSurface::sample_dnormal(const Grid& grid, int axis) const {
  return sample(*this, grid, [axis](const SurfacePointData& d) { return d.dnormal[axis]; });
}
VectorField ReferenceSurface::sample_second(const Grid& grid, int axis_i, int axis_j) const {
  return sample(*this, grid,
                [axis_i, axis_j](const SurfacePointData& d) { return d.second[axis_i][axis_j]; });
}

ReferenceSurface build_reference(SurfaceKind kind, const std::map<std::string, double>& params) {
  auto get = [&](const char* name, double fallback) {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
  };
  ReferenceSurface s;
  s.kind = kind;
  switch (kind) {
    case SurfaceKind::UnitCircle:
      break;
    case SurfaceKind::Ellipse:
      s.a = get("a", 2.0);
      s.b = get("b", 1.0);
      if (s.a <= 0 || s.b <= 0) throw ConfigError("ellipse semi-axes must be positive");
      break;
    case SurfaceKind::Limacon:
      s.b = get("b", 0.5);
      if (s.b <= 0) throw ConfigError("limacon parameter b must be positive");
      if (s.b == 1.0) throw ConfigError("limacon b = 1 is a cardioid cusp, not an immersion");
      break;
    case SurfaceKind::Torus:
      s.torus_R = get("R", 2.0);
      s.torus_r = get("r", 0.5);
      if (s.torus_r <= 0) throw ConfigError("torus tube radius must be positive");
      if (s.torus_R <= s.torus_r) throw ConfigError("torus requires R > r");
      break;
  }
  return s;
}

ScalarField reference_mean_curvature(const ReferenceSurface& surface, const Grid& grid) {
  if (grid.dim != surface.dim())
    throw std::invalid_argument("grid dimension does not match surface dimension");
  ScalarField H(grid);
  const double h = grid.spacing();
  auto at = [&](double x1, double x2) {
    const auto d = surface.evaluate(x1, x2);
    if (surface.dim() == 1) {
      double g11 = 0;
      double dn_dot_t = 0;
      for (int c = 0; c < 2; ++c) {
        g11 += d.tangent[0][c] * d.tangent[0][c];
        dn_dot_t += d.dnormal[0][c] * d.tangent[0][c];
      }
      return -dn_dot_t / g11;
    }
    double g[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g[i][j] = 0;
        for (int c = 0; c < 3; ++c) g[i][j] += d.tangent[i][c] * d.tangent[j][c];
      }
    const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    const double gi[2][2] = {{g[1][1] / det, -g[0][1] / det}, {-g[1][0] / det, g[0][0] / det}};
    double sum = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double dn_dot_t = 0;
        for (int c = 0; c < 3; ++c) dn_dot_t += d.dnormal[i][c] * d.tangent[j][c];
        sum += gi[i][j] * dn_dot_t;
      }
    return -sum;
  };
  if (grid.dim == 1) {
    for (int i = 0; i < grid.n; ++i) H.v[i] = at(i * h, 0);
  } else {
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j) H.v[grid.index(i, j)] = at(i * h, j * h);
  }
  return H;
}

}  // namespace surfflow
