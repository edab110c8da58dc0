#include "surfflow/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace surfflow {

namespace {

struct RC {
  double r, c;
};

RC rhs(const EnergyDensity& G, RC y) {
  const double gc = G.g(y.c);
  return {-gc / y.r, y.c * gc / (y.r * y.r)};
}

RC rk4_step(const EnergyDensity& G, RC y, double dt) {
  const RC k1 = rhs(G, y);
  const RC k2 = rhs(G, {y.r + 0.5 * dt * k1.r, y.c + 0.5 * dt * k1.c});
  const RC k3 = rhs(G, {y.r + 0.5 * dt * k2.r, y.c + 0.5 * dt * k2.c});
  const RC k4 = rhs(G, {y.r + dt * k3.r, y.c + dt * k3.c});
  return {y.r + dt / 6.0 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r),
          y.c + dt / 6.0 * (k1.c + 2 * k2.c + 2 * k3.c + k4.c)};
}

}  // namespace

double CircleOracleResult::r_at(double time) const {
  if (t.empty()) throw std::runtime_error("empty oracle result");
  if (time <= t.front()) return r.front();
  if (time >= t.back()) return r.back();
  for (std::size_t k = 1; k < t.size(); ++k)
    if (time <= t[k]) {
      const double w = (time - t[k - 1]) / (t[k] - t[k - 1]);
      return (1 - w) * r[k - 1] + w * r[k];
    }
  return r.back();
}

double CircleOracleResult::c_at(double time) const {
  if (t.empty()) throw std::runtime_error("empty oracle result");
  if (time <= t.front()) return c.front();
  if (time >= t.back()) return c.back();
  for (std::size_t k = 1; k < t.size(); ++k)
    if (time <= t[k]) {
      const double w = (time - t[k - 1]) / (t[k] - t[k - 1]);
      return (1 - w) * c[k - 1] + w * c[k];
    }
  return c.back();
}

CircleOracleResult circle_ode_oracle(const EnergyDensity& G, double r0, double c0, double T,
                                     double dt) {
  if (r0 <= 0) throw std::invalid_argument("circle_ode_oracle: r0 must be positive");
  if (dt <= 0) throw std::invalid_argument("circle_ode_oracle: dt must be positive");
  if (T < 0) throw std::invalid_argument("circle_ode_oracle: T must be nonnegative");

  CircleOracleResult out;
  out.t.push_back(0.0);
  out.r.push_back(r0);
  out.c.push_back(c0);

  const double mass0 = r0 * c0;
  RC y{r0, c0};
  const long steps = T > 0 ? std::lround(std::ceil(T / dt - 1e-12)) : 0;
  for (long k = 0; k < steps; ++k) {
    const double t0 = k * dt;
    const double t1 = std::min(T, (k + 1) * dt);
    const double hsub = (t1 - t0) / 10.0;
    RC next = y;
    bool dead = false;
    for (int s = 0; s < 10; ++s) {
      next = rk4_step(G, next, hsub);
      if (!(next.r > 0) || !std::isfinite(next.r) || !std::isfinite(next.c)) {
        dead = true;
        break;
      }
    }
    if (dead) {
      out.blew_up = true;
      out.message = "radius reached zero before T; partial result up to t=" +
                    std::to_string(out.t.back());
      return out;
    }
    y = next;
    out.t.push_back(t1);
    out.r.push_back(y.r);
    out.c.push_back(y.c);
    out.invariant_drift = std::max(out.invariant_drift, std::fabs(y.r * y.c - mass0));
  }
  return out;
}

double ellipse_curvature_reference(double a, double b, double x) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("ellipse axes must be positive");
  const double s = std::sin(x), c = std::cos(x);
  return -a * b / std::pow(a * a * s * s + b * b * c * c, 1.5);
}

}  // namespace surfflow
