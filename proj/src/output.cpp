#include "surfflow/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "surfflow/spectral.hpp"

namespace surfflow {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_series(const Trajectory& traj, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "t,energy,mass,dissipation,dE_dt_fd,min_a,immersion_margin,ellipticity_margin,"
         "max_abs_rho,max_abs_u,iters_h,iters_c,contraction_h,contraction_c\n";
  const auto& snaps = traj.snapshots;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const auto& s = snaps[k];
    // centered energy slope on interior rows, one-sided at the ends
    double dEdt = 0.0;
    if (snaps.size() >= 2) {
      const std::size_t lo = k == 0 ? 0 : k - 1;
      const std::size_t hi = k + 1 == snaps.size() ? k : k + 1;
      dEdt = (snaps[hi].diag.energy - snaps[lo].diag.energy) /
             (snaps[hi].state.t - snaps[lo].state.t);
    }
    out << format_double(s.state.t) << ',' << format_double(s.diag.energy) << ','
        << format_double(s.diag.mass) << ',' << format_double(s.diag.dissipation) << ','
        << format_double(dEdt) << ',' << format_double(s.diag.min_a) << ','
        << format_double(s.diag.immersion_margin) << ','
        << format_double(s.diag.ellipticity_margin) << ','
        << format_double(s.state.rho.max_abs()) << ',' << format_double(s.state.u.max_abs())
        << ',' << s.diag.iters_h << ',' << s.diag.iters_c << ','
        << (s.diag.contraction_h ? format_double(*s.diag.contraction_h) : "nan") << ','
        << (s.diag.contraction_c ? format_double(*s.diag.contraction_c) : "nan") << '\n';
  }
}

void write_fields(const Snapshot& snap, const ReferenceSurface& surface, const EnergyDensity& G,
                  const fs::path& path) {
  std::ofstream out = open_out(path);
  const Grid& grid = snap.state.rho.grid;
  const MetricData md = assemble_geometry(surface, snap.state.rho);
  const ScalarField H = mean_curvature_div(md);
  const ScalarField V = G.map_g(snap.state.u) * H;
  if (grid.dim == 1) {
    out << "x1,rho,u,H,V\n";
    for (int i = 0; i < grid.n; ++i)
      out << format_double(grid.coord(i)) << ',' << format_double(snap.state.rho.v[i]) << ','
          << format_double(snap.state.u.v[i]) << ',' << format_double(H.v[i]) << ','
          << format_double(V.v[i]) << '\n';
  } else {
    out << "x1,x2,rho,u,H,V\n";
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j) {
        const std::size_t p = grid.index(i, j);
        out << format_double(grid.coord(i)) << ',' << format_double(grid.coord(j)) << ','
            << format_double(snap.state.rho.v[p]) << ',' << format_double(snap.state.u.v[p])
            << ',' << format_double(H.v[p]) << ',' << format_double(V.v[p]) << '\n';
      }
  }
}

json holder_report_json(const HolderReport& rep) {
  json j;
  j["alpha"] = rep.alpha;
  j["radius"] = rep.radius;
  j["seminorm"] = rep.seminorm;
  json profile = json::array();
  for (const auto& [r, v] : rep.profile) profile.push_back({{"R", r}, {"value", v}});
  j["profile"] = profile;
  return j;
}

}  // namespace

void emit_trajectory(const Trajectory& traj, const RunConfig& config,
                     const std::string& directory) {
  const fs::path dir(directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " +
                                   ec.message());

  write_series(traj, dir / "series.csv");

  const ReferenceSurface surface = config.make_surface();
  const EnergyDensity G = config.make_density();
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
    write_fields(traj.snapshots[k], surface, G,
                 dir / ("fields_" + std::to_string(k) + ".csv"));

  json j;
  j["config"] = json::parse(config.raw_json);
  j["termination"] = {{"reason", to_string(traj.termination)},
                      {"message", traj.termination_message},
                      {"reached_T", traj.termination == Termination::Completed}};
  j["snapshots"] = traj.snapshots.size();

  const double alpha = 0.5, beta = 0.2;  // 2*beta + alpha = 0.9, not an integer
  json holder;
  if (!traj.snapshots.empty()) {
    const auto& last = traj.snapshots.back();
    holder["final_rho"] = holder_report_json(holder_report(last.state.rho, alpha, M_PI));
    holder["final_u"] = holder_report_json(holder_report(last.state.u, alpha, M_PI));
  }
  if (traj.snapshots.size() >= 3) {
    const SpacetimeNorms n = spacetime_norms(traj.series(), alpha, beta);
    holder["spacetime"] = {
        {"alpha", n.alpha},
        {"beta", n.beta},
        {"rho", {{"lip_sup", n.rho_lip_sup}, {"tbeta_alpha", n.rho_tbeta_alpha},
                 {"tbeta_2alpha", n.rho_tbeta_2alpha}, {"e1_proxy", n.rho_e1_proxy}}},
        {"u", {{"lip_sup", n.u_lip_sup}, {"tbeta_alpha", n.u_tbeta_alpha},
               {"tbeta_2alpha", n.u_tbeta_2alpha}, {"e1_proxy", n.u_e1_proxy}}}};
  }
  j["holder"] = holder;

  std::ofstream out = open_out(dir / "run.json");
  out << j.dump(2) << '\n';
}

}  // namespace surfflow
