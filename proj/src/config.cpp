#include "surfflow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "surfflow/errors.hpp"

namespace surfflow {

using nlohmann::json;

namespace {

// strict-mode helper: every key must be consumed exactly once
class StrictObject {
 public:
  StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be a JSON object");
  }
  ~StrictObject() = default;

  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }
  const json& at(const char* key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError(path_ + "." + key + " is required");
    return j_.at(key);
  }
  const json* get(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError("unknown key \"" + it.key() + "\" in " + path_ + " (strict mode)");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be a string");
  return j.get<std::string>();
}

InitialSpec parse_initial(const json& j, const std::string& path, int dim, bool allow_offset) {
  StrictObject obj(j, path);
  InitialSpec spec;
  if (allow_offset) {
    if (const json* off = obj.get("offset")) spec.offset = as_number(*off, path + ".offset");
  }
  const json& modes = obj.at("modes");
  if (!modes.is_array()) throw ConfigError(path + ".modes must be an array");
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const std::string mpath = path + ".modes[" + std::to_string(m) + "]";
    StrictObject mode(modes[m], mpath);
    FourierMode fm;
    const json& k = mode.at("k");
    if (!k.is_array() || k.size() != std::size_t(dim))
      throw ConfigError(mpath + ".k must be an array of " + std::to_string(dim) + " integers");
    for (const auto& ki : k) fm.k.push_back(as_int(ki, mpath + ".k[]"));
    fm.amplitude = as_number(mode.at("amp"), mpath + ".amp");
    if (const json* ph = mode.get("phase")) fm.phase = as_number(*ph, mpath + ".phase");
    mode.finish();
    spec.modes.push_back(std::move(fm));
  }
  obj.finish();
  return spec;
}

}  // namespace

ReferenceSurface RunConfig::make_surface() const {
  return build_reference(surface_kind, surface_params);
}

EnergyDensity RunConfig::make_density() const {
  EnergyDensity d = [&] {
    switch (density_kind) {
      case DensityKind::Exponential:
        return EnergyDensity::exponential();
      case DensityKind::ShiftedQuadratic:
        if (density_params.size() != 2)
          throw ConfigError("density.params for shifted_quadratic must be [a0, a2]");
        return EnergyDensity::shifted_quadratic(density_params[0], density_params[1]);
      case DensityKind::UserPolynomial:
        return EnergyDensity::polynomial(density_params);
    }
    throw ConfigError("unreachable density kind");
  }();
  d.certified_range = certified_range;
  return d;
}

Grid RunConfig::make_grid() const { return Grid(make_surface().dim(), n, diff_scheme); }

double RunConfig::effective_snapshot_interval() const {
  if (snapshot_interval > 0.0) return snapshot_interval;
  return std::max(T / 50.0, dt);
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  RunConfig cfg;
  cfg.raw_json = doc.dump(2);
  StrictObject top(doc, "config");

  {
    StrictObject surface(top.at("surface"), "surface");
    cfg.surface_kind = surface_kind_from_string(as_string(surface.at("kind"), "surface.kind"));
    if (const json* params = surface.get("params")) {
      if (!params->is_object()) throw ConfigError("surface.params must be an object");
      for (auto it = params->begin(); it != params->end(); ++it)
        cfg.surface_params[it.key()] = as_number(it.value(), "surface.params." + it.key());
    }
    surface.finish();
  }

  {
    StrictObject grid(top.at("grid"), "grid");
    cfg.n = as_int(grid.at("n"), "grid.n");
    if (cfg.n % 2 != 0) throw ConfigError("grid.n must be even");
    if (cfg.n < 8) throw ConfigError("grid.n must be >= 8");
    if (const json* scheme = grid.get("scheme")) {
      const std::string name = as_string(*scheme, "grid.scheme");
      if (name == "spectral")
        cfg.diff_scheme = DiffScheme::Spectral;
      else if (name == "fd2")
        cfg.diff_scheme = DiffScheme::CenteredFD2;
      else
        throw ConfigError("grid.scheme must be \"spectral\" or \"fd2\"");
    }
    grid.finish();
  }

  {
    StrictObject density(top.at("density"), "density");
    cfg.density_kind = density_kind_from_string(as_string(density.at("kind"), "density.kind"));
    if (const json* params = density.get("params")) {
      if (!params->is_array()) throw ConfigError("density.params must be an array of numbers");
      for (const auto& p : *params) cfg.density_params.push_back(as_number(p, "density.params[]"));
    }
    if (const json* range = density.get("certified_range")) {
      if (!range->is_array() || range->size() != 2)
        throw ConfigError("density.certified_range must be [lo, hi]");
      const double lo = as_number((*range)[0], "density.certified_range[0]");
      const double hi = as_number((*range)[1], "density.certified_range[1]");
      if (lo >= hi) throw ConfigError("density.certified_range must satisfy lo < hi");
      cfg.certified_range = {lo, hi};
    }
    density.finish();
  }

  const int dim = cfg.make_surface().dim();

  {
    StrictObject initial(top.at("initial"), "initial");
    cfg.rho0 = parse_initial(initial.at("rho0"), "initial.rho0", dim, /*allow_offset=*/false);
    cfg.u0 = parse_initial(initial.at("u0"), "initial.u0", dim, /*allow_offset=*/true);
    initial.finish();
  }

  {
    StrictObject integ(top.at("integrator"), "integrator");
    const std::string scheme = as_string(integ.at("scheme"), "integrator.scheme");
    if (scheme == "rk4")
      cfg.scheme = IntegratorScheme::RK4;
    else if (scheme == "splitting")
      cfg.scheme = IntegratorScheme::Splitting;
    else
      throw ConfigError("integrator.scheme must be \"rk4\" or \"splitting\"");
    cfg.dt = as_number(integ.at("dt"), "integrator.dt");
    if (!(cfg.dt > 0.0)) throw ConfigError("integrator.dt must be > 0");
    cfg.T = as_number(integ.at("T"), "integrator.T");
    if (!(cfg.T >= 0.0)) throw ConfigError("integrator.T must be >= 0");
    if (const json* tol = integ.get("tol")) {
      cfg.tol = as_number(*tol, "integrator.tol");
      if (!(cfg.tol > 0.0)) throw ConfigError("integrator.tol must be > 0");
    }
    if (const json* mi = integ.get("max_iter")) {
      cfg.max_iter = as_int(*mi, "integrator.max_iter");
      if (cfg.max_iter < 1) throw ConfigError("integrator.max_iter must be >= 1");
    }
    if (const json* lin = integ.get("linearization")) {
      const std::string name = as_string(*lin, "integrator.linearization");
      if (name == "paper_frozen")
        cfg.linearization = Linearization::FrozenAtZero;
      else if (name == "current_frozen")
        cfg.linearization = Linearization::FrozenAtCurrent;
      else
        throw ConfigError(
            "integrator.linearization must be \"paper_frozen\" or \"current_frozen\"");
    }
    if (const json* fr = integ.get("freeze_concentration")) {
      if (!fr->is_boolean()) throw ConfigError("integrator.freeze_concentration must be a bool");
      cfg.freeze_concentration = fr->get<bool>();
    }
    integ.finish();
  }

  if (const json* th = top.get("thresholds")) {
    StrictObject thresholds(*th, "thresholds");
    if (const json* c1 = thresholds.get("c1_smallness")) {
      cfg.thresholds.c1_smallness = as_number(*c1, "thresholds.c1_smallness");
      if (!(*cfg.thresholds.c1_smallness > 0.0))
        throw ConfigError("thresholds.c1_smallness must be > 0");
    }
    if (const json* im = thresholds.get("immersion_min"))
      cfg.thresholds.immersion_min = as_number(*im, "thresholds.immersion_min");
    if (const json* am = thresholds.get("a_min"))
      cfg.thresholds.a_min = as_number(*am, "thresholds.a_min");
    thresholds.finish();
  }

  if (const json* out = top.get("output")) {
    StrictObject output(*out, "output");
    if (const json* dir = output.get("directory"))
      cfg.output_directory = as_string(*dir, "output.directory");
    if (const json* si = output.get("snapshot_interval")) {
      cfg.snapshot_interval = as_number(*si, "output.snapshot_interval");
      if (!(cfg.snapshot_interval > 0.0))
        throw ConfigError("output.snapshot_interval must be > 0");
    }
    output.finish();
  }

  top.finish();

  // density must be admissible on the declared certified range
  if (cfg.certified_range) {
    const auto rep =
        check_admissible(cfg.make_density(), cfg.certified_range->first, cfg.certified_range->second);
    if (!rep.admissible)
      throw ConfigError("density is inadmissible on the declared certified_range (min G'' = " +
                        std::to_string(rep.min_gpp) + ", min g = " + std::to_string(rep.min_g) +
                        ")");
  }

  // surface parameters validate eagerly
  (void)cfg.make_surface();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ScalarField build_initial(const InitialSpec& spec, const Grid& grid) {
  ScalarField f(grid, spec.offset);
  for (const auto& mode : spec.modes) {
    if (grid.dim == 1) {
      for (int i = 0; i < grid.n; ++i)
        f.v[i] += mode.amplitude * std::cos(mode.k[0] * grid.coord(i) + mode.phase);
    } else {
      for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
          f.v[grid.index(i, j)] +=
              mode.amplitude *
              std::cos(mode.k[0] * grid.coord(i) + mode.k[1] * grid.coord(j) + mode.phase);
    }
  }
  return f;
}

}  // namespace surfflow
