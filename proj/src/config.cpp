#include "tvgrav/config.hpp"

#include <set>

#include "tvgrav/io.hpp"

namespace tvgrav {

using nlohmann::json;

SurveyGrid RunConfig::survey_grid() const {
  if (!survey.stations_file.empty()) return io::read_data_grid(survey.stations_file).grid;
  return build_survey_grid(survey.nx, survey.ny, survey.spacing, survey.height, survey.x0, survey.y0);
}

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  c.name = name;
  if (name == "dikes-table1") {
    c.mesh = dikes_mesh();
    c.survey = {30, 30, 50.0, 0.0, 25.0, 25.0, {}};
    c.model_preset = "dikes";
    c.noise = {0.02, 0.002, 2018};
    c.inversion.q = 500;
    c.inversion.rho_min = 0.0;
    c.inversion.rho_max = 1.0;
    c.inversion.k_max = 200;
    c.inversion.stagnation_tol = 0.0;
    c.output_dir = "out/dikes-table1";
  } else if (name == "multibody-table2") {
    c.mesh = multibody_mesh();
    c.survey = {100, 60, 100.0, 0.0, 50.0, 50.0, {}};
    c.model_preset = "multibody";
    c.noise = {0.02, 0.001, 2018};
    c.inversion.q = 1000;
    c.inversion.k_max = 50;
    c.inversion.stagnation_tol = 0.0;
    c.output_dir = "out/multibody-table2";
  } else if (name == "multibody-desk") {
    c.mesh = multibody_mesh_scaled();
    c.survey = {50, 30, 100.0, 0.0, 50.0, 50.0, {}};
    c.model_preset = "multibody";
    c.noise = {0.02, 0.001, 2018};
    c.inversion.q = 500;
    c.inversion.k_max = 50;
    c.inversion.stagnation_tol = 0.0;
    c.output_dir = "out/multibody-desk";
  } else {
    throw ConfigError("unknown preset '" + name + "' (dikes-table1, multibody-table2, multibody-desk)");
  }
  return c;
}

namespace {

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be a table");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void get(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

const char* scaling_name(DerivativeScaling s) {
  return s == DerivativeScaling::Physical ? "physical" : "unit";
}
const char* weight_source_name(WeightSource s) {
  return s == WeightSource::Increment ? "increment" : "cumulative_scaled";
}

}  // namespace

RunConfig apply_json(RunConfig c, const json& j) {
  check_keys(j, "config", {"preset", "name", "mesh", "survey", "model", "noise", "prior", "inversion",
                           "output_dir", "memory_limit_mb"});
  get(j, "name", c.name, "config");
  get(j, "output_dir", c.output_dir, "config");
  get(j, "memory_limit_mb", c.memory_limit_mb, "config");

  if (j.contains("mesh")) {
    const json& m = j["mesh"];
    check_keys(m, "mesh", {"nx", "ny", "nz", "dx", "dy", "dz", "origin"});
    Index nx = c.mesh.nx(), ny = c.mesh.ny(), nz = c.mesh.nz();
    double dx = c.mesh.dx(), dy = c.mesh.dy(), dz = c.mesh.dz();
    std::array<double, 3> o = {c.mesh.origin().x, c.mesh.origin().y, c.mesh.origin().z};
    get(m, "nx", nx, "mesh");
    get(m, "ny", ny, "mesh");
    get(m, "nz", nz, "mesh");
    get(m, "dx", dx, "mesh");
    get(m, "dy", dy, "mesh");
    get(m, "dz", dz, "mesh");
    get(m, "origin", o, "mesh");
    c.mesh = Mesh3D(nx, ny, nz, dx, dy, dz, {o[0], o[1], o[2]});
  }
  if (j.contains("survey")) {
    const json& s = j["survey"];
    check_keys(s, "survey", {"nx", "ny", "spacing", "height", "x0", "y0", "stations_file"});
    get(s, "nx", c.survey.nx, "survey");
    get(s, "ny", c.survey.ny, "survey");
    get(s, "spacing", c.survey.spacing, "survey");
    get(s, "height", c.survey.height, "survey");
    get(s, "x0", c.survey.x0, "survey");
    get(s, "y0", c.survey.y0, "survey");
    get(s, "stations_file", c.survey.stations_file, "survey");
  }
  if (j.contains("model")) {
    const json& s = j["model"];
    check_keys(s, "model", {"preset", "file"});
    get(s, "preset", c.model_preset, "model");
    get(s, "file", c.model_file, "model");
    if (c.model_preset != "dikes" && c.model_preset != "multibody" && c.model_preset != "file" &&
        c.model_preset != "none") {
      throw ConfigError("model.preset must be dikes, multibody, file or none");
    }
  }
  if (j.contains("noise")) {
    const json& s = j["noise"];
    check_keys(s, "noise", {"a", "b", "seed"});
    get(s, "a", c.noise.a, "noise");
    get(s, "b", c.noise.b, "noise");
    get(s, "seed", c.noise.seed, "noise");
  }
  if (j.contains("prior")) {
    const json& s = j["prior"];
    check_keys(s, "prior", {"kind", "a", "b", "seed", "path"});
    get(s, "kind", c.prior.kind, "prior");
    get(s, "a", c.prior.a, "prior");
    get(s, "b", c.prior.b, "prior");
    get(s, "seed", c.prior.seed, "prior");
    get(s, "path", c.prior.path, "prior");
    if (c.prior.kind != "zero" && c.prior.kind != "noisy_true" && c.prior.kind != "file") {
      throw ConfigError("prior.kind must be zero, noisy_true or file");
    }
  }
  if (j.contains("inversion")) {
    const json& s = j["inversion"];
    check_keys(s, "inversion",
               {"q", "oversampling", "power_iterations", "eps", "stabilizer", "exponent", "rho_min",
                "rho_max", "k_max", "depth_beta", "depth_z0", "mode", "derivative_scaling",
                "weight_source", "seed", "upre_grid", "stagnation_tol", "stagnation_count"});
    InversionConfig& v = c.inversion;
    get(s, "q", v.q, "inversion");
    get(s, "oversampling", v.oversampling, "inversion");
    get(s, "power_iterations", v.power_iterations, "inversion");
    get(s, "eps", v.eps, "inversion");
    get(s, "exponent", v.exponent, "inversion");
    if (s.contains("stabilizer")) {
      const std::string st = s["stabilizer"].get<std::string>();
      if (st == "tv") v.exponent = kTvExponent;
      else if (st == "mgs") v.exponent = kMgsExponent;
      else throw ConfigError("inversion.stabilizer must be tv or mgs");
    }
    get(s, "rho_min", v.rho_min, "inversion");
    get(s, "rho_max", v.rho_max, "inversion");
    get(s, "k_max", v.k_max, "inversion");
    get(s, "depth_beta", v.depth_beta, "inversion");
    get(s, "depth_z0", v.depth_z0, "inversion");
    get(s, "seed", v.seed, "inversion");
    get(s, "upre_grid", v.upre_grid, "inversion");
    get(s, "stagnation_tol", v.stagnation_tol, "inversion");
    get(s, "stagnation_count", v.stagnation_count, "inversion");
    if (s.contains("mode")) {
      const std::string mode = s["mode"].get<std::string>();
      if (mode == "ad") v.mode = InversionMode::AlternatingDirection;
      else if (mode == "full3d") v.mode = InversionMode::Full3D;
      else throw ConfigError("inversion.mode must be ad or full3d");
    }
    if (s.contains("derivative_scaling")) {
      const std::string sc = s["derivative_scaling"].get<std::string>();
      if (sc == "physical") v.scaling = DerivativeScaling::Physical;
      else if (sc == "unit") v.scaling = DerivativeScaling::Unit;
      else throw ConfigError("inversion.derivative_scaling must be physical or unit");
    }
    if (s.contains("weight_source")) {
      const std::string ws = s["weight_source"].get<std::string>();
      if (ws == "increment") v.weight_source = WeightSource::Increment;
      else if (ws == "cumulative_scaled") v.weight_source = WeightSource::CumulativeScaled;
      else throw ConfigError("inversion.weight_source must be increment or cumulative_scaled");
    }
  }
  return c;
}

json to_json(const RunConfig& c) {
  const InversionConfig& v = c.inversion;
  const double z0 = v.depth_z0 > 0.0 ? v.depth_z0 : 0.5 * c.mesh.dz();
  return json{
      {"name", c.name},
      {"mesh",
       {{"nx", c.mesh.nx()}, {"ny", c.mesh.ny()}, {"nz", c.mesh.nz()}, {"dx", c.mesh.dx()},
        {"dy", c.mesh.dy()}, {"dz", c.mesh.dz()},
        {"origin", {c.mesh.origin().x, c.mesh.origin().y, c.mesh.origin().z}}}},
      {"survey",
       {{"nx", c.survey.nx}, {"ny", c.survey.ny}, {"spacing", c.survey.spacing},
        {"height", c.survey.height}, {"x0", c.survey.x0}, {"y0", c.survey.y0},
        {"stations_file", c.survey.stations_file}}},
      {"model", {{"preset", c.model_preset}, {"file", c.model_file}}},
      {"noise", {{"a", c.noise.a}, {"b", c.noise.b}, {"seed", c.noise.seed}}},
      {"prior", {{"kind", c.prior.kind}, {"a", c.prior.a}, {"b", c.prior.b}, {"seed", c.prior.seed},
                 {"path", c.prior.path}}},
      {"inversion",
       {{"q", v.q}, {"oversampling", v.oversampling}, {"power_iterations", v.power_iterations},
        {"eps", v.eps}, {"exponent", v.exponent}, {"rho_min", v.rho_min}, {"rho_max", v.rho_max},
        {"k_max", v.k_max}, {"depth_beta", v.depth_beta}, {"depth_z0", z0},
        {"mode", to_string(v.mode)}, {"derivative_scaling", scaling_name(v.scaling)},
        {"weight_source", weight_source_name(v.weight_source)}, {"seed", v.seed},
        {"upre_grid", v.upre_grid}, {"stagnation_tol", v.stagnation_tol},
        {"stagnation_count", v.stagnation_count}}},
      {"output_dir", c.output_dir},
      {"memory_limit_mb", c.memory_limit_mb},
  };
}

RunConfig load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_text(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  RunConfig base;
  if (j.contains("preset")) base = preset_config(j["preset"].get<std::string>());
  return apply_json(base, j);
}

}  // namespace tvgrav
