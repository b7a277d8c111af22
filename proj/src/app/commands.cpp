#include <cstdlib>
#include <fstream>

#include "tvgrav/app.hpp"
#include "tvgrav/io.hpp"

namespace tvgrav::app {

SyntheticProblem make_problem(const RunConfig& cfg) {
  SurveyGrid grid = cfg.survey_grid();
  Vector m_true;
  if (cfg.model_preset == "dikes") {
    m_true = build_dikes_model(cfg.mesh);
  } else if (cfg.model_preset == "multibody") {
    m_true = build_multibody_model(cfg.mesh);
  } else if (cfg.model_preset == "file") {
    m_true = io::read_model_table(cfg.model_file, cfg.mesh);
  } else {
    throw ConfigError("synthetic data needs a model preset (dikes, multibody or file)");
  }
  SensitivityMatrix G = assemble_G(cfg.mesh, grid, cfg.memory_limit_mb << 20);
  Vector d_exact = predict(G, m_true);
  NoisyData data = add_noise(d_exact, cfg.noise);
  return {cfg.mesh, std::move(grid), std::move(m_true), std::move(G), std::move(d_exact), std::move(data)};
}

fs::path resolve_output_dir(const RunConfig& cfg, const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("TVGRAV_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

void write_resolved_config(const fs::path& dir, const RunConfig& cfg) {
  io::write_text(dir / "resolved_config.json", to_json(cfg).dump(2) + "\n");
}

void cmd_synth(const RunConfig& cfg, const fs::path& out, bool sections, bool save_g) {
  const SyntheticProblem p = make_problem(cfg);
  io::write_model_table(out / "true_model.txt", p.mesh, p.m_true);
  io::write_vtk(out / "true_model.vtk", p.mesh, p.m_true);
  io::write_data_grid(out / "data_exact.txt", p.grid, p.d_exact);
  io::write_data_grid(out / "data_obs.txt", p.grid, p.data.d_obs);
  io::write_data_grid(out / "eta.txt", p.grid, p.data.eta);
  if (sections) io::write_sections(out / "sections_true", p.mesh, p.m_true);
  if (save_g) io::save_sensitivity(out / "sensitivity.bin", p.G);
  write_resolved_config(out, cfg);
}

void cmd_forward(const RunConfig& cfg, const std::string& model_path, const fs::path& out) {
  const SurveyGrid grid = cfg.survey_grid();
  Vector model;
  if (!model_path.empty()) {
    model = io::read_model_table(model_path, cfg.mesh);
  } else if (cfg.model_preset == "dikes") {
    model = build_dikes_model(cfg.mesh);
  } else if (cfg.model_preset == "multibody") {
    model = build_multibody_model(cfg.mesh);
  } else if (cfg.model_preset == "file") {
    model = io::read_model_table(cfg.model_file, cfg.mesh);
  } else {
    throw ConfigError("forward needs --model or a model preset");
  }
  const SensitivityMatrix G = assemble_G(cfg.mesh, grid, cfg.memory_limit_mb << 20);
  io::write_data_grid(out / "predicted.txt", grid, predict(G, model));
  write_resolved_config(out, cfg);
}

namespace {

bool same_stations(const SurveyGrid& a, const SurveyGrid& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.stations.size(); ++i) {
    const Point3& p = a.stations[i];
    const Point3& q = b.stations[i];
    if (p.x != q.x || p.y != q.y || p.z != q.z) return false;
  }
  return true;
}

}  // namespace

InversionResult cmd_invert(const RunConfig& cfg, const InvertInputs& in, const fs::path& out,
                           bool sections, std::ostream* progress) {
  if (in.data_path.empty()) throw ConfigError("invert needs a data file");
  if (in.eta_path.empty()) throw ConfigError("invert needs a noise (eta) file");
  const io::DataGrid data = io::read_data_grid(in.data_path);
  const io::DataGrid eta = io::read_data_grid(in.eta_path);
  if (!same_stations(data.grid, eta.grid)) {
    throw DimensionError("stations in '" + in.eta_path + "' do not match '" + in.data_path + "'");
  }

  SensitivityMatrix G;
  if (!in.sensitivity_path.empty()) {
    G = io::load_sensitivity(in.sensitivity_path);
    if (G.rows() != data.grid.size() || G.cols() != cfg.mesh.size()) {
      throw DimensionError("'" + in.sensitivity_path + "' is " + std::to_string(G.rows()) + " x " +
                           std::to_string(G.cols()) + ", expected " + std::to_string(data.grid.size()) +
                           " x " + std::to_string(cfg.mesh.size()));
    }
  } else {
    G = assemble_G(cfg.mesh, data.grid, cfg.memory_limit_mb << 20);
  }

  std::optional<Vector> m_true;
  if (!in.true_model_path.empty()) m_true = io::read_model_table(in.true_model_path, cfg.mesh);

  InversionConfig icfg = cfg.inversion;
  if (cfg.prior.kind == "file") {
    icfg.m_apr = io::read_model_table(cfg.prior.path, cfg.mesh);
  } else if (cfg.prior.kind == "noisy_true") {
    if (!m_true) throw ConfigError("prior.kind = noisy_true needs --true-model");
    icfg.m_apr = noisy_prior(*m_true, cfg.prior.a, cfg.prior.b, cfg.prior.seed);
  }

  IterationCallback cb;
  if (progress) {
    cb = [progress](const IterationRecord& r, const Vector&) {
      *progress << "k=" << r.k << " dir=" << to_string(r.direction) << " alpha=" << r.alpha
                << " chi2=" << r.chi2;
      if (r.relative_error >= 0.0) *progress << " RE=" << r.relative_error;
      *progress << " (" << r.seconds << " s)\n";
    };
  }
  InversionResult res = invert(data.values, G, eta.values, cfg.mesh, icfg, m_true, cb);

  io::write_model_table(out / "model.txt", cfg.mesh, res.model);
  io::write_vtk(out / "model.vtk", cfg.mesh, res.model);
  io::write_data_grid(out / "predicted.txt", data.grid, predict(G, res.model));
  io::write_iteration_log(out / "iterations.csv", res.log);
  io::write_timings(out / "timings.csv", res.log);
  if (sections) io::write_sections(out / "sections", cfg.mesh, res.model);
  write_resolved_config(out, cfg);
  return res;
}

}  // namespace tvgrav::app
