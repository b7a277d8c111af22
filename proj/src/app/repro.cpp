#include <chrono>
#include <cstdio>
#include <sstream>

#include "tvgrav/app.hpp"
#include "tvgrav/io.hpp"

namespace tvgrav::app {
namespace {

struct RowSpec {
  std::string m_apr;
  double rho_min, rho_max;
  int k_max;
  Index q;
};

bool selected(const ReproOptions& opts, int row) {
  if (opts.rows.empty()) return true;
  for (int r : opts.rows) {
    if (r == row) return true;
  }
  return false;
}

std::vector<ReproRow> run_rows(const RunConfig& base, const std::vector<RowSpec>& specs,
                               const fs::path& out, const ReproOptions& opts, const std::string& table) {
  RunConfig cfg = base;
  cfg.noise.seed = opts.noise_seed;
  cfg.inversion.seed = opts.sketch_seed;
  if (opts.progress) *opts.progress << table << ": assembling " << cfg.name << " problem\n";
  const SyntheticProblem p = make_problem(cfg);
  io::write_model_table(out / "true_model.txt", p.mesh, p.m_true);
  io::write_data_grid(out / "data_exact.txt", p.grid, p.d_exact);
  io::write_data_grid(out / "data_obs.txt", p.grid, p.data.d_obs);
  io::write_data_grid(out / "eta.txt", p.grid, p.data.eta);
  write_resolved_config(out, cfg);

  std::vector<ReproRow> rows;
  std::ostringstream timings;
  timings << "row seconds\n";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const int row_no = static_cast<int>(i) + 1;
    if (!selected(opts, row_no)) continue;
    const RowSpec& s = specs[i];
    RunConfig rc = cfg;
    rc.inversion.q = s.q;
    rc.inversion.k_max = s.k_max;
    rc.inversion.rho_min = s.rho_min;
    rc.inversion.rho_max = s.rho_max;
    if (s.m_apr == "noisy") {
      rc.prior.kind = "noisy_true";
      rc.inversion.m_apr = noisy_prior(p.m_true, rc.prior.a, rc.prior.b, rc.prior.seed);
    }
    ReproRow row;
    row.label = "row" + std::to_string(row_no);
    row.m_apr = s.m_apr;
    row.rho_min = s.rho_min;
    row.rho_max = s.rho_max;
    row.k_max = s.k_max;
    row.q = s.q;
    if (opts.progress) {
      *opts.progress << table << " " << row.label << ": q=" << s.q << " k_max=" << s.k_max
                     << " rho=[" << s.rho_min << "," << s.rho_max << "] m_apr=" << s.m_apr << '\n';
    }
    const auto t0 = std::chrono::steady_clock::now();
    row.result = invert(p.data.d_obs, p.G, p.data.eta, p.mesh, rc.inversion, p.m_true);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    row.relative_error = relative_error(p.m_true, row.result.model);
    if (opts.progress) {
      *opts.progress << "  -> K=" << row.result.iterations << " chi2=" << row.result.chi2
                     << " RE=" << row.relative_error << " (" << row.seconds << " s)\n";
    }

    const fs::path dir = out / (row.label + "_q" + std::to_string(s.q));
    io::write_model_table(dir / "model.txt", p.mesh, row.result.model);
    io::write_vtk(dir / "model.vtk", p.mesh, row.result.model);
    io::write_iteration_log(dir / "iterations.csv", row.result.log);
    io::write_data_grid(dir / "predicted.txt", p.grid, predict(p.G, row.result.model));
    write_resolved_config(dir, rc);
    timings << row.label << ' ' << row.seconds << '\n';
    rows.push_back(std::move(row));
  }
  io::write_text(out / (table + "_summary.txt"), format_summary(rows));
  io::write_text(out / (table + "_timings.txt"), timings.str());
  return rows;
}

}  // namespace

std::string format_summary(const std::vector<ReproRow>& rows) {
  std::ostringstream os;
  os << "row m_apr rho_min rho_max K_max q RE alpha K chi2 chi2_target termination\n";
  for (const auto& r : rows) {
    const double alpha = r.result.log.empty() ? 0.0 : r.result.log.back().alpha;
    char line[256];
    std::snprintf(line, sizeof(line), "%s %s %g %g %d %ld %.4f %.2f %d %.1f %.1f %s\n", r.label.c_str(),
                  r.m_apr.c_str(), r.rho_min, r.rho_max, r.k_max, static_cast<long>(r.q), r.relative_error,
                  alpha, r.result.iterations, r.result.chi2, r.result.chi2_target,
                  to_string(r.result.termination));
    os << line;
  }
  return os.str();
}

std::vector<ReproRow> repro_table1(const fs::path& out, const ReproOptions& opts) {
  const std::vector<RowSpec> specs = {
      {"0", 0.0, 1.0, 200, 100}, {"0", 0.0, 1.0, 200, 300}, {"0", 0.0, 1.0, 200, 500},
      {"0", 0.0, 1.0, 50, 300},  {"0", 0.0, 2.0, 200, 500}, {"noisy", 0.0, 1.0, 200, 500},
  };
  return run_rows(preset_config("dikes-table1"), specs, out, opts, "table1");
}

std::vector<ReproRow> repro_table2(const fs::path& out, const ReproOptions& opts) {
  if (opts.full_scale) {
    const std::vector<RowSpec> specs = {
        {"0", 0.0, 1.0, 50, 500}, {"0", 0.0, 1.0, 50, 1000}, {"0", 0.0, 1.0, 50, 2000}};
    return run_rows(preset_config("multibody-table2"), specs, out, opts, "table2");
  }
  const std::vector<RowSpec> specs = {{"0", 0.0, 1.0, 50, 250}, {"0", 0.0, 1.0, 50, 500}};
  return run_rows(preset_config("multibody-desk"), specs, out, opts, "table2");
}

}  // namespace tvgrav::app
