#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tvgrav/app.hpp"
#include "tvgrav/io.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

tvgrav::RunConfig load(const std::string& config_path, const std::string& preset) {
  if (!config_path.empty()) return tvgrav::load_config(config_path);
  if (!preset.empty()) return tvgrav::preset_config(preset);
  throw tvgrav::ConfigError("either --config or --preset is required");
}

void set_threads(int threads) {
  if (threads <= 0) return;
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
  Eigen::setNbThreads(threads);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total-variation gravity inversion with randomized GSVD"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: all cores)");

  std::string config_path, preset, out_flag;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--preset", preset, "dikes-table1 | multibody-table2 | multibody-desk");
    sub->add_option("--out", out_flag, "Output directory (overrides $TVGRAV_OUTPUT_DIR and config)");
  };

  bool sections = false, save_g = false;
  auto* synth = app.add_subcommand("synth", "Build a synthetic model and noisy data");
  add_common(synth);
  synth->add_flag("--sections", sections, "Write plane and cross sections");
  synth->add_flag("--save-g", save_g, "Dump the sensitivity matrix");

  std::string model_path;
  auto* fwd = app.add_subcommand("forward", "Forward-model a density volume");
  add_common(fwd);
  fwd->add_option("--model", model_path, "Model table (i j k x y z density)");

  tvgrav::app::InvertInputs inputs;
  bool quiet = false;
  long q_override = 0;
  int kmax_override = 0;
  auto* inv = app.add_subcommand("invert", "Run the TV inversion");
  add_common(inv);
  inv->add_option("--data", inputs.data_path, "Observed data grid")->required();
  inv->add_option("--eta", inputs.eta_path, "Noise standard deviation grid")->required();
  inv->add_option("--true-model", inputs.true_model_path, "True model table, enables RE logging");
  inv->add_option("--g", inputs.sensitivity_path, "Binary sensitivity dump to reuse");
  inv->add_option("--q", q_override, "Override target rank");
  inv->add_option("--k-max", kmax_override, "Override iteration cap");
  inv->add_flag("--sections", sections, "Write plane and cross sections");
  inv->add_flag("--quiet", quiet, "No per-iteration progress");

  int instances = 10;
  auto* ver = app.add_subcommand("verify", "Run the oracle self-checks");
  ver->add_option("--instances", instances, "Random instances per check");

  std::string table;
  std::vector<int> rows;
  bool full = false;
  tvgrav::app::ReproOptions ropts;
  auto* rep = app.add_subcommand("repro", "Reproduce a results table");
  rep->add_option("table", table, "table1 | table2")->required()->check(CLI::IsMember({"table1", "table2"}));
  rep->add_option("--out", out_flag, "Output directory");
  rep->add_option("--rows", rows, "Subset of rows (1-based)")->delimiter(',');
  rep->add_flag("--full", full, "table2 on the full 100x60x10 mesh (hours)");
  rep->add_option("--seed", ropts.noise_seed, "Noise seed");
  rep->add_option("--sketch-seed", ropts.sketch_seed, "Sketch seed");
  rep->add_flag("--quiet", quiet, "No progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  set_threads(threads);

  try {
    if (synth->parsed()) {
      const auto cfg = load(config_path, preset);
      const auto out = tvgrav::app::resolve_output_dir(cfg, out_flag);
      tvgrav::app::cmd_synth(cfg, out, sections, save_g);
      std::cout << "wrote synthetic data to " << out.string() << '\n';
    } else if (fwd->parsed()) {
      const auto cfg = load(config_path, preset);
      const auto out = tvgrav::app::resolve_output_dir(cfg, out_flag);
      tvgrav::app::cmd_forward(cfg, model_path, out);
      std::cout << "wrote " << (out / "predicted.txt").string() << '\n';
    } else if (inv->parsed()) {
      auto cfg = load(config_path, preset);
      if (q_override > 0) cfg.inversion.q = q_override;
      if (kmax_override > 0) cfg.inversion.k_max = kmax_override;
      const auto out = tvgrav::app::resolve_output_dir(cfg, out_flag);
      const auto res = tvgrav::app::cmd_invert(cfg, inputs, out, sections, quiet ? nullptr : &std::cout);
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << "K=" << res.iterations << " chi2=" << res.chi2 << " target=" << res.chi2_target
                << " termination=" << tvgrav::to_string(res.termination) << '\n';
    } else if (ver->parsed()) {
      const auto report = tvgrav::app::run_verify(instances);
      std::cout << report.to_text();
      return report.all_passed() ? kOk : kNumerical;
    } else if (rep->parsed()) {
      ropts.rows = rows;
      ropts.full_scale = full;
      ropts.progress = quiet ? nullptr : &std::cout;
      std::string out = out_flag;
      if (out.empty()) {
        const char* env = std::getenv("TVGRAV_OUTPUT_DIR");
        out = (env && *env) ? env : "out/repro-" + table;
      }
      const auto result = table == "table1" ? tvgrav::app::repro_table1(out, ropts)
                                            : tvgrav::app::repro_table2(out, ropts);
      std::cout << tvgrav::app::format_summary(result);
    }
  } catch (const tvgrav::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const tvgrav::DimensionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfig;
  } catch (const tvgrav::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const tvgrav::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
