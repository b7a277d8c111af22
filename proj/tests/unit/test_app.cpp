#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "tvgrav/app.hpp"
#include "tvgrav/io.hpp"

using namespace tvgrav;
namespace fs = std::filesystem;

namespace {

RunConfig tiny_config() {
  RunConfig c = preset_config("dikes-table1");
  c.inversion.q = 200;
  c.inversion.k_max = 1;
  return c;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("synth writes a full data set deterministically") {
    const fs::path a = fs::temp_directory_path() / "tvgrav_unit_synth_a";
    const fs::path b = fs::temp_directory_path() / "tvgrav_unit_synth_b";
    fs::remove_all(a);
    fs::remove_all(b);
    app::cmd_synth(tiny_config(), a, false, false);
    app::cmd_synth(tiny_config(), b, false, false);
    const auto data = io::read_data_grid(a / "data_obs.txt");
    CHECK(data.values.size() == 900);
    for (const char* f : {"true_model.txt", "data_exact.txt", "data_obs.txt", "eta.txt"}) {
      CHECK(io::read_text(a / f) == io::read_text(b / f));
    }
    CHECK(fs::exists(a / "resolved_config.json"));
    CHECK(fs::exists(a / "true_model.vtk"));
  }

  TEST_CASE("invert: one iteration, outputs and missing inputs") {
    const fs::path in = fs::temp_directory_path() / "tvgrav_unit_invert_in";
    const fs::path out = fs::temp_directory_path() / "tvgrav_unit_invert_out";
    fs::remove_all(in);
    fs::remove_all(out);
    const auto cfg = tiny_config();
    app::cmd_synth(cfg, in, false, true);
    app::InvertInputs inputs{(in / "data_obs.txt").string(), (in / "eta.txt").string(),
                             (in / "true_model.txt").string(), (in / "sensitivity.bin").string()};
    const auto res = app::cmd_invert(cfg, inputs, out, true);
    CHECK(res.log.size() == 1);
    const std::string log = io::read_text(out / "iterations.csv");
    CHECK(std::count(log.begin(), log.end(), '\n') == 2);
    CHECK(fs::exists(out / "model.txt"));
    CHECK(fs::exists(out / "predicted.txt"));
    CHECK(fs::exists(out / "timings.csv"));
    CHECK(fs::exists(out / "sections"));

    inputs.eta_path = (in / "missing_eta.txt").string();
    try {
      app::cmd_invert(cfg, inputs, out, false);
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find("missing_eta.txt") != std::string::npos);
    }
  }

  TEST_CASE("output directory precedence") {
    RunConfig c;
    c.output_dir = "from_config";
    ::unsetenv("TVGRAV_OUTPUT_DIR");
    CHECK(app::resolve_output_dir(c, "") == fs::path("from_config"));
    ::setenv("TVGRAV_OUTPUT_DIR", "from_env", 1);
    CHECK(app::resolve_output_dir(c, "") == fs::path("from_env"));
    CHECK(app::resolve_output_dir(c, "from_flag") == fs::path("from_flag"));
    ::unsetenv("TVGRAV_OUTPUT_DIR");
  }
}

TEST_SUITE("verify") {
  TEST_CASE("all checks pass and report residuals") {
    const auto report = app::run_verify(5);
    CHECK(report.all_passed());
    CHECK(report.checks.size() >= 6);
    const std::string text = report.to_text();
    CHECK(text.find("residual=") != std::string::npos);
    bool has_negative = false;
    for (const auto& c : report.checks) {
      CHECK(c.residual >= 0.0);
      if (c.name.find("negative control") != std::string::npos) has_negative = c.passed && c.residual > c.threshold;
    }
    CHECK(has_negative);
  }
}
