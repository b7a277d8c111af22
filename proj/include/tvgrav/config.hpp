#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "tvgrav/inversion.hpp"
#include "tvgrav/mesh.hpp"
#include "tvgrav/synthetic.hpp"

namespace tvgrav {

struct SurveySpec {
  Index nx = 30;
  Index ny = 30;
  double spacing = 50.0;
  double height = 0.0;
  double x0 = 25.0;
  double y0 = 25.0;
  std::string stations_file;  // when set, stations come from a data grid file
};

struct PriorSpec {
  std::string kind = "zero";  // zero | noisy_true | file
  double a = 0.05;
  double b = 0.02;
  std::uint64_t seed = 11;
  std::string path;
};

/// Everything a CLI run needs. Serialized as nested JSON tables; the resolved
/// form written next to every output contains every default explicitly.
struct RunConfig {
  std::string name = "custom";
  Mesh3D mesh = Mesh3D(30, 30, 10, 50.0, 50.0, 50.0);
  SurveySpec survey;
  std::string model_preset = "dikes";  // dikes | multibody | file | none
  std::string model_file;
  NoiseModel noise;
  PriorSpec prior;
  InversionConfig inversion;
  std::string output_dir = "out";
  std::size_t memory_limit_mb = 4096;

  SurveyGrid survey_grid() const;
};

/// dikes-table1, multibody-table2, multibody-desk.
RunConfig preset_config(const std::string& name);

/// Applies keys from j on top of base; unknown keys are a ConfigError.
RunConfig apply_json(RunConfig base, const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

/// Reads a config file. A top-level "preset" key selects the base.
RunConfig load_config(const std::string& path);

}  // namespace tvgrav
