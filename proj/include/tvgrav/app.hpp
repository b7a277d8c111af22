#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tvgrav/config.hpp"
#include "tvgrav/forward.hpp"
#include "tvgrav/gsvd.hpp"
#include "tvgrav/inversion.hpp"
#include "tvgrav/synthetic.hpp"

namespace tvgrav::app {

namespace fs = std::filesystem;

struct SyntheticProblem {
  Mesh3D mesh;
  SurveyGrid grid;
  Vector m_true;
  SensitivityMatrix G;
  Vector d_exact;
  NoisyData data;
};

/// Truth model, sensitivity, exact and noisy data for a config.
SyntheticProblem make_problem(const RunConfig& cfg);

/// Output directory precedence: explicit flag, then $TVGRAV_OUTPUT_DIR, then config.
fs::path resolve_output_dir(const RunConfig& cfg, const std::string& flag);

void write_resolved_config(const fs::path& dir, const RunConfig& cfg);

void cmd_synth(const RunConfig& cfg, const fs::path& out, bool sections, bool save_g);
void cmd_forward(const RunConfig& cfg, const std::string& model_path, const fs::path& out);

struct InvertInputs {
  std::string data_path;
  std::string eta_path;
  std::string true_model_path;  // optional
  std::string sensitivity_path;  // optional binary dump
};

InversionResult cmd_invert(const RunConfig& cfg, const InvertInputs& in, const fs::path& out,
                           bool sections, std::ostream* progress = nullptr);

// Oracle self-check report.
struct VerifyCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
  std::string to_text() const;
};

struct GsvdResiduals {
  double orth_u = 0.0;
  double orth_v = 0.0;
  double cs_identity = 0.0;
  double recon_a = 0.0;
  double recon_b = 0.0;
  double max() const;
};

/// Orthonormality, lambda^2 + mu^2 = 1 and relative reconstruction residuals.
GsvdResiduals gsvd_residuals(const Matrix& A, const Matrix& B, const GsvdFactors& f);

VerifyReport run_verify(int instances = 10);

// Experiment reproduction.
struct ReproRow {
  std::string label;
  std::string m_apr;  // "0" or "noisy"
  double rho_min = 0.0;
  double rho_max = 1.0;
  int k_max = 200;
  Index q = 500;
  InversionResult result;
  double relative_error = 0.0;
  double seconds = 0.0;
};

struct ReproOptions {
  std::vector<int> rows;  // 1-based; empty means all
  bool full_scale = false;  // table2 only
  std::uint64_t noise_seed = 2018;
  std::uint64_t sketch_seed = 20180101;
  std::ostream* progress = nullptr;
};

std::vector<ReproRow> repro_table1(const fs::path& out, const ReproOptions& opts);
std::vector<ReproRow> repro_table2(const fs::path& out, const ReproOptions& opts);

std::string format_summary(const std::vector<ReproRow>& rows);

}  // namespace tvgrav::app
