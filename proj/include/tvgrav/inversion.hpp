#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tvgrav/forward.hpp"
#include "tvgrav/mesh.hpp"
#include "tvgrav/operators.hpp"

namespace tvgrav {

enum class InversionMode { Full3D, AlternatingDirection };

/// Source of the vector used to refresh the TV weights after each iteration.
/// Increment uses h^(k) as the algorithm states; CumulativeScaled is
/// experimental and uses W_depth (m^(k) - m_apr).
enum class WeightSource { Increment, CumulativeScaled };

struct InversionConfig {
  Index q = 500;
  Index oversampling = 10;
  int power_iterations = 0;
  double eps = 1e-4;
  double exponent = kTvExponent;
  double rho_min = 0.0;
  double rho_max = 1.0;
  int k_max = 200;
  Vector m_apr;  // empty means zeros
  double depth_beta = 2.0;
  double depth_z0 = 0.0;  // <= 0: half the top-layer thickness
  InversionMode mode = InversionMode::AlternatingDirection;
  DerivativeScaling scaling = DerivativeScaling::Physical;
  WeightSource weight_source = WeightSource::Increment;
  std::uint64_t seed = 20180101;
  int upre_grid = 100;
  /// Relative model change below which an iteration (AD: a 3-cycle) counts
  /// as stagnant; <= 0 disables the test.
  double stagnation_tol = 1e-3;
  int stagnation_count = 3;

  void validate(Index n) const;
};

enum class Termination { NoiseLevel, Stagnation, MaxIterations };

const char* to_string(Termination t);
const char* to_string(InversionMode m);

struct IterationRecord {
  int k = 0;
  double alpha = 0.0;
  double chi2 = 0.0;
  double relative_error = -1.0;  // negative when no true model is known
  Direction direction = Direction::All;
  double model_change = 0.0;
  bool alpha_at_endpoint = false;
  double seconds = 0.0;
};

struct InversionResult {
  Vector model;
  std::vector<IterationRecord> log;
  Termination termination = Termination::MaxIterations;
  int iterations = 0;  // K
  double chi2 = 0.0;
  double chi2_target = 0.0;
  double initial_chi2 = 0.0;
  std::vector<std::string> warnings;
};

using IterationCallback = std::function<void(const IterationRecord&, const Vector& model)>;

InversionResult invert(const Vector& d_obs, const SensitivityMatrix& G, const Vector& eta,
                       const Mesh3D& mesh, const InversionConfig& cfg,
                       const std::optional<Vector>& m_true = std::nullopt,
                       const IterationCallback& on_iteration = {});

Vector project_bounds(const Vector& m, double rho_min, double rho_max);

double chi_squared(const Vector& d_obs, const Vector& d_pre, const DataWeighting& Wd);
/// m + sqrt(2m)
double chi2_target(Index m);

/// ||m_exact - m|| / ||m_exact||; throws DomainError for a zero exact model.
double relative_error(const Vector& m_exact, const Vector& m);

/// Direction cycle for the alternating-direction mode: k mod 3 = 0, 1, 2 -> x, y, z.
Direction ad_direction(int k);
SparseRowMatrix ad_operator_for(int k, const DerivativeOps& ops, const TvWeights& weights);

}  // namespace tvgrav
