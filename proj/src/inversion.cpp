#include "tvgrav/inversion.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "tvgrav/regparam.hpp"
#include "tvgrav/rgsvd.hpp"

namespace tvgrav {

void InversionConfig::validate(Index n) const {
  if (q < 1) throw ConfigError("q must be >= 1");
  if (oversampling < 0) throw ConfigError("oversampling must be >= 0");
  if (!(eps > 0.0)) throw ConfigError("eps must be > 0");
  if (!(exponent < 0.0)) throw ConfigError("TV weight exponent must be negative");
  if (!(rho_min < rho_max)) throw ConfigError("rho_min must be < rho_max");
  if (k_max < 1) throw ConfigError("k_max must be >= 1");
  if (upre_grid < 1) throw ConfigError("upre_grid must be >= 1");
  if (depth_beta < 0.0) throw ConfigError("depth_beta must be >= 0");
  if (m_apr.size() != 0 && m_apr.size() != n) {
    throw DimensionError("m_apr length " + std::to_string(m_apr.size()) + " does not match n = " +
                         std::to_string(n));
  }
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::NoiseLevel: return "noise_level";
    case Termination::Stagnation: return "stagnation";
    case Termination::MaxIterations: return "max_iterations";
  }
  return "?";
}

const char* to_string(InversionMode m) {
  return m == InversionMode::Full3D ? "full3d" : "ad";
}

Vector project_bounds(const Vector& m, double rho_min, double rho_max) {
  if (!(rho_min < rho_max)) throw ConfigError("rho_min must be < rho_max");
  return m.cwiseMax(rho_min).cwiseMin(rho_max);
}

double chi_squared(const Vector& d_obs, const Vector& d_pre, const DataWeighting& Wd) {
  if (d_obs.size() != d_pre.size() || d_obs.size() != Wd.diagonal.size()) {
    throw DimensionError("chi_squared: dimension mismatch");
  }
  return (Wd.diagonal.cwiseProduct(d_obs - d_pre)).squaredNorm();
}

double chi2_target(Index m) {
  const double md = static_cast<double>(m);
  return md + std::sqrt(2.0 * md);
}

double relative_error(const Vector& m_exact, const Vector& m) {
  if (m_exact.size() != m.size()) throw DimensionError("relative_error: length mismatch");
  const double norm = m_exact.norm();
  if (!(norm > 0.0)) throw DomainError("relative_error: exact model is zero");
  return (m_exact - m).norm() / norm;
}

Direction ad_direction(int k) {
  switch (((k % 3) + 3) % 3) {
    case 0: return Direction::X;
    case 1: return Direction::Y;
    default: return Direction::Z;
  }
}

SparseRowMatrix ad_operator_for(int k, const DerivativeOps& ops, const TvWeights& weights) {
  if (ops.variant != DerivativeVariant::Trimmed) {
    throw ConfigError("alternating-direction operators require trimmed derivatives");
  }
  return weighted_D(weights, ops, ad_direction(k));
}

InversionResult invert(const Vector& d_obs, const SensitivityMatrix& G, const Vector& eta,
                       const Mesh3D& mesh, const InversionConfig& cfg,
                       const std::optional<Vector>& m_true, const IterationCallback& on_iteration) {
  using clock = std::chrono::steady_clock;
  const Index m = G.rows();
  const Index n = G.cols();
  if (n != mesh.size()) throw DimensionError("sensitivity columns do not match mesh size");
  if (d_obs.size() != m || eta.size() != m) {
    throw DimensionError("data length " + std::to_string(d_obs.size()) + " / eta length " +
                         std::to_string(eta.size()) + " do not match m = " + std::to_string(m));
  }
  if (m_true && m_true->size() != n) throw DimensionError("true model length does not match n");
  cfg.validate(n);

  const DataWeighting Wd = build_data_weighting(eta);
  const DepthWeighting Wdepth = build_depth_weighting(mesh, cfg.depth_beta, cfg.depth_z0);
  const Vector depth_inv = Wdepth.inverse();

  InversionResult result;
  result.chi2_target = chi2_target(m);
  Vector model = cfg.m_apr.size() == n ? cfg.m_apr : Vector::Zero(n);
  const Vector m_apr = model;

  Vector r_tilde = Wd.diagonal.cwiseProduct(d_obs - G.entries * model);
  double chi2 = r_tilde.squaredNorm();
  result.initial_chi2 = chi2;
  if (chi2 <= result.chi2_target) {
    result.model = model;
    result.chi2 = chi2;
    result.termination = Termination::NoiseLevel;
    return result;
  }

  // G~~ = W_d G W_depth^{-1}
  const Matrix Gtt = Wd.diagonal.asDiagonal() * G.entries * depth_inv.asDiagonal();
  const RgsvdSolver solver(
      Gtt, sketch_basis(Gtt, cfg.q, cfg.oversampling, cfg.seed, cfg.power_iterations),
      GsvdOptions{false, 1e-12});

  const bool ad = cfg.mode == InversionMode::AlternatingDirection;
  const DerivativeOps ops = build_derivatives(
      mesh, ad ? DerivativeVariant::Trimmed : DerivativeVariant::Square, cfg.scaling);
  TvWeights weights = unit_weights(n);

  int stagnant = 0;
  int endpoint_run = 0;
  Vector cycle_start = model;
  for (int k = 1; k <= cfg.k_max; ++k) {
    const auto t0 = clock::now();
    const Direction dir = ad ? ad_direction(k) : Direction::All;
    const SparseRowMatrix Dt = ad ? ad_operator_for(k, ops, weights) : weighted_D(weights, ops, dir);

    GsvdFactors f;
    try {
      f = solver.factor(Dt);
    } catch (const Error& e) {
      throw NumericalError("iteration " + std::to_string(k) + ": " + e.what());
    }
    const Vector beta = f.project(r_tilde);
    const UpreCurve curve = select_alpha_projected(f.gamma, beta, cfg.upre_grid);
    const Vector h = filtered_solution_projected(f, beta, curve.alpha_opt);

    const Vector previous = model;
    model = project_bounds(model + depth_inv.cwiseProduct(h), cfg.rho_min, cfg.rho_max);
    if (!model.allFinite()) {
      throw NumericalError("iteration " + std::to_string(k) + ": non-finite model entries");
    }
    r_tilde = Wd.diagonal.cwiseProduct(d_obs - G.entries * model);
    chi2 = r_tilde.squaredNorm();

    IterationRecord rec;
    rec.k = k;
    rec.alpha = curve.alpha_opt;
    rec.chi2 = chi2;
    rec.direction = dir;
    rec.alpha_at_endpoint = curve.at_endpoint();
    const double mnorm = model.norm();
    rec.model_change = mnorm > 0.0 ? (model - previous).norm() / mnorm : 0.0;
    if (m_true) rec.relative_error = relative_error(*m_true, model);

    endpoint_run = rec.alpha_at_endpoint ? endpoint_run + 1 : 0;
    if (endpoint_run == 3) {
      result.warnings.push_back("iteration " + std::to_string(k) +
                                ": UPRE minimum at a grid endpoint for 3 consecutive iterations");
    }
    rec.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    result.log.push_back(rec);
    result.iterations = k;
    if (on_iteration) on_iteration(rec, model);

    if (chi2 <= result.chi2_target) {
      result.termination = Termination::NoiseLevel;
      break;
    }
    if (cfg.stagnation_tol > 0.0) {
      // AD: one test per completed x/y/z cycle.
      const bool test_now = !ad || k % 3 == 0;
      if (test_now) {
        const Vector& ref = ad ? cycle_start : previous;
        const double change = mnorm > 0.0 ? (model - ref).norm() / mnorm : 0.0;
        stagnant = change < cfg.stagnation_tol ? stagnant + 1 : 0;
        cycle_start = model;
        if (stagnant >= cfg.stagnation_count) {
          result.termination = Termination::Stagnation;
          break;
        }
      }
    }
    if (k == cfg.k_max) break;

    const Vector weight_input = cfg.weight_source == WeightSource::Increment
                                    ? h
                                    : Vector(Wdepth.diagonal.cwiseProduct(model - m_apr));
    weights = tv_weights(weight_input, ops, cfg.eps, cfg.exponent);
  }
  result.model = model;
  result.chi2 = chi2;
  return result;
}

}  // namespace tvgrav
