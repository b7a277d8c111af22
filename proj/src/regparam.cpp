#include "tvgrav/regparam.hpp"

#include <cmath>
#include <limits>

namespace tvgrav {

double upre_value_projected(const Vector& gamma, const Vector& beta, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("regularization parameter must be > 0");
  if (gamma.size() != beta.size()) throw DimensionError("upre: gamma and beta lengths differ");
  double residual = 0.0;
  double trace = 0.0;
  for (Index i = 0; i < gamma.size(); ++i) {
    const double f = filter_factor(gamma[i], alpha);
    const double one_minus = 1.0 - f;  // 1 / (gamma^2 alpha^-2 + 1)
    residual += one_minus * one_minus * beta[i] * beta[i];
    trace += f;
  }
  return residual + 2.0 * trace - static_cast<double>(gamma.size());
}

double upre_value(const GsvdFactors& f, const Vector& r, double alpha) {
  return upre_value_projected(f.gamma, f.project(r), alpha);
}

UpreCurve select_alpha_projected(const Vector& gamma, const Vector& beta, int grid_size) {
  if (grid_size < 1) throw ConfigError("UPRE grid size must be >= 1");
  double gmin = std::numeric_limits<double>::infinity();
  double gmax = 0.0;
  for (Index i = 0; i < gamma.size(); ++i) {
    const double g = gamma[i];
    if (!(g > 0.0) || std::isinf(g)) continue;
    gmin = std::min(gmin, g);
    gmax = std::max(gmax, g);
  }
  if (!(gmax > 0.0)) throw NumericalError("UPRE: no positive finite generalized singular value");

  UpreCurve curve;
  curve.alphas.resize(static_cast<std::size_t>(grid_size));
  if (grid_size == 1) {
    curve.alphas[0] = gmax;
  } else {
    const double lo = std::log(gmin);
    const double hi = std::log(gmax);
    for (int j = 0; j < grid_size; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(grid_size - 1);
      curve.alphas[static_cast<std::size_t>(j)] = std::exp(lo + t * (hi - lo));
    }
    curve.alphas.back() = gmax;
    curve.alphas.front() = gmin;
  }
  curve.values.resize(curve.alphas.size());
  for (std::size_t j = 0; j < curve.alphas.size(); ++j) {
    curve.values[j] = upre_value_projected(gamma, beta, curve.alphas[j]);
    if (curve.values[j] <= curve.values[curve.argmin]) curve.argmin = j;
  }
  curve.alpha_opt = curve.alphas[curve.argmin];
  return curve;
}

UpreCurve select_alpha(const GsvdFactors& f, const Vector& r, int grid_size) {
  return select_alpha_projected(f.gamma, f.project(r), grid_size);
}

}  // namespace tvgrav
