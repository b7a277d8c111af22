#pragma once

#include <vector>

#include "tvgrav/gsvd.hpp"

namespace tvgrav {

struct UpreCurve {
  std::vector<double> alphas;
  std::vector<double> values;
  std::size_t argmin = 0;
  double alpha_opt = 0.0;

  bool at_endpoint() const { return argmin == 0 || argmin + 1 == alphas.size(); }
};

/// UPRE in GSVD form, with beta = U^T r as returned by GsvdFactors::project.
double upre_value_projected(const Vector& gamma, const Vector& beta, double alpha);
double upre_value(const GsvdFactors& f, const Vector& r, double alpha);

/// Minimizes UPRE on a log grid spanning the smallest positive and the largest
/// finite gamma. Ties go to the larger alpha. A one-point grid is {gamma_max}.
UpreCurve select_alpha_projected(const Vector& gamma, const Vector& beta, int grid_size = 100);
UpreCurve select_alpha(const GsvdFactors& f, const Vector& r, int grid_size = 100);

}  // namespace tvgrav
