#pragma once

#include <limits>
#include <memory>

#include "tvgrav/types.hpp"

namespace tvgrav {

/// Economy generalized SVD of a pair (A, B) with k = A.cols():
///
///   A = U diag(lambda) Z,   B = V diag(mu) Z,   lambda_i^2 + mu_i^2 = 1,
///
/// components sorted by gamma_i = lambda_i / mu_i, non-decreasing (mu_i = 0
/// gives gamma_i = +inf).
///
/// U has min(m, k) columns and is aligned with the *last* components:
/// component i owns column i - u_offset when i >= u_offset; earlier components
/// have lambda_i = 0. V is aligned with the *first* components: component i
/// owns column i when i < V.cols(); later components have mu_i = 0.
///
/// Z = Xt * basis^T where basis is an optional column-orthonormal n x k matrix
/// (the sketch basis of a randomized factorization); without a basis Z = Xt.
struct GsvdFactors {
  Matrix U;
  Matrix V;
  Vector lambda;
  Vector mu;
  Vector gamma;
  Index u_offset = 0;

  Matrix Xt;         // k x k
  Matrix Xt_inv;     // k x k, inverse of Xt
  std::shared_ptr<const Matrix> basis;

  Index size() const { return lambda.size(); }
  Index cols() const { return basis ? basis->rows() : Xt.cols(); }

  Matrix Z() const;
  /// Moore-Penrose inverse of Z (n x k).
  Matrix Z_pinv() const;
  /// Z_pinv * coeffs without materializing Z_pinv.
  Vector apply_Z_pinv(const Vector& coeffs) const;

  /// beta_i = u_i^T r aligned with components (0 where there is no U column).
  Vector project(const Vector& r) const;
};

struct GsvdOptions {
  bool compute_v = true;
  /// Relative rank tolerance on the stacked pair.
  double rank_tol = 1e-12;
};

/// Throws DimensionError for differing column counts and NumericalError
/// (ill-posed pair) when A and B share a null vector.
GsvdFactors gsvd_pair(const Matrix& A, const Matrix& B, const GsvdOptions& options = {});

/// Tikhonov filter factor gamma^2 / (gamma^2 + alpha^2), 1 for infinite gamma.
inline double filter_factor(double gamma, double alpha) {
  if (gamma == std::numeric_limits<double>::infinity()) return 1.0;
  const double g2 = gamma * gamma;
  return g2 / (g2 + alpha * alpha);
}

/// h(alpha) = sum_i f_i (u_i^T r / lambda_i) Z_pinv[:, i], skipping components
/// with lambda_i <= 1e-12 max(lambda).
Vector filtered_solution(const GsvdFactors& f, const Vector& r, double alpha);
Vector filtered_solution_projected(const GsvdFactors& f, const Vector& beta, double alpha);

}  // namespace tvgrav
