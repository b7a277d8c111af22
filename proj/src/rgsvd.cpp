#include "tvgrav/rgsvd.hpp"

#include <string>

#include "tvgrav/rng.hpp"

namespace tvgrav {
namespace {

constexpr std::uint64_t kSketchStream = 0x736b65746368ULL;

Matrix orthonormal_columns(const Matrix& M) {
  Eigen::HouseholderQR<Matrix> qr(M);
  return qr.householderQ() * Matrix::Identity(M.rows(), M.cols());
}

}  // namespace

SketchBasis sketch_basis(const Matrix& A, Index q, Index oversampling, std::uint64_t seed,
                         int power_iterations) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (q < 1) throw ConfigError("target rank q must be >= 1");
  if (oversampling < 0) throw ConfigError("oversampling must be >= 0");
  const Index l = q + oversampling;
  if (l > m) {
    throw ConfigError("q + p = " + std::to_string(l) + " exceeds the number of data m = " +
                      std::to_string(m));
  }
  if (l > n) throw ConfigError("q + p exceeds the number of model cells");

  const CounterRng rng(seed, kSketchStream);
  Matrix omega(l, m);
  for (Index i = 0; i < l; ++i) {
    for (Index j = 0; j < m; ++j) {
      omega(i, j) = rng.normal(static_cast<std::uint64_t>(i * m + j));
    }
  }
  Matrix Y = omega * A;  // l x n
  for (int it = 0; it < power_iterations; ++it) {
    const Matrix Qy = orthonormal_columns(Y.transpose());
    const Matrix Qz = orthonormal_columns(A * Qy);
    Y = Qz.transpose() * A;
  }
  Eigen::HouseholderQR<Matrix> qr(Y.transpose());
  auto Q = std::make_shared<Matrix>(qr.householderQ() * Matrix::Identity(n, l));
  Q->conservativeResize(Eigen::NoChange, q);
  return {std::move(Q), q, oversampling, seed};
}

RgsvdSolver::RgsvdSolver(const Matrix& A, SketchBasis basis, GsvdOptions options)
    : basis_(std::move(basis)), options_(options) {
  if (!basis_.Q || basis_.Q->rows() != A.cols()) {
    throw DimensionError("sketch basis does not match operator columns");
  }
  B1_ = A * *basis_.Q;
}

GsvdFactors RgsvdSolver::finish(const Matrix& B2) const {
  GsvdFactors f = gsvd_pair(B1_, B2, options_);
  f.basis = basis_.Q;
  return f;
}

GsvdFactors RgsvdSolver::factor(const SparseRowMatrix& D) const {
  if (D.cols() != basis_.Q->rows()) throw DimensionError("stabilizer columns do not match basis");
  return finish(D * *basis_.Q);
}

GsvdFactors RgsvdSolver::factor_dense(const Matrix& D) const {
  if (D.cols() != basis_.Q->rows()) throw DimensionError("stabilizer columns do not match basis");
  return finish(D * *basis_.Q);
}

GsvdFactors rgsvd(const Matrix& A, const SparseRowMatrix& D, const SketchBasis& basis,
                  const GsvdOptions& options) {
  return RgsvdSolver(A, basis, options).factor(D);
}

GsvdFactors rgsvd(const Matrix& A, const Matrix& D, const SketchBasis& basis,
                  const GsvdOptions& options) {
  return RgsvdSolver(A, basis, options).factor_dense(D);
}

}  // namespace tvgrav
