#pragma once

#include <cstdint>
#include <memory>

#include "tvgrav/gsvd.hpp"
#include "tvgrav/types.hpp"

namespace tvgrav {

struct SketchBasis {
  std::shared_ptr<const Matrix> Q;  // n x q, column-orthonormal
  Index q = 0;
  Index oversampling = 0;
  std::uint64_t seed = 0;
};

/// Gaussian row-space sketch: Y = Omega * A (Omega is l x m, l = q + p),
/// thin QR of Y^T, first q columns kept. Requires 1 <= q and q + p <= m.
SketchBasis sketch_basis(const Matrix& A, Index q, Index oversampling, std::uint64_t seed,
                         int power_iterations = 0);

/// Projects both operators onto the basis and factors the projected pair.
GsvdFactors rgsvd(const Matrix& A, const SparseRowMatrix& D, const SketchBasis& basis,
                  const GsvdOptions& options = {});
GsvdFactors rgsvd(const Matrix& A, const Matrix& D, const SketchBasis& basis,
                  const GsvdOptions& options = {});

/// Keeps the sketch and B1 = A Q fixed so that only B2 = D Q is formed per call.
class RgsvdSolver {
 public:
  RgsvdSolver(const Matrix& A, SketchBasis basis, GsvdOptions options = {});

  GsvdFactors factor(const SparseRowMatrix& D) const;
  GsvdFactors factor_dense(const Matrix& D) const;

  const SketchBasis& basis() const { return basis_; }
  const Matrix& B1() const { return B1_; }

 private:
  GsvdFactors finish(const Matrix& B2) const;

  SketchBasis basis_;
  Matrix B1_;
  GsvdOptions options_;
};

}  // namespace tvgrav
