#include "tvgrav/gsvd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace tvgrav {

Matrix GsvdFactors::Z() const {
  if (basis) return Xt * basis->transpose();
  return Xt;
}

Matrix GsvdFactors::Z_pinv() const {
  if (basis) return *basis * Xt_inv;
  return Xt_inv;
}

Vector GsvdFactors::apply_Z_pinv(const Vector& coeffs) const {
  const Vector small = Xt_inv * coeffs;
  if (basis) return *basis * small;
  return small;
}

Vector GsvdFactors::project(const Vector& r) const {
  if (r.size() != U.rows()) {
    throw DimensionError("project: vector length " + std::to_string(r.size()) +
                         " does not match U rows " + std::to_string(U.rows()));
  }
  Vector beta = Vector::Zero(size());
  beta.tail(U.cols()) = U.transpose() * r;
  return beta;
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Left singular vectors, singular values (descending) and full right vectors.
struct SvdParts {
  Matrix U;
  Vector s;
  Matrix V;
};

SvdParts svd_full_v(const Matrix& M) {
  if (M.rows() > 2 * M.cols()) {
    // Tall: reduce to the square triangular factor first.
    Eigen::HouseholderQR<Matrix> qr(M);
    const Matrix R = qr.matrixQR().topRows(M.cols()).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<Matrix> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix U = qr.householderQ() * Matrix::Identity(M.rows(), M.cols());
    return {U * svd.matrixU(), svd.singularValues(), svd.matrixV()};
  }
  Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace

static GsvdFactors gsvd_core(const Matrix& A, const Matrix& B, const GsvdOptions& options) {
  if (A.cols() != B.cols()) {
    throw DimensionError("gsvd_pair: column counts differ (" + std::to_string(A.cols()) + " vs " +
                         std::to_string(B.cols()) + ")");
  }
  const Index m = A.rows();
  const Index p = B.rows();
  const Index k = A.cols();
  if (k == 0) throw DimensionError("gsvd_pair: empty pair");
  if (m + p < k) throw NumericalError("ill-posed pair: stacked matrix has fewer rows than columns");

  // Stacked QR with pivoting: [A; B] P = Qs R.
  Matrix S(m + p, k);
  S.topRows(m) = A;
  S.bottomRows(p) = B;
  Eigen::ColPivHouseholderQR<Matrix> qr(S);
  qr.setThreshold(options.rank_tol);
  if (qr.rank() < k) {
    throw NumericalError("ill-posed pair: A and B share a null vector (rank " +
                         std::to_string(qr.rank()) + " < " + std::to_string(k) + ")");
  }
  const Matrix Qs = qr.householderQ() * Matrix::Identity(m + p, k);
  const Matrix R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  S.resize(0, 0);

  // CS decomposition of [Q1; Q2].
  const Index r = std::min(m, k);
  Eigen::BDCSVD<Matrix> svd1(Qs.topRows(m), Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Matrix& V1 = svd1.matrixV();
  const Vector& sig = svd1.singularValues();

  Matrix W(k, k);
  Vector c = Vector::Zero(k);
  for (Index i = 0; i < k; ++i) {
    W.col(i) = V1.col(k - 1 - i);
    if (i >= k - r) c[i] = std::min(1.0, sig[k - 1 - i]);
  }
  GsvdFactors f;
  f.u_offset = k - r;
  f.U.resize(m, r);
  for (Index i = f.u_offset; i < k; ++i) f.U.col(i - f.u_offset) = svd1.matrixU().col(k - 1 - i);

  Index g = 0;
  while (g < k && c[g] <= kInvSqrt2) ++g;
  const Index k2 = k - g;

  Matrix T = Qs.bottomRows(p) * W;
  f.lambda.resize(k);
  f.mu.resize(k);

  // Components with mu >= 1/sqrt(2): V from the normalized columns of Q2 W.
  Matrix Vg(p, g);
  for (Index i = 0; i < g; ++i) {
    const double s = T.col(i).norm();
    const double h = std::hypot(c[i], s);
    f.lambda[i] = c[i] / h;
    f.mu[i] = s / h;
    Vg.col(i) = T.col(i) / s;
  }

  // Components with lambda > 1/sqrt(2): diagonalize the Q2 side, then rebuild U.
  Matrix V2;
  if (k2 > 0) {
    SvdParts t2 = svd_full_v(T.rightCols(k2));
    W.rightCols(k2) = W.rightCols(k2) * t2.V;
    const Matrix UQ = Qs.topRows(m) * W.rightCols(k2);
    for (Index j = 0; j < k2; ++j) {
      const Index i = g + j;
      const double s = j < t2.s.size() ? t2.s[j] : 0.0;
      const double cc = UQ.col(j).norm();
      const double h = std::hypot(cc, s);
      f.lambda[i] = cc / h;
      f.mu[i] = s / h;
      f.U.col(i - f.u_offset) = UQ.col(j) / cc;
    }
    V2 = std::move(t2.U);
  }
  T.resize(0, 0);

  if (options.compute_v) {
    Index v_count = g;
    for (Index j = 0; j < V2.cols(); ++j) {
      if (f.mu[g + j] > 0.0) v_count = g + j + 1;
    }
    f.V.resize(p, v_count);
    f.V.leftCols(g) = Vg;
    if (v_count > g) f.V.rightCols(v_count - g) = V2.leftCols(v_count - g);
  }

  f.gamma.resize(k);
  for (Index i = 0; i < k; ++i) {
    f.gamma[i] = f.mu[i] > 0.0 ? f.lambda[i] / f.mu[i] : std::numeric_limits<double>::infinity();
  }

  // Xt = W^T R P^T, Xt^{-1} = P R^{-1} W.
  const auto& P = qr.colsPermutation();
  f.Xt = (W.transpose() * R) * P.transpose();
  const Matrix RinvW = R.triangularView<Eigen::Upper>().solve(W);
  f.Xt_inv = P * RinvW;

  // Stable sort by gamma. Zero-lambda components stay first and infinite-gamma
  // components last, so the U / V alignment blocks are preserved.
  std::vector<Index> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](Index a, Index b) { return f.gamma[a] < f.gamma[b]; });
  bool identity = true;
  for (Index i = 0; i < k; ++i) identity = identity && perm[static_cast<std::size_t>(i)] == i;
  if (!identity) {
    GsvdFactors sorted = f;
    for (Index i = 0; i < k; ++i) {
      const Index o = perm[static_cast<std::size_t>(i)];
      sorted.lambda[i] = f.lambda[o];
      sorted.mu[i] = f.mu[o];
      sorted.gamma[i] = f.gamma[o];
      sorted.Xt.row(i) = f.Xt.row(o);
      sorted.Xt_inv.col(i) = f.Xt_inv.col(o);
      if (i >= f.u_offset) sorted.U.col(i - f.u_offset) = f.U.col(o - f.u_offset);
      if (i < f.V.cols()) sorted.V.col(i) = f.V.col(o);
    }
    f = std::move(sorted);
  }
  return f;
}

GsvdFactors gsvd_pair(const Matrix& A, const Matrix& B, const GsvdOptions& options) {
  const Index k = A.cols();
  if (B.cols() != k || B.rows() <= 2 * k) return gsvd_core(A, B, options);
  // Tall B: only B^T B enters Lambda, M and Z, so factor against its triangular factor.
  Eigen::HouseholderQR<Matrix> qr(B);
  const Matrix Rb = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  GsvdFactors f = gsvd_core(A, Rb, options);
  if (options.compute_v && f.V.cols() > 0) {
    Matrix V = Matrix::Zero(B.rows(), f.V.cols());
    V.topRows(k) = f.V;
    f.V = qr.householderQ() * V;
  }
  return f;
}

Vector filtered_solution_projected(const GsvdFactors& f, const Vector& beta, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("regularization parameter must be > 0");
  if (beta.size() != f.size()) throw DimensionError("filtered_solution: projected data length mismatch");
  const double tol = 1e-12 * f.lambda.maxCoeff();
  Vector coeffs = Vector::Zero(f.size());
  for (Index i = 0; i < f.size(); ++i) {
    if (f.lambda[i] <= tol) continue;
    coeffs[i] = filter_factor(f.gamma[i], alpha) * beta[i] / f.lambda[i];
  }
  return f.apply_Z_pinv(coeffs);
}

Vector filtered_solution(const GsvdFactors& f, const Vector& r, double alpha) {
  return filtered_solution_projected(f, f.project(r), alpha);
}

}  // namespace tvgrav
