#include "tvgrav/oracle.hpp"

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tvgrav/forward.hpp"

namespace tvgrav::oracle {

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) M(i, j) = dist(gen);
  }
  return M;
}

Vector tikhonov_direct(const Matrix& A, const Matrix& B, const Vector& r, double alpha) {
  Matrix S(A.rows() + B.rows(), A.cols());
  S << A, alpha * B;
  Vector rhs = Vector::Zero(S.rows());
  rhs.head(A.rows()) = r;
  return S.colPivHouseholderQr().solve(rhs);
}

Vector tikhonov_svd(const Matrix& A, const Vector& r, double alpha) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const Vector ur = svd.matrixU().transpose() * r;
  Vector coeff(s.size());
  for (Index i = 0; i < s.size(); ++i) coeff[i] = s[i] / (s[i] * s[i] + alpha * alpha) * ur[i];
  return svd.matrixV() * coeff;
}

double upre_trace(const Matrix& A, const Matrix& B, const Vector& r, double alpha, Index k) {
  const Matrix N = A.transpose() * A + alpha * alpha * B.transpose() * B;
  const Eigen::FullPivLU<Matrix> lu(N);
  const Matrix Ninv = lu.inverse();
  const Matrix H = A * Ninv * A.transpose();
  const Vector h = tikhonov_direct(A, B, r, alpha);

  Eigen::ColPivHouseholderQR<Matrix> qr(A);
  const Matrix Qa = qr.householderQ() * Matrix::Identity(A.rows(), qr.rank());
  const Vector residual = A * h - r;
  const Vector projected = Qa * (Qa.transpose() * residual);
  return projected.squaredNorm() + 2.0 * H.trace() - static_cast<double>(k);
}

double gz_quadrature(const Point3& s, const Box& b, double density, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr unsigned depth = 15;
  auto fz = [&](double x, double y) {
    auto f = [&](double z) {
      const double dx = x - s.x, dy = y - s.y, dz = z - s.z;
      const double r2 = dx * dx + dy * dy + dz * dz;
      return dz / (r2 * std::sqrt(r2));
    };
    return gauss_kronrod<double, 31>::integrate(f, b.z0, b.z1, depth, rel_tol);
  };
  auto fy = [&](double x) {
    auto f = [&](double y) { return fz(x, y); };
    return gauss_kronrod<double, 31>::integrate(f, b.y0, b.y1, depth, rel_tol);
  };
  const double integral = gauss_kronrod<double, 31>::integrate(fy, b.x0, b.x1, depth, rel_tol);
  return kSiToMgalPerGcc * density * integral;
}

double gz_point_mass(const Point3& s, const Box& b, double density) {
  const double vol = (b.x1 - b.x0) * (b.y1 - b.y0) * (b.z1 - b.z0);
  const double cx = 0.5 * (b.x0 + b.x1) - s.x;
  const double cy = 0.5 * (b.y0 + b.y1) - s.y;
  const double cz = 0.5 * (b.z0 + b.z1) - s.z;
  const double r2 = cx * cx + cy * cy + cz * cz;
  return kSiToMgalPerGcc * density * vol * cz / (r2 * std::sqrt(r2));
}

}  // namespace tvgrav::oracle
