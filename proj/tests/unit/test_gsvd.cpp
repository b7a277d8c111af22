#include <doctest.h>

#include <cmath>
#include <vector>

#include "tvgrav/app.hpp"
#include "tvgrav/gsvd.hpp"
#include "tvgrav/oracle.hpp"

using namespace tvgrav;

namespace {

double rel_err(const Vector& a, const Vector& b) { return (a - b).norm() / b.norm(); }

double median_gamma(const GsvdFactors& f) {
  std::vector<double> g;
  for (Index i = 0; i < f.size(); ++i)
    if (std::isfinite(f.gamma[i]) && f.gamma[i] > 0) g.push_back(f.gamma[i]);
  std::nth_element(g.begin(), g.begin() + static_cast<long>(g.size() / 2), g.end());
  return g[g.size() / 2];
}

}  // namespace

TEST_SUITE("gsvd") {
  TEST_CASE("identical identity operators") {
    const Matrix I = Matrix::Identity(2, 2);
    const auto f = gsvd_pair(I, I);
    for (Index i = 0; i < 2; ++i) {
      CHECK(f.gamma[i] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(f.lambda[i] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
      CHECK(f.mu[i] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    }
  }

  TEST_CASE("B = I gives the singular values of A") {
    const Matrix A = oracle::random_matrix(6, 8, 21);
    const auto f = gsvd_pair(A, Matrix::Identity(8, 8));
    const Vector s = Eigen::JacobiSVD<Matrix>(A).singularValues();  // descending, 6 values
    // Two components carry lambda = 0, the remaining six are the singular values in ascending order.
    CHECK(f.gamma[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.gamma[1] == doctest::Approx(0.0).epsilon(1e-12));
    for (Index i = 0; i < 6; ++i) CHECK(f.gamma[2 + i] == doctest::Approx(s[5 - i]).epsilon(1e-10));
  }

  TEST_CASE("reconstruction with a diagonal B") {
    const Matrix A = oracle::random_matrix(5, 8, 3);
    const Matrix B = oracle::random_matrix(8, 1, 4).col(0).cwiseAbs().asDiagonal();
    const auto f = gsvd_pair(A, B);
    CHECK(app::gsvd_residuals(A, B, f).max() < 1e-10);
  }

  TEST_CASE("random pairs: all invariants") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Index m = 3 + static_cast<Index>(seed % 10);
      const Index n = 10 + static_cast<Index>(seed * 7 % 40);
      const Index p = (seed % 2 == 0) ? n : 3 * n;
      const Matrix A = oracle::random_matrix(m, n, 100 + seed);
      const Matrix B = oracle::random_matrix(p, n, 200 + seed);
      const auto f = gsvd_pair(A, B);
      CAPTURE(seed);
      CHECK(app::gsvd_residuals(A, B, f).max() < 1e-10);
      for (Index i = 1; i < f.size(); ++i) CHECK(f.gamma[i] >= f.gamma[i - 1]);
      CHECK(f.gamma.minCoeff() >= 0.0);
      const Matrix Z = f.Z();
      const Matrix Zp = f.Z_pinv();
      CHECK((Z * Zp - Matrix::Identity(n, n)).norm() < 1e-10);
      const Matrix P = Zp * Z;
      CHECK((P - P.transpose()).norm() < 1e-10);
      CHECK((P * P - P).norm() < 1e-10);
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(gsvd_pair(Matrix::Identity(3, 3), Matrix::Identity(3, 4)), DimensionError);
    Matrix A = Matrix::Zero(2, 3);
    A(0, 0) = 1.0;
    Matrix B = Matrix::Zero(2, 3);
    B(0, 1) = 1.0;
    CHECK_THROWS_AS(gsvd_pair(A, B), NumericalError);  // e3 is a shared null vector
  }

  TEST_CASE("filtered solution vs dense normal-equations solve") {
    const Matrix A = oracle::random_matrix(10, 30, 7);
    const Matrix B = oracle::random_matrix(30, 30, 8);
    const Vector r = oracle::random_matrix(10, 1, 9).col(0);
    const auto f = gsvd_pair(A, B);
    const double alpha = median_gamma(f);
    const Matrix N = A.transpose() * A + alpha * alpha * B.transpose() * B;
    const Vector h_ne = N.ldlt().solve(A.transpose() * r);
    CHECK(rel_err(filtered_solution(f, r, alpha), h_ne) < 1e-8);
    CHECK(rel_err(filtered_solution(f, r, alpha), oracle::tikhonov_direct(A, B, r, alpha)) < 1e-8);
  }

  TEST_CASE("random instances vs stacked direct solve") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Index m = 5 + static_cast<Index>(seed);
      const Index n = 20 + 4 * static_cast<Index>(seed);
      const Index p = (seed % 2 == 0) ? n : 3 * n;
      const Matrix A = oracle::random_matrix(m, n, 300 + seed);
      const Matrix B = oracle::random_matrix(p, n, 400 + seed);
      const Vector r = oracle::random_matrix(m, 1, 500 + seed).col(0);
      const auto f = gsvd_pair(A, B, {false, 1e-12});
      for (double alpha : {1e-3, 0.1, 1.0, 10.0}) {
        CAPTURE(alpha);
        CHECK(rel_err(filtered_solution(f, r, alpha), oracle::tikhonov_direct(A, B, r, alpha)) < 1e-8);
      }
    }
  }

  TEST_CASE("B = I matches standard-form Tikhonov") {
    const Matrix A = oracle::random_matrix(8, 15, 11);
    const Vector r = oracle::random_matrix(8, 1, 12).col(0);
    const auto f = gsvd_pair(A, Matrix::Identity(15, 15));
    CHECK(rel_err(filtered_solution(f, r, 0.3), oracle::tikhonov_svd(A, r, 0.3)) < 1e-8);
  }

  TEST_CASE("large alpha limit and norm monotonicity") {
    const Matrix A = oracle::random_matrix(10, 30, 13);
    const Matrix B = oracle::random_matrix(30, 30, 14);
    const Vector r = oracle::random_matrix(10, 1, 15).col(0);
    const auto f = gsvd_pair(A, B);
    double gmax = 0.0;
    for (Index i = 0; i < f.size(); ++i)
      if (std::isfinite(f.gamma[i])) gmax = std::max(gmax, f.gamma[i]);
    CHECK(filtered_solution(f, r, 1e12 * gmax).norm() < 1e-6 * filtered_solution(f, r, gmax).norm());

    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
      const double alpha = std::pow(10.0, -4.0 + 8.0 * i / 19.0);
      const double nrm = filtered_solution(f, r, alpha).norm();
      CHECK(nrm <= prev * (1 + 1e-12));
      prev = nrm;
    }
    CHECK_THROWS_AS(filtered_solution(f, r, 0.0), DomainError);
  }

  TEST_CASE("filter factor") {
    CHECK(filter_factor(2.0, 2.0) == 0.5);
    CHECK(filter_factor(std::numeric_limits<double>::infinity(), 5.0) == 1.0);
    CHECK(filter_factor(0.0, 1.0) == 0.0);
  }
}
