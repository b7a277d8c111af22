#pragma once

#include <cstdint>

#include "tvgrav/mesh.hpp"
#include "tvgrav/types.hpp"

// Reference computations that check the factorization-based code paths
// through independent routes (dense solves, explicit traces, quadrature).
namespace tvgrav::oracle {

/// Gaussian matrix from std::mt19937_64, independent of the library sketch RNG.
Matrix random_matrix(Index rows, Index cols, std::uint64_t seed);

/// argmin ||A h - r||^2 + alpha^2 ||B h||^2 by QR of the stacked [A; alpha B].
Vector tikhonov_direct(const Matrix& A, const Matrix& B, const Vector& r, double alpha);

/// Standard-form Tikhonov (B = I) from the SVD of A.
Vector tikhonov_svd(const Matrix& A, const Vector& r, double alpha);

/// ||P_A (A h(alpha) - r)||^2 + 2 trace(H_alpha) - k with the influence matrix
/// H = A (A^T A + alpha^2 B^T B)^{-1} A^T built explicitly and P_A the
/// orthogonal projector onto range(A).
double upre_trace(const Matrix& A, const Matrix& B, const Vector& r, double alpha, Index k);

/// Nested adaptive Gauss-Kronrod integration of the point-mass kernel over the prism (mGal).
double gz_quadrature(const Point3& station, const Box& prism, double density, double rel_tol = 1e-10);

/// Point mass at the prism centroid (mGal).
double gz_point_mass(const Point3& station, const Box& prism, double density);

}  // namespace tvgrav::oracle
