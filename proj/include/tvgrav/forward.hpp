#pragma once

#include <cstddef>

#include "tvgrav/mesh.hpp"
#include "tvgrav/types.hpp"

namespace tvgrav {

/// mGal per (g/cm^3) * SI gravitational constant scaling.
inline constexpr double kGravConstant = 6.674e-11;
inline constexpr double kSiToMgalPerGcc = kGravConstant * 1.0e3 * 1.0e5;

/// Vertical attraction (mGal, positive for mass below the station) of a
/// uniform rectangular prism, closed form. Throws DomainError when the station
/// lies strictly inside the prism.
double prism_gz(const Point3& station, const Box& prism, double density);

struct SensitivityMatrix {
  RowMatrix entries;  // m x n, mGal per g/cm^3

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }
};

inline constexpr std::size_t kDefaultMemoryLimit = std::size_t{4} << 30;

SensitivityMatrix assemble_G(const Mesh3D& mesh, const SurveyGrid& grid,
                             std::size_t memory_limit_bytes = kDefaultMemoryLimit);

Vector predict(const SensitivityMatrix& G, const Vector& model);

}  // namespace tvgrav
