#pragma once

#include <array>
#include <vector>

#include "tvgrav/types.hpp"

namespace tvgrav {

struct Box {
  double x0, x1, y0, y1, z0, z1;
};

/// Regular prism mesh. z is positive downward and the surface sits at z = 0.
/// Cells are ordered x fastest, then y, then z.
class Mesh3D {
 public:
  Mesh3D(Index nx, Index ny, Index nz, double dx, double dy, double dz,
         Point3 origin = {});

  Index nx() const { return nx_; }
  Index ny() const { return ny_; }
  Index nz() const { return nz_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double dz() const { return dz_; }
  const Point3& origin() const { return origin_; }
  Index size() const { return nx_ * ny_ * nz_; }

  /// Throws std::out_of_range for coordinates outside the mesh.
  Index cell_index(Index i, Index j, Index k) const;
  std::array<Index, 3> cell_coords(Index index) const;

  Point3 cell_center(Index index) const;
  Box cell_box(Index index) const;
  double top() const { return origin_.z; }
  double bottom() const { return origin_.z + static_cast<double>(nz_) * dz_; }

  bool operator==(const Mesh3D& other) const;

 private:
  Index nx_, ny_, nz_;
  double dx_, dy_, dz_;
  Point3 origin_;
};

struct SurveyGrid {
  std::vector<Point3> stations;

  Index size() const { return static_cast<Index>(stations.size()); }
};

/// Regular station grid, x fastest. Stations sit at z = -height.
SurveyGrid build_survey_grid(Index nx_s, Index ny_s, double spacing, double height,
                             double x0 = 0.0, double y0 = 0.0);

/// Checks that every station lies at or above the mesh top.
void validate_survey(const Mesh3D& mesh, const SurveyGrid& grid);

}  // namespace tvgrav
