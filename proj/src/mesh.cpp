#include "tvgrav/mesh.hpp"

#include <string>

namespace tvgrav {

Mesh3D::Mesh3D(Index nx, Index ny, Index nz, double dx, double dy, double dz, Point3 origin)
    : nx_(nx), ny_(ny), nz_(nz), dx_(dx), dy_(dy), dz_(dz), origin_(origin) {
  if (nx < 1 || ny < 1 || nz < 1) throw ConfigError("mesh cell counts must be >= 1");
  if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0)) throw ConfigError("mesh cell sizes must be > 0");
}

Index Mesh3D::cell_index(Index i, Index j, Index k) const {
  if (i < 0 || i >= nx_ || j < 0 || j >= ny_ || k < 0 || k >= nz_) {
    throw std::out_of_range("cell (" + std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ") outside mesh");
  }
  return i + j * nx_ + k * nx_ * ny_;
}

std::array<Index, 3> Mesh3D::cell_coords(Index index) const {
  if (index < 0 || index >= size()) {
    throw std::out_of_range("cell index " + std::to_string(index) + " outside mesh");
  }
  const Index layer = nx_ * ny_;
  const Index k = index / layer;
  const Index rem = index - k * layer;
  return {rem % nx_, rem / nx_, k};
}

Point3 Mesh3D::cell_center(Index index) const {
  const auto [i, j, k] = cell_coords(index);
  return {origin_.x + (static_cast<double>(i) + 0.5) * dx_,
          origin_.y + (static_cast<double>(j) + 0.5) * dy_,
          origin_.z + (static_cast<double>(k) + 0.5) * dz_};
}

Box Mesh3D::cell_box(Index index) const {
  const auto [i, j, k] = cell_coords(index);
  const double x0 = origin_.x + static_cast<double>(i) * dx_;
  const double y0 = origin_.y + static_cast<double>(j) * dy_;
  const double z0 = origin_.z + static_cast<double>(k) * dz_;
  return {x0, x0 + dx_, y0, y0 + dy_, z0, z0 + dz_};
}

bool Mesh3D::operator==(const Mesh3D& o) const {
  return nx_ == o.nx_ && ny_ == o.ny_ && nz_ == o.nz_ && dx_ == o.dx_ && dy_ == o.dy_ &&
         dz_ == o.dz_ && origin_.x == o.origin_.x && origin_.y == o.origin_.y &&
         origin_.z == o.origin_.z;
}

SurveyGrid build_survey_grid(Index nx_s, Index ny_s, double spacing, double height, double x0,
                             double y0) {
  if (nx_s < 1 || ny_s < 1) throw ConfigError("survey counts must be >= 1");
  if (!(spacing > 0.0)) throw ConfigError("survey spacing must be > 0");
  SurveyGrid grid;
  grid.stations.reserve(static_cast<std::size_t>(nx_s * ny_s));
  for (Index j = 0; j < ny_s; ++j) {
    for (Index i = 0; i < nx_s; ++i) {
      grid.stations.push_back({x0 + static_cast<double>(i) * spacing,
                               y0 + static_cast<double>(j) * spacing, 0.0 - height});
    }
  }
  return grid;
}

void validate_survey(const Mesh3D& mesh, const SurveyGrid& grid) {
  if (grid.stations.empty()) throw ConfigError("survey has no stations");
  for (std::size_t s = 0; s < grid.stations.size(); ++s) {
    if (grid.stations[s].z > mesh.top()) {
      throw ConfigError("station " + std::to_string(s) + " lies below the mesh top");
    }
  }
}

}  // namespace tvgrav
