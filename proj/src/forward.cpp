#include "tvgrav/forward.hpp"

#include <cmath>
#include <string>

namespace tvgrav {
namespace {

// ln(r + a) for r = |(a, b, c)|, stable when a < 0 and r + a cancels.
double log_r_plus(double a, double r, double b, double c) {
  if (a >= 0.0) return std::log(r + a);
  return std::log((b * b + c * c) / (r - a));
}

// Corner term of the triple integral of z / r^3; zero-coefficient limits are exact.
double corner_term(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  double t = 0.0;
  if (z != 0.0) t += z * std::atan2(x * y, z * r);
  if (x != 0.0) t -= x * log_r_plus(y, r, x, z);
  if (y != 0.0) t -= y * log_r_plus(x, r, y, z);
  return t;
}

}  // namespace

double prism_gz(const Point3& p, const Box& b, double density) {
  if (!(b.x1 > b.x0) || !(b.y1 > b.y0) || !(b.z1 > b.z0)) {
    throw DomainError("prism must have positive volume");
  }
  if (p.x > b.x0 && p.x < b.x1 && p.y > b.y0 && p.y < b.y1 && p.z > b.z0 && p.z < b.z1) {
    throw DomainError("station lies inside the prism");
  }
  if (density == 0.0) return 0.0;

  const double xs[2] = {b.x0 - p.x, b.x1 - p.x};
  const double ys[2] = {b.y0 - p.y, b.y1 - p.y};
  const double zs[2] = {b.z0 - p.z, b.z1 - p.z};
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        const double sign = ((i + j + k) % 2 == 1) ? 1.0 : -1.0;
        sum += sign * corner_term(xs[i], ys[j], zs[k]);
      }
    }
  }
  return kSiToMgalPerGcc * density * sum;
}

SensitivityMatrix assemble_G(const Mesh3D& mesh, const SurveyGrid& grid,
                             std::size_t memory_limit_bytes) {
  validate_survey(mesh, grid);
  const Index m = grid.size();
  const Index n = mesh.size();
  const double bytes = static_cast<double>(m) * static_cast<double>(n) * sizeof(double);
  if (bytes > static_cast<double>(memory_limit_bytes)) {
    throw ResourceError("sensitivity matrix needs " + std::to_string(bytes / (1 << 20)) +
                        " MiB, above the configured limit of " +
                        std::to_string(memory_limit_bytes >> 20) + " MiB");
  }
  SensitivityMatrix G;
  G.entries.resize(m, n);
  std::vector<Box> boxes(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) boxes[static_cast<std::size_t>(j)] = mesh.cell_box(j);

#pragma omp parallel for schedule(static)
  for (Index i = 0; i < m; ++i) {
    const Point3& s = grid.stations[static_cast<std::size_t>(i)];
    for (Index j = 0; j < n; ++j) G.entries(i, j) = prism_gz(s, boxes[static_cast<std::size_t>(j)], 1.0);
  }
  return G;
}

Vector predict(const SensitivityMatrix& G, const Vector& model) {
  if (model.size() != G.cols()) {
    throw DimensionError("model length " + std::to_string(model.size()) +
                         " does not match sensitivity columns " + std::to_string(G.cols()));
  }
  return G.entries * model;
}

}  // namespace tvgrav
