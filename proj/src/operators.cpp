#include "tvgrav/operators.hpp"

#include <cmath>
#include <string>

namespace tvgrav {

DepthWeighting build_depth_weighting(const Mesh3D& mesh, double beta, double z0) {
  if (beta < 0.0) throw ConfigError("depth weighting exponent must be >= 0");
  if (z0 <= 0.0) z0 = 0.5 * mesh.dz();
  DepthWeighting w;
  w.beta = beta;
  w.z0 = z0;
  w.diagonal.resize(mesh.size());
  for (Index c = 0; c < mesh.size(); ++c) {
    const double depth = mesh.cell_center(c).z + z0;
    if (!(depth > 0.0)) throw ConfigError("depth weighting requires z_center + z0 > 0");
    w.diagonal[c] = std::pow(depth, -0.5 * beta);
  }
  return w;
}

DataWeighting build_data_weighting(const Vector& eta) {
  for (Index i = 0; i < eta.size(); ++i) {
    if (!(eta[i] > 0.0)) {
      throw DomainError("noise standard deviation " + std::to_string(i) + " is not positive");
    }
  }
  return {eta.cwiseInverse()};
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::All: return "all";
    case Direction::X: return "x";
    case Direction::Y: return "y";
    case Direction::Z: return "z";
  }
  return "?";
}

const SparseRowMatrix& DerivativeOps::op(Direction d) const {
  switch (d) {
    case Direction::X: return dx;
    case Direction::Y: return dy;
    case Direction::Z: return dz;
    case Direction::All: break;
  }
  throw std::invalid_argument("no single operator for Direction::All");
}

const std::vector<Index>& DerivativeOps::origins(Direction d) const {
  switch (d) {
    case Direction::X: return origin_x;
    case Direction::Y: return origin_y;
    case Direction::Z: return origin_z;
    case Direction::All: break;
  }
  throw std::invalid_argument("no single origin map for Direction::All");
}

namespace {

using Triplet = Eigen::Triplet<double>;

// axis 0/1/2 = x/y/z
void difference_operator(const Mesh3D& mesh, int axis, bool trimmed, double scale,
                         SparseRowMatrix& out, std::vector<Index>& origins) {
  const Index n = mesh.size();
  const Index counts[3] = {mesh.nx(), mesh.ny(), mesh.nz()};
  const Index strides[3] = {1, mesh.nx(), mesh.nx() * mesh.ny()};
  const Index len = counts[axis];
  const Index stride = strides[axis];

  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(2 * n));
  origins.clear();
  Index row = 0;
  for (Index c = 0; c < n; ++c) {
    const auto coords = mesh.cell_coords(c);
    const Index pos = coords[static_cast<std::size_t>(axis)];
    if (pos + 1 < len) {
      trips.emplace_back(row, c, -scale);
      trips.emplace_back(row, c + stride, scale);
    } else if (trimmed) {
      continue;
    } else if (len > 1) {
      trips.emplace_back(row, c - stride, -scale);
      trips.emplace_back(row, c, scale);
    }
    origins.push_back(c);
    ++row;
  }
  out.resize(row, n);
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
}

}  // namespace

DerivativeOps build_derivatives(const Mesh3D& mesh, DerivativeVariant variant,
                                DerivativeScaling scaling) {
  DerivativeOps ops{mesh, variant, scaling, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  const bool unit = scaling == DerivativeScaling::Unit;
  const double sx = unit ? 1.0 : 1.0 / mesh.dx();
  const double sy = unit ? 1.0 : 1.0 / mesh.dy();
  const double sz = unit ? 1.0 : 1.0 / mesh.dz();

  std::vector<Index> scratch;
  difference_operator(mesh, 0, false, sx, ops.square_x, scratch);
  difference_operator(mesh, 1, false, sy, ops.square_y, scratch);
  difference_operator(mesh, 2, false, sz, ops.square_z, scratch);
  const bool trimmed = variant == DerivativeVariant::Trimmed;
  difference_operator(mesh, 0, trimmed, sx, ops.dx, ops.origin_x);
  difference_operator(mesh, 1, trimmed, sy, ops.dy, ops.origin_y);
  difference_operator(mesh, 2, trimmed, sz, ops.dz, ops.origin_z);
  return ops;
}

TvWeights tv_weights(const Vector& h, const DerivativeOps& ops, double eps, double exponent) {
  if (!(eps > 0.0)) throw ConfigError("TV floor eps must be > 0");
  if (h.size() != ops.mesh.size()) throw DimensionError("tv_weights: vector length does not match mesh");
  const Vector gx = ops.square_x * h;
  const Vector gy = ops.square_y * h;
  const Vector gz = ops.square_z * h;
  TvWeights out;
  out.exponent = exponent;
  out.eps = eps;
  out.w.resize(h.size());
  const double eps2 = eps * eps;
  for (Index r = 0; r < h.size(); ++r) {
    out.w[r] = std::pow(gx[r] * gx[r] + gy[r] * gy[r] + gz[r] * gz[r] + eps2, exponent);
  }
  return out;
}

TvWeights unit_weights(Index n) {
  TvWeights w;
  w.w = Vector::Ones(n);
  return w;
}

namespace {

void append_scaled(const SparseRowMatrix& D, const std::vector<Index>& origins, const Vector& w,
                   Index row_offset, std::vector<Eigen::Triplet<double>>& trips) {
  for (Index r = 0; r < D.outerSize(); ++r) {
    const double wr = w[origins[static_cast<std::size_t>(r)]];
    for (SparseRowMatrix::InnerIterator it(D, r); it; ++it) {
      trips.emplace_back(row_offset + r, it.col(), wr * it.value());
    }
  }
}

}  // namespace

SparseRowMatrix weighted_D(const TvWeights& weights, const DerivativeOps& ops, Direction direction) {
  const Index n = ops.mesh.size();
  if (weights.w.size() != n) {
    throw DimensionError("weighted_D: weights length " + std::to_string(weights.w.size()) +
                         " does not match mesh size " + std::to_string(n));
  }
  std::vector<Eigen::Triplet<double>> trips;
  SparseRowMatrix out;
  if (direction == Direction::All) {
    trips.reserve(static_cast<std::size_t>(ops.dx.nonZeros() + ops.dy.nonZeros() + ops.dz.nonZeros()));
    append_scaled(ops.dx, ops.origin_x, weights.w, 0, trips);
    append_scaled(ops.dy, ops.origin_y, weights.w, ops.dx.rows(), trips);
    append_scaled(ops.dz, ops.origin_z, weights.w, ops.dx.rows() + ops.dy.rows(), trips);
    out.resize(ops.dx.rows() + ops.dy.rows() + ops.dz.rows(), n);
  } else {
    const SparseRowMatrix& D = ops.op(direction);
    trips.reserve(static_cast<std::size_t>(D.nonZeros()));
    append_scaled(D, ops.origins(direction), weights.w, 0, trips);
    out.resize(D.rows(), n);
  }
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

}  // namespace tvgrav
