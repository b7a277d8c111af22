#pragma once

#include <vector>

#include "tvgrav/mesh.hpp"
#include "tvgrav/types.hpp"

namespace tvgrav {

struct DepthWeighting {
  Vector diagonal;  // (z_center + z0)^(-beta/2)
  double beta = 2.0;
  double z0 = 0.0;

  Vector inverse() const { return diagonal.cwiseInverse(); }
};

/// z0 <= 0 selects the default of half the top-layer thickness.
DepthWeighting build_depth_weighting(const Mesh3D& mesh, double beta = 2.0, double z0 = 0.0);

struct DataWeighting {
  Vector diagonal;  // 1 / eta_i
};

DataWeighting build_data_weighting(const Vector& eta);

enum class DerivativeVariant { Square, Trimmed };
enum class DerivativeScaling { Physical, Unit };
enum class Direction { All, X, Y, Z };

const char* to_string(Direction d);

/// Forward-difference operators. Square matrices are n x n with a backward
/// difference on the last cell of each line; trimmed matrices drop those rows.
/// Row r of a trimmed matrix differences cell origin_*[r] with its +1 neighbour.
struct DerivativeOps {
  Mesh3D mesh;
  DerivativeVariant variant = DerivativeVariant::Square;
  DerivativeScaling scaling = DerivativeScaling::Physical;
  SparseRowMatrix dx, dy, dz;
  std::vector<Index> origin_x, origin_y, origin_z;
  // Cell-centred square stencils, used for gradient magnitudes in both variants.
  SparseRowMatrix square_x, square_y, square_z;

  const SparseRowMatrix& op(Direction d) const;
  const std::vector<Index>& origins(Direction d) const;
};

DerivativeOps build_derivatives(const Mesh3D& mesh, DerivativeVariant variant,
                                DerivativeScaling scaling = DerivativeScaling::Physical);

inline constexpr double kTvExponent = -0.25;
inline constexpr double kMgsExponent = -0.5;

struct TvWeights {
  Vector w;  // per cell
  double exponent = kTvExponent;
  double eps = 1e-4;
};

/// w_r = (|grad h|_r^2 + eps^2)^exponent with a cell-centred gradient.
TvWeights tv_weights(const Vector& h, const DerivativeOps& ops, double eps,
                     double exponent = kTvExponent);

/// Unit weights, i.e. the first IRLS iterate.
TvWeights unit_weights(Index n);

/// Row-weighted derivative operator. All stacks [W Dx; W Dy; W Dz].
SparseRowMatrix weighted_D(const TvWeights& weights, const DerivativeOps& ops, Direction direction);

}  // namespace tvgrav
