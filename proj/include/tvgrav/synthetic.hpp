#pragma once

#include <cstdint>
#include <vector>

#include "tvgrav/mesh.hpp"
#include "tvgrav/types.hpp"

namespace tvgrav {

/// Cell-index body on a reference mesh of (ref_nx, ref_ny, ref_nz) cells.
/// A non-zero dip_step shifts the x-range by dip_step cells per layer below k0.
/// Ranges are inclusive.
struct BodySpec {
  Index i0, i1, j0, j1, k0, k1;
  Index dip_step = 0;
  double density = 1.0;
};

struct BodySet {
  Index ref_nx, ref_ny, ref_nz;
  std::vector<BodySpec> bodies;
};

/// Rasterizes bodies onto the mesh, rescaling reference cell ranges
/// proportionally. Throws DomainError if a body falls outside or vanishes.
Vector rasterize(const Mesh3D& mesh, const BodySet& set);

BodySet dikes_bodies();
BodySet multibody_bodies();

/// Two 1 g/cm^3 dikes dipping in opposite directions (reference 30x30x10 mesh).
Vector build_dikes_model(const Mesh3D& mesh);
/// Six bodies of 1.0 and 0.8 g/cm^3 (reference 100x60x10 mesh).
Vector build_multibody_model(const Mesh3D& mesh);

Mesh3D dikes_mesh();
Mesh3D multibody_mesh();
Mesh3D multibody_mesh_scaled();
SurveyGrid surface_grid_over(const Mesh3D& mesh);

struct NoiseModel {
  double a = 0.02;
  double b = 0.002;
  std::uint64_t seed = 1;
};

struct NoisyData {
  Vector d_obs;
  Vector eta;
};

/// eta_i = a |d_i| + b ||d||, d_obs = d + eta * N(0, 1).
NoisyData add_noise(const Vector& d_exact, double a, double b, std::uint64_t seed);
inline NoisyData add_noise(const Vector& d_exact, const NoiseModel& noise) {
  return add_noise(d_exact, noise.a, noise.b, noise.seed);
}

/// Prior built by perturbing the true model with std a |m_i| + b ||m||.
Vector noisy_prior(const Vector& m_true, double a, double b, std::uint64_t seed);

}  // namespace tvgrav
