#include "tvgrav/synthetic.hpp"

#include <cmath>
#include <string>

#include "tvgrav/rng.hpp"

namespace tvgrav {
namespace {

// Mesh cells whose centres fall inside reference cells [a, b] of ref_n.
std::pair<Index, Index> map_range(Index a, Index b, Index ref_n, Index n) {
  const double lo = static_cast<double>(a) / static_cast<double>(ref_n);
  const double hi = static_cast<double>(b + 1) / static_cast<double>(ref_n);
  Index first = n;
  Index last = -1;
  for (Index i = 0; i < n; ++i) {
    const double c = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    if (c >= lo && c < hi) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  }
  return {first, last};
}

}  // namespace

Vector rasterize(const Mesh3D& mesh, const BodySet& set) {
  Vector model = Vector::Zero(mesh.size());
  for (std::size_t b = 0; b < set.bodies.size(); ++b) {
    const BodySpec& body = set.bodies[b];
    const Index shift_max = body.dip_step * (body.k1 - body.k0);
    const Index lo_i = body.i0 + std::min<Index>(0, shift_max);
    const Index hi_i = body.i1 + std::max<Index>(0, shift_max);
    if (lo_i < 0 || hi_i >= set.ref_nx || body.j0 < 0 || body.j1 >= set.ref_ny || body.k0 < 0 ||
        body.k1 >= set.ref_nz || body.i0 > body.i1 || body.j0 > body.j1 || body.k0 > body.k1) {
      throw DomainError("body " + std::to_string(b) + " lies outside the reference mesh");
    }
    const auto [j_first, j_last] = map_range(body.j0, body.j1, set.ref_ny, mesh.ny());
    bool any = false;
    for (Index kr = body.k0; kr <= body.k1; ++kr) {
      const Index shift = body.dip_step * (kr - body.k0);
      const auto [i_first, i_last] = map_range(body.i0 + shift, body.i1 + shift, set.ref_nx, mesh.nx());
      const auto [k_first, k_last] = map_range(kr, kr, set.ref_nz, mesh.nz());
      for (Index k = k_first; k <= k_last; ++k) {
        for (Index j = j_first; j <= j_last; ++j) {
          for (Index i = i_first; i <= i_last; ++i) {
            model[mesh.cell_index(i, j, k)] = body.density;
            any = true;
          }
        }
      }
    }
    if (!any) throw DomainError("mesh too small to host body " + std::to_string(b));
  }
  return model;
}

BodySet dikes_bodies() {
  // Reference 30 x 30 x 10 cells of 50 m. The larger dike dips towards +x,
  // the smaller one towards -x; each shifts one cell per layer.
  return {30, 30, 10,
          {
              {4, 8, 5, 24, 2, 7, +1, 1.0},
              {21, 25, 8, 20, 2, 6, -1, 1.0},
          }};
}

BodySet multibody_bodies() {
  // Reference 100 x 60 x 10 cells of 100 m.
  return {100, 60, 10,
          {
              {6, 21, 5, 20, 1, 3, 0, 1.0},
              {26, 37, 4, 45, 1, 3, 0, 0.8},
              {44, 60, 33, 50, 2, 5, 0, 1.0},
              {64, 73, 10, 29, 2, 6, +1, 0.8},
              {80, 95, 37, 54, 3, 7, 0, 1.0},
              {10, 24, 37, 54, 4, 7, 0, 0.8},
          }};
}

Vector build_dikes_model(const Mesh3D& mesh) { return rasterize(mesh, dikes_bodies()); }
Vector build_multibody_model(const Mesh3D& mesh) { return rasterize(mesh, multibody_bodies()); }

Mesh3D dikes_mesh() { return Mesh3D(30, 30, 10, 50.0, 50.0, 50.0); }
Mesh3D multibody_mesh() { return Mesh3D(100, 60, 10, 100.0, 100.0, 100.0); }
Mesh3D multibody_mesh_scaled() { return Mesh3D(50, 30, 10, 100.0, 100.0, 100.0); }

SurveyGrid surface_grid_over(const Mesh3D& mesh) {
  return build_survey_grid(mesh.nx(), mesh.ny(), mesh.dx(), 0.0, mesh.origin().x + 0.5 * mesh.dx(),
                           mesh.origin().y + 0.5 * mesh.dy());
}

NoisyData add_noise(const Vector& d_exact, double a, double b, std::uint64_t seed) {
  if (a < 0.0 || b < 0.0) throw ConfigError("noise coefficients must be >= 0");
  const double norm = d_exact.norm();
  const CounterRng rng(seed, 0x6e6f697365ULL);
  NoisyData out{d_exact, Vector(d_exact.size())};
  for (Index i = 0; i < d_exact.size(); ++i) {
    out.eta[i] = a * std::abs(d_exact[i]) + b * norm;
    out.d_obs[i] += out.eta[i] * rng.normal(static_cast<std::uint64_t>(i));
  }
  return out;
}

Vector noisy_prior(const Vector& m_true, double a, double b, std::uint64_t seed) {
  const NoisyData p = add_noise(m_true, a, b, seed ^ 0x7072696f72ULL);
  return p.d_obs;
}

}  // namespace tvgrav
