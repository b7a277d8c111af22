#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "tvgrav/forward.hpp"
#include "tvgrav/operators.hpp"
#include "tvgrav/synthetic.hpp"

using namespace tvgrav;

TEST_SUITE("synthetic") {
  TEST_CASE("dikes model matches the cell fixture") {
    const Mesh3D mesh = dikes_mesh();
    const Vector m = build_dikes_model(mesh);
    std::ifstream in(std::string(TVGRAV_FIXTURE_DIR) + "/dikes_cells.txt");
    REQUIRE(in);
    std::string line;
    std::getline(in, line);
    CHECK(line == "i j k");
    std::set<Index> expected;
    Index i, j, k;
    while (in >> i >> j >> k) expected.insert(mesh.cell_index(i, j, k));
    CHECK(expected.size() > 0);
    for (Index c = 0; c < mesh.size(); ++c) {
      CHECK(m[c] == (expected.count(c) ? 1.0 : 0.0));
    }
  }

  TEST_CASE("dikes are embedded and dip in opposite directions") {
    const Mesh3D mesh = dikes_mesh();
    const Vector m = build_dikes_model(mesh);
    for (Index c = 0; c < mesh.size(); ++c) {
      if (m[c] != 0.0) {
        const auto ijk = mesh.cell_coords(c);
        CHECK(ijk[2] < mesh.nz() - 1);
        CHECK(ijk[2] > 0);
      }
    }
    // Westernmost body cell of the left dike moves east with depth, the right dike moves west.
    auto first_x = [&](Index k, Index lo, Index hi) {
      for (Index ii = lo; ii < hi; ++ii)
        for (Index jj = 0; jj < mesh.ny(); ++jj)
          if (m[mesh.cell_index(ii, jj, k)] != 0.0) return ii;
      return Index{-1};
    };
    CHECK(first_x(5, 0, 15) > first_x(2, 0, 15));
    CHECK(first_x(5, 15, 30) < first_x(2, 15, 30));
  }

  TEST_CASE("multibody model") {
    const Mesh3D mesh = multibody_mesh();
    CHECK(mesh.size() == 60000);
    const Vector m = build_multibody_model(mesh);
    std::set<double> values(m.data(), m.data() + m.size());
    CHECK(values == std::set<double>{0.0, 0.8, 1.0});
    for (Index k = 1; k <= 6; ++k) {
      Index count = 0;
      for (Index j = 0; j < mesh.ny(); ++j)
        for (Index i = 0; i < mesh.nx(); ++i) count += m[mesh.cell_index(i, j, k)] != 0.0;
      CAPTURE(k);
      CHECK(count > 0);
    }
    const Vector scaled = build_multibody_model(multibody_mesh_scaled());
    CHECK(scaled.size() == 15000);
    CHECK(scaled.maxCoeff() == 1.0);
  }

  TEST_CASE("bodies that cannot be hosted") {
    CHECK_THROWS_AS(build_dikes_model(Mesh3D(1, 1, 1, 10, 10, 10)), DomainError);
    CHECK_THROWS_AS(rasterize(Mesh3D(4, 4, 4, 1, 1, 1), BodySet{4, 4, 4, {{2, 3, 0, 1, 0, 3, 1, 1.0}}}),
                    DomainError);
  }

  TEST_CASE("noise model") {
    const Vector d = Vector::LinSpaced(900, -1.0, 3.0);
    const auto a = add_noise(d, 0.02, 0.002, 7);
    const auto b = add_noise(d, 0.02, 0.002, 7);
    const auto c = add_noise(d, 0.02, 0.002, 8);
    CHECK((a.d_obs - b.d_obs).norm() == 0.0);
    CHECK((a.eta - c.eta).norm() == 0.0);
    CHECK((a.d_obs - c.d_obs).norm() > 0.0);
    CHECK(a.eta[0] == doctest::Approx(0.02 * 1.0 + 0.002 * d.norm()));

    const auto clean = add_noise(d, 0.0, 0.0, 1);
    CHECK((clean.d_obs - d).norm() == 0.0);
    CHECK(clean.eta.isZero(0.0));
    CHECK_THROWS_AS(build_data_weighting(clean.eta), DomainError);
    CHECK_THROWS_AS(add_noise(d, -0.1, 0.0, 1), ConfigError);
  }

  TEST_CASE("whitened noise energy averages to m") {
    const Mesh3D mesh = dikes_mesh();
    const Vector d = predict(assemble_G(mesh, surface_grid_over(mesh)), build_dikes_model(mesh));
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto noisy = add_noise(d, 0.02, 0.002, 1000 + seed);
      total += (noisy.d_obs - d).cwiseQuotient(noisy.eta).squaredNorm();
    }
    CHECK(std::abs(total / 50.0 - 900.0) < 0.05 * 900.0);
  }

  TEST_CASE("noisy prior") {
    const Vector m = build_dikes_model(dikes_mesh());
    const Vector p = noisy_prior(m, 0.05, 0.02, 3);
    CHECK(p.size() == m.size());
    CHECK((p - m).norm() > 0.0);
    CHECK((p - noisy_prior(m, 0.05, 0.02, 3)).norm() == 0.0);
  }
}
