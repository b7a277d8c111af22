#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>

#include "tvgrav/forward.hpp"
#include "tvgrav/io.hpp"
#include "tvgrav/oracle.hpp"
#include "tvgrav/synthetic.hpp"

using namespace tvgrav;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Box shifted(const Box& b, double sx, double sy, double sz) {
  return {b.x0 + sx, b.x1 + sx, b.y0 + sy, b.y1 + sy, b.z0 + sz, b.z1 + sz};
}

}  // namespace

TEST_SUITE("forward") {
  TEST_CASE("cube vs volume quadrature") {
    const Box cube{0, 100, 0, 100, 0, 100};
    const Point3 s{50, 50, -50};
    const double g = prism_gz(s, cube, 1.0);
    CHECK(g > 0.0);
    CHECK(rel(g, oracle::gz_quadrature(s, cube, 1.0)) < 1e-6);
  }

  TEST_CASE("off-axis and edge-aligned stations vs quadrature") {
    const Box b{-20, 30, 10, 90, 40, 75};
    const Point3 stations[] = {{0, 0, 0}, {-20, 10, 0}, {300, -100, -10}, {30, 50, 40}, {5, 50, 20}};
    for (const auto& s : stations) {
      CHECK(rel(prism_gz(s, b, 1.0), oracle::gz_quadrature(s, b, 1.0)) < 1e-6);
    }
  }

  TEST_CASE("far-field point-mass limit") {
    const Box b{0, 50, 0, 80, 20, 60};
    const double diag = std::sqrt(50.0 * 50 + 80 * 80 + 40 * 40);
    const Point3 c{25, 40, 40};
    const Point3 s{c.x + 100 * diag * 0.6, c.y, c.z - 100 * diag * 0.8};
    CHECK(rel(prism_gz(s, b, 1.0), oracle::gz_point_mass(s, b, 1.0)) < 0.01);
  }

  TEST_CASE("zero density, linearity in density, station inside") {
    const Box b{0, 10, 0, 10, 0, 10};
    CHECK(prism_gz({5, 5, -1}, b, 0.0) == 0.0);
    CHECK(prism_gz({5, 5, -1}, b, 2.5) == doctest::Approx(2.5 * prism_gz({5, 5, -1}, b, 1.0)));
    CHECK_THROWS_AS(prism_gz({5, 5, 5}, b, 1.0), DomainError);
  }

  TEST_CASE("translation invariance and mirror symmetry") {
    const Box b{0, 40, 0, 60, 10, 30};
    const Point3 s{-15, 70, -5};
    const double g = prism_gz(s, b, 1.0);
    const Point3 t{s.x + 1234.5, s.y - 77.25, s.z + 3};
    CHECK(prism_gz(t, shifted(b, 1234.5, -77.25, 3), 1.0) == doctest::Approx(g).epsilon(1e-12));
    // Mirror about the vertical axis through the prism centre (x = 20, y = 30).
    CHECK(prism_gz({55, 70, -5}, b, 1.0) == doctest::Approx(g).epsilon(1e-12));
    CHECK(prism_gz({-15, -10, -5}, b, 1.0) == doctest::Approx(g).epsilon(1e-12));
  }

  TEST_CASE("sensitivity matrix shape and sign") {
    const Mesh3D mesh = dikes_mesh();
    const auto G = assemble_G(mesh, surface_grid_over(mesh));
    CHECK(G.rows() == 900);
    CHECK(G.cols() == 9000);
    CHECK(G.entries.allFinite());
    CHECK(G.entries.minCoeff() > 0.0);
  }

  TEST_CASE("single cell, single station") {
    const Mesh3D mesh(1, 1, 1, 20, 30, 40);
    SurveyGrid grid{{{3, 4, -2}}};
    const auto G = assemble_G(mesh, grid);
    REQUIRE(G.rows() == 1);
    REQUIRE(G.cols() == 1);
    CHECK(G.entries(0, 0) == prism_gz(grid.stations[0], mesh.cell_box(0), 1.0));
  }

  TEST_CASE("predict: zero, unit vectors, superposition, linearity") {
    const Mesh3D mesh(4, 3, 2, 25, 25, 25);
    const auto G = assemble_G(mesh, build_survey_grid(3, 3, 30, 1, 10, 10));
    CHECK(predict(G, Vector::Zero(24)).isZero(0.0));
    Vector e = Vector::Zero(24);
    e[7] = 1.0;
    CHECK((predict(G, e) - G.entries.col(7)).norm() == 0.0);

    Vector m1 = Vector::Zero(24), m2 = Vector::Zero(24);
    m1[0] = 0.7;
    m2[23] = 1.3;
    CHECK((predict(G, m1 + m2) - predict(G, m1) - predict(G, m2)).norm() < 1e-14);
    const Vector a = oracle::random_matrix(24, 1, 3).col(0);
    const Vector b = oracle::random_matrix(24, 1, 4).col(0);
    const Vector lhs = predict(G, 2.0 * a - 0.5 * b);
    const Vector rhs = 2.0 * predict(G, a) - 0.5 * predict(G, b);
    CHECK((lhs - rhs).norm() <= 1e-13 * rhs.norm());
    CHECK_THROWS_AS(predict(G, Vector::Zero(5)), DimensionError);
  }

  TEST_CASE("memory limit") {
    const Mesh3D mesh = dikes_mesh();
    CHECK_THROWS_AS(assemble_G(mesh, surface_grid_over(mesh), 1 << 20), ResourceError);
  }

  TEST_CASE("dikes anomaly regression snapshot") {
    const Mesh3D mesh = dikes_mesh();
    const auto grid = surface_grid_over(mesh);
    const Vector d = predict(assemble_G(mesh, grid), build_dikes_model(mesh));
    const auto snap = io::read_data_grid(std::string(TVGRAV_FIXTURE_DIR) + "/dikes_anomaly.txt");
    REQUIRE(snap.values.size() == d.size());
    CHECK((d - snap.values).norm() <= 1e-12 * snap.values.norm());
    // Two dikes give two lobes along x with a trough between them.
    const Vector profile = d.reshaped(30, 30).rowwise().maxCoeff();
    const double west = profile.head(12).maxCoeff();
    const double east = profile.tail(12).maxCoeff();
    const double trough = profile.segment(12, 6).minCoeff();
    CHECK(trough < west);
    CHECK(trough < east);
  }
}
