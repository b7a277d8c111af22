#include <doctest.h>

#include <stdexcept>

#include "tvgrav/mesh.hpp"

using namespace tvgrav;

TEST_SUITE("mesh") {
  TEST_CASE("cell index examples") {
    const Mesh3D m(30, 30, 10, 50, 50, 50);
    CHECK(m.cell_index(0, 0, 0) == 0);
    CHECK(m.cell_index(29, 29, 9) == 8999);
    CHECK(m.size() == 9000);
    CHECK(Mesh3D(2, 3, 4, 1, 1, 1).cell_index(1, 2, 3) == 23);
  }

  TEST_CASE("index round trip and x contiguity, exhaustive") {
    const Mesh3D m(4, 3, 5, 1.0, 2.0, 3.0);
    for (Index k = 0; k < 5; ++k)
      for (Index j = 0; j < 3; ++j)
        for (Index i = 0; i < 4; ++i) {
          const Index idx = m.cell_index(i, j, k);
          const auto c = m.cell_coords(idx);
          CHECK(c[0] == i);
          CHECK(c[1] == j);
          CHECK(c[2] == k);
          if (i + 1 < 4) CHECK(m.cell_index(i + 1, j, k) == idx + 1);
        }
  }

  TEST_CASE("out of range coordinates throw") {
    const Mesh3D m(2, 2, 2, 1, 1, 1);
    CHECK_THROWS_AS(m.cell_index(2, 0, 0), std::out_of_range);
    CHECK_THROWS_AS(m.cell_index(0, -1, 0), std::out_of_range);
    CHECK_THROWS_AS(m.cell_coords(8), std::out_of_range);
  }

  TEST_CASE("invalid dimensions") {
    CHECK_THROWS_AS(Mesh3D(0, 1, 1, 1, 1, 1), ConfigError);
    CHECK_THROWS_AS(Mesh3D(1, 1, 1, 1, -1, 1), ConfigError);
  }

  TEST_CASE("cell geometry") {
    const Mesh3D m(30, 30, 10, 50, 50, 50);
    const Point3 c = m.cell_center(m.cell_index(1, 2, 3));
    CHECK(c.x == doctest::Approx(75));
    CHECK(c.y == doctest::Approx(125));
    CHECK(c.z == doctest::Approx(175));
    const Box b = m.cell_box(0);
    CHECK(b.x0 == 0.0);
    CHECK(b.z1 == 50.0);
    CHECK(m.bottom() == 500.0);
  }
}

TEST_SUITE("survey") {
  TEST_CASE("station counts") {
    CHECK(build_survey_grid(30, 30, 50, 0).size() == 900);
    CHECK(build_survey_grid(100, 60, 100, 0).size() == 6000);
    const auto one = build_survey_grid(1, 1, 50, 0);
    REQUIRE(one.size() == 1);
    CHECK(one.stations[0].x == 0.0);
    CHECK(one.stations[0].y == 0.0);
    CHECK(one.stations[0].z == 0.0);
  }

  TEST_CASE("stations above the surface, x fastest") {
    const auto g = build_survey_grid(3, 2, 10, 5, 1, 2);
    CHECK(g.stations[1].x == 11.0);
    CHECK(g.stations[3].y == 12.0);
    CHECK(g.stations[0].z == -5.0);
    const Mesh3D m(3, 2, 1, 10, 10, 10);
    CHECK_NOTHROW(validate_survey(m, g));
    SurveyGrid below = g;
    below.stations[2].z = 1.0;
    CHECK_THROWS_AS(validate_survey(m, below), ConfigError);
  }
}
