#include <doctest.h>

#include <cmath>

#include "tvgrav/app.hpp"
#include "tvgrav/inversion.hpp"
#include "tvgrav/oracle.hpp"
#include "tvgrav/synthetic.hpp"

using namespace tvgrav;

namespace {

// 10 x 10 x 5 cells of 50 m with a single buried block and 100 surface stations.
struct SmallProblem {
  Mesh3D mesh{10, 10, 5, 50, 50, 50};
  SensitivityMatrix G;
  Vector m_true;
  NoisyData data;

  SmallProblem() {
    G = assemble_G(mesh, surface_grid_over(mesh));
    m_true = rasterize(mesh, BodySet{10, 10, 5, {{3, 6, 3, 6, 2, 3, 0, 1.0}}});
    data = add_noise(predict(G, m_true), 0.02, 0.002, 5);
  }
};

const SmallProblem& small() {
  static const SmallProblem p;
  return p;
}

InversionConfig small_config() {
  InversionConfig c;
  c.q = 80;
  c.k_max = 30;
  c.stagnation_tol = 0.0;
  return c;
}

}  // namespace

TEST_SUITE("inversion") {
  TEST_CASE("bounds projection") {
    Vector m(3);
    m << 0.2, 1.7, -0.2;
    const Vector p = project_bounds(m, 0.0, 1.0);
    CHECK(p[0] == 0.2);
    CHECK(p[1] == 1.0);
    CHECK(p[2] == 0.0);
    CHECK_THROWS_AS(project_bounds(m, 1.0, 1.0), ConfigError);
  }

  TEST_CASE("chi-squared and its target") {
    CHECK(std::round(chi2_target(900) * 10) / 10 == 942.4);
    CHECK(chi2_target(6000) == doctest::Approx(6109.5).epsilon(1e-4));
    const Vector d = Vector::LinSpaced(5, 1, 5);
    CHECK(chi_squared(d, d, {Vector::Ones(5)}) == 0.0);
    CHECK(chi_squared(d, Vector::Zero(5), {Vector::Constant(5, 0.5)}) == doctest::Approx(55.0 / 4));
  }

  TEST_CASE("relative error") {
    const Vector m = Vector::LinSpaced(6, 0.1, 1.0);
    CHECK(relative_error(m, m) == 0.0);
    CHECK(relative_error(m, Vector::Zero(6)) == 1.0);
    CHECK(relative_error(m, 2.0 * m) == doctest::Approx(1.0));
    CHECK_THROWS_AS(relative_error(Vector::Zero(6), m), DomainError);
  }

  TEST_CASE("alternating-direction operators") {
    CHECK(ad_direction(3) == Direction::X);
    CHECK(ad_direction(4) == Direction::Y);
    CHECK(ad_direction(5) == Direction::Z);
    const Mesh3D mesh = dikes_mesh();
    const auto ops = build_derivatives(mesh, DerivativeVariant::Trimmed);
    const auto w = unit_weights(mesh.size());
    const auto Dx = ad_operator_for(3, ops, w);
    const auto Dz = ad_operator_for(5, ops, w);
    CHECK(Dx.rows() == 8700);
    CHECK(Dx.cols() == 9000);
    CHECK(Dz.rows() == 8100);
    CHECK_THROWS_AS(ad_operator_for(3, build_derivatives(mesh, DerivativeVariant::Square), w),
                    ConfigError);
  }

  TEST_CASE("config validation") {
    auto c = small_config();
    c.rho_min = 1.0;
    CHECK_THROWS_AS(c.validate(10), ConfigError);
    c = small_config();
    c.q = 0;
    CHECK_THROWS_AS(c.validate(10), ConfigError);
    c = small_config();
    c.m_apr = Vector::Zero(3);
    CHECK_THROWS_AS(c.validate(10), DimensionError);
  }

  TEST_CASE("zero-residual start returns the prior") {
    const auto& p = small();
    auto cfg = small_config();
    cfg.m_apr = Vector::Constant(p.mesh.size(), 0.3);
    const Vector d = predict(p.G, cfg.m_apr);
    const auto res = invert(d, p.G, p.data.eta, p.mesh, cfg);
    CHECK(res.iterations == 0);
    CHECK(res.log.empty());
    CHECK(res.chi2 == 0.0);
    CHECK(res.termination == Termination::NoiseLevel);
    CHECK((res.model - cfg.m_apr).norm() == 0.0);
  }

  TEST_CASE("bounds hold after every iteration; AD cycles with period 3") {
    const auto& p = small();
    auto cfg = small_config();
    cfg.rho_max = 0.8;
    std::vector<Direction> dirs;
    bool feasible = true;
    const auto res = invert(p.data.d_obs, p.G, p.data.eta, p.mesh, cfg, p.m_true,
                            [&](const IterationRecord& r, const Vector& m) {
                              dirs.push_back(r.direction);
                              feasible = feasible && m.minCoeff() >= 0.0 && m.maxCoeff() <= 0.8;
                              CHECK(r.chi2 >= 0.0);
                            });
    CHECK(feasible);
    REQUIRE(dirs.size() >= 3);
    CHECK(dirs[0] == Direction::Y);
    CHECK(dirs[1] == Direction::Z);
    CHECK(dirs[2] == Direction::X);
    for (std::size_t i = 3; i < dirs.size(); ++i) CHECK(dirs[i] == dirs[i - 3]);
    CHECK(res.log.size() == static_cast<std::size_t>(res.iterations));
  }

  TEST_CASE("both modes reach the noise level on a small problem") {
    const auto& p = small();
    for (auto mode : {InversionMode::AlternatingDirection, InversionMode::Full3D}) {
      auto cfg = small_config();
      cfg.mode = mode;
      cfg.k_max = 100;
      const auto res = invert(p.data.d_obs, p.G, p.data.eta, p.mesh, cfg, p.m_true);
      CAPTURE(to_string(mode));
      CHECK(res.termination == Termination::NoiseLevel);
      CHECK(res.chi2 <= res.chi2_target);
      if (mode == InversionMode::Full3D) CHECK(res.log.front().direction == Direction::All);
    }
  }

  TEST_CASE("identical config and seed give identical logs") {
    const auto& p = small();
    const auto cfg = small_config();
    const auto a = invert(p.data.d_obs, p.G, p.data.eta, p.mesh, cfg);
    const auto b = invert(p.data.d_obs, p.G, p.data.eta, p.mesh, cfg);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i) {
      CHECK(a.log[i].alpha == b.log[i].alpha);
      CHECK(a.log[i].chi2 == b.log[i].chi2);
    }
    CHECK((a.model - b.model).norm() == 0.0);
  }

  TEST_CASE("iteration cap and stagnation") {
    const auto& p = small();
    auto cfg = small_config();
    cfg.k_max = 1;
    const auto one = invert(p.data.d_obs, p.G, p.data.eta, p.mesh, cfg);
    CHECK(one.log.size() == 1);
    CHECK(one.termination == Termination::MaxIterations);

    cfg = small_config();
    cfg.stagnation_tol = 1e6;
    cfg.stagnation_count = 1;
    const auto ad = invert(p.data.d_obs, p.G, p.data.eta, p.mesh, cfg);
    CHECK(ad.termination == Termination::Stagnation);
    CHECK(ad.iterations == 3);
    cfg.mode = InversionMode::Full3D;
    const auto full = invert(p.data.d_obs, p.G, p.data.eta, p.mesh, cfg);
    CHECK(full.iterations == 1);
  }

  TEST_CASE("repeated endpoint selections raise a warning") {
    const auto& p = small();
    auto cfg = small_config();
    cfg.upre_grid = 1;
    cfg.k_max = 3;
    const auto res = invert(p.data.d_obs, p.G, p.data.eta, p.mesh, cfg);
    REQUIRE(res.iterations == 3);
    CHECK(res.warnings.size() == 1);
    CHECK(res.log.back().alpha_at_endpoint);
  }

  TEST_CASE("dimension checks") {
    const auto& p = small();
    CHECK_THROWS_AS(invert(p.data.d_obs.head(10), p.G, p.data.eta, p.mesh, small_config()),
                    DimensionError);
    CHECK_THROWS_AS(invert(p.data.d_obs, p.G, p.data.eta, dikes_mesh(), small_config()), DimensionError);
  }

  TEST_CASE("relative error falls over the first iterations on the dikes problem") {
    const auto prob = app::make_problem(preset_config("dikes-table1"));
    auto cfg = preset_config("dikes-table1").inversion;
    cfg.k_max = 5;
    const auto res = invert(prob.data.d_obs, prob.G, prob.data.eta, prob.mesh, cfg, prob.m_true);
    REQUIRE(res.log.size() == 5);
    for (std::size_t i = 1; i < 5; ++i) CHECK(res.log[i].relative_error < res.log[i - 1].relative_error);
  }
}
