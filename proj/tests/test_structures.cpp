#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include <cmath>

#include "uav/catalog.hpp"
#include "uav/errors.hpp"
#include "uav/structures.hpp"

using namespace uav;

namespace {

ComponentSpec material(std::string id, double density, std::optional<double> strength = {},
                       std::optional<double> modulus = {}, std::optional<double> cte = {},
                       std::optional<double> cost = {}) {
  return {std::move(id), {}, {}, MaterialParams{density, strength, modulus, cte, cost}, {}};
}

const ComponentSpec kCfrp = material("cfrp", 1600, 6e8, 70e9, 2.5e-6, 60);
const ComponentSpec kBalsa = material("balsa", 160, {}, {}, 4e-6, 20);

TubeSection arm(double d_out = 0.012, double d_in = 0.010, double len = 0.2) {
  return {d_out, d_in, len, kCfrp};
}

SandwichLayup layup(int plies, double ply, double core, const ComponentSpec& face = kCfrp,
                    const ComponentSpec& core_mat = kBalsa) {
  return {plies, ply, core, face, core_mat, std::vector<double>(2 * plies, 0.0)};
}

}  // namespace

TEST_CASE("arm tube example") {
  const auto c = cantilever_tube_check(arm(), 13.0, 2.0);
  CHECK(tube_second_moment(0.012, 0.010) == doctest::Approx(5.272e-10).epsilon(1e-3));
  REQUIRE(c.max_deflection_m);
  CHECK(*c.max_deflection_m == doctest::Approx(9.39e-4).epsilon(1e-3));
  CHECK(c.max_stress_pa == doctest::Approx(2.96e7).epsilon(1e-3));
  CHECK(c.allowable_stress_pa == 6e8);
  CHECK(c.pass);
}

TEST_CASE("unloaded tube") {
  const auto c = cantilever_tube_check(arm(), 0.0, 2.0);
  CHECK(*c.max_deflection_m == 0.0);
  CHECK(c.max_stress_pa == 0.0);
  CHECK(c.safety_factor == kUnstressedSafetyFactor);
  CHECK(std::isinf(c.safety_factor));
  CHECK(c.pass);
}

TEST_CASE("halving the arm length") {
  const auto a = cantilever_tube_check(arm(0.012, 0.010, 0.2), 13.0, 2.0);
  const auto b = cantilever_tube_check(arm(0.012, 0.010, 0.1), 13.0, 2.0);
  CHECK(*b.max_deflection_m / *a.max_deflection_m == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(b.max_stress_pa / a.max_stress_pa == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tube errors") {
  CHECK_THROWS_AS(cantilever_tube_check(arm(0.012, 0.0119999), 13.0, 2.0), Error);
  CHECK_THROWS_AS(cantilever_tube_check(arm(0.010, 0.012), 13.0, 2.0), ValidationError);
  CHECK_THROWS_AS(cantilever_tube_check(arm(0.012, 0.010, 0.0), 13.0, 2.0), ValidationError);
  CHECK_THROWS_AS(cantilever_tube_check(arm(), -1.0, 2.0), Error);
}

TEST_CASE("cantilever deflection matches the beam march on random geometries") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const double d_out = test::uniform(rng, 0.004, 0.03);
    const double d_in = test::uniform(rng, 0.0, 0.9) * d_out;
    const double len = test::uniform(rng, 0.05, 0.5);
    const double f = test::uniform(rng, 0.5, 50.0);
    const double e = test::uniform(rng, 2e9, 2e11);
    TubeSection t{d_out, d_in, len, material("m", 1000, 1e9, e)};
    const auto c = cantilever_tube_check(t, f, 1.0);
    const double oracle =
        oracle::cantilever_tip_deflection(f, len, e * oracle::tube_second_moment(d_out, d_in));
    CHECK(std::abs(*c.max_deflection_m - oracle) < 1e-9);
  }
}

TEST_CASE("tube checks are linear in load") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto t = arm(test::uniform(rng, 0.008, 0.02), 0.006, test::uniform(rng, 0.1, 0.4));
    const double f = test::uniform(rng, 1, 20), k = test::uniform(rng, 0.1, 10);
    const auto a = cantilever_tube_check(t, f, 2.0);
    const auto b = cantilever_tube_check(t, k * f, 2.0);
    CHECK(*b.max_deflection_m == doctest::Approx(k * *a.max_deflection_m).epsilon(1e-13));
    CHECK(b.max_stress_pa == doctest::Approx(k * a.max_stress_pa).epsilon(1e-13));
  }
}

TEST_CASE("reported stresses") {
  const auto gear = reported_check("landing gear", 40, 1.33e6, 31.33e6, 2.0);
  CHECK(gear.safety_factor == doctest::Approx(23.56).epsilon(0.01 / 23.56));
  CHECK(gear.pass);
  const auto latch = reported_check("payload latch", 1.962, 1.81e6, 31.33e6, 2.0);
  CHECK(std::abs(latch.safety_factor - 17.0) / 17.0 < 0.02);
  CHECK(latch.safety_factor == doctest::Approx(17.31).epsilon(1e-3));
  const auto boundary = reported_check("edge", 1, 5e6, 5e6, 1.0);
  CHECK(boundary.safety_factor == 1.0);
  CHECK(boundary.pass);
  CHECK_FALSE(reported_check("weak", 1, 5e6, 5e6, 1.5).pass);
  CHECK_THROWS(reported_check("bad", 1, 0.0, 5e6, 1.0));
}

TEST_CASE("safety factor times stress recovers the allowable") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 500; ++i) {
    const double s = test::uniform(rng, 1e3, 1e9), a = test::uniform(rng, 1e3, 1e9);
    const double min_fos = test::uniform(rng, 0.5, 5);
    const auto c = reported_check("r", 1, s, a, min_fos);
    CHECK(c.safety_factor * c.max_stress_pa == doctest::Approx(a).epsilon(1e-15));
    CHECK(c.pass == (c.safety_factor >= min_fos));
  }
}

TEST_CASE("sandwich hub plate") {
  const auto s = sandwich_vs_solid(layup(3, 0.00025, 0.001), 0.0025);
  CHECK(s.mass_reduction == doctest::Approx(1.0 - 2560.0 / 4000.0).epsilon(1e-12));
  CHECK(std::abs(s.mass_reduction - 0.33) <= 0.05);
  CHECK(std::abs(s.cost_reduction - 0.42) <= 0.08);
  CHECK(s.sandwich_mass_per_area == doctest::Approx(2.56).epsilon(1e-12));
  CHECK(s.solid_mass_per_area == doctest::Approx(4.0).epsilon(1e-12));

  SUBCASE("no core degenerates to the solid plate") {
    const auto d = sandwich_vs_solid(layup(5, 0.00025, 0.0), 0.0025);
    CHECK(d.mass_reduction == doctest::Approx(0.0));
  }
  SUBCASE("core as dense as the face") {
    const auto same = material("same", 1600, {}, {}, {}, 60);
    for (double core : {0.0005, 0.001, 0.0015}) {
      const int plies = 2;
      const double ply = (0.0025 - core) / (2 * plies);
      CHECK(sandwich_vs_solid(layup(plies, ply, core, kCfrp, same), 0.0025).mass_reduction ==
            doctest::Approx(0.0));
    }
  }
  SUBCASE("thickness mismatch") {
    CHECK_THROWS_AS(sandwich_vs_solid(layup(3, 0.00025, 0.001), 0.003), Error);
  }
  SUBCASE("ply angles must cover both faces") {
    auto l = layup(3, 0.00025, 0.001);
    l.ply_angles_deg = {45, 90, -45};
    CHECK_THROWS_AS(sandwich_vs_solid(l, 0.0025), ValidationError);
  }
}

TEST_CASE("sandwich reduction grows with core fraction") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const double total = test::uniform(rng, 0.001, 0.01);
    const auto core_mat = material("core", test::uniform(rng, 50, 1500), {}, {}, {},
                                   test::uniform(rng, 1, 59));
    double last = -1.0;
    for (double frac : {0.0, 0.2, 0.4, 0.6, 0.8}) {
      const double core = frac * total;
      const auto r = sandwich_vs_solid(layup(1, (total - core) / 2, core, kCfrp, core_mat), total);
      CHECK(r.mass_reduction >= 0.0);
      CHECK(r.mass_reduction < 1.0);
      if (frac > 0.0) CHECK(r.mass_reduction > last);
      last = r.mass_reduction;
    }
  }
}

TEST_CASE("thermal mismatch") {
  const auto a = material("a", 1, {}, {}, 2e-6), b = material("b", 1, {}, {}, 4e-6);
  CHECK(thermal_mismatch(a, b, 40) == doctest::Approx(8e-5).epsilon(1e-12));
  CHECK(thermal_mismatch(b, a, 40) == thermal_mismatch(a, b, 40));
  CHECK(thermal_mismatch(a, a, 123) == 0.0);
  CHECK(thermal_mismatch(a, b, 0) == 0.0);
  CHECK_THROWS(thermal_mismatch(a, material("none", 1), 10));
}
