#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <numbers>

#include "uav/catalog.hpp"
#include "uav/sizing.hpp"

using namespace uav;

namespace {

const Catalog& desk() {
  static const Catalog c = load_catalog(test::data("desk_catalog.yaml"));
  return c;
}

ComponentSpec prop(double d) { return {"p", {}, 0.01, PropellerParams{d, 0.1}, {}}; }
ComponentSpec battery(double ah, double v, int cells) {
  return {"b", {}, 0.1, BatteryParams{ah, v, cells}, {}};
}

// Momentum theory written out independently of the library.
double oracle_power(double m, int n, double d, double rho, double fm, double g) {
  const double t = m * g / n;
  const double area = std::numbers::pi * d * d / 4.0;
  return n * std::pow(t, 1.5) / std::sqrt(2.0 * rho * area) / fm;
}

}  // namespace

TEST_CASE("hover performance example") {
  const auto h = hover_performance(2.0, 4, prop(0.24), 1.225, 0.6, 9.81);
  CHECK(h.thrust_per_rotor_n == doctest::Approx(4.905).epsilon(1e-12));
  CHECK(h.power_total_w == doctest::Approx(217.6).epsilon(1e-3));
  const double area = std::numbers::pi * 0.12 * 0.12;
  CHECK(h.induced_velocity_mps == doctest::Approx(std::sqrt(4.905 / (2 * 1.225 * area))));
}

TEST_CASE("hover performance limits and scaling") {
  CHECK(hover_performance(0.0, 4, prop(0.24), 1.225, 0.6).power_total_w == 0.0);
  const double p1 = hover_performance(1.3, 4, prop(0.25), 1.225, 0.6).power_total_w;
  const double p2 = hover_performance(1.3, 4, prop(0.25), 2.45, 0.6).power_total_w;
  CHECK(p2 / p1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(hover_performance(1.0, 4, prop(0.25), 1.225, 0.0), DomainError);
  CHECK_THROWS_AS(hover_performance(1.0, 4, prop(0.25), 1.225, 1.1), DomainError);
  CHECK_THROWS_AS(hover_performance(1.0, 4, prop(0.25), 0.0, 0.6), DomainError);
  CHECK_THROWS_AS(hover_performance(-1.0, 4, prop(0.25), 1.225, 0.6), DomainError);
}

TEST_CASE("hover power monotone in thrust and disk area, matches oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double m = test::uniform(rng, 0.1, 5.0);
    const double d = test::uniform(rng, 0.05, 0.6);
    const double rho = test::uniform(rng, 0.5, 1.5);
    const double fm = test::uniform(rng, 0.3, 1.0);
    const int n = std::array{3, 4, 6, 8}[rng() % 4];
    const double p = hover_performance(m, n, prop(d), rho, fm).power_total_w;
    CHECK(p == doctest::Approx(oracle_power(m, n, d, rho, fm, kStandardGravity)).epsilon(1e-12));
    CHECK(hover_performance(m * 1.01, n, prop(d), rho, fm).power_total_w > p);
    CHECK(hover_performance(m, n, prop(d * 1.01), rho, fm).power_total_w < p);
  }
}

TEST_CASE("endurance") {
  SUBCASE("example") {
    CHECK(endurance(battery(2.2, 11.1, 3), 0.8, 217.6) == doctest::Approx(323.1).epsilon(1e-3));
  }
  SUBCASE("unit identity") {
    CHECK(endurance(battery(2.2, 11.1, 3), 1.0, 2.2 * 11.1) == doctest::Approx(3600.0).epsilon(1e-14));
  }
  SUBCASE("inverse proportionality") {
    const auto b = battery(1.3, 11.1, 3);
    CHECK(endurance(b, 0.8, 300.0) == doctest::Approx(2.0 * endurance(b, 0.8, 600.0)));
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(endurance(battery(1, 11.1, 3), 0.8, 0.0), DomainError);
    CHECK_THROWS_AS(endurance(battery(1, 11.1, 3), 0.0, 10.0), DomainError);
  }
}

TEST_CASE("desk sizing with the reference constraints") {
  const ConstraintSet c;
  const auto r = size_vehicle(c, desk());
  CHECK(r.converged);
  CHECK(r.iterations <= 20);
  CHECK(r.takeoff_mass_kg <= 2.0);
  CHECK(r.motor.id == "sunnysky_x2212_1400kv");
  CHECK(4 * r.motor.motor().max_thrust_n >= 2.0 * r.takeoff_mass_kg * 9.81);
  CHECK(r.thrust_to_weight >= 2.0);
}

TEST_CASE("sizing result invariants") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    ConstraintSet c;
    c.payload_mass_kg = test::uniform(rng, 0.0, 0.6);
    c.rotor_count = std::array{4, 6, 8}[rng() % 3];
    SizingOptions o;
    o.structure_fraction = test::uniform(rng, 0.1, 0.35);
    o.fixed_mass_kg = test::uniform(rng, 0.0, 0.2);
    SizingResult r;
    try {
      r = size_vehicle(c, desk(), o);
    } catch (const SizingError&) {
      continue;
    }
    const int n = c.rotor_count;
    const double per_rotor = r.motor.mass() + r.propeller.mass() + (r.esc ? r.esc->mass() : 0.0);
    const double components = n * per_rotor + r.battery.mass() + o.fixed_mass_kg;
    CHECK(std::abs(r.component_mass_kg - components) < 1e-12);
    CHECK(std::abs(r.takeoff_mass_kg - (components + r.structure_mass_kg + c.payload_mass_kg)) < 1e-9);
    CHECK(std::abs(r.structure_mass_kg - o.structure_fraction * r.takeoff_mass_kg) < 1e-6);
    CHECK(r.hover_thrust_per_rotor_n ==
          doctest::Approx(r.takeoff_mass_kg * kStandardGravity / n).epsilon(1e-14));
    CHECK(n * r.motor.motor().max_thrust_n >=
          c.min_thrust_to_weight * r.takeoff_mass_kg * kStandardGravity);
    CHECK(r.converged == (r.takeoff_mass_kg <= c.max_takeoff_mass_kg));

    SizingOptions again = o;
    again.initial_mass_kg = r.takeoff_mass_kg;
    const auto r2 = size_vehicle(c, desk(), again);
    CHECK(std::abs(r2.takeoff_mass_kg - r.takeoff_mass_kg) < 1e-6);
  }
}

TEST_CASE("takeoff mass never decreases with payload") {
  std::mt19937_64 rng(5);
  double last = 0.0;
  std::vector<double> payloads(40);
  for (auto& p : payloads) p = test::uniform(rng, 0.0, 0.5);
  std::sort(payloads.begin(), payloads.end());
  for (double p : payloads) {
    ConstraintSet c;
    c.payload_mass_kg = p;
    const auto r = size_vehicle(c, desk());
    CHECK(r.takeoff_mass_kg >= last);
    last = r.takeoff_mass_kg;
  }
}

TEST_CASE("single component of each kind: zero payload is strictly lighter") {
  Catalog one({desk().at("sunnysky_x2212_1400kv"), desk().at("prop_1045"),
               desk().at("lipo_3s_2200")});
  ConstraintSet with, without;
  without.payload_mass_kg = 0.0;
  const auto a = size_vehicle(with, one);
  const auto b = size_vehicle(without, one);
  CHECK(a.motor.id == b.motor.id);
  CHECK(a.battery.id == b.battery.id);
  CHECK(b.takeoff_mass_kg < a.takeoff_mass_kg);
}

TEST_CASE("sizing errors") {
  SUBCASE("thrust-to-weight 10 has no feasible motor") {
    ConstraintSet c;
    c.min_thrust_to_weight = 10.0;
    try {
      size_vehicle(c, desk());
      FAIL("expected no feasible motor");
    } catch (const SizingError& e) {
      CHECK(e.reason() == SizingError::Reason::no_feasible_motor);
    }
  }
  SUBCASE("unreachable endurance floor") {
    SizingOptions o;
    o.endurance_floor_s = 1e6;
    try {
      size_vehicle({}, desk(), o);
      FAIL("expected no feasible battery");
    } catch (const SizingError& e) {
      CHECK(e.reason() == SizingError::Reason::no_feasible_battery);
    }
  }
  SUBCASE("iteration cap") {
    SizingOptions o;
    o.iteration_cap = 2;
    try {
      size_vehicle({}, desk(), o);
      FAIL("expected non-convergence");
    } catch (const SizingError& e) {
      CHECK(e.reason() == SizingError::Reason::non_convergence);
    }
  }
  SUBCASE("invalid constraints") {
    ConstraintSet c;
    c.rotor_count = 5;
    CHECK_THROWS_AS(size_vehicle(c, desk()), SizingError);
    c = {};
    c.payload_mass_kg = 2.5;
    CHECK_THROWS_AS(size_vehicle(c, desk()), SizingError);
    SizingOptions o;
    o.structure_fraction = 1.0;
    CHECK_THROWS_AS(size_vehicle({}, desk(), o), SizingError);
  }
  SUBCASE("empty catalog") { CHECK_THROWS_AS(size_vehicle({}, Catalog{}), SizingError); }
}

TEST_CASE("tight cap reports non-convergence with a diagnostic") {
  ConstraintSet c;
  c.max_takeoff_mass_kg = 0.6;
  const auto r = size_vehicle(c, desk());
  CHECK_FALSE(r.converged);
  CHECK(r.takeoff_mass_kg > 0.6);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("ties between equally light parts go to the smaller id") {
  auto motor = [](std::string id) {
    return ComponentSpec{std::move(id), {}, 0.05, MotorParams{1000, 13.0, {}}, {}};
  };
  Catalog c({motor("m_b"), motor("m_a"), desk().at("prop_1045"), desk().at("lipo_3s_2200")});
  CHECK(size_vehicle({}, c).motor.id == "m_a");
}
