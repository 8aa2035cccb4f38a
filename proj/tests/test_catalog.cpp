#include "doctest.h"
#include "support.hpp"

#include "uav/catalog.hpp"
#include "uav/errors.hpp"

using namespace uav;

namespace {

const char* kMotor = R"(
- id: x2212
  kind: motor
  mass_kg: 0.056
  kv_rpm_per_v: 1400
  max_thrust_n: 13.0
)";

ParameterBound at_least(std::string field, double v) { return {std::move(field), v, {}}; }

}  // namespace

TEST_CASE("single motor record") {
  const auto c = parse_catalog(kMotor);
  REQUIRE(c.size() == 1);
  const auto& m = c.entries()[0];
  CHECK(m.id == "x2212");
  CHECK(m.kind() == ComponentKind::motor);
  CHECK(m.motor().kv_rpm_per_v == 1400);
  CHECK(m.motor().max_thrust_n == 13.0);
  CHECK(m.mass() == 0.056);
  CHECK(m.numeric_field("max_thrust_n") == 13.0);
  CHECK_FALSE(m.numeric_field("diameter_m").has_value());
}

TEST_CASE("empty input gives an empty catalog") {
  CHECK(parse_catalog("").empty());
  CHECK(parse_catalog("# only a comment\n").empty());
}

TEST_CASE("inverted tube bounds name the entry") {
  const char* text = R"(
- id: bad_tube
  kind: tube
  mass_kg: 0.01
  outer_diameter_m: 0.010
  inner_diameter_m: 0.012
)";
  try {
    parse_catalog(text);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bad_tube") != std::string::npos);
  }
}

TEST_CASE("rejected records") {
  SUBCASE("duplicate id") {
    try {
      parse_catalog(std::string(kMotor) + kMotor);
      FAIL("expected a duplicate-id error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("duplicate component id 'x2212'") != std::string::npos);
    }
  }
  SUBCASE("unknown field") {
    CHECK_THROWS_AS(parse_catalog(R"(
- id: m
  kind: motor
  mass_kg: 0.05
  kv_rpm_per_v: 1000
  max_thrust_n: 10
  max_thrust_kg: 1
)"),
                    Error);
  }
  SUBCASE("non-positive mass") {
    CHECK_THROWS_AS(parse_catalog(R"(
- id: m
  kind: motor
  mass_kg: 0
  kv_rpm_per_v: 1000
  max_thrust_n: 10
)"),
                    ValidationError);
  }
  SUBCASE("battery voltage inconsistent with cell count") {
    CHECK_THROWS_AS(parse_catalog(R"(
- id: b
  kind: battery
  mass_kg: 0.1
  capacity_ah: 1.3
  nominal_voltage_v: 14.8
  cell_count: 3
)"),
                    ValidationError);
  }
  SUBCASE("unknown kind") {
    CHECK_THROWS_AS(parse_catalog("- {id: a, kind: rotor, mass_kg: 1}\n"), Error);
  }
}

TEST_CASE("battery voltage tolerance is 10 percent of cells x 3.7 V") {
  auto battery = [](double v) {
    return "- {id: b, kind: battery, mass_kg: 0.1, capacity_ah: 1, nominal_voltage_v: " +
           std::to_string(v) + ", cell_count: 3}\n";
  };
  CHECK_NOTHROW(parse_catalog(battery(11.1 * 1.099)));
  CHECK_NOTHROW(parse_catalog(battery(11.1 * 0.901)));
  CHECK_THROWS_AS(parse_catalog(battery(11.1 * 1.11)), ValidationError);
  CHECK_THROWS_AS(parse_catalog(battery(11.1 * 0.89)), ValidationError);
}

TEST_CASE("malformed file reports a line") {
  const char* text = "- id: a\n  kind: motor\n  mass_kg: [1,\n";
  try {
    parse_catalog(text, "broken.yaml");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() > 0);
    CHECK(std::string(e.what()).find("broken.yaml") != std::string::npos);
  }
  CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.yaml"), Error);
}

TEST_CASE("desk catalog") {
  const auto c = load_catalog(test::data("desk_catalog.yaml"));
  for (auto kind : {ComponentKind::motor, ComponentKind::propeller, ComponentKind::battery,
                    ComponentKind::esc, ComponentKind::material, ComponentKind::tube})
    CHECK(c.count(kind) > 0);
  CHECK(c.at("abs").material().tensile_strength_pa == 31.33e6);
  CHECK(c.at("cfrp").material().density_kg_per_m3 == 1600);
  CHECK(c.at("balsa").material().density_kg_per_m3 == 160);
  CHECK(c.at("mg90s_servo").mass() == doctest::Approx(0.013));
  CHECK_THROWS_AS(c.at("no_such_part"), ValidationError);

  SUBCASE("motor query at one vehicle weight") {
    const auto r = query(c, ComponentKind::motor, {at_least("max_thrust_n", 9.81)});
    std::vector<std::string> ids;
    for (const auto& e : r) ids.push_back(e.id);
    CHECK(std::find(ids.begin(), ids.end(), "sunnysky_x2212_1400kv") != ids.end());
    for (const auto& e : r) CHECK(e.motor().max_thrust_n >= 9.81);
  }
  SUBCASE("empty bounds return every entry of the kind, sorted by id") {
    const auto r = query(c, ComponentKind::battery);
    CHECK(r.size() == c.count(ComponentKind::battery));
    CHECK(std::is_sorted(r.begin(), r.end(),
                         [](const auto& a, const auto& b) { return a.id < b.id; }));
  }
  SUBCASE("no battery holds 10 Ah") {
    CHECK(query(c, ComponentKind::battery, {at_least("capacity_ah", 10.0)}).empty());
  }
  SUBCASE("bound on a field the kind lacks excludes everything") {
    CHECK(query(c, ComponentKind::motor, {at_least("capacity_ah", 0.0)}).empty());
  }
}

TEST_CASE("round trip through the serialised form") {
  const auto original = load_catalog(test::data("desk_catalog.yaml"));
  const auto text = serialize_catalog(original);
  const auto again = parse_catalog(text);
  CHECK(again == original);
  CHECK(serialize_catalog(again) == text);
}

TEST_CASE("two loads give identical entry order") {
  const auto a = load_catalog(test::data("desk_catalog.yaml"));
  const auto b = load_catalog(test::data("desk_catalog.yaml"));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.entries()[i].id == b.entries()[i].id);
}

TEST_CASE("query properties on random bounds") {
  const auto c = load_catalog(test::data("desk_catalog.yaml"));
  std::mt19937_64 rng(7);
  const std::vector<std::pair<ComponentKind, std::vector<std::string>>> fields{
      {ComponentKind::motor, {"max_thrust_n", "mass_kg", "kv_rpm_per_v"}},
      {ComponentKind::battery, {"capacity_ah", "nominal_voltage_v", "mass_kg"}},
      {ComponentKind::material, {"density_kg_per_m3", "cost_per_kg"}},
  };
  for (int trial = 0; trial < 300; ++trial) {
    const auto& [kind, names] = fields[trial % fields.size()];
    const auto all = query(c, kind);
    auto pick = [&] {
      const auto& f = names[rng() % names.size()];
      std::optional<double> lo, hi;
      double a = std::numeric_limits<double>::infinity(), b = 0.0;
      for (const auto& e : all)
        if (auto v = e.numeric_field(f)) {
          a = std::min(a, *v);
          b = std::max(b, *v);
        }
      if (rng() % 2) lo = test::uniform(rng, 0.5 * a, b);
      if (rng() % 2) hi = test::uniform(rng, a, 1.5 * b);
      return ParameterBound{f, lo, hi};
    };
    const auto b1 = pick();
    const auto b2 = pick();
    const auto r1 = query(c, kind, {b1});
    const auto r12 = query(c, kind, {b1, b2});
    for (const auto& e : r12) {
      CHECK(std::find(r1.begin(), r1.end(), e) != r1.end());
      CHECK(std::find(c.entries().begin(), c.entries().end(), e) != c.entries().end());
    }
    CHECK(r12.size() <= r1.size());
  }
}
