#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "uav/stability.hpp"

using namespace uav;
using cvec = std::vector<std::complex<double>>;

namespace {

MassProperties props(double m, double ixx, double iyy, double izz) {
  MassProperties p;
  p.total_mass = m;
  p.inertia = Eigen::Vector3d(ixx, iyy, izz).asDiagonal();
  return p;
}

MassProperties random_props(std::mt19937_64& rng) {
  auto p = props(test::uniform(rng, 0.2, 5), test::uniform(rng, 1e-3, 0.2),
                 test::uniform(rng, 1e-3, 0.2), test::uniform(rng, 1e-3, 0.3));
  const double off = test::uniform(rng, -1e-4, 1e-4);
  p.inertia(0, 1) = p.inertia(1, 0) = off;
  return p;
}

cvec values(const PoleSet& s) {
  cvec out;
  for (const auto& p : s.poles) out.push_back(p.value);
  return out;
}

int nonzeros(const StateMatrix& a) {
  int n = 0;
  for (int i = 0; i < kStateCount; ++i)
    for (int j = 0; j < kStateCount; ++j) n += a(i, j) != 0.0;
  return n;
}

// Each pole marker is a cross of two strokes in the marker colour.
std::size_t markers(const std::string& svg) {
  std::size_t n = 0;
  for (auto pos = svg.find("#c0392b;stroke-width:2"); pos != std::string::npos;
       pos = svg.find("#c0392b;stroke-width:2", pos + 1))
    ++n;
  return n / 2;
}

}  // namespace

TEST_CASE("hover model structure") {
  const auto m = build_hover_model(props(1.2, 0.02, 0.02, 0.035), 9.81);
  CHECK(nonzeros(m.a) == 8);
  using namespace state;
  for (auto [i, j] : {std::pair{x, u}, {y, v}, {z, w}, {phi, p}, {theta, q}, {psi, r}})
    CHECK(m.a(i, j) == 1.0);
  CHECK(std::abs(m.a(u, theta)) == 9.81);
  CHECK(std::abs(m.a(v, phi)) == 9.81);
  CHECK(m.a(u, theta) == -m.a(v, phi));
  CHECK(std::abs(m.b(w, 0)) == 1.0 / 1.2);
  CHECK(m.b(p, 1) == 1.0 / 0.02);
  CHECK(m.b(q, 2) == 1.0 / 0.02);
  CHECK(m.b(r, 3) == 1.0 / 0.035);
  int b_nonzero = 0;
  for (int i = 0; i < kStateCount; ++i)
    for (int j = 0; j < kInputCount; ++j) b_nonzero += m.b(i, j) != 0.0;
  CHECK(b_nonzero == 4);
}

TEST_CASE("gravity-free model is nilpotent") {
  const auto m = build_hover_model(props(1.2, 0.02, 0.02, 0.035), 0.0);
  CHECK(nonzeros(m.a) == 6);
  const StateMatrix a2 = m.a * m.a;
  CHECK(a2.isZero(0.0));
  const auto g = build_hover_model(props(1.2, 0.02, 0.02, 0.035), 9.81);
  const StateMatrix g2 = g.a * g.a, g4 = g2 * g2;
  CHECK_FALSE(g2.isZero(0.0));
  CHECK(g4.isZero(0.0));
}

TEST_CASE("open loop poles all sit at the origin") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 1000; ++t) {
    const auto m = build_hover_model(random_props(rng), test::uniform(rng, 1, 25));
    const auto s = open_loop_poles(m);
    REQUIRE(s.poles.size() == 12);
    for (const auto& p : s.poles) CHECK(std::abs(p.value) < 1e-9);
    CHECK(s.classification == StabilityClass::marginal);
  }
}

TEST_CASE("hover model errors") {
  CHECK_THROWS_AS(build_hover_model(props(0.0, 0.02, 0.02, 0.03)), DomainError);
  CHECK_THROWS_AS(build_hover_model(props(1.0, 0.0, 0.02, 0.03)), DomainError);
  CHECK_THROWS_AS(build_hover_model(props(1.0, 0.02, -0.02, 0.03)), DomainError);
}

TEST_CASE("pitch axis example") {
  const auto m = build_hover_model(props(1.2, 0.02, 0.02, 0.035));
  FeedbackGains g;
  g.pitch = {0.4, 0.04};
  const auto s = closed_loop_poles(m, g);
  cvec expected(10, 0.0);
  expected.push_back({-1.0, std::sqrt(19.0)});
  expected.push_back({-1.0, -std::sqrt(19.0)});
  CHECK(test::multiset_distance(values(s), expected) < 1e-9);
  for (const auto& p : s.poles)
    if (std::abs(p.value) > 1) {
      CHECK(p.natural_frequency == doctest::Approx(std::sqrt(20.0)).epsilon(1e-12));
      CHECK(p.damping_ratio == doctest::Approx(1.0 / std::sqrt(20.0)).epsilon(1e-12));
      CHECK(std::abs(std::abs(p.value.imag()) - 4.359) < 1e-3);
    } else {
      CHECK(p.damping_ratio == 0.0);
    }
  CHECK(s.classification == StabilityClass::marginal);
}

TEST_CASE("zero gains reproduce the open loop") {
  const auto m = build_hover_model(props(1.2, 0.02, 0.02, 0.035));
  const auto s = closed_loop_poles(m, {});
  CHECK(s == open_loop_poles(m));
  CHECK(s.classification == StabilityClass::marginal);
}

TEST_CASE("undamped attitude loop") {
  const auto m = build_hover_model(props(1.2, 0.02, 0.03, 0.035));
  FeedbackGains g;
  g.roll = {0.5, 0.0};
  const auto s = closed_loop_poles(m, g);
  CHECK(test::multiset_distance(values(s), [] {
          cvec e(10, 0.0);
          e.push_back({0, 5});
          e.push_back({0, -5});
          return e;
        }()) < 1e-9);
  CHECK(s.classification == StabilityClass::marginal);
}

TEST_CASE("closed loop axis poles match the quadratic formula") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 1000; ++t) {
    const double mass = test::uniform(rng, 0.2, 5);
    const Eigen::Vector3d i(test::uniform(rng, 1e-3, 0.2), test::uniform(rng, 1e-3, 0.2),
                            test::uniform(rng, 1e-3, 0.3));
    const auto model = build_hover_model(props(mass, i[0], i[1], i[2]));
    FeedbackGains g;
    AxisGains* axes[] = {&g.roll, &g.pitch, &g.yaw, &g.altitude};
    const double inertia[] = {i[0], i[1], i[2], mass};
    cvec expected(4, 0.0);
    for (int a = 0; a < 4; ++a) {
      *axes[a] = {test::uniform(rng, 0.01, 10), test::uniform(rng, 0.0, 2)};
      for (auto root : oracle::quadratic_roots(inertia[a], axes[a]->kd, axes[a]->kp))
        expected.push_back(root);
    }
    const auto s = closed_loop_poles(model, g);
    CHECK(test::multiset_distance(values(s), expected) < 1e-6);
  }
}

TEST_CASE("position loop with the desk gains is stable") {
  const auto m = build_hover_model(props(1.14, 0.012, 0.012, 0.022));
  FeedbackGains g;
  g.roll = g.pitch = {0.4, 0.04};
  g.yaw = {0.2, 0.05};
  g.altitude = {4, 3};
  g.position = {0.002, 0.004};
  CHECK(closed_loop_poles(m, g).classification == StabilityClass::stable);
  g.position = {};
  CHECK(closed_loop_poles(m, g).classification == StabilityClass::marginal);
}

TEST_CASE("classification") {
  CHECK(classify({{-1, 0}, {-2, 3}, {-2, -3}}) == StabilityClass::stable);
  CHECK(classify({{-1, 0}, {5e-10, 0}}) == StabilityClass::marginal);
  CHECK(classify({{-1, 0}, {-5e-10, 0}}) == StabilityClass::marginal);
  CHECK(classify({{-1, 0}, {2e-9, 1}}) == StabilityClass::unstable);
}

TEST_CASE("classification survives a change of time unit") {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const Eigen::MatrixXd a = test::random_matrix(rng, n) - test::uniform(rng, 0, 3) * Eigen::MatrixXd::Identity(n, n);
    const double k = test::uniform(rng, 0.01, 100);
    const auto c1 = classify(eigenvalues(a)), c2 = classify(eigenvalues(Eigen::MatrixXd(k * a)));
    if (c1 != StabilityClass::marginal) CHECK(c1 == c2);
  }
}

TEST_CASE("gain validation") {
  FeedbackGains g;
  g.yaw.kd = -1;
  CHECK_THROWS_AS(validate(g), ValidationError);
  g = {};
  g.altitude.kp = std::nan("");
  CHECK_THROWS_AS(validate(g), ValidationError);
  CHECK_NOTHROW(validate(FeedbackGains{}));
}

TEST_CASE("pole set ordering and damping definitions") {
  const auto s = make_pole_set({{0, 0}, {-1, -2}, {-3, 0}, {-1, 2}});
  REQUIRE(s.poles.size() == 4);
  for (std::size_t i = 1; i < 4; ++i) {
    const auto a = s.poles[i - 1].value, b = s.poles[i].value;
    CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
  }
  CHECK(s.poles[0].damping_ratio == 1.0);
  CHECK(s.poles[1].natural_frequency == doctest::Approx(std::sqrt(5.0)));
  CHECK(s.poles[3].damping_ratio == 0.0);
  CHECK(s.classification == StabilityClass::marginal);
}

TEST_CASE("pole plot documents") {
  SUBCASE("empty set draws axes only") {
    const auto svg = pole_plot_svg({});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(markers(svg) == 0);
  }
  SUBCASE("conjugate pair gives two mirrored markers") {
    const auto svg = pole_plot_svg(make_pole_set({{-1, 4.359}, {-1, -4.359}}));
    const auto count = markers(svg);
    CHECK(count == 2);
  }
  SUBCASE("twelve poles at the origin merge into one labelled marker") {
    const auto svg = pole_plot_svg(make_pole_set(cvec(12, 0.0)));
    const auto count = markers(svg);
    CHECK(count == 1);
    CHECK(svg.find(">12<") != std::string::npos);
  }
  SUBCASE("deterministic") {
    const auto s = make_pole_set({{-1, 2}, {-1, -2}, {-0.5, 0}});
    CHECK(pole_plot_svg(s) == pole_plot_svg(s));
  }
}

TEST_CASE("pole csv") {
  const auto csv = pole_csv(make_pole_set({{-1, 2}, {-1, -2}}));
  CHECK(csv.rfind("re,im,damping_ratio,natural_frequency\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
