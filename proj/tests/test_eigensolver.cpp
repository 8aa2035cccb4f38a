#include "doctest.h"
#include "support.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "uav/eigensolver.hpp"

using namespace uav;
using cvec = std::vector<std::complex<double>>;

namespace {

double trace_error(const Eigen::MatrixXd& m, const cvec& ev) {
  std::complex<double> sum = 0;
  for (auto l : ev) sum += l;
  return std::abs(sum - m.trace()) / std::max(1.0, m.norm());
}

double det_error(const Eigen::MatrixXd& m, const cvec& ev) {
  std::complex<double> prod = 1;
  for (auto l : ev) prod *= l;
  const double det = m.determinant();
  return std::abs(prod - det) / std::max(std::abs(det), 1e-300);
}

cvec reference(const Eigen::MatrixXd& m) {
  const Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  cvec out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

// P with singular values in [0.5, 2].
Eigen::MatrixXd well_conditioned(std::mt19937_64& rng, int n) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qa(test::random_matrix(rng, n)), qb(test::random_matrix(rng, n));
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s[i] = test::uniform(rng, 0.5, 2.0);
  return Eigen::MatrixXd(qa.householderQ()) * s.asDiagonal() * Eigen::MatrixXd(qb.householderQ());
}

}  // namespace

TEST_CASE("small known spectra") {
  Eigen::Matrix3d d = Eigen::Vector3d(1, 2, 3).asDiagonal();
  CHECK(test::multiset_distance(eigenvalues(d), {1.0, 2.0, 3.0}) < 1e-14);
  Eigen::Matrix2d rot;
  rot << 0, 1, -1, 0;
  const auto ev = eigenvalues(rot);
  CHECK(test::multiset_distance(ev, {{0, 1}, {0, -1}}) < 1e-14);
  Eigen::Matrix<double, 1, 1> one;
  one << -4.5;
  CHECK(eigenvalues(one)[0] == std::complex<double>(-4.5, 0));
}

TEST_CASE("companion matrix roots") {
  // (s - 1)(s + 2)(s^2 + 2 s + 5)
  Eigen::Matrix4d c = Eigen::Matrix4d::Zero();
  const double a[] = {-10, 1, 5, 3};  // s^4 + 3 s^3 + 5 s^2 + s - 10
  for (int i = 1; i < 4; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < 4; ++i) c(i, 3) = -a[i];
  CHECK(test::multiset_distance(eigenvalues(c), {1.0, -2.0, {-1, 2}, {-1, -2}}) < 1e-10);
}

TEST_CASE("conjugate pairs adjacent, positive imaginary first") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 50; ++t) {
    const auto ev = eigenvalues(test::random_matrix(rng, 9));
    for (std::size_t i = 0; i < ev.size(); ++i) {
      if (ev[i].imag() > 0) {
        REQUIRE(i + 1 < ev.size());
        CHECK(ev[i + 1] == std::conj(ev[i]));
        ++i;
      } else {
        CHECK(ev[i].imag() == 0.0);
      }
    }
  }
}

TEST_CASE("trace, determinant, transpose and similarity on random matrices") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const auto m = test::random_matrix(rng, n, test::uniform(rng, 0.1, 10.0));
    const auto ev = eigenvalues(m);
    REQUIRE(ev.size() == static_cast<std::size_t>(n));
    CHECK(trace_error(m, ev) < 1e-9);
    CHECK(det_error(m, ev) < 1e-6);
    CHECK(test::multiset_distance(eigenvalues(Eigen::MatrixXd(m.transpose())), ev) < 1e-6);
    const auto p = well_conditioned(rng, n);
    const Eigen::MatrixXd similar = p.inverse() * m * p;
    CHECK(test::multiset_distance(eigenvalues(similar), ev) < 1e-6);
    CHECK(test::multiset_distance(reference(m), ev) < 1e-8 * std::max(1.0, m.norm()));
  }
}

TEST_CASE("structured matrices") {
  std::mt19937_64 rng(67);
  SUBCASE("triangular") {
    Eigen::MatrixXd m = test::random_matrix(rng, 12).triangularView<Eigen::Upper>();
    cvec diag;
    for (int i = 0; i < 12; ++i) diag.emplace_back(m(i, i));
    CHECK(test::multiset_distance(eigenvalues(m), diag) < 1e-12);
  }
  SUBCASE("symmetric") {
    const auto a = test::random_matrix(rng, 15);
    const Eigen::MatrixXd s = a + a.transpose();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    cvec ref;
    for (int i = 0; i < 15; ++i) ref.emplace_back(es.eigenvalues()[i]);
    const auto ev = eigenvalues(s);
    for (auto l : ev) CHECK(l.imag() == 0.0);
    CHECK(test::multiset_distance(ev, ref) < 1e-10);
  }
  SUBCASE("badly scaled") {
    Eigen::MatrixXd m(3, 3);
    m << 1, 1e6, 0, 1e-6, 1, 1e6, 0, 1e-6, 1;
    // Diagonally similar to tridiag(1, 1, 1).
    const double r2 = std::sqrt(2.0);
    CHECK(test::multiset_distance(eigenvalues(m), {1.0, 1.0 + r2, 1.0 - r2}) < 1e-10);
  }
  SUBCASE("zero and nilpotent shift") {
    CHECK(test::multiset_distance(eigenvalues(Eigen::MatrixXd::Zero(7, 7)), cvec(7, 0.0)) == 0.0);
    Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(8, 8);
    for (int i = 0; i + 1 < 8; ++i) shift(i, i + 1) = 1.0;
    CHECK(test::multiset_distance(eigenvalues(shift), cvec(8, 0.0)) < 1e-12);
  }
}

TEST_CASE("long double instantiation") {
  Eigen::Matrix<long double, 2, 2> m;
  m << 2, 1, 1, 2;
  const auto ev = eigenvalues(m);
  CHECK(std::abs(std::abs(ev[0] - ev[1]) - 2.0L) < 1e-15L);
}

TEST_CASE("rejected input") {
  CHECK_THROWS_AS(eigenvalues(Eigen::MatrixXd(2, 3)), DomainError);
  CHECK_THROWS_AS(eigenvalues(Eigen::MatrixXd(0, 0)), DomainError);
  Eigen::Matrix2d bad;
  bad << 1, std::nan(""), 0, 1;
  CHECK_THROWS_AS(eigenvalues(bad), DomainError);
}

TEST_CASE("iteration cap") {
  std::mt19937_64 rng(71);
  const auto m = test::random_matrix(rng, 10);
  CHECK_THROWS_AS(eigenvalues(m, EigenSolverOptions{true, 0}), ConvergenceError);
}
