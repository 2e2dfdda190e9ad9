#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pinctl/errors.hpp"
#include "pinctl/graph_generators.hpp"
#include "pinctl/spectral.hpp"

using namespace pinctl;
namespace gen = pinctl::generators;
using doctest::Approx;

namespace {

void check_sign_rule(const Spectrum& s) {
  for (Eigen::Index k = 0; k < s.vectors.cols(); ++k) {
    Eigen::Index arg = 0;
    s.vectors.col(k).cwiseAbs().maxCoeff(&arg);
    CHECK(s.vectors(arg, k) > 0.0);
  }
}

}  // namespace

TEST_CASE("SymMatrix symmetrizes and rejects asymmetric input") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0, 2.0 + 1e-14, 3.0;
  const SymMatrix s(m);
  CHECK(s(0, 1) == s(1, 0));

  m(1, 0) = 2.1;
  CHECK_THROWS_AS(SymMatrix{m}, ValidationError);
  CHECK_THROWS_AS(SymMatrix{Eigen::MatrixXd(2, 3)}, ValidationError);
  CHECK_THROWS_AS(SymMatrix{Eigen::MatrixXd(0, 0)}, ValidationError);
}

TEST_CASE("eig_sym on diagonal and exchange matrices") {
  const Spectrum d = eig_sym(SymMatrix::diagonal(Eigen::Vector3d(3, 1, 2)));
  CHECK(d.values(0) == Approx(3.0));
  CHECK(d.values(1) == Approx(2.0));
  CHECK(d.values(2) == Approx(1.0));

  Eigen::Matrix2d x;
  x << 0, 1, 1, 0;
  const Spectrum e = eig_sym(SymMatrix(x));
  CHECK(e.values(0) == Approx(1.0));
  CHECK(e.values(1) == Approx(-1.0));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(e.vectors(0, 0) == Approx(h));
  CHECK(e.vectors(1, 0) == Approx(h));
  // (1, -1)/sqrt(2) has a magnitude tie; the first entry is made positive.
  CHECK(e.vectors(0, 1) == Approx(h));
  CHECK(e.vectors(1, 1) == Approx(-h));
}

TEST_CASE("eig_sym matches the closed-form cubic roots on random 3x3 matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Matrix3d a = testing::random_symmetric(3, rng);
    const auto oracle = testing::cubic_eigenvalues(a);
    const Spectrum s = eig_sym(SymMatrix(a));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(s.values(k) - oracle[static_cast<std::size_t>(k)]) <= 1e-8);
  }
}

TEST_CASE("Spectrum invariants on random symmetric matrices up to 50x50") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> dim(1, 50);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = dim(rng);
    const Eigen::MatrixXd a = testing::random_symmetric(d, rng);
    const Spectrum s = eig_sym(SymMatrix(a));
    const double scale = 1.0 + std::abs(s.largest());

    for (Eigen::Index k = 0; k + 1 < d; ++k) CHECK(s.values(k) >= s.values(k + 1));
    for (Eigen::Index k = 0; k < d; ++k) {
      CHECK((a * s.vectors.col(k) - s.values(k) * s.vectors.col(k)).norm() <= 1e-9 * scale);
    }
    CHECK((s.vectors.transpose() * s.vectors - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-9);
    const Eigen::MatrixXd rebuilt = s.vectors * s.values.asDiagonal() * s.vectors.transpose();
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() <= 1e-8 * scale);
    check_sign_rule(s);
  }
}

TEST_CASE("eig_sym is deterministic") {
  std::mt19937_64 rng(13);
  const Eigen::MatrixXd a = testing::random_symmetric(17, rng);
  const Spectrum s1 = eig_sym(SymMatrix(a));
  const Spectrum s2 = eig_sym(SymMatrix(a));
  CHECK(s1.values == s2.values);
  CHECK(s1.vectors == s2.vectors);
}

TEST_CASE("eig_sym rejects non-finite input") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  // NaN fails the symmetry check before reaching the solver.
  CHECK_THROWS_AS(eig_sym(SymMatrix(a)), Error);
}

TEST_CASE("lambda_min_gt0") {
  for (int n : {2, 3, 5, 8}) CHECK(lambda_min_gt0(laplacian(gen::complete(n))) == Approx(n));
  CHECK(lambda_min_gt0(laplacian(gen::path(3))) == Approx(1.0));
  CHECK_THROWS_AS(lambda_min_gt0(SymMatrix::zero(3)), PreconditionError);
  CHECK_THROWS_AS(lambda_min_gt0(SymMatrix::diagonal(Eigen::Vector2d(1.0, -1.0))), PreconditionError);
  CHECK(lambda_min_gt0(SymMatrix::diagonal(Eigen::Vector3d(4.0, 0.0, 0.5))) == Approx(0.5));
}

TEST_CASE("lambda_min and lambda_max") {
  CHECK(lambda_min(SymMatrix::identity(4)) == Approx(1.0));
  CHECK(lambda_max(SymMatrix::identity(4)) == Approx(1.0));
  CHECK(lambda_min(SymMatrix::diagonal(Eigen::Vector2d(-2.0, 5.0))) == Approx(-2.0));
  CHECK(lambda_max(SymMatrix::diagonal(Eigen::Vector2d(-2.0, 5.0))) == Approx(5.0));

  const auto oracle = testing::cubic_eigenvalues(laplacian(gen::path(3)).matrix());
  CHECK(oracle[2] == Approx(0.0).epsilon(1e-12));
  CHECK(oracle[0] == Approx(3.0));
  CHECK(std::abs(lambda_min(laplacian(gen::path(3))) - oracle[2]) <= 1e-12);
  CHECK(lambda_max(laplacian(gen::path(3))) == Approx(oracle[0]));
}

TEST_CASE("spectral_norm") {
  CHECK(spectral_norm(Eigen::MatrixXd::Identity(3, 3)) == Approx(1.0));
  Eigen::MatrixXd a(2, 2);
  a << 0, 2, 0, 0;
  CHECK(spectral_norm(a) == Approx(2.0));
  CHECK(spectral_norm(Eigen::Vector2d(3, 4)) == Approx(5.0));

  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd m = testing::random_matrix(1 + trial % 7, 1 + (trial * 3) % 5, rng);
    const double svd = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
    CHECK(spectral_norm(m) == Approx(svd).epsilon(1e-10));
    CHECK(spectral_norm(m.transpose()) == Approx(spectral_norm(m)).epsilon(1e-12));
  }
}

TEST_CASE("Laplacian zero eigenvalues count components") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = gen::connected_erdos_renyi(3 + trial % 5, 0.5, rng);
    const int k = 1 + trial % 4;
    for (int c = 1; c < k; ++c) g = gen::disjoint_union(g, gen::connected_erdos_renyi(2 + c, 0.6, rng));
    const Spectrum s = eig_sym(laplacian(g));
    const double tol = default_rank_tol(s.largest());
    CHECK(s.dim() - numerical_rank(s, tol) == k);
    CHECK(lambda_min_gt0(s) > 0.0);
  }
}
