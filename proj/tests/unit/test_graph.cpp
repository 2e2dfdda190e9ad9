#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "pinctl/errors.hpp"
#include "pinctl/graph.hpp"
#include "pinctl/graph_generators.hpp"
#include "pinctl/spectral.hpp"

using namespace pinctl;
namespace gen = pinctl::generators;

TEST_CASE("laplacian of small graphs") {
  Eigen::MatrixXi expected(3, 3);
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK(laplacian_int(gen::path(3)) == expected);
  CHECK(laplacian(gen::path(3)).matrix() == expected.cast<double>());

  Eigen::MatrixXi k3(3, 3);
  k3 << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  CHECK(laplacian_int(gen::complete(3)) == k3);

  CHECK(laplacian_int(Graph(1, {})) == Eigen::MatrixXi::Zero(1, 1));
}

TEST_CASE("graph construction normalizes and validates edges") {
  Graph g(4, {{2, 1}, {1, 2}, {0, 3}, {3, 0}});
  REQUIRE(g.num_edges() == 2);
  CHECK(g.edges()[0] == Edge{0, 3});
  CHECK(g.edges()[1] == Edge{1, 2});

  CHECK_THROWS_AS(Graph(3, {{1, 1}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{-1, 2}}), ValidationError);
  CHECK_THROWS_AS(Graph(0, {}), ValidationError);
}

TEST_CASE("incidence matrix orientation and column order") {
  const auto single = incidence(gen::path(2)).entries();
  REQUIRE(single.rows() == 2);
  REQUIRE(single.cols() == 1);
  CHECK(single(0, 0) == -1);
  CHECK(single(1, 0) == 1);
  Eigen::MatrixXi l2(2, 2);
  l2 << 1, -1, -1, 1;
  CHECK(incidence(gen::path(2)).gram() == l2);

  Eigen::MatrixXi p3(3, 2);
  p3 << -1, 0, 1, -1, 0, 1;
  CHECK(incidence(gen::path(3)).entries() == p3);
  CHECK(incidence(gen::path(3)).gram() == laplacian_int(gen::path(3)));
}

TEST_CASE("degrees") {
  CHECK(degrees(gen::star(4)) == std::vector<int>{3, 1, 1, 1});
  CHECK(degrees(gen::complete(3)) == std::vector<int>{2, 2, 2});
  CHECK(degrees(Graph(4, {})) == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("random graphs: incidence identity, sign invariance, PSD Laplacian, degree sum") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> size(1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    const auto edges = testing::random_edges(n, 0.4, rng);
    const Graph g(n, edges);
    const Eigen::MatrixXi inc = incidence(g).entries();

    // Each column: exactly one +1 and one -1.
    for (Eigen::Index j = 0; j < inc.cols(); ++j) {
      CHECK((inc.col(j).array() == 1).count() == 1);
      CHECK((inc.col(j).array() == -1).count() == 1);
    }

    const Eigen::MatrixXi oracle = testing::naive_laplacian(n, edges);
    CHECK(testing::naive_int_product(inc, inc.transpose()) == oracle);
    CHECK(laplacian_int(g) == oracle);

    // Flip a random subset of columns.
    Eigen::MatrixXi flipped = inc;
    std::bernoulli_distribution coin(0.5);
    for (Eigen::Index j = 0; j < flipped.cols(); ++j)
      if (coin(rng)) flipped.col(j) *= -1;
    CHECK(testing::naive_int_product(flipped, flipped.transpose()) == oracle);

    const auto l = laplacian_int(g);
    CHECK(l.rowwise().sum() == Eigen::VectorXi::Zero(n));
    const Spectrum s = eig_sym(laplacian(g));
    CHECK(s.smallest() >= -1e-10 * std::max(1.0, s.largest()));

    const auto deg = degrees(g);
    CHECK(std::accumulate(deg.begin(), deg.end(), 0) == static_cast<int>(2 * g.num_edges()));
  }
}

TEST_CASE("connectivity") {
  CHECK(is_connected(gen::path(5)));
  CHECK_FALSE(is_connected(Graph(3, {{0, 1}})));
  const Graph u = gen::disjoint_union(gen::path(3), gen::complete(4));
  CHECK(num_components(u) == 2);
  CHECK(component_labels(u) == std::vector<int>{0, 0, 0, 1, 1, 1, 1});
}

TEST_CASE("parse_edge_list") {
  SUBCASE("path on three nodes") {
    const Graph g = parse_edge_list("N 3\n0 1\n1 2");
    CHECK(g.num_nodes() == 3);
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  }
  SUBCASE("comments, blank lines, CRLF and duplicates") {
    const Graph g = parse_edge_list("# header comment\r\nN 3\r\n\r\n0 1\r\n1 0\r\n# edge\r\n2 1\r\n");
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  }
  SUBCASE("self-loop") { CHECK_THROWS_AS(parse_edge_list("N 2\n0 0"), ValidationError); }
  SUBCASE("index out of range") { CHECK_THROWS_AS(parse_edge_list("N 2\n0 5"), ValidationError); }
  SUBCASE("malformed line reports its number") {
    try {
      parse_edge_list("N 3\n0 1\n1 x\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_edge_list("N 3\n0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list(""), ParseError);
    CHECK_THROWS_AS(parse_edge_list("N 0\n"), ParseError);
  }
  SUBCASE("format round trip") {
    std::mt19937_64 rng(3);
    const Graph g = gen::erdos_renyi(9, 0.3, rng);
    const Graph back = parse_edge_list(format_edge_list(g));
    CHECK(back.num_nodes() == g.num_nodes());
    CHECK(back.edges() == g.edges());
  }
}
