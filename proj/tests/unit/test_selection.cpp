#include "doctest.h"

#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "pinctl/errors.hpp"
#include "pinctl/graph_generators.hpp"
#include "pinctl/selection.hpp"
#include "pinctl/spectral.hpp"

using namespace pinctl;
namespace gen = pinctl::generators;
using doctest::Approx;

namespace {

// Smallest eigenvalue above 1e-9 of sigma L + kappa P, straight from Eigen.
double brute_objective(const Graph& g, double sigma, double kappa, const std::vector<int>& pinned) {
  Eigen::MatrixXd m = sigma * testing::naive_laplacian(g.num_nodes(), g.edges()).cast<double>();
  for (int i : pinned) m(i, i) += kappa;
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev(k) > 1e-9 * std::max(1.0, ev(ev.size() - 1))) return ev(k);
  return 0.0;
}

// All budget-subsets by bitmask, first maximizer in lexicographic order.
std::pair<std::vector<int>, double> brute_argmax(const Graph& g, double sigma, double kappa, int budget) {
  const int n = g.num_nodes();
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != budget) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets.push_back(s);
  }
  std::sort(subsets.begin(), subsets.end());
  std::vector<int> best;
  double best_value = -1.0;
  for (const auto& s : subsets) {
    const double v = brute_objective(g, sigma, kappa, s);
    if (v > best_value + 1e-12) {
      best_value = v;
      best = s;
    }
  }
  return {best, best_value};
}

}  // namespace

TEST_CASE("evaluate_pinning") {
  CHECK(evaluate_pinning(gen::path(3), 1.0, 0.0, {}) == Approx(1.0));
  CHECK(evaluate_pinning(gen::path(3), 1.0, 5.0, {}) == Approx(1.0));
  CHECK(evaluate_pinning(gen::complete(4), 1.0, 1.0, {}) == Approx(4.0));
  const double all = evaluate_pinning(gen::path(3), 1.0, 1e6, {0, 1, 2});
  CHECK(all > 1.0);
  CHECK(all == Approx(1e6));
}

TEST_CASE("greedy_select") {
  const Graph star = gen::star(4);
  const auto greedy = greedy_select(star, 1.0, 10.0, 1);
  const auto [brute_set, brute_value] = brute_argmax(star, 1.0, 10.0, 1);
  CHECK(greedy.pinned == brute_set);
  CHECK(greedy.objective == Approx(brute_value).epsilon(1e-10));
  CHECK(greedy.evaluations == 4);
  CHECK(greedy.method == SelectionMethod::Greedy);

  const auto full = greedy_select(gen::path(4), 1.0, 3.0, 4);
  CHECK(full.pinned == std::vector<int>{0, 1, 2, 3});
  CHECK(full.objective == Approx(3.0));  // lambda_min(L + 3I) = 3
  CHECK(full.evaluations == 4 + 3 + 2 + 1);

  const auto none = greedy_select(gen::path(3), 1.0, 3.0, 0);
  CHECK(none.pinned.empty());
  CHECK(none.objective == Approx(1.0));
  CHECK(none.evaluations == 0);

  CHECK_THROWS_AS(greedy_select(gen::path(3), 1.0, 3.0, 4), ValidationError);
}

TEST_CASE("degree_select") {
  CHECK(degree_select(gen::star(4), 1.0, 10.0, 1).pinned == std::vector<int>{0});
  CHECK(degree_select(gen::cycle(5), 1.0, 10.0, 2).pinned == std::vector<int>{0, 1});
  CHECK(degree_select(gen::path(3), 1.0, 10.0, 1).pinned == std::vector<int>{1});
  const auto r = degree_select(gen::path(3), 1.0, 10.0, 1);
  CHECK(r.objective == Approx(brute_objective(gen::path(3), 1.0, 10.0, {1})).epsilon(1e-10));
}

TEST_CASE("exhaustive_select") {
  const auto full = exhaustive_select(gen::cycle(5), 1.0, 2.0, 5);
  CHECK(full.pinned == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(full.evaluations == 1);

  for (const auto& [g, sigma, kappa, budget] :
       std::vector<std::tuple<Graph, double, double, int>>{{gen::star(4), 1.0, 10.0, 1}, {gen::path(5), 1.0, 1.0, 2}}) {
    const auto res = exhaustive_select(g, sigma, kappa, budget);
    const auto [set, value] = brute_argmax(g, sigma, kappa, budget);
    CHECK(res.pinned == set);
    CHECK(res.objective == Approx(value).epsilon(1e-10));
    CHECK(res.evaluations == binomial(g.num_nodes(), budget));
  }

  CHECK_THROWS_AS(exhaustive_select(gen::complete(40), 1.0, 1.0, 20), PreconditionError);
  CHECK(binomial(40, 20) == 137846528820LL);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("selection method names") {
  CHECK(parse_selection_method("greedy") == SelectionMethod::Greedy);
  CHECK(parse_selection_method("degree") == SelectionMethod::DegreeTopR);
  CHECK(parse_selection_method("exhaustive") == SelectionMethod::Exhaustive);
  CHECK_THROWS_AS(parse_selection_method("sdp"), ValidationError);
  CHECK(to_string(SelectionMethod::DegreeTopR) == "degree");
}

TEST_CASE("greedy never beats exhaustive, both monotone in budget") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial % 9;
    const Graph g = gen::connected_erdos_renyi(n, trial % 2 ? 0.3 : 0.6, rng);
    const double sigma = 0.5 + 0.5 * (trial % 3);
    const double kappa = 1.0 + 2.0 * (trial % 5);
    double prev_g = -1.0;
    double prev_e = -1.0;
    for (int budget = 1; budget <= 3; ++budget) {
      const auto gr = greedy_select(g, sigma, kappa, budget);
      const auto ex = exhaustive_select(g, sigma, kappa, budget);
      CHECK(gr.objective <= ex.objective + 1e-10);
      CHECK(gr.objective >= prev_g - 1e-10);
      CHECK(ex.objective >= prev_e - 1e-10);
      CHECK(gr.objective == Approx(evaluate_pinning(g, sigma, kappa, gr.pinned)).epsilon(1e-10));
      CHECK(gr.evaluations == static_cast<std::int64_t>(budget) * n - budget * (budget - 1) / 2);
      prev_g = gr.objective;
      prev_e = ex.objective;
    }
    CHECK(greedy_select(g, sigma, kappa, 3).pinned == greedy_select(g, sigma, kappa, 3).pinned);
  }
}
