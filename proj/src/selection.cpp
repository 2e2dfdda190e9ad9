#include "pinctl/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "pinctl/criteria.hpp"
#include "pinctl/errors.hpp"
#include "pinctl/spectral.hpp"

namespace pinctl {

namespace {

void check_budget(const Graph& g, int budget) {
  if (budget < 0 || budget > g.num_nodes()) {
    std::ostringstream msg;
    msg << "budget " << budget << " is outside [0, " << g.num_nodes() << "]";
    throw ValidationError(msg.str());
  }
}

// Objectives within round-off of each other count as ties so the index
// tie-break is not decided by the last few bits of an eigensolve.
bool improves(double value, double best) { return value > best + 1e-12 * (1.0 + std::abs(best)); }

}  // namespace

std::string_view to_string(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::Greedy: return "greedy";
    case SelectionMethod::DegreeTopR: return "degree";
    case SelectionMethod::Exhaustive: return "exhaustive";
  }
  return "unknown";
}

SelectionMethod parse_selection_method(std::string_view name) {
  if (name == "greedy") return SelectionMethod::Greedy;
  if (name == "degree") return SelectionMethod::DegreeTopR;
  if (name == "exhaustive") return SelectionMethod::Exhaustive;
  throw ValidationError("unknown selection method '" + std::string(name) + "'");
}

double evaluate_pinning(const Graph& g, double sigma, double kappa, const std::vector<int>& pinned) {
  return lambda_min_gt0(pinned_operator(g, sigma, kappa, pinned));
}

SelectionResult greedy_select(const Graph& g, double sigma, double kappa, int budget) {
  check_budget(g, budget);
  SelectionResult res;
  res.method = SelectionMethod::Greedy;
  std::vector<bool> taken(static_cast<std::size_t>(g.num_nodes()), false);

  if (budget == 0) {
    res.objective = evaluate_pinning(g, sigma, kappa, {});
    return res;
  }
  for (int step = 0; step < budget; ++step) {
    int best_node = -1;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> trial = res.pinned;
    trial.push_back(0);
    for (int v = 0; v < g.num_nodes(); ++v) {
      if (taken[static_cast<std::size_t>(v)]) continue;
      trial.back() = v;
      const double value = evaluate_pinning(g, sigma, kappa, trial);
      ++res.evaluations;
      if (best_node < 0 || improves(value, best)) {
        best = value;
        best_node = v;
      }
    }
    taken[static_cast<std::size_t>(best_node)] = true;
    res.pinned.push_back(best_node);
    res.objective = best;
  }
  std::sort(res.pinned.begin(), res.pinned.end());
  return res;
}

SelectionResult degree_select(const Graph& g, double sigma, double kappa, int budget) {
  check_budget(g, budget);
  const auto deg = degrees(g);
  std::vector<int> order(deg.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });

  SelectionResult res;
  res.method = SelectionMethod::DegreeTopR;
  res.pinned.assign(order.begin(), order.begin() + budget);
  std::sort(res.pinned.begin(), res.pinned.end());
  res.objective = evaluate_pinning(g, sigma, kappa, res.pinned);
  res.evaluations = 1;
  return res;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    const std::int64_t num = n - k + i;
    // c * num / i is exact at every step; bail out before overflowing.
    if (c > std::numeric_limits<std::int64_t>::max() / num) return std::numeric_limits<std::int64_t>::max();
    c = c * num / i;
  }
  return c;
}

SelectionResult exhaustive_select(const Graph& g, double sigma, double kappa, int budget) {
  check_budget(g, budget);
  const std::int64_t count = binomial(g.num_nodes(), budget);
  if (count > kExhaustiveSubsetLimit) {
    std::ostringstream msg;
    msg << "exhaustive search over C(" << g.num_nodes() << ", " << budget << ") = " << count
        << " subsets exceeds the limit of " << kExhaustiveSubsetLimit;
    throw PreconditionError(msg.str());
  }

  SelectionResult res;
  res.method = SelectionMethod::Exhaustive;
  res.objective = -std::numeric_limits<double>::infinity();

  // Lexicographic enumeration of combinations; strict improvement keeps the
  // lexicographically smallest maximizer.
  std::vector<int> subset(static_cast<std::size_t>(budget));
  std::iota(subset.begin(), subset.end(), 0);
  const int n = g.num_nodes();
  for (;;) {
    const double value = evaluate_pinning(g, sigma, kappa, subset);
    ++res.evaluations;
    if (res.evaluations == 1 || improves(value, res.objective)) {
      res.objective = value;
      res.pinned = subset;
    }
    int i = budget - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - budget + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < budget; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
  return res;
}

SelectionResult select_nodes(const Graph& g, double sigma, double kappa, int budget, SelectionMethod method) {
  switch (method) {
    case SelectionMethod::Greedy: return greedy_select(g, sigma, kappa, budget);
    case SelectionMethod::DegreeTopR: return degree_select(g, sigma, kappa, budget);
    case SelectionMethod::Exhaustive: return exhaustive_select(g, sigma, kappa, budget);
  }
  throw ValidationError("unknown selection method");
}

}  // namespace pinctl
