#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pinctl/graph.hpp"

namespace pinctl {

enum class SelectionMethod { Greedy, DegreeTopR, Exhaustive };

std::string_view to_string(SelectionMethod method);
/// Accepts "greedy", "degree" and "exhaustive"; throws ValidationError otherwise.
SelectionMethod parse_selection_method(std::string_view name);

struct SelectionResult {
  std::vector<int> pinned;  // ascending
  double objective = 0.0;   // lambda_min>0(sigma L + kappa P)
  SelectionMethod method = SelectionMethod::Greedy;
  std::int64_t evaluations = 0;
};

/// Exact lambda_min>0(sigma L + kappa sum_{i in pinned} e_i e_i^t).
double evaluate_pinning(const Graph& g, double sigma, double kappa, const std::vector<int>& pinned);

/// Grow the pinned set one node at a time, taking the node that maximizes the
/// objective of the augmented set; ties go to the smaller index.
/// `evaluations` counts the candidate eigensolves, sum_{k<budget} (N - k).
SelectionResult greedy_select(const Graph& g, double sigma, double kappa, int budget);

/// Pin the `budget` highest-degree nodes, ties by smaller index.
SelectionResult degree_select(const Graph& g, double sigma, double kappa, int budget);

inline constexpr std::int64_t kExhaustiveSubsetLimit = 1'000'000;

/// Binomial coefficient, saturating at INT64_MAX.
std::int64_t binomial(int n, int k);

/// True argmax over all budget-subsets, ties to the lexicographically smallest
/// subset. Throws PreconditionError when C(N, budget) exceeds the subset limit.
SelectionResult exhaustive_select(const Graph& g, double sigma, double kappa, int budget);

SelectionResult select_nodes(const Graph& g, double sigma, double kappa, int budget,
                             SelectionMethod method);

}  // namespace pinctl
