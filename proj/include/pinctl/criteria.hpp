#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pinctl/graph.hpp"
#include "pinctl/perturbation.hpp"
#include "pinctl/sym_matrix.hpp"

namespace pinctl {

/// Inputs of the pinning-controllability criteria for N coupled n-dimensional
/// oscillators.
struct PinnedSystemSpec {
  Graph graph;
  double sigma = 1.0;       // coupling strength
  double kappa = 0.0;       // feedback multiplier tying K to B through Q
  Eigen::MatrixXd b;        // inner coupling matrix, n x n
  Eigen::MatrixXd k;        // feedback gain, n x n
  SymMatrix q;              // Lyapunov weight, positive definite
  std::vector<int> pinned;  // pinned node indices, distinct
  double f_bound = 0.0;     // sup ||F|| over all state pairs

  int state_dim() const { return static_cast<int>(b.rows()); }

  /// Throws ValidationError on any invariant violation.
  void validate() const;

  /// The scalar testbed: n = 1, Q = B = 1, K = kappa.
  static PinnedSystemSpec scalar(Graph g, double sigma, double kappa, std::vector<int> pinned,
                                 double f_bound);
};

/// Value-or-reason pair used by reports that must not abort on one bad field.
template <class T>
struct Outcome {
  std::optional<T> value;
  std::string reason;

  bool defined() const noexcept { return value.has_value(); }
};

/// sigma * L + kappa * sum_{i in pinned} e_i e_i^t.
SymMatrix pinned_operator(const Graph& g, double sigma, double kappa, const std::vector<int>& pinned);

/// Factor [sqrt(kappa) e_{i_r}, ..., sqrt(kappa) e_{i_1}, sqrt(sigma) I] whose
/// Gram matrix F F^t is pinned_operator(g, sigma, kappa, pinned).
Eigen::MatrixXd pinned_factor(const Graph& g, double sigma, double kappa, const std::vector<int>& pinned);

struct StructuralCheck {
  bool ok = false;
  double identity_residual = 0.0;  // ||QK + K^tQ^t - kappa (QB + B^tQ^t)||
  double qb_min_eig = 0.0;         // lambda_min(QB + B^tQ^t)
};

StructuralCheck check_structural(const PinnedSystemSpec& spec, double tol = 1e-9);

/// 2 * f_bound * ||Q|| / lambda_min(QB + B^tQ^t).
double rhs_threshold(const PinnedSystemSpec& spec);

/// rhs_threshold < sigma * lambda_min>0(L), strictly.
bool check_f_condition(const PinnedSystemSpec& spec);

/// sigma lambda_min>0(L) - (sum of pinned degrees) / (kappa - sigma lambda_min>0(L)).
/// Throws PreconditionError unless kappa > sigma lambda_min>0(L).
double iterative_bound(const PinnedSystemSpec& spec);

/// (sum of pinned degrees) / (sigma lambda_min>0(L) - rhs) + sigma lambda_min>0(L).
/// Throws PreconditionError when the F-condition fails.
double kappa_threshold(const PinnedSystemSpec& spec);

struct ExactCheck {
  double lambda_min_gt0 = 0.0;   // smallest nonzero eigenvalue of sigma L + kappa P
  double lambda_min = 0.0;       // smallest eigenvalue of sigma L + kappa P
  double rhs = 0.0;
  bool holds = false;            // lambda_min_gt0 >= rhs (1e-12 margin)
  double qb_min_eig = 0.0;
  double proposition_lhs = 0.0;  // 0.5 * lambda_min * lambda_min(QB + B^tQ^t)
  double proposition_rhs = 0.0;  // f_bound * ||Q||
  bool proposition_holds = false;
};

/// Exact sufficient condition evaluated with a full eigensolve of sigma L + kappa P.
ExactCheck exact_condition(const PinnedSystemSpec& spec);

/// Per-node step of the column-append sequence behind the iterative bound.
/// Step k appends sqrt(kappa) e_{i_k} to the factor of sigma L + kappa P_{k-1}.
struct AppendStep {
  int node = 0;
  Eigen::Index principal_rank = 0;
  double step_lambda_min_gt0 = 0.0;  // exact smallest nonzero eigenvalue after the step
  BoundReport lili;
  BoundReport weyl;
  Outcome<BoundReport> mathias;
};

std::vector<AppendStep> column_append_sequence(const Graph& g, double sigma, double kappa,
                                               const std::vector<int>& pinned);

struct CriterionReport {
  StructuralCheck structural;
  Outcome<double> algebraic_connectivity;  // lambda_min>0(L)
  Outcome<double> rhs_threshold;
  Outcome<bool> f_condition_ok;
  Outcome<double> kappa_threshold;
  Outcome<double> iterative_bound;
  Outcome<ExactCheck> exact;
  bool verdict_theorem = false;
  bool verdict_exact = false;
  bool connected = false;
  /// Configuration notes: "no_pinned_nodes", "disconnected", "unpinned_component".
  std::vector<std::string> flags;
};

/// Fill every report field; a failing field records its reason instead of throwing.
/// With no pinned nodes both verdicts are withheld (false) and flagged.
CriterionReport evaluate(const PinnedSystemSpec& spec, double tol = 1e-9);

}  // namespace pinctl
