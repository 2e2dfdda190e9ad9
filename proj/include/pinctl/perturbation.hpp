#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "pinctl/spectral.hpp"
#include "pinctl/sym_matrix.hpp"

namespace pinctl {

/// Bordered symmetric matrix [[c, a^t], [a, M]] of dimension d+1.
///
/// Appending a column x to a factor X gives the Gram matrix of [x, X], which
/// has exactly this shape with c = <x,x>, a = X^t x and M = X^t X.
struct ArrowMatrix {
  double c = 0.0;
  Eigen::VectorXd a;
  SymMatrix m;

  ArrowMatrix(double c, Eigen::VectorXd a, SymMatrix m);

  Eigen::Index border_dim() const noexcept { return a.size(); }
  SymMatrix materialize() const;
};

/// Gram form of appending column `x` to `big_x` (both with d rows).
/// Throws ValidationError on a row-count mismatch.
ArrowMatrix assemble_arrow(const Eigen::VectorXd& x, const Eigen::MatrixXd& big_x);

enum class BoundKind {
  LiLiUpperMax,
  LiLiLowerMax,
  SmallestNonzeroLower,
  WeylLower,
  MathiasLower,
};

std::string_view to_string(BoundKind kind);
bool is_upper_bound(BoundKind kind);

/// A bound together with the exact eigenvalue it estimates.
///
/// slack = exact - bound for lower bounds, bound - exact for upper bounds, so a
/// valid bound has slack >= 0 up to round-off.
struct BoundReport {
  BoundKind kind;
  double bound_value;
  double exact_value;
  double slack;
};

/// Li-Li correction 2s / (eta + sqrt(eta^2 + 4s)) for s = squared border weight.
/// Equals sqrt(s) at eta = 0 and 0 at s = 0.
double lili_term(double eta, double border_sq);

/// Upper bound on lambda_1(A): max(c, lambda_1(M)) + lili_term(|c - lambda_1(M)|, ||a||^2).
BoundReport lili_upper_max(const ArrowMatrix& arr);

/// Lower bound on lambda_1(A) using the projection of `a` on the top eigenvector of M.
BoundReport lili_lower_max(const ArrowMatrix& arr);

/// Lower bounds on lambda_{r+1}(A) for PSD M of numerical rank r.
///
/// All three verify that M is PSD and that `r` matches the numerical rank
/// computed with the default rank tolerance; either failure throws
/// PreconditionError. mathias_lower additionally throws when the gap
/// |c - lambda_r(M)| is at most 1e-12.
BoundReport smallest_nonzero_lower(const ArrowMatrix& arr, Eigen::Index r);
BoundReport weyl_lower(const ArrowMatrix& arr, Eigen::Index r);
BoundReport mathias_lower(const ArrowMatrix& arr, Eigen::Index r);

/// Numerical rank of the principal block, for callers that do not track it.
Eigen::Index principal_rank(const ArrowMatrix& arr);

}  // namespace pinctl
