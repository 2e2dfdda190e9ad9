#pragma once

#include <optional>

#include <Eigen/Dense>

#include "pinctl/sym_matrix.hpp"

namespace pinctl {

/// Full eigendecomposition of a symmetric matrix.
///
/// Eigenvalues are sorted descending (lambda_1 >= ... >= lambda_d) and column k
/// of `vectors` is the unit eigenvector paired with `values[k]`. Each column is
/// signed so that its entry of largest magnitude is positive; on exact ties the
/// first such entry wins.
struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  Eigen::Index dim() const noexcept { return values.size(); }
  double largest() const { return values(0); }
  double smallest() const { return values(values.size() - 1); }
};

/// Deterministic dense symmetric eigensolver. Throws NumericalError on
/// non-finite input or when the QL iteration fails to converge.
Spectrum eig_sym(const SymMatrix& m);

/// Default rank tolerance for a PSD matrix with largest eigenvalue `lambda_max`:
/// 1e-9 * max(1, lambda_max), never below 1e-12.
double default_rank_tol(double lambda_max);

/// Number of eigenvalues strictly above `rank_tol`.
Eigen::Index numerical_rank(const Spectrum& s, double rank_tol);

/// Smallest eigenvalue strictly greater than `rank_tol`.
///
/// Throws PreconditionError when the matrix has an eigenvalue below -rank_tol
/// (not PSD) or when no eigenvalue exceeds rank_tol (numerically zero).
double lambda_min_gt0(const Spectrum& s, std::optional<double> rank_tol = std::nullopt);
double lambda_min_gt0(const SymMatrix& m, std::optional<double> rank_tol = std::nullopt);

double lambda_min(const SymMatrix& m);
double lambda_max(const SymMatrix& m);

/// Largest singular value, sqrt(lambda_max(a^t a)).
double spectral_norm(const Eigen::MatrixXd& a);

}  // namespace pinctl
