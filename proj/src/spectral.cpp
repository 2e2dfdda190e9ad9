#include "pinctl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "pinctl/errors.hpp"

namespace pinctl {

namespace {

void apply_sign_rule(Eigen::MatrixXd& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Eigen::Index arg = 0;
    double best = std::abs(vectors(0, k));
    for (Eigen::Index i = 1; i < vectors.rows(); ++i) {
      const double v = std::abs(vectors(i, k));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    if (vectors(arg, k) < 0.0) vectors.col(k) = -vectors.col(k);
  }
}

}  // namespace

Spectrum eig_sym(const SymMatrix& m) {
  const Eigen::MatrixXd& a = m.matrix();
  if (!a.allFinite()) throw NumericalError("eig_sym: matrix has non-finite entries");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eig_sym: QL iteration did not converge for a " << a.rows() << "x" << a.rows() << " matrix";
    throw NumericalError(msg.str());
  }

  // Eigen returns ascending order.
  Spectrum s;
  s.values = solver.eigenvalues().reverse();
  s.vectors = solver.eigenvectors().rowwise().reverse();
  apply_sign_rule(s.vectors);
  return s;
}

double default_rank_tol(double lambda_max) { return std::max(1e-9 * std::max(1.0, lambda_max), 1e-12); }

Eigen::Index numerical_rank(const Spectrum& s, double rank_tol) {
  return (s.values.array() > rank_tol).count();
}

double lambda_min_gt0(const Spectrum& s, std::optional<double> rank_tol) {
  const double tol = rank_tol.value_or(default_rank_tol(s.largest()));
  if (s.smallest() < -tol) {
    std::ostringstream msg;
    msg << "matrix is not positive semi-definite (lambda_min = " << s.smallest() << ", rank_tol = " << tol
        << ")";
    throw PreconditionError(msg.str());
  }
  for (Eigen::Index k = s.dim() - 1; k >= 0; --k) {
    if (s.values(k) > tol) return s.values(k);
  }
  throw PreconditionError("matrix has no nonzero eigenvalue");
}

double lambda_min_gt0(const SymMatrix& m, std::optional<double> rank_tol) {
  return lambda_min_gt0(eig_sym(m), rank_tol);
}

double lambda_min(const SymMatrix& m) { return eig_sym(m).smallest(); }

double lambda_max(const SymMatrix& m) { return eig_sym(m).largest(); }

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) throw ValidationError("spectral_norm: empty matrix");
  // The smaller Gram matrix has the same nonzero spectrum.
  const Eigen::MatrixXd gram = a.cols() <= a.rows() ? Eigen::MatrixXd(a.transpose() * a)
                                                    : Eigen::MatrixXd(a * a.transpose());
  const double top = eig_sym(SymMatrix(gram)).largest();
  return std::sqrt(std::max(top, 0.0));
}

}  // namespace pinctl
