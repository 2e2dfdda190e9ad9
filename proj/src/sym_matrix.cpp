#include "pinctl/sym_matrix.hpp"

#include <sstream>

#include "pinctl/errors.hpp"

namespace pinctl {

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "symmetric matrix must be square and nonempty, got " << m.rows() << "x" << m.cols();
    throw ValidationError(msg.str());
  }
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "matrix is not symmetric (max |M - M^t| = " << asym << ")";
    throw ValidationError(msg.str());
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zero(Eigen::Index d) { return SymMatrix(Eigen::MatrixXd::Zero(d, d)); }

SymMatrix SymMatrix::identity(Eigen::Index d) { return SymMatrix(Eigen::MatrixXd::Identity(d, d)); }

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd& diag) {
  return SymMatrix(Eigen::MatrixXd(diag.asDiagonal()));
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("symmetric matrix dimension mismatch in sum");
  return SymMatrix(a.m_ + b.m_, SymMatrix::Trusted{});
}

SymMatrix operator*(double s, const SymMatrix& a) { return SymMatrix(s * a.m_, SymMatrix::Trusted{}); }

}  // namespace pinctl
