#pragma once

#include <Eigen/Dense>

namespace pinctl {

/// Dense real symmetric matrix.
///
/// Construction symmetrizes the input as (M + M^t)/2 after checking that it is
/// symmetric within 1e-12 * (1 + max|entry|); larger asymmetry is rejected with
/// ValidationError. Non-square or empty input is rejected as well.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Eigen::MatrixXd& m);

  static SymMatrix zero(Eigen::Index d);
  static SymMatrix identity(Eigen::Index d);
  static SymMatrix diagonal(const Eigen::VectorXd& diag);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);

 private:
  struct Trusted {};
  SymMatrix(Eigen::MatrixXd m, Trusted) : m_(std::move(m)) {}

  Eigen::MatrixXd m_;
};

}  // namespace pinctl
