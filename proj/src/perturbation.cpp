#include "pinctl/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pinctl/errors.hpp"

namespace pinctl {

ArrowMatrix::ArrowMatrix(double c_, Eigen::VectorXd a_, SymMatrix m_) : c(c_), a(std::move(a_)), m(std::move(m_)) {
  if (a.size() != m.dim()) {
    std::ostringstream msg;
    msg << "arrow border has length " << a.size() << " but the principal block is " << m.dim() << "x" << m.dim();
    throw ValidationError(msg.str());
  }
}

SymMatrix ArrowMatrix::materialize() const {
  const Eigen::Index d = a.size();
  Eigen::MatrixXd full(d + 1, d + 1);
  full(0, 0) = c;
  full.block(1, 0, d, 1) = a;
  full.block(0, 1, 1, d) = a.transpose();
  full.block(1, 1, d, d) = m.matrix();
  return SymMatrix(full);
}

ArrowMatrix assemble_arrow(const Eigen::VectorXd& x, const Eigen::MatrixXd& big_x) {
  if (x.size() != big_x.rows()) {
    std::ostringstream msg;
    msg << "appended column has " << x.size() << " rows but the factor has " << big_x.rows();
    throw ValidationError(msg.str());
  }
  if (big_x.cols() == 0) throw ValidationError("factor must have at least one column");
  Eigen::MatrixXd gram = big_x.transpose() * big_x;
  return ArrowMatrix(x.squaredNorm(), big_x.transpose() * x, SymMatrix(0.5 * (gram + gram.transpose())));
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::LiLiUpperMax: return "LiLiUpperMax";
    case BoundKind::LiLiLowerMax: return "LiLiLowerMax";
    case BoundKind::SmallestNonzeroLower: return "SmallestNonzeroLower";
    case BoundKind::WeylLower: return "WeylLower";
    case BoundKind::MathiasLower: return "MathiasLower";
  }
  return "unknown";
}

bool is_upper_bound(BoundKind kind) { return kind == BoundKind::LiLiUpperMax; }

double lili_term(double eta, double border_sq) {
  if (border_sq <= 0.0) return 0.0;
  return 2.0 * border_sq / (eta + std::sqrt(eta * eta + 4.0 * border_sq));
}

namespace {

BoundReport make_report(BoundKind kind, double bound, double exact) {
  return {kind, bound, exact, is_upper_bound(kind) ? bound - exact : exact - bound};
}

// Top of the principal block's spectrum plus lambda_1 of the full arrow.
struct MaxContext {
  Spectrum block;
  double exact_top;
};

MaxContext max_context(const ArrowMatrix& arr) {
  return {eig_sym(arr.m), eig_sym(arr.materialize()).largest()};
}

// Checks the rank-r preconditions shared by the smallest-nonzero bounds and
// returns lambda_r(M) together with lambda_{r+1}(A).
struct RankContext {
  double lambda_r;
  double exact;
};

RankContext rank_context(const ArrowMatrix& arr, Eigen::Index r) {
  const Spectrum block = eig_sym(arr.m);
  const double tol = default_rank_tol(block.largest());
  if (block.smallest() < -tol) {
    std::ostringstream msg;
    msg << "principal block is not positive semi-definite (lambda_min = " << block.smallest() << ")";
    throw PreconditionError(msg.str());
  }
  const Eigen::Index rank = numerical_rank(block, tol);
  if (r < 1 || r != rank) {
    std::ostringstream msg;
    msg << "supplied rank " << r << " does not match the numerical rank " << rank << " of the principal block";
    throw PreconditionError(msg.str());
  }
  const Spectrum full = eig_sym(arr.materialize());
  return {block.values(r - 1), full.values(r)};
}

}  // namespace

BoundReport lili_upper_max(const ArrowMatrix& arr) {
  const auto ctx = max_context(arr);
  const double top = ctx.block.largest();
  const double bound = std::max(arr.c, top) + lili_term(std::abs(arr.c - top), arr.a.squaredNorm());
  return make_report(BoundKind::LiLiUpperMax, bound, ctx.exact_top);
}

BoundReport lili_lower_max(const ArrowMatrix& arr) {
  const auto ctx = max_context(arr);
  const double top = ctx.block.largest();
  const double proj = arr.a.dot(ctx.block.vectors.col(0));
  const double bound = std::max(arr.c, top) + lili_term(std::abs(arr.c - top), proj * proj);
  return make_report(BoundKind::LiLiLowerMax, bound, ctx.exact_top);
}

BoundReport smallest_nonzero_lower(const ArrowMatrix& arr, Eigen::Index r) {
  const auto ctx = rank_context(arr, r);
  const double bound =
      std::min(arr.c, ctx.lambda_r) - lili_term(std::abs(arr.c - ctx.lambda_r), arr.a.squaredNorm());
  return make_report(BoundKind::SmallestNonzeroLower, bound, ctx.exact);
}

BoundReport weyl_lower(const ArrowMatrix& arr, Eigen::Index r) {
  const auto ctx = rank_context(arr, r);
  return make_report(BoundKind::WeylLower, std::min(arr.c, ctx.lambda_r) - arr.a.norm(), ctx.exact);
}

BoundReport mathias_lower(const ArrowMatrix& arr, Eigen::Index r) {
  const auto ctx = rank_context(arr, r);
  const double gap = std::abs(arr.c - ctx.lambda_r);
  if (gap <= 1e-12) {
    std::ostringstream msg;
    msg << "Mathias bound is vacuous: gap |c - lambda_r| = " << gap << " <= 1e-12";
    throw PreconditionError(msg.str());
  }
  return make_report(BoundKind::MathiasLower, std::min(arr.c, ctx.lambda_r) - arr.a.squaredNorm() / gap,
                     ctx.exact);
}

Eigen::Index principal_rank(const ArrowMatrix& arr) {
  const Spectrum block = eig_sym(arr.m);
  return numerical_rank(block, default_rank_tol(block.largest()));
}

}  // namespace pinctl
