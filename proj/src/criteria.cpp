#include "pinctl/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "pinctl/errors.hpp"
#include "pinctl/spectral.hpp"

namespace pinctl {

namespace {

void check_square(const Eigen::MatrixXd& m, Eigen::Index n, const char* name) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream msg;
    msg << name << " must be " << n << "x" << n << ", got " << m.rows() << "x" << m.cols();
    throw ValidationError(msg.str());
  }
}

void check_pinned(const Graph& g, const std::vector<int>& pinned) {
  std::set<int> seen;
  for (int i : pinned) {
    if (i < 0 || i >= g.num_nodes()) {
      std::ostringstream msg;
      msg << "pinned node " << i << " is outside [0, " << g.num_nodes() << ")";
      throw ValidationError(msg.str());
    }
    if (!seen.insert(i).second) throw ValidationError("pinned node " + std::to_string(i) + " listed twice");
  }
}

double sigma_connectivity(const PinnedSystemSpec& spec) {
  return spec.sigma * lambda_min_gt0(laplacian(spec.graph));
}

SymMatrix qb_sym(const PinnedSystemSpec& spec) {
  const Eigen::MatrixXd qb = spec.q.matrix() * spec.b;
  return SymMatrix(qb + qb.transpose());
}

double pinned_degree_sum(const PinnedSystemSpec& spec) {
  const auto deg = degrees(spec.graph);
  double sum = 0.0;
  for (int i : spec.pinned) sum += deg[static_cast<std::size_t>(i)];
  return sum;
}

template <class T, class F>
Outcome<T> capture(F&& f) {
  try {
    return {f(), {}};
  } catch (const Error& e) {
    return {std::nullopt, e.what()};
  }
}

}  // namespace

void PinnedSystemSpec::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma must be a positive finite number");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be a non-negative finite number");
  if (!(f_bound >= 0.0) || !std::isfinite(f_bound)) throw ValidationError("f_bound must be non-negative and finite");
  const Eigen::Index n = b.rows();
  if (n == 0) throw ValidationError("B must be nonempty");
  check_square(b, n, "B");
  check_square(k, n, "K");
  check_square(q.matrix(), n, "Q");
  if (!b.allFinite() || !k.allFinite() || !q.matrix().allFinite()) {
    throw ValidationError("B, K and Q must have finite entries");
  }
  const Spectrum qs = eig_sym(q);
  if (!(qs.smallest() > 1e-10 * qs.largest()) || qs.largest() <= 0.0) {
    throw ValidationError("Q must be positive definite");
  }
  check_pinned(graph, pinned);
}

PinnedSystemSpec PinnedSystemSpec::scalar(Graph g, double sigma, double kappa, std::vector<int> pinned,
                                          double f_bound) {
  return PinnedSystemSpec{std::move(g),
                          sigma,
                          kappa,
                          Eigen::MatrixXd::Ones(1, 1),
                          Eigen::MatrixXd::Constant(1, 1, kappa),
                          SymMatrix::identity(1),
                          std::move(pinned),
                          f_bound};
}

SymMatrix pinned_operator(const Graph& g, double sigma, double kappa, const std::vector<int>& pinned) {
  check_pinned(g, pinned);
  Eigen::MatrixXd m = sigma * laplacian_int(g).cast<double>();
  for (int i : pinned) m(i, i) += kappa;
  return SymMatrix(m);
}

Eigen::MatrixXd pinned_factor(const Graph& g, double sigma, double kappa, const std::vector<int>& pinned) {
  check_pinned(g, pinned);
  const auto r = static_cast<Eigen::Index>(pinned.size());
  const auto m = static_cast<Eigen::Index>(g.num_edges());
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(g.num_nodes(), r + m);
  const double sk = std::sqrt(kappa);
  for (Eigen::Index j = 0; j < r; ++j) f(pinned[static_cast<std::size_t>(r - 1 - j)], j) = sk;
  f.rightCols(m) = std::sqrt(sigma) * incidence(g).as_real();
  return f;
}

StructuralCheck check_structural(const PinnedSystemSpec& spec, double tol) {
  const Eigen::Index n = spec.b.rows();
  check_square(spec.b, n, "B");
  check_square(spec.k, n, "K");
  check_square(spec.q.matrix(), n, "Q");

  const Eigen::MatrixXd qk = spec.q.matrix() * spec.k;
  const Eigen::MatrixXd qb = spec.q.matrix() * spec.b;
  const Eigen::MatrixXd diff = (qk + qk.transpose()) - spec.kappa * (qb + qb.transpose());

  StructuralCheck out;
  out.identity_residual = spectral_norm(diff);
  out.qb_min_eig = lambda_min(SymMatrix(qb + qb.transpose()));
  out.ok = out.identity_residual <= tol * (1.0 + spectral_norm(qk)) && out.qb_min_eig >= -tol;
  return out;
}

double rhs_threshold(const PinnedSystemSpec& spec) {
  const double qb_min = lambda_min(qb_sym(spec));
  if (qb_min <= 1e-12) {
    std::ostringstream msg;
    msg << "lambda_min(QB + B^tQ^t) = " << qb_min << " is not strictly positive";
    throw PreconditionError(msg.str());
  }
  return 2.0 * spec.f_bound * spectral_norm(spec.q.matrix()) / qb_min;
}

bool check_f_condition(const PinnedSystemSpec& spec) { return rhs_threshold(spec) < sigma_connectivity(spec); }

double iterative_bound(const PinnedSystemSpec& spec) {
  const double base = sigma_connectivity(spec);
  // Within round-off of the pole the value is meaningless; treat it as undefined.
  if (!(spec.kappa > base * (1.0 + 1e-12))) {
    std::ostringstream msg;
    msg << "kappa = " << spec.kappa << " must exceed sigma * lambda_min>0(L) = " << base;
    throw PreconditionError(msg.str());
  }
  return base - pinned_degree_sum(spec) / (spec.kappa - base);
}

double kappa_threshold(const PinnedSystemSpec& spec) {
  const double base = sigma_connectivity(spec);
  const double rhs = rhs_threshold(spec);
  if (!(rhs < base)) {
    std::ostringstream msg;
    msg << "F-condition fails: 2 ||F|| ||Q|| / lambda_min(QB + B^tQ^t) = " << rhs
        << " is not below sigma * lambda_min>0(L) = " << base;
    throw PreconditionError(msg.str());
  }
  return pinned_degree_sum(spec) / (base - rhs) + base;
}

ExactCheck exact_condition(const PinnedSystemSpec& spec) {
  const Spectrum s = eig_sym(pinned_operator(spec.graph, spec.sigma, spec.kappa, spec.pinned));
  ExactCheck out;
  out.lambda_min_gt0 = lambda_min_gt0(s);
  out.lambda_min = s.smallest();
  out.rhs = rhs_threshold(spec);
  out.holds = out.lambda_min_gt0 >= out.rhs - 1e-12;
  out.qb_min_eig = lambda_min(qb_sym(spec));
  out.proposition_lhs = 0.5 * out.lambda_min * out.qb_min_eig;
  out.proposition_rhs = spec.f_bound * spectral_norm(spec.q.matrix());
  out.proposition_holds = out.proposition_lhs > out.proposition_rhs;
  return out;
}

std::vector<AppendStep> column_append_sequence(const Graph& g, double sigma, double kappa,
                                               const std::vector<int>& pinned) {
  check_pinned(g, pinned);
  if (g.num_edges() == 0) throw PreconditionError("column-append sequence needs a graph with at least one edge");

  std::vector<AppendStep> steps;
  steps.reserve(pinned.size());
  std::vector<int> prefix;
  for (int node : pinned) {
    const Eigen::MatrixXd big_x = pinned_factor(g, sigma, kappa, prefix);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(g.num_nodes());
    x(node) = std::sqrt(kappa);
    const ArrowMatrix arr = assemble_arrow(x, big_x);

    AppendStep step;
    step.node = node;
    step.principal_rank = principal_rank(arr);
    step.lili = smallest_nonzero_lower(arr, step.principal_rank);
    step.weyl = weyl_lower(arr, step.principal_rank);
    step.mathias = capture<BoundReport>([&] { return mathias_lower(arr, step.principal_rank); });

    prefix.push_back(node);
    step.step_lambda_min_gt0 = lambda_min_gt0(pinned_operator(g, sigma, kappa, prefix));
    steps.push_back(std::move(step));
  }
  return steps;
}

CriterionReport evaluate(const PinnedSystemSpec& spec, double tol) {
  spec.validate();

  CriterionReport rep;
  rep.structural = check_structural(spec, tol);
  rep.connected = is_connected(spec.graph);

  if (spec.pinned.empty()) rep.flags.emplace_back("no_pinned_nodes");
  if (!rep.connected) rep.flags.emplace_back("disconnected");
  {
    const auto labels = component_labels(spec.graph);
    std::vector<bool> has_pin(static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end()) + 1));
    for (int i : spec.pinned) has_pin[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] = true;
    if (!spec.pinned.empty() && std::find(has_pin.begin(), has_pin.end(), false) != has_pin.end()) {
      rep.flags.emplace_back("unpinned_component");
    }
  }

  rep.algebraic_connectivity = capture<double>([&] { return lambda_min_gt0(laplacian(spec.graph)); });
  rep.rhs_threshold = capture<double>([&] { return rhs_threshold(spec); });
  rep.f_condition_ok = capture<bool>([&] { return check_f_condition(spec); });
  rep.kappa_threshold = capture<double>([&] { return kappa_threshold(spec); });
  rep.iterative_bound = capture<double>([&] { return iterative_bound(spec); });
  rep.exact = capture<ExactCheck>([&] { return exact_condition(spec); });

  if (!spec.pinned.empty()) {
    rep.verdict_theorem = rep.structural.ok && rep.f_condition_ok.value.value_or(false) &&
                          rep.kappa_threshold.defined() &&
                          spec.kappa >= *rep.kappa_threshold.value - 1e-12 * (1.0 + *rep.kappa_threshold.value);
    rep.verdict_exact = rep.structural.ok && rep.exact.defined() && rep.exact.value->holds;
  }
  return rep;
}

}  // namespace pinctl
