#include "pinctl/dynamics.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "pinctl/spectral.hpp"

namespace pinctl {

NodeDynamics::NodeDynamics(LinearDynamics d) : kind_(std::move(d)) {
  const auto& a = std::get<LinearDynamics>(kind_).a;
  if (a.rows() == 0 || a.rows() != a.cols()) throw ValidationError("linear dynamics matrix must be square and nonempty");
  if (!a.allFinite()) throw ValidationError("linear dynamics matrix must be finite");
}

NodeDynamics::NodeDynamics(ScalarSaturatedDynamics d) : kind_(d) {
  if (!std::isfinite(d.a) || !std::isfinite(d.b)) throw ValidationError("saturated dynamics coefficients must be finite");
}

int NodeDynamics::state_dim() const {
  if (const auto* lin = std::get_if<LinearDynamics>(&kind_)) return static_cast<int>(lin->a.rows());
  return 1;
}

Eigen::VectorXd NodeDynamics::f(const Eigen::VectorXd& xi) const {
  if (const auto* lin = std::get_if<LinearDynamics>(&kind_)) return lin->a * xi;
  const auto& sat = std::get<ScalarSaturatedDynamics>(kind_);
  return sat.a * xi.array() + sat.b * xi.array().tanh();
}

Eigen::MatrixXd NodeDynamics::difference_matrix(const Eigen::VectorXd& xi, const Eigen::VectorXd& xi_t) const {
  if (const auto* lin = std::get_if<LinearDynamics>(&kind_)) return lin->a;
  const auto& sat = std::get<ScalarSaturatedDynamics>(kind_);
  const double u = xi(0);
  const double v = xi_t(0);
  double slope;
  if (u == v) {
    const double sech = 1.0 / std::cosh(u);
    slope = sech * sech;
  } else {
    slope = (std::tanh(u) - std::tanh(v)) / (u - v);
  }
  return Eigen::MatrixXd::Constant(1, 1, sat.a + sat.b * slope);
}

double f_bound_of(const NodeDynamics& dynamics) {
  if (const auto* lin = std::get_if<LinearDynamics>(&dynamics.kind())) return spectral_norm(lin->a);
  const auto& sat = std::get<ScalarSaturatedDynamics>(dynamics.kind());
  return std::abs(sat.a) + std::abs(sat.b);
}

void SimConfig::validate() const {
  spec.validate();
  const int n = spec.state_dim();
  if (dynamics.state_dim() != n) {
    std::ostringstream msg;
    msg << "dynamics act on dimension " << dynamics.state_dim() << " but B is " << n << "x" << n;
    throw ValidationError(msg.str());
  }
  if (x0.rows() != spec.graph.num_nodes() || x0.cols() != n) {
    std::ostringstream msg;
    msg << "x0 must be " << spec.graph.num_nodes() << "x" << n << ", got " << x0.rows() << "x" << x0.cols();
    throw ValidationError(msg.str());
  }
  if (s0.size() != n) throw ValidationError("s0 must have length " + std::to_string(n));
  if (!x0.allFinite() || !s0.allFinite()) throw ValidationError("initial states must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
  if (!(t_end > t0)) throw ValidationError("t_end must exceed t0");
  if (dt > t_end - t0) throw ValidationError("dt must not exceed t_end - t0");
  if (record_every == 0) throw ValidationError("record_every must be at least 1");
}

DivergenceError::DivergenceError(double time, std::size_t last_finite_index, Trajectory partial)
    : Error(ErrorKind::Divergence, [&] {
        std::ostringstream msg;
        msg << "simulation diverged at t = " << time;
        return msg.str();
      }()),
      time_(time),
      last_finite_index_(last_finite_index),
      partial_(std::move(partial)) {}

namespace {

Eigen::MatrixXd apply_f(const NodeDynamics& dyn, const Eigen::MatrixXd& states) {
  if (const auto* lin = std::get_if<LinearDynamics>(&dyn.kind())) return states * lin->a.transpose();
  const auto& sat = std::get<ScalarSaturatedDynamics>(dyn.kind());
  return sat.a * states.array() + sat.b * states.array().tanh();
}

// Rows of L X, accumulated edge by edge.
Eigen::MatrixXd laplacian_apply(const Graph& g, const Eigen::MatrixXd& states) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(states.rows(), states.cols());
  for (const auto& [u, v] : g.edges()) {
    const Eigen::RowVectorXd diff = states.row(u) - states.row(v);
    out.row(u) += diff;
    out.row(v) -= diff;
  }
  return out;
}

double lyapunov_value(const Eigen::MatrixXd& errors, const Eigen::MatrixXd& q) {
  return (errors * q).cwiseProduct(errors).sum();
}

void record(Trajectory& traj, double t, const Eigen::MatrixXd& x, const Eigen::VectorXd& s, const Eigen::MatrixXd& q) {
  Eigen::MatrixXd e = (-x).rowwise() + s.transpose();
  traj.times.push_back(t);
  traj.lyapunov.push_back(lyapunov_value(e, q));
  traj.states.push_back(x);
  traj.reference.push_back(s);
  traj.errors.push_back(std::move(e));
}

bool within_limit(const Eigen::MatrixXd& x, const Eigen::VectorXd& s) {
  return x.allFinite() && s.allFinite() && (x.size() == 0 || x.cwiseAbs().maxCoeff() <= kDivergenceLimit) &&
         s.cwiseAbs().maxCoeff() <= kDivergenceLimit;
}

}  // namespace

Derivative rhs(const SimConfig& config, double t, const Eigen::MatrixXd& states, const Eigen::VectorXd& s) {
  if (!states.allFinite() || !s.allFinite()) throw DivergenceError(t, 0, Trajectory{});
  const auto& spec = config.spec;

  Derivative d;
  d.states = apply_f(config.dynamics, states);
  d.states -= spec.sigma * laplacian_apply(spec.graph, states) * spec.b.transpose();
  for (int i : spec.pinned) {
    d.states.row(i) += (s.transpose() - states.row(i)) * spec.k.transpose();
  }
  d.reference = config.dynamics.f(s);
  return d;
}

Trajectory simulate(const SimConfig& config) {
  config.validate();
  const double span = config.t_end - config.t0;
  const auto steps = static_cast<std::size_t>(std::ceil(span / config.dt - 1e-9));
  const double h = span / static_cast<double>(steps);
  const Eigen::MatrixXd& q = config.spec.q.matrix();

  Trajectory traj;
  const std::size_t expected = steps / config.record_every + 2;
  traj.times.reserve(expected);
  traj.states.reserve(expected);
  traj.reference.reserve(expected);
  traj.errors.reserve(expected);
  traj.lyapunov.reserve(expected);

  Eigen::MatrixXd x = config.x0;
  Eigen::VectorXd s = config.s0;
  record(traj, config.t0, x, s, q);

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = config.t0 + static_cast<double>(k) * h;
    try {
      const Derivative k1 = rhs(config, t, x, s);
      const Derivative k2 = rhs(config, t + 0.5 * h, x + 0.5 * h * k1.states, s + 0.5 * h * k1.reference);
      const Derivative k3 = rhs(config, t + 0.5 * h, x + 0.5 * h * k2.states, s + 0.5 * h * k2.reference);
      const Derivative k4 = rhs(config, t + h, x + h * k3.states, s + h * k3.reference);
      x += (h / 6.0) * (k1.states + 2.0 * k2.states + 2.0 * k3.states + k4.states);
      s += (h / 6.0) * (k1.reference + 2.0 * k2.reference + 2.0 * k3.reference + k4.reference);
    } catch (const DivergenceError&) {
      traj.steps = k;
      const std::size_t last = traj.size() - 1;
      throw DivergenceError(t, last, std::move(traj));
    }
    const double t_next = k + 1 == steps ? config.t_end : config.t0 + static_cast<double>(k + 1) * h;
    if (!within_limit(x, s)) {
      traj.steps = k + 1;
      const std::size_t last = traj.size() - 1;
      throw DivergenceError(t_next, last, std::move(traj));
    }
    if ((k + 1) % config.record_every == 0 || k + 1 == steps) record(traj, t_next, x, s, q);
  }
  traj.steps = steps;
  return traj;
}

DecayReport check_decay(const Trajectory& traj) {
  if (traj.lyapunov.empty()) throw ValidationError("check_decay: empty trajectory");
  DecayReport rep;
  rep.v_initial = traj.lyapunov.front();
  rep.v_final = traj.lyapunov.back();
  const double atol = 1e-10 * rep.v_initial;
  const double slack = 1e-9 * rep.v_initial;

  bool open = false;
  for (std::size_t k = 0; k + 1 < traj.lyapunov.size(); ++k) {
    const double v = traj.lyapunov[k];
    const double next = traj.lyapunov[k + 1];
    const bool bad = v > atol && next >= v + slack;
    if (bad) {
      if (open) {
        rep.violations.back().second = traj.times[k + 1];
      } else {
        rep.violations.emplace_back(traj.times[k], traj.times[k + 1]);
        open = true;
      }
    } else {
      open = false;
    }
  }
  rep.decayed = rep.violations.empty();
  return rep;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "t,node,component,x,e,V\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& x = traj.states[k];
    const auto& e = traj.errors[k];
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        os << traj.times[k] << ',' << i << ',' << c << ',' << x(i, c) << ',' << e(i, c) << ',' << traj.lyapunov[k]
           << '\n';
      }
    }
  }
  os.precision(old_precision);
}

}  // namespace pinctl
