#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pinctl/criteria.hpp"
#include "pinctl/errors.hpp"

namespace pinctl {

/// f(xi) = A xi. F is the constant matrix A.
struct LinearDynamics {
  Eigen::MatrixXd a;
};

/// Scalar f(xi) = a xi + b tanh(xi).
struct ScalarSaturatedDynamics {
  double a = 0.0;
  double b = 0.0;
};

class NodeDynamics {
 public:
  NodeDynamics(LinearDynamics d);
  NodeDynamics(ScalarSaturatedDynamics d);

  const std::variant<LinearDynamics, ScalarSaturatedDynamics>& kind() const noexcept { return kind_; }
  int state_dim() const;

  Eigen::VectorXd f(const Eigen::VectorXd& xi) const;
  /// Matrix F with F (xi - xi_t) = f(xi) - f(xi_t); the xi == xi_t case uses the derivative.
  Eigen::MatrixXd difference_matrix(const Eigen::VectorXd& xi, const Eigen::VectorXd& xi_t) const;

 private:
  std::variant<LinearDynamics, ScalarSaturatedDynamics> kind_;
};

/// Closed-form sup ||F||: ||A|| for linear dynamics, |a| + |b| for the saturated scalar.
double f_bound_of(const NodeDynamics& dynamics);

struct SimConfig {
  PinnedSystemSpec spec;
  NodeDynamics dynamics;
  Eigen::MatrixXd x0;  // N x n, row i is x_i(t0)
  Eigen::VectorXd s0;  // reference initial state
  double t0 = 0.0;
  double t_end = 1.0;
  double dt = 1e-3;
  /// Keep every k-th step in the trajectory (the final step is always kept).
  std::size_t record_every = 1;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> states;     // N x n
  std::vector<Eigen::VectorXd> reference;  // n
  std::vector<Eigen::MatrixXd> errors;     // reference - state, N x n
  std::vector<double> lyapunov;            // sum_i e_i^t Q e_i
  std::size_t steps = 0;                   // integrator steps taken

  std::size_t size() const noexcept { return times.size(); }
  double error_norm(std::size_t sample) const { return errors.at(sample).norm(); }
};

class DivergenceError : public Error {
 public:
  DivergenceError(double time, std::size_t last_finite_index, Trajectory partial);

  double time() const noexcept { return time_; }
  std::size_t last_finite_index() const noexcept { return last_finite_index_; }
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  double time_;
  std::size_t last_finite_index_;
  Trajectory partial_;
};

struct Derivative {
  Eigen::MatrixXd states;
  Eigen::VectorXd reference;
};

/// dx_i = f(x_i) - sigma B sum_j l_ij x_j + p_i K (s - x_i), ds = f(s).
/// Throws DivergenceError (with an empty partial trajectory) on non-finite input.
Derivative rhs(const SimConfig& config, double t, const Eigen::MatrixXd& states, const Eigen::VectorXd& s);

inline constexpr double kDivergenceLimit = 1e12;

/// Fixed-step classical RK4 on states and reference jointly. The step count is
/// ceil((t_end - t0) / dt) and the step is shrunk so the run ends at t_end.
/// Any |entry| above kDivergenceLimit throws DivergenceError with the samples so far.
Trajectory simulate(const SimConfig& config);

struct DecayReport {
  bool decayed = false;
  double v_initial = 0.0;
  double v_final = 0.0;
  /// Maximal runs of consecutive samples [t_k, t_{k+1}] where V failed to decrease.
  std::vector<std::pair<double, double>> violations;
};

/// V must strictly decrease between consecutive samples while above
/// 1e-10 V(0); each step may rise by at most 1e-9 V(0) of numerical slack.
DecayReport check_decay(const Trajectory& traj);

/// CSV with header "t,node,component,x,e,V", one row per sample, node and component.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace pinctl
