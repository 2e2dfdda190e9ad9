#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "pinctl/criteria.hpp"
#include "pinctl/dynamics.hpp"

namespace pinctl::cli {

struct SimBlock {
  double t0 = 0.0;
  double t_end = 10.0;
  double dt = 1e-3;
  std::optional<Eigen::MatrixXd> x0;
  std::optional<std::uint64_t> x0_seed;
  std::optional<Eigen::VectorXd> s0;
  std::size_t record_every = 1;
};

/// One JSON analysis document. Matrices are row-major, either nested
/// ([[..],[..]]) or flat; the graph is referenced by path, resolved against the
/// directory holding the config.
struct AnalysisConfig {
  std::filesystem::path graph_path;
  double sigma = 1.0;
  double kappa = 0.0;
  std::vector<int> pinned;
  int n = 1;
  Eigen::MatrixXd b;
  Eigen::MatrixXd k;
  Eigen::MatrixXd q;
  std::optional<NodeDynamics> dynamics;
  std::optional<double> f_bound_override;
  std::optional<SimBlock> sim;
};

AnalysisConfig parse_analysis_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
AnalysisConfig load_analysis_config(const std::filesystem::path& path);

/// f_bound defaults to f_bound_of(dynamics). An override below that value
/// (minus 1e-12) is honored but produces a warning.
double resolve_f_bound(const AnalysisConfig& cfg, std::vector<std::string>& warnings);

PinnedSystemSpec build_spec(const AnalysisConfig& cfg, Graph graph, std::vector<std::string>& warnings);

/// Random x0 draws are uniform in [-1, 1] from a std::mt19937_64 seeded with x0_seed.
SimConfig build_sim_config(const AnalysisConfig& cfg, PinnedSystemSpec spec);

}  // namespace pinctl::cli
