#include "config.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "pinctl/errors.hpp"

namespace pinctl::cli {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ValidationError(std::string("config is missing '") + key + "'");
  return obj.at(key);
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ValidationError(what + " must be a number");
  return v.get<double>();
}

Eigen::MatrixXd as_matrix(const json& v, Eigen::Index rows, Eigen::Index cols, const std::string& what) {
  Eigen::MatrixXd m(rows, cols);
  auto bad = [&] {
    std::ostringstream msg;
    msg << what << " must be a " << rows << "x" << cols << " matrix (nested or flat row-major array)";
    return ValidationError(msg.str());
  };
  if (v.is_number()) {
    if (rows != 1 || cols != 1) throw bad();
    m(0, 0) = v.get<double>();
    return m;
  }
  if (!v.is_array()) throw bad();
  if (!v.empty() && v.front().is_array()) {
    if (static_cast<Eigen::Index>(v.size()) != rows) throw bad();
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto& row = v[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw bad();
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = as_number(row[static_cast<std::size_t>(j)], what);
    }
    return m;
  }
  if (static_cast<Eigen::Index>(v.size()) != rows * cols) throw bad();
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = as_number(v[static_cast<std::size_t>(i * cols + j)], what);
  return m;
}

NodeDynamics parse_dynamics(const json& d, int n) {
  const std::string kind = require(d, "kind").get<std::string>();
  if (kind == "linear") return NodeDynamics(LinearDynamics{as_matrix(require(d, "a"), n, n, "dynamics.a")});
  if (kind == "scalar_saturated") {
    return NodeDynamics(ScalarSaturatedDynamics{as_number(require(d, "a"), "dynamics.a"),
                                                as_number(require(d, "b"), "dynamics.b")});
  }
  throw ValidationError("unknown dynamics kind '" + kind + "' (expected 'linear' or 'scalar_saturated')");
}

SimBlock parse_sim(const json& s, int n) {
  SimBlock out;
  out.t0 = s.contains("t0") ? as_number(s.at("t0"), "sim.t0") : 0.0;
  out.t_end = as_number(require(s, "t_end"), "sim.t_end");
  out.dt = as_number(require(s, "dt"), "sim.dt");
  if (s.contains("x0")) {
    const auto& x0 = s.at("x0");
    if (!x0.is_array()) throw ValidationError("sim.x0 must be an array");
    const std::size_t rows = !x0.empty() && x0.front().is_array() ? x0.size() : x0.size() / static_cast<std::size_t>(n);
    out.x0 = as_matrix(x0, static_cast<Eigen::Index>(rows), n, "sim.x0");
  }
  if (s.contains("x0_seed")) {
    if (!s.at("x0_seed").is_number_integer()) throw ValidationError("sim.x0_seed must be an integer");
    out.x0_seed = s.at("x0_seed").get<std::uint64_t>();
  }
  if (out.x0.has_value() == out.x0_seed.has_value()) {
    throw ValidationError("sim needs exactly one of 'x0' or 'x0_seed'");
  }
  if (s.contains("s0")) out.s0 = as_matrix(s.at("s0"), n, 1, "sim.s0").col(0);
  if (s.contains("record_every")) {
    if (!s.at("record_every").is_number_unsigned() || s.at("record_every").get<std::size_t>() == 0) {
      throw ValidationError("sim.record_every must be a positive integer");
    }
    out.record_every = s.at("record_every").get<std::size_t>();
  }
  return out;
}

}  // namespace

AnalysisConfig parse_analysis_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  try {
    AnalysisConfig cfg;
    std::filesystem::path graph = require(doc, "graph").get<std::string>();
    cfg.graph_path = graph.is_absolute() ? graph : base_dir / graph;
    cfg.sigma = as_number(require(doc, "sigma"), "sigma");
    cfg.kappa = as_number(require(doc, "kappa"), "kappa");
    cfg.pinned = doc.value("pinned", std::vector<int>{});
    cfg.n = doc.value("n", 1);
    if (cfg.n <= 0) throw ValidationError("n must be positive");
    cfg.b = as_matrix(require(doc, "b"), cfg.n, cfg.n, "b");
    cfg.k = as_matrix(require(doc, "k"), cfg.n, cfg.n, "k");
    cfg.q = as_matrix(require(doc, "q"), cfg.n, cfg.n, "q");
    if (doc.contains("dynamics")) cfg.dynamics = parse_dynamics(doc.at("dynamics"), cfg.n);
    if (doc.contains("f_bound_override") && !doc.at("f_bound_override").is_null()) {
      cfg.f_bound_override = as_number(doc.at("f_bound_override"), "f_bound_override");
    }
    if (!cfg.dynamics && !cfg.f_bound_override) {
      throw ValidationError("config needs 'dynamics' or 'f_bound_override' to determine the F bound");
    }
    if (doc.contains("sim") && !doc.at("sim").is_null()) cfg.sim = parse_sim(doc.at("sim"), cfg.n);
    return cfg;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

AnalysisConfig load_analysis_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_analysis_config(doc, path.parent_path());
}

double resolve_f_bound(const AnalysisConfig& cfg, std::vector<std::string>& warnings) {
  if (!cfg.dynamics) return *cfg.f_bound_override;
  const double closed_form = f_bound_of(*cfg.dynamics);
  if (!cfg.f_bound_override) return closed_form;
  if (*cfg.f_bound_override < closed_form - 1e-12) {
    std::ostringstream msg;
    msg << "f_bound_override " << *cfg.f_bound_override << " is below the closed-form bound " << closed_form
        << " of the configured dynamics";
    warnings.push_back(msg.str());
  }
  return *cfg.f_bound_override;
}

PinnedSystemSpec build_spec(const AnalysisConfig& cfg, Graph graph, std::vector<std::string>& warnings) {
  PinnedSystemSpec spec{std::move(graph), cfg.sigma, cfg.kappa, cfg.b, cfg.k, SymMatrix(cfg.q), cfg.pinned,
                        resolve_f_bound(cfg, warnings)};
  spec.validate();
  return spec;
}

SimConfig build_sim_config(const AnalysisConfig& cfg, PinnedSystemSpec spec) {
  if (!cfg.sim) throw ValidationError("config has no 'sim' block");
  if (!cfg.dynamics) throw ValidationError("simulation needs a 'dynamics' block");
  const SimBlock& sim = *cfg.sim;
  const int nodes = spec.graph.num_nodes();

  Eigen::MatrixXd x0;
  if (sim.x0) {
    x0 = *sim.x0;
  } else {
    std::mt19937_64 rng(*sim.x0_seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    x0.resize(nodes, cfg.n);
    for (Eigen::Index i = 0; i < x0.rows(); ++i)
      for (Eigen::Index j = 0; j < x0.cols(); ++j) x0(i, j) = unif(rng);
  }
  SimConfig out{std::move(spec), *cfg.dynamics, std::move(x0), sim.s0.value_or(Eigen::VectorXd::Zero(cfg.n)),
                sim.t0,          sim.t_end,      sim.dt,        sim.record_every};
  out.validate();
  return out;
}

}  // namespace pinctl::cli
