#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"

#include "config.hpp"
#include "pinctl/dynamics.hpp"
#include "pinctl/errors.hpp"
#include "pinctl/graph.hpp"
#include "pinctl/spectral.hpp"

namespace pinctl::cli {

using nlohmann::json;

namespace {

struct GlobalOptions {
  bool json = false;
  double tol = 1e-9;
};

struct GraphArgs {
  std::string graph_path;
  double sigma = 1.0;
  double kappa = 0.0;
  std::vector<int> pinned;
};

template <class T>
json outcome_json(const Outcome<T>& o) {
  if (o.defined()) return json(*o.value);
  return json(nullptr);
}

json outcome_json(const Outcome<ExactCheck>& o) {
  if (o.defined()) return to_json(*o.value);
  return json(nullptr);
}

json outcome_json(const Outcome<BoundReport>& o) {
  if (o.defined()) return to_json(*o.value);
  return json{{"undefined", o.reason}};
}

void print_kv(std::ostream& out, const std::string& key, const json& value) {
  out << std::left << std::setw(28) << key << ' ';
  if (value.is_string()) {
    out << value.get<std::string>();
  } else {
    out << value.dump();
  }
  out << '\n';
}

void print_flat(std::ostream& out, const json& doc, const std::string& prefix = "") {
  for (const auto& [key, value] : doc.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_flat(out, value, name);
    } else {
      print_kv(out, name, value);
    }
  }
}

void emit(std::ostream& out, const GlobalOptions& opts, const json& doc) {
  if (opts.json) {
    out << doc.dump(2) << '\n';
  } else {
    print_flat(out, doc);
  }
}

void validate_graph_args(const GraphArgs& a) {
  if (!(a.sigma > 0.0)) throw ValidationError("--sigma must be positive");
  if (!(a.kappa >= 0.0)) throw ValidationError("--kappa must be non-negative");
}

int cmd_spectrum(const GlobalOptions& opts, const GraphArgs& a, bool full, std::ostream& out) {
  validate_graph_args(a);
  const Graph g = read_edge_list(a.graph_path);
  const Spectrum ls = eig_sym(laplacian(g));
  const Spectrum os = eig_sym(pinned_operator(g, a.sigma, a.kappa, a.pinned));

  json doc;
  doc["num_nodes"] = g.num_nodes();
  doc["num_edges"] = g.num_edges();
  doc["connected"] = is_connected(g);
  doc["components"] = num_components(g);
  doc["sigma"] = a.sigma;
  doc["kappa"] = a.kappa;
  doc["pinned"] = a.pinned;
  doc["laplacian"] = {{"lambda_min_gt0", lambda_min_gt0(ls)}, {"lambda_max", ls.largest()}};
  json op = {{"lambda_min", os.smallest()}, {"lambda_min_gt0", lambda_min_gt0(os)}, {"lambda_max", os.largest()}};
  if (full) op["spectrum"] = std::vector<double>(os.values.data(), os.values.data() + os.values.size());
  doc["operator"] = op;
  emit(out, opts, doc);
  return kExitOk;
}

int cmd_bounds(const GlobalOptions& opts, const GraphArgs& a, std::ostream& out) {
  validate_graph_args(a);
  const Graph g = read_edge_list(a.graph_path);
  const PinnedSystemSpec spec = PinnedSystemSpec::scalar(g, a.sigma, a.kappa, a.pinned, 0.0);
  spec.validate();

  const double exact = lambda_min_gt0(pinned_operator(g, a.sigma, a.kappa, a.pinned));
  json doc;
  doc["sigma"] = a.sigma;
  doc["kappa"] = a.kappa;
  doc["pinned"] = a.pinned;
  doc["exact_lambda_min_gt0"] = exact;
  doc["sigma_lambda_min_gt0_L"] = a.sigma * lambda_min_gt0(laplacian(g));
  try {
    const double bound = iterative_bound(spec);
    doc["iterative_bound"] = {{"value", bound}, {"slack", exact - bound}};
  } catch (const PreconditionError&) {
    doc["iterative_bound"] = {{"undefined", "kappa <= sigma * lambda_min>0(L)"}};
  }

  json steps = json::array();
  for (const auto& s : column_append_sequence(g, a.sigma, a.kappa, a.pinned)) {
    steps.push_back({{"node", s.node},
                     {"principal_rank", s.principal_rank},
                     {"step_lambda_min_gt0", s.step_lambda_min_gt0},
                     {"lili", to_json(s.lili)},
                     {"weyl", to_json(s.weyl)},
                     {"mathias", outcome_json(s.mathias)}});
  }

  if (opts.json) {
    doc["steps"] = steps;
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  print_flat(out, doc);
  if (!steps.empty()) {
    out << std::setprecision(10) << '\n'
        << std::left << std::setw(6) << "step" << std::setw(6) << "node" << std::setw(8) << "rank" << std::setw(22)
        << "lambda_{r+1}(A)" << std::setw(22) << "li-li" << std::setw(22) << "weyl" << std::setw(22) << "mathias"
        << '\n';
    int k = 1;
    for (const auto& s : steps) {
      out << std::setw(6) << k++ << std::setw(6) << s["node"].get<int>() << std::setw(8)
          << s["principal_rank"].get<long>() << std::setw(22) << s["lili"]["exact"].get<double>() << std::setw(22)
          << s["lili"]["bound"].get<double>() << std::setw(22) << s["weyl"]["bound"].get<double>() << std::setw(22);
      if (s["mathias"].contains("bound")) {
        out << s["mathias"]["bound"].get<double>();
      } else {
        out << "undefined";
      }
      out << '\n';
    }
  }
  return kExitOk;
}

int cmd_kappa(const GlobalOptions& opts, const std::string& config_path, std::ostream& out, std::ostream& err) {
  const AnalysisConfig cfg = load_analysis_config(config_path);
  std::vector<std::string> warnings;
  const PinnedSystemSpec spec = build_spec(cfg, read_edge_list(cfg.graph_path), warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  const CriterionReport rep = evaluate(spec, opts.tol);
  emit(out, opts, to_json(rep));
  if (!rep.kappa_threshold.defined()) {
    err << "kappa threshold undefined: " << rep.kappa_threshold.reason << '\n';
    if (rep.f_condition_ok.defined() && !*rep.f_condition_ok.value) {
      err << "the F-condition ||F|| < sigma lambda_min>0(L) lambda_min(QB+B^tQ^t) / (2 ||Q||) is violated\n";
    }
    return kExitUndefined;
  }
  return kExitOk;
}

int cmd_select(const GlobalOptions& opts, const GraphArgs& a, int budget, const std::string& method,
               std::ostream& out) {
  validate_graph_args(a);
  const Graph g = read_edge_list(a.graph_path);
  const SelectionMethod m = parse_selection_method(method);
  json doc = to_json(select_nodes(g, a.sigma, a.kappa, budget, m));
  doc["budget"] = budget;
  doc["sigma"] = a.sigma;
  doc["kappa"] = a.kappa;
  emit(out, opts, doc);
  return kExitOk;
}

int cmd_simulate(const GlobalOptions& opts, const std::string& config_path, const std::string& out_csv,
                 std::ostream& out, std::ostream& err) {
  const AnalysisConfig cfg = load_analysis_config(config_path);
  std::vector<std::string> warnings;
  PinnedSystemSpec spec = build_spec(cfg, read_edge_list(cfg.graph_path), warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const CriterionReport rep = evaluate(spec, opts.tol);
  const SimConfig sim = build_sim_config(cfg, std::move(spec));

  json summary;
  Trajectory traj;
  bool diverged = false;
  try {
    traj = simulate(sim);
  } catch (const DivergenceError& e) {
    diverged = true;
    traj = e.partial();
    summary["last_finite_time"] = traj.times.empty() ? json(nullptr) : json(traj.times.back());
  }

  if (!out_csv.empty()) {
    std::ofstream csv(out_csv, std::ios::binary);
    if (!csv) throw ValidationError("cannot write trajectory CSV '" + out_csv + "'");
    write_trajectory_csv(csv, traj);
  }

  const DecayReport decay = check_decay(traj);
  summary["diverged"] = diverged;
  summary["decayed"] = !diverged && decay.decayed;
  summary["initial_error_norm"] = traj.error_norm(0);
  summary["final_error_norm"] = traj.error_norm(traj.size() - 1);
  summary["steps"] = traj.steps;
  summary["wall_time_unspecified"] = true;
  summary["verdict_theorem"] = rep.verdict_theorem;
  summary["verdict_exact"] = rep.verdict_exact;
  summary["f_bound"] = sim.spec.f_bound;
  json viol = json::array();
  for (const auto& [from, to] : decay.violations) viol.push_back({from, to});
  summary["decay_violations"] = viol;
  (void)opts;
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Validation: return kExitInput;
    case ErrorKind::Precondition: return kExitUndefined;
    case ErrorKind::Numerical:
    case ErrorKind::Divergence: return kExitNumerical;
  }
  return kExitNumerical;
}

void add_graph_args(CLI::App* cmd, GraphArgs& a) {
  cmd->add_option("graph", a.graph_path, "Edge-list file")->required();
  cmd->add_option("--sigma", a.sigma, "Coupling strength")->capture_default_str();
  cmd->add_option("--kappa", a.kappa, "Feedback multiplier")->capture_default_str();
  cmd->add_option("--pinned", a.pinned, "Pinned node indices")->delimiter(',');
}

}  // namespace

json to_json(const BoundReport& r) {
  return {{"kind", std::string(to_string(r.kind))}, {"bound", r.bound_value}, {"exact", r.exact_value}, {"slack", r.slack}};
}

json to_json(const StructuralCheck& s) {
  return {{"ok", s.ok}, {"identity_residual", s.identity_residual}, {"qb_min_eig", s.qb_min_eig}};
}

json to_json(const ExactCheck& e) {
  return {{"lambda_min_gt0", e.lambda_min_gt0},
          {"lambda_min", e.lambda_min},
          {"rhs", e.rhs},
          {"holds", e.holds},
          {"proposition_lhs", e.proposition_lhs},
          {"proposition_rhs", e.proposition_rhs},
          {"proposition_holds", e.proposition_holds}};
}

json to_json(const CriterionReport& r) {
  json reasons = json::object();
  auto note = [&](const char* key, const std::string& reason) {
    if (!reason.empty()) reasons[key] = reason;
  };
  note("algebraic_connectivity", r.algebraic_connectivity.reason);
  note("rhs_threshold", r.rhs_threshold.reason);
  note("f_condition_ok", r.f_condition_ok.reason);
  note("kappa_threshold", r.kappa_threshold.reason);
  note("iterative_bound", r.iterative_bound.reason);
  note("exact", r.exact.reason);

  return {{"structural", to_json(r.structural)},
          {"algebraic_connectivity", outcome_json(r.algebraic_connectivity)},
          {"rhs_threshold", outcome_json(r.rhs_threshold)},
          {"f_condition_ok", outcome_json(r.f_condition_ok)},
          {"kappa_threshold", outcome_json(r.kappa_threshold)},
          {"iterative_bound", outcome_json(r.iterative_bound)},
          {"exact", outcome_json(r.exact)},
          {"verdict_theorem", r.verdict_theorem},
          {"verdict_exact", r.verdict_exact},
          {"connected", r.connected},
          {"flags", r.flags},
          {"undefined_reasons", reasons}};
}

json to_json(const SelectionResult& r) {
  return {{"method", std::string(to_string(r.method))},
          {"pinned", r.pinned},
          {"objective", r.objective},
          {"evaluations", r.evaluations}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sufficient pinning-controllability analysis for coupled-oscillator networks", "pinctl"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  app.add_flag("--json", opts.json, "Emit a single JSON document on stdout");
  app.add_option("--tol", opts.tol, "Tolerance for the structural Q/K/B checks")->capture_default_str();

  GraphArgs graph_args;
  bool full = false;
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian and pinned-operator spectra");
  add_graph_args(spectrum, graph_args);
  spectrum->add_flag("--full", full, "Print the full spectrum of sigma L + kappa P");

  auto* bounds = app.add_subcommand("bounds", "Iterative and column-append perturbation bounds");
  add_graph_args(bounds, graph_args);

  std::string config_path;
  auto* kappa = app.add_subcommand("kappa", "Evaluate the controllability criteria for a config");
  kappa->add_option("config", config_path, "Analysis config (JSON)")->required();

  int budget = 0;
  std::string method = "greedy";
  auto* select = app.add_subcommand("select", "Choose pinned nodes under a budget");
  add_graph_args(select, graph_args);
  select->add_option("--budget", budget, "Number of nodes to pin")->required();
  select->add_option("--method", method, "greedy | degree | exhaustive")->capture_default_str();

  std::string out_csv;
  auto* sim = app.add_subcommand("simulate", "Simulate the pinned error dynamics");
  sim->add_option("config", config_path, "Analysis config (JSON) with a 'sim' block")->required();
  sim->add_option("--out", out_csv, "Trajectory CSV output path");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*spectrum) return cmd_spectrum(opts, graph_args, full, out);
    if (*bounds) return cmd_bounds(opts, graph_args, out);
    if (*kappa) return cmd_kappa(opts, config_path, out, err);
    if (*select) return cmd_select(opts, graph_args, budget, method, out);
    if (*sim) return cmd_simulate(opts, config_path, out_csv, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace pinctl::cli
