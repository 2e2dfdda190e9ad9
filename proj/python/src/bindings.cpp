#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pinctl/criteria.hpp"
#include "pinctl/dynamics.hpp"
#include "pinctl/graph.hpp"
#include "pinctl/graph_generators.hpp"
#include "pinctl/perturbation.hpp"
#include "pinctl/selection.hpp"
#include "pinctl/spectral.hpp"

namespace py = pybind11;
using namespace pinctl;

namespace {

template <class T>
py::object outcome(const Outcome<T>& o) {
  return o.defined() ? py::cast(*o.value) : py::none();
}

PinnedSystemSpec make_spec(const Graph& g, double sigma, double kappa, const Eigen::MatrixXd& b,
                           const Eigen::MatrixXd& k, const Eigen::MatrixXd& q, std::vector<int> pinned,
                           double f_bound) {
  PinnedSystemSpec s{g, sigma, kappa, b, k, SymMatrix(q), std::move(pinned), f_bound};
  s.validate();
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pinning-controllability analysis for coupled-oscillator networks";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, std::vector<Edge>>(), py::arg("num_nodes"), py::arg("edges"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("edges", &Graph::edges)
      .def("__repr__", [](const Graph& g) {
        return "Graph(num_nodes=" + std::to_string(g.num_nodes()) + ", num_edges=" + std::to_string(g.num_edges()) +
               ")";
      });

  m.def("parse_edge_list", [](const std::string& text) { return parse_edge_list(text); }, py::arg("text"));
  m.def("read_edge_list", [](const std::string& path) { return read_edge_list(path); }, py::arg("path"));
  m.def("format_edge_list", &format_edge_list);
  m.def("laplacian", [](const Graph& g) { return laplacian(g).matrix(); });
  m.def("incidence", [](const Graph& g) { return incidence(g).entries(); });
  m.def("degrees", &degrees);
  m.def("is_connected", &is_connected);
  m.def("num_components", &num_components);

  auto gen = m.def_submodule("generators", "Standard graph families");
  gen.def("path", &generators::path);
  gen.def("cycle", &generators::cycle);
  gen.def("star", &generators::star);
  gen.def("complete", &generators::complete);
  gen.def(
      "connected_erdos_renyi",
      [](int n, double p, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return generators::connected_erdos_renyi(n, p, rng);
      },
      py::arg("n"), py::arg("p"), py::arg("seed"));

  // Spectral helpers take any symmetric array.
  m.def("eigvalsh", [](const Eigen::MatrixXd& a) { return eig_sym(SymMatrix(a)).values; },
        "Eigenvalues in descending order");
  m.def(
      "eigh",
      [](const Eigen::MatrixXd& a) {
        Spectrum s = eig_sym(SymMatrix(a));
        return py::make_tuple(s.values, s.vectors);
      },
      "Descending eigenvalues and sign-normalized eigenvectors");
  m.def(
      "lambda_min_gt0",
      [](const Eigen::MatrixXd& a, std::optional<double> tol) { return lambda_min_gt0(SymMatrix(a), tol); },
      py::arg("a"), py::arg("tol") = py::none());
  m.def("pinned_operator", [](const Graph& g, double sigma, double kappa, const std::vector<int>& pinned) {
    return pinned_operator(g, sigma, kappa, pinned).matrix();
  });

  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly("kind", [](const BoundReport& r) { return std::string(to_string(r.kind)); })
      .def_readonly("bound", &BoundReport::bound_value)
      .def_readonly("exact", &BoundReport::exact_value)
      .def_readonly("slack", &BoundReport::slack);

  py::class_<ArrowMatrix>(m, "ArrowMatrix")
      .def(py::init([](double c, const Eigen::VectorXd& a, const Eigen::MatrixXd& mm) {
             return ArrowMatrix(c, a, SymMatrix(mm));
           }),
           py::arg("c"), py::arg("a"), py::arg("m"))
      .def_readonly("c", &ArrowMatrix::c)
      .def_readonly("a", &ArrowMatrix::a)
      .def("materialize", [](const ArrowMatrix& arr) { return arr.materialize().matrix(); });
  m.def("assemble_arrow", &assemble_arrow, py::arg("x"), py::arg("big_x"));
  m.def("lili_upper_max", &lili_upper_max);
  m.def("lili_lower_max", &lili_lower_max);
  m.def("smallest_nonzero_lower", &smallest_nonzero_lower);
  m.def("weyl_lower", &weyl_lower);
  m.def("mathias_lower", &mathias_lower);
  m.def("principal_rank", &principal_rank);

  py::class_<PinnedSystemSpec>(m, "PinnedSystemSpec")
      .def(py::init(&make_spec), py::arg("graph"), py::arg("sigma"), py::arg("kappa"), py::arg("b"), py::arg("k"),
           py::arg("q"), py::arg("pinned"), py::arg("f_bound"))
      .def_static(
          "scalar",
          [](const Graph& g, double sigma, double kappa, std::vector<int> pinned, double f_bound) {
            PinnedSystemSpec s = PinnedSystemSpec::scalar(g, sigma, kappa, std::move(pinned), f_bound);
            s.validate();
            return s;
          },
          py::arg("graph"), py::arg("sigma"), py::arg("kappa"), py::arg("pinned"), py::arg("f_bound"))
      .def_readonly("graph", &PinnedSystemSpec::graph)
      .def_readonly("sigma", &PinnedSystemSpec::sigma)
      .def_readonly("kappa", &PinnedSystemSpec::kappa)
      .def_readonly("pinned", &PinnedSystemSpec::pinned)
      .def_readonly("f_bound", &PinnedSystemSpec::f_bound);

  py::class_<StructuralCheck>(m, "StructuralCheck")
      .def_readonly("ok", &StructuralCheck::ok)
      .def_readonly("identity_residual", &StructuralCheck::identity_residual)
      .def_readonly("qb_min_eig", &StructuralCheck::qb_min_eig);
  py::class_<ExactCheck>(m, "ExactCheck")
      .def_readonly("lambda_min_gt0", &ExactCheck::lambda_min_gt0)
      .def_readonly("lambda_min", &ExactCheck::lambda_min)
      .def_readonly("rhs", &ExactCheck::rhs)
      .def_readonly("holds", &ExactCheck::holds);
  py::class_<CriterionReport>(m, "CriterionReport")
      .def_readonly("structural", &CriterionReport::structural)
      .def_property_readonly("algebraic_connectivity",
                             [](const CriterionReport& r) { return outcome(r.algebraic_connectivity); })
      .def_property_readonly("rhs_threshold", [](const CriterionReport& r) { return outcome(r.rhs_threshold); })
      .def_property_readonly("f_condition_ok", [](const CriterionReport& r) { return outcome(r.f_condition_ok); })
      .def_property_readonly("kappa_threshold", [](const CriterionReport& r) { return outcome(r.kappa_threshold); })
      .def_property_readonly("iterative_bound", [](const CriterionReport& r) { return outcome(r.iterative_bound); })
      .def_property_readonly("exact", [](const CriterionReport& r) { return outcome(r.exact); })
      .def_readonly("verdict_theorem", &CriterionReport::verdict_theorem)
      .def_readonly("verdict_exact", &CriterionReport::verdict_exact)
      .def_readonly("connected", &CriterionReport::connected)
      .def_readonly("flags", &CriterionReport::flags);

  m.def("check_structural", &check_structural, py::arg("spec"), py::arg("tol") = 1e-9);
  m.def("rhs_threshold", &rhs_threshold);
  m.def("check_f_condition", &check_f_condition);
  m.def("iterative_bound", &iterative_bound);
  m.def("kappa_threshold", &kappa_threshold);
  m.def("exact_condition", &exact_condition);
  m.def("evaluate", &evaluate, py::arg("spec"), py::arg("tol") = 1e-9);

  py::class_<SelectionResult>(m, "SelectionResult")
      .def_readonly("pinned", &SelectionResult::pinned)
      .def_readonly("objective", &SelectionResult::objective)
      .def_property_readonly("method", [](const SelectionResult& r) { return std::string(to_string(r.method)); })
      .def_readonly("evaluations", &SelectionResult::evaluations);
  m.def("evaluate_pinning", &evaluate_pinning);
  m.def(
      "select_nodes",
      [](const Graph& g, double sigma, double kappa, int budget, const std::string& method) {
        return select_nodes(g, sigma, kappa, budget, parse_selection_method(method));
      },
      py::arg("graph"), py::arg("sigma"), py::arg("kappa"), py::arg("budget"), py::arg("method") = "greedy");

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("errors", &Trajectory::errors)
      .def_readonly("lyapunov", &Trajectory::lyapunov)
      .def_readonly("steps", &Trajectory::steps)
      .def("error_norm", &Trajectory::error_norm);
  py::class_<DecayReport>(m, "DecayReport")
      .def_readonly("decayed", &DecayReport::decayed)
      .def_readonly("v_initial", &DecayReport::v_initial)
      .def_readonly("v_final", &DecayReport::v_final)
      .def_readonly("violations", &DecayReport::violations);

  // dynamics is ("linear", A) or ("scalar_saturated", a, b).
  m.def(
      "simulate",
      [](const PinnedSystemSpec& spec, const py::tuple& dynamics, const Eigen::MatrixXd& x0,
         const Eigen::VectorXd& s0, double t_end, double dt, double t0, std::size_t record_every) {
        const auto kind = dynamics[0].cast<std::string>();
        std::optional<NodeDynamics> dyn;
        if (kind == "linear" && dynamics.size() == 2) {
          dyn.emplace(LinearDynamics{dynamics[1].cast<Eigen::MatrixXd>()});
        } else if (kind == "scalar_saturated" && dynamics.size() == 3) {
          dyn.emplace(ScalarSaturatedDynamics{dynamics[1].cast<double>(), dynamics[2].cast<double>()});
        } else {
          throw ValidationError("dynamics must be ('linear', A) or ('scalar_saturated', a, b)");
        }
        SimConfig cfg{spec, *dyn, x0, s0, t0, t_end, dt, record_every};
        py::gil_scoped_release release;
        return simulate(cfg);
      },
      py::arg("spec"), py::arg("dynamics"), py::arg("x0"), py::arg("s0"), py::arg("t_end"), py::arg("dt") = 1e-3,
      py::arg("t0") = 0.0, py::arg("record_every") = 1);
  m.def("check_decay", &check_decay);
}
