import math
from pathlib import Path

import numpy as np
import pytest

pinctl = pytest.importorskip("pinctl")

DATA = Path(__file__).resolve().parent.parent / "data"


def test_graph_and_laplacian():
    g = pinctl.read_edge_list(str(DATA / "path3.edges"))
    assert g.num_nodes == 3 and g.num_edges == 2
    lap = pinctl.laplacian(g)
    inc = pinctl.incidence(g)
    assert np.array_equal(inc @ inc.T, lap.astype(int))
    assert pinctl.lambda_min_gt0(lap) == pytest.approx(1.0)
    assert pinctl.eigvalsh(lap)[0] == pytest.approx(3.0)


def test_parse_errors_map_to_exceptions():
    with pytest.raises(pinctl.ParseError, match="line 3"):
        pinctl.read_edge_list(str(DATA / "malformed.edges"))
    with pytest.raises(pinctl.ValidationError):
        pinctl.Graph(3, [(0, 0)])
    assert issubclass(pinctl.PreconditionError, pinctl.Error)


def test_criteria_on_path3():
    g = pinctl.generators.path(3)
    spec = pinctl.PinnedSystemSpec.scalar(g, 1.0, 3.0, [0], 0.5)
    assert pinctl.rhs_threshold(spec) == pytest.approx(0.5)
    assert pinctl.kappa_threshold(spec) == pytest.approx(3.0)
    rep = pinctl.evaluate(spec)
    assert rep.structural.ok
    assert rep.verdict_theorem
    assert rep.exact.lambda_min_gt0 == pytest.approx(0.300371851724682, abs=1e-12)
    assert not rep.verdict_exact

    failing = pinctl.PinnedSystemSpec.scalar(g, 1.0, 3.0, [0], 1.5)
    with pytest.raises(pinctl.PreconditionError):
        pinctl.kappa_threshold(failing)
    assert pinctl.evaluate(failing).kappa_threshold is None


def test_general_spec_validation():
    g = pinctl.generators.complete(4)
    eye = np.eye(2)
    spec = pinctl.PinnedSystemSpec(g, 1.0, 2.0, eye, 2.0 * eye, eye, [0], 0.1)
    assert pinctl.check_structural(spec).ok
    with pytest.raises(pinctl.ValidationError):
        pinctl.PinnedSystemSpec(g, 1.0, 2.0, eye, eye, -eye, [0], 0.1)


def test_arrow_bounds():
    rng = np.random.default_rng(3)
    x = rng.standard_normal((4, 6))
    arr = pinctl.assemble_arrow(x[:, 0], x[:, 1:])
    up, lo = pinctl.lili_upper_max(arr), pinctl.lili_lower_max(arr)
    assert lo.bound <= up.exact + 1e-10 <= up.bound + 2e-10
    r = pinctl.principal_rank(arr)
    assert r == 4
    assert pinctl.smallest_nonzero_lower(arr, r).slack >= -1e-10


def test_selection():
    g = pinctl.generators.star(5)
    greedy = pinctl.select_nodes(g, 1.0, 10.0, 1)
    exhaustive = pinctl.select_nodes(g, 1.0, 10.0, 1, "exhaustive")
    assert greedy.pinned == exhaustive.pinned == [0]
    assert greedy.objective == pytest.approx(exhaustive.objective)
    with pytest.raises(pinctl.ValidationError):
        pinctl.select_nodes(g, 1.0, 10.0, 6)


def test_simulation_matches_matrix_exponential():
    g = pinctl.generators.path(3)
    a, kappa = 0.3, 3.0
    spec = pinctl.PinnedSystemSpec.scalar(g, 1.0, kappa, [0], a)
    x0 = np.array([[1.0], [0.0], [-1.0]])
    traj = pinctl.simulate(spec, ("linear", np.array([[a]])), x0, np.array([0.5]), t_end=2.0, dt=1e-3,
                           record_every=100)
    assert traj.times[-1] == pytest.approx(2.0)
    assert traj.steps == 2000
    m = a * np.eye(3) - pinctl.laplacian(g)
    m[0, 0] -= kappa
    w, v = np.linalg.eigh(m)
    oracle = v @ np.diag(np.exp(w * 2.0)) @ v.T @ traj.errors[0][:, 0]
    assert np.allclose(traj.errors[-1][:, 0], oracle, rtol=1e-8, atol=1e-10)
    assert pinctl.check_decay(traj).decayed


def test_simulation_divergence_raises():
    g = pinctl.generators.path(2)
    spec = pinctl.PinnedSystemSpec.scalar(g, 1.0, 0.0, [], 40.0)
    with pytest.raises(pinctl.DivergenceError):
        pinctl.simulate(spec, ("linear", np.array([[40.0]])), np.array([[1.0], [2.0]]), np.array([0.0]),
                        t_end=5.0, dt=1e-2)
    assert math.isfinite(pinctl.evaluate(spec).algebraic_connectivity)
