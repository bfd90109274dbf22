"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Timed criteria measure the computation itself; the jit warmup cost
is paid once in the module fixture.
"""

import json
import time
from pathlib import Path

import numpy as np
import pytest

from kronlift import kernels
from kronlift.cli import main
from kronlift.errors import SingularSystemError
from kronlift.fileio import dumps_system, load_system, system_from_dict
from kronlift.lift import build_lifted, monomial_embedding
from kronlift.mwr import (
    BoundaryCondition,
    LinearOperatorSpec,
    MwrProblem,
    build_collocation_system,
    evaluate_solution,
)
from kronlift.recovery import extract_candidates, nullspace_search, polish
from kronlift.solvers import (
    newton_solve,
    normal_eq_solve,
    nullspace_basis,
    pinv_solve,
    pseudoinverse,
)
from kronlift.system_model import (
    PolynomialSystem,
    eval_jacobian,
    eval_residual,
    random_system,
)
from kronlift.tensor_core import (
    check_det_inequality,
    check_spectral_bounds,
    hadamard,
    hadamard_via_kron,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    kernels.warmup()


def report(number, message):
    print(f"ACCEPTANCE {number}: PASS - {message}")


def random_psd(rng, n):
    F = rng.standard_normal((n, n + 1))
    return F @ F.T


def test_criterion_01_hadamard_kron_identity():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(500):
        rows = int(rng.integers(1, 7))
        cols = int(rng.integers(1, 7))
        a = rng.uniform(-1.0, 1.0, (rows, cols))
        b = rng.uniform(-1.0, 1.0, (rows, cols))
        gap = np.max(np.abs(hadamard_via_kron(a, b) - hadamard(a, b)))
        worst = max(worst, gap)
        assert gap <= 1e-13
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    report(1, f"500 selection-matrix identities, worst gap {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_product_axioms():
    rng = np.random.default_rng(2)
    for _ in range(500):
        rows = int(rng.integers(1, 7))
        cols = int(rng.integers(1, 7))
        a, b, q = (rng.standard_normal((rows, cols)) for _ in range(3))
        k = rng.standard_normal()
        np.testing.assert_array_equal(hadamard(a, b), hadamard(b, a))
        np.testing.assert_allclose(k * hadamard(a, b), hadamard(k * a, b),
                                   rtol=1e-14, atol=1e-14)
        np.testing.assert_allclose(hadamard(a + b, q),
                                   hadamard(a, q) + hadamard(b, q),
                                   rtol=1e-14, atol=1e-14)
    report(2, "commutativity exact, scalar/distributive within 1e-14, 500 instances each")


def test_criterion_03_psd_bound_checks():
    rng = np.random.default_rng(3)
    t0 = time.perf_counter()
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        a, b = random_psd(rng, n), random_psd(rng, n)
        assert check_spectral_bounds(a, b, slack=1e-12).passed
        assert check_det_inequality(a, b, slack=1e-12).passed
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    report(3, f"1000 PSD pairs pass both bound checks, {elapsed:.2f}s")


def test_criterion_04_lift_equivalence():
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    for seed in range(100):
        n = 1 + seed % 6
        degree = 2 if seed % 2 == 0 else 3
        sys = random_system(n, degree, seed=seed)
        lift = build_lifted(sys)
        tol = 1e-12 * (1.0 + np.linalg.norm(sys.b))
        for _ in range(20):
            x = rng.standard_normal(n)
            y = monomial_embedding(lift, x)
            action = eval_residual(sys, x).values + sys.b
            assert np.linalg.norm(lift.P @ y - action) <= tol
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    report(4, f"100 systems x 20 points reproduce the nonlinear action, {elapsed:.2f}s")


def test_criterion_05_pseudoinverse_properties():
    rng = np.random.default_rng(5)
    for _ in range(100):
        rows = int(rng.integers(1, 7))
        cols = int(rng.integers(1, 10))
        P = rng.standard_normal((rows, cols))
        pinv, _ = pseudoinverse(P)
        assert np.max(np.abs(P @ pinv @ P - P)) <= 1e-10
        assert np.max(np.abs(pinv @ P @ pinv - pinv)) <= 1e-10
        assert np.max(np.abs((P @ pinv).T - P @ pinv)) <= 1e-10
        assert np.max(np.abs((pinv @ P).T - pinv @ P)) <= 1e-10

    # minimum-norm among the least-squares family, 1000 draws per system
    for seed in range(10):
        lift = build_lifted(random_system(2 + seed % 4, 2, seed=seed))
        y, residual = pinv_solve(lift)
        N = nullspace_basis(lift)
        draw = np.random.default_rng(seed)
        for _ in range(1000):
            t = draw.standard_normal(N.shape[1])
            y_alt = y + N @ t
            assert np.linalg.norm(lift.P @ y_alt - lift.b) <= residual + 1e-10
            assert np.linalg.norm(y_alt) >= np.linalg.norm(y)
    report(5, "Penrose conditions on 100 matrices; 10x1000 minimality draws all hold")


def test_criterion_06_normal_equations():
    for seed in range(100):
        n = 2 + seed % 4
        degree = 2 if seed % 2 == 0 else 3
        lift = build_lifted(random_system(n, degree, seed=seed))
        y_pinv, _ = pinv_solve(lift)
        y_ridge = normal_eq_solve(lift, 1e-10)
        gap = np.linalg.norm(y_ridge - y_pinv)
        assert gap <= 1e-4 * (1.0 + np.linalg.norm(y_pinv))
        assert lift.m > lift.P.shape[0]
        with pytest.raises(SingularSystemError):
            normal_eq_solve(lift, 0.0)
    report(6, "ridge(1e-10) tracks the pseudoinverse on 100 lifts; ridge=0 raises")


def test_criterion_07_root_recovery():
    t0 = time.perf_counter()
    scalar = build_lifted(PolynomialSystem(D=[[0.0]], b=[1.0], G=[[1.0]]))
    cands = nullspace_search(scalar, starts=16, seed=0)
    roots = sorted(float(c.x[0]) for c in cands if c.nonlinear_residual <= 1e-8)
    np.testing.assert_allclose(roots, [-1.0, 1.0], atol=1e-8)

    wins = 0
    failures = []
    for seed in range(100):
        n = 2 + seed % 3
        degree = 2 if seed % 2 == 0 else 3
        rng = np.random.default_rng(10_000 + seed)
        root = rng.standard_normal(n)
        sys = random_system(n, degree, seed=seed, planted_root=root)
        cands = nullspace_search(build_lifted(sys), starts=16, seed=seed)
        distance = min(np.linalg.norm(c.x - root) for c in cands)
        if distance <= 1e-6:
            wins += 1
        else:
            failures.append((seed, n, degree, distance))
    elapsed = time.perf_counter() - t0
    # failures are reported, never silently dropped
    for seed, n, degree, distance in failures:
        print(f"  recovery miss: seed={seed} n={n} degree={degree} "
              f"nearest candidate at {distance:.2e}")
    assert wins >= 90
    assert elapsed < 60.0
    report(7, f"scalar roots exact; planted-root recovery {wins}/100, "
              f"{len(failures)} misses listed above, {elapsed:.1f}s")


def test_criterion_08_newton_baseline():
    # hand-verified sequence for x^2 = 1 from x0 = 2
    sys = PolynomialSystem(D=[[0.0]], b=[1.0], G=[[1.0]])
    trace = newton_solve(sys, [2.0])
    expected = [2.0]
    while len(expected) < len(trace.iterates):
        x = expected[-1]
        expected.append((x + 1.0 / x) / 2.0)
    for (x, _), want in zip(trace.iterates, expected):
        assert abs(float(x[0]) - want) <= 1e-3
    assert trace.converged

    checked = 0
    for seed in range(15):
        n = 2 + seed % 3
        rng = np.random.default_rng(2_000 + seed)
        root = rng.standard_normal(n)
        sys = random_system(n, 2, seed=seed, planted_root=root)
        J = eval_jacobian(sys, root)
        bound = 10.0 * np.linalg.norm(np.linalg.inv(J), 2) * 2.0 * np.linalg.norm(sys.G, 2)
        trace = newton_solve(sys, root + 1e-3 * rng.standard_normal(n))
        if not trace.converged:
            continue
        errors = [np.linalg.norm(x - root) for x, _ in trace.iterates]
        ratios = [errors[k + 1] / errors[k] ** 2
                  for k in range(len(errors) - 1)
                  if 1e-12 < errors[k] < 0.1]
        for ratio in ratios[-3:]:
            assert ratio <= bound
        checked += 1
    assert checked >= 10
    report(8, f"hand iterate sequence matches; quadratic ratio bound holds on "
              f"{checked} planted-root systems")


def test_criterion_09_mwr_pipeline():
    t0 = time.perf_counter()
    # constant problem u*u = 4
    constant = MwrProblem(
        domain=(0.0, 1.0), p=LinearOperatorSpec.identity(),
        r=LinearOperatorSpec.identity(), L=LinearOperatorSpec.zero(),
        f=4.0, n_basis=1, basis_kind="monomial", bc=(),
    )
    sys = build_collocation_system(constant)
    np.testing.assert_array_equal(sys.D, [[0.0]])
    np.testing.assert_array_equal(sys.G, [[1.0]])
    np.testing.assert_array_equal(sys.b, [4.0])
    cands = nullspace_search(build_lifted(sys), starts=8, seed=0)
    roots = sorted(float(c.x[0]) for c in cands if c.nonlinear_residual <= 1e-10)
    np.testing.assert_allclose(roots, [-2.0, 2.0], atol=1e-10)

    # manufactured steady Burgers-type problem, u* = sin(pi x), nu = 0.1
    nu = 0.1
    burgers = MwrProblem(
        domain=(0.0, 1.0), p=LinearOperatorSpec.identity(),
        r=LinearOperatorSpec(terms=((1, (1.0,)),)),
        L=LinearOperatorSpec(terms=((2, (-nu,)),)),
        f=lambda x: np.pi * np.sin(np.pi * x) * np.cos(np.pi * x)
        + nu * np.pi**2 * np.sin(np.pi * x),
        n_basis=10, basis_kind="chebyshev",
        bc=(BoundaryCondition(0.0, "value", 0.0), BoundaryCondition(1.0, "value", 0.0)),
    )
    bsys = build_collocation_system(burgers)
    lift = build_lifted(bsys)
    y, _ = pinv_solve(lift)
    direct = next(c for c in extract_candidates(lift, y) if c.source == "direct")
    polished = polish(bsys, direct)
    mid = evaluate_solution(burgers, polished.x, [0.5])[0]
    assert abs(mid - 1.0) <= 1e-4

    # linear Poisson: error decreases monotonically with basis size
    grid = np.linspace(0.0, 1.0, 101)
    errors = []
    for n_basis in (4, 6, 8):
        poisson = MwrProblem(
            domain=(0.0, 1.0), p=LinearOperatorSpec.zero(),
            r=LinearOperatorSpec.identity(),
            L=LinearOperatorSpec(terms=((2, (-1.0,)),)),
            f=lambda x: np.pi**2 * np.sin(np.pi * x),
            n_basis=n_basis, basis_kind="chebyshev",
            bc=(BoundaryCondition(0.0, "value", 0.0), BoundaryCondition(1.0, "value", 0.0)),
        )
        trace = newton_solve(build_collocation_system(poisson), np.zeros(n_basis))
        u = evaluate_solution(poisson, trace.final_x, grid)
        errors.append(float(np.max(np.abs(u - np.sin(np.pi * grid)))))
    assert errors[0] > errors[1] > errors[2]
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    report(9, f"constant blocks exact, roots +-2; Burgers |u(0.5)-1|={abs(mid-1):.1e}; "
              f"Poisson errors {errors[0]:.1e} > {errors[1]:.1e} > {errors[2]:.1e}; "
              f"{elapsed:.1f}s")


def test_criterion_10_cli_contract(capsys, tmp_path):
    # load/save identity on every system fixture
    system_fixtures = ["x_squared.json", "cubic_scalar.json", "random_n3.json",
                       "linear_only.json", "no_real_roots.json"]
    for name in system_fixtures:
        sys = load_system(FIXTURES / name)
        again = system_from_dict(json.loads(dumps_system(sys)))
        assert sys.D.tobytes() == again.D.tobytes()
        assert sys.b.tobytes() == again.b.tobytes()
        for block in ("G", "R"):
            mine, theirs = getattr(sys, block), getattr(again, block)
            assert (mine is None) == (theirs is None)
            if mine is not None:
                assert mine.tobytes() == theirs.tobytes()

    def run(*argv):
        with pytest.raises(SystemExit) as excinfo:
            main(list(argv))
        out, err = capsys.readouterr()
        return excinfo.value.code, out, err

    # deterministic reports under a fixed seed (timings excluded)
    args = ("solve", str(FIXTURES / "x_squared.json"), "--seed", "4")
    code, first, _ = run(*args)
    assert code == 0
    _, second, _ = run(*args)
    strip = lambda text: {k: v for k, v in json.loads(text).items() if k != "timings_ms"}
    assert strip(first) == strip(second)

    # documented exit codes: 0 success, 2 usage, 3 parse, 4 numerical
    code, _, _ = run("analyze", str(FIXTURES / "x_squared.json"))
    assert code == 0
    code, _, err = run("solve", str(FIXTURES / "x_squared.json"), "--method", "bogus")
    assert code == 2 and err.startswith("error[E_USAGE]")
    code, _, err = run("analyze", str(FIXTURES / "corrupt.json"))
    assert code == 3 and err.startswith("error[E_PARSE]")
    code, _, err = run("analyze", str(FIXTURES / "linear_only.json"))
    assert code == 4 and err.startswith("error[E_DEGENERATE_LIFT]")
    report(10, "fixtures round-trip bitwise; reports seed-deterministic; "
               "exit codes 0/2/3/4 exercised")
