import numpy as np
import pytest
import scipy.linalg

from tscale_sl import PotentialSpec, Segment, SLProblem, build_timescale
from tscale_sl.sl_solver import ProblemError

ACCEPTANCE_RESULTS = []


def iso_scale(points):
    return build_timescale(Segment.point(p) for p in points)


def iso_problem(points, q, h_a=0.0, h_b=0.0):
    """Problem on the isolated scale {points}; q given per point (padded with zeros)."""
    q = list(q) + [0.0] * (len(points) - len(q))
    return SLProblem(iso_scale(points), PotentialSpec.pointwise(q), h_a, h_b)


def interval_problem(q_const=0.0, lo=0.0, hi=1.0, h_a=0.0, h_b=0.0):
    return SLProblem(
        build_timescale([Segment.interval(lo, hi)]), PotentialSpec.constant(q_const, 1), h_a, h_b
    )


def bordered_oracle(points, q, h_a, h_b):
    """Finite eigenvalues of the un-eliminated pencil A y = lam B y on y_0..y_N.

    Rows: the Robin condition at a, the N-1 dynamic equations, the Robin
    condition at rho(b). Shares no code with the package.
    """
    t = np.asarray(points, dtype=float)
    mu = np.diff(t)
    N = len(mu)
    A = np.zeros((N + 1, N + 1))
    B = np.zeros((N + 1, N + 1))
    A[0, 0] = -1.0 / mu[0] - h_a
    A[0, 1] = 1.0 / mu[0]
    for i in range(N - 1):
        # -(y_{i+2}-y_{i+1})/(mu_i mu_{i+1}) + (y_{i+1}-y_i)/mu_i^2 + q_i y_{i+1}
        A[i + 1, i + 2] += -1.0 / (mu[i] * mu[i + 1])
        A[i + 1, i + 1] += 1.0 / (mu[i] * mu[i + 1]) + 1.0 / mu[i] ** 2 + q[i]
        A[i + 1, i] += -1.0 / mu[i] ** 2
        B[i + 1, i + 1] = 1.0
    A[N, N] = 1.0 / mu[N - 1]
    A[N, N - 1] = -1.0 / mu[N - 1] - h_b
    w = scipy.linalg.eigvals(A, B)
    w = w[np.isfinite(w)]
    assert np.allclose(w.imag, 0, atol=1e-8 * max(1, np.max(np.abs(w))))
    return np.sort(w.real)


def random_isolated_instance(rng, neumann=False, n_range=(3, 12)):
    """Random problem on an isolated scale, per the campaign ranges.

    N in [3, 12] intervals, mu in (0, 2], q in [-5, 5], h_a, h_b in [-2, 2],
    nonconstant q on the equation points, nondegenerate Robin factors.
    """
    while True:
        N = int(rng.integers(n_range[0], n_range[1] + 1))
        mu = 2.0 * (1.0 - rng.random(N))
        points = np.concatenate([[0.0], np.cumsum(mu)])
        q = rng.uniform(-5.0, 5.0, N + 1)
        h_a, h_b = (0.0, 0.0) if neumann else tuple(rng.uniform(-2.0, 2.0, 2))
        if np.ptp(q[: N - 1]) <= 1e-6:
            continue
        if abs(1 + h_a * mu[0]) <= 1e-10 or abs(1 + h_b * mu[-1]) <= 1e-10:
            continue
        try:
            return iso_problem(points, q, h_a, h_b), points, q
        except ProblemError:
            continue


def record(criterion, passed, detail=""):
    ACCEPTANCE_RESULTS.append((criterion, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {criterion}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)
