"""Sturm-Liouville eigenproblems on realized time scales.

The dynamic equation

    -y^{DD}(t) + q(t) y^sigma(t) = lambda y^sigma(t),   t in T^{k^2},

with Robin conditions y^D(a) = h_a y(a) and y^D(rho(b)) = h_b y(rho(b)) is
written on a grid t_0 < ... < t_N. Eliminating y_0 and y_N through the
boundary conditions leaves a real tridiagonal operator acting on
y_1, ..., y_{N-1}; its spectrum is computed by Sturm-count bisection and
cross-checked against the shooting characteristic function chi(lambda).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .delta_calculus import GridFunction
from .timescale import Grid, TimeScale, TimeScaleError, mu, realize, rho

__all__ = [
    "ProblemError",
    "SingularRobinError",
    "NotAnEigenvalueError",
    "BracketError",
    "CrossCheckError",
    "PieceKind",
    "PotentialPiece",
    "PotentialSpec",
    "SLProblem",
    "Tridiagonal",
    "Spectrum",
    "Eigenpair",
    "sample_potential",
    "assemble",
    "symmetrize",
    "count_below",
    "eigenvalues",
    "shoot",
    "eigenpair",
    "count_generalized_zeros",
    "spectrum",
    "residual_limit",
    "cross_check_limit",
]

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-9
RESIDUAL_FACTOR = 1e3
_EPS = np.finfo(float).eps


class ProblemError(ValueError):
    """The problem violates a standing assumption or is malformed."""


class SingularRobinError(ProblemError):
    """1 + h mu vanishes at an endpoint, so the boundary condition cannot be eliminated."""


class NotAnEigenvalueError(ValueError):
    pass


class BracketError(RuntimeError):
    pass


class CrossCheckError(RuntimeError):
    """Matrix eigenvalue and shooting characteristic function disagree."""


class PieceKind(str, Enum):
    CONSTANT = "constant"
    POLYNOMIAL = "polynomial"
    SAMPLES = "samples"


@dataclass(frozen=True)
class PotentialPiece:
    """q restricted to one segment.

    ``payload`` is a float for ``constant``, ascending coefficients for
    ``polynomial`` and a sequence of (t, value) pairs for ``samples``.
    """

    kind: PieceKind
    payload: object

    def __post_init__(self):
        kind = PieceKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is PieceKind.CONSTANT:
            payload = float(self.payload)
            if not np.isfinite(payload):
                raise ProblemError("constant potential must be finite")
        elif kind is PieceKind.POLYNOMIAL:
            payload = tuple(float(c) for c in self.payload)
            if not payload or not np.all(np.isfinite(payload)):
                raise ProblemError("polynomial potential needs finite coefficients")
        else:
            payload = tuple(sorted((float(t), float(v)) for t, v in self.payload))
            if not payload:
                raise ProblemError("sampled potential needs at least one (t, value) pair")
            if not np.all(np.isfinite(payload)):
                raise ProblemError("sampled potential must be finite")
        object.__setattr__(self, "payload", payload)

    @classmethod
    def constant(cls, value: float) -> "PotentialPiece":
        return cls(PieceKind.CONSTANT, value)

    @classmethod
    def polynomial(cls, coeffs: Sequence[float]) -> "PotentialPiece":
        return cls(PieceKind.POLYNOMIAL, coeffs)

    @classmethod
    def samples(cls, pairs: Sequence[tuple[float, float]]) -> "PotentialPiece":
        return cls(PieceKind.SAMPLES, pairs)

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.kind is PieceKind.CONSTANT:
            return np.full_like(t, self.payload)
        if self.kind is PieceKind.POLYNOMIAL:
            return np.polynomial.polynomial.polyval(t, self.payload)
        ts, vs = zip(*self.payload)
        # np.interp clamps to the end values outside the data hull
        return np.interp(t, ts, vs)


@dataclass(frozen=True)
class PotentialSpec:
    """One :class:`PotentialPiece` per time-scale segment, in segment order."""

    pieces: tuple[PotentialPiece, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))

    @classmethod
    def constant(cls, value: float, nsegments: int) -> "PotentialSpec":
        return cls(tuple(PotentialPiece.constant(value) for _ in range(nsegments)))

    @classmethod
    def pointwise(cls, values: Sequence[float]) -> "PotentialSpec":
        """Constant pieces, one value per segment (natural for isolated scales)."""
        return cls(tuple(PotentialPiece.constant(v) for v in values))


@dataclass(frozen=True)
class SLProblem:
    """Problem L(q, h_a, h_b); construction enforces the standing assumptions."""

    ts: TimeScale
    q: PotentialSpec
    h_a: float = 0.0
    h_b: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "h_a", float(self.h_a))
        object.__setattr__(self, "h_b", float(self.h_b))
        if not (np.isfinite(self.h_a) and np.isfinite(self.h_b)):
            raise ProblemError("Robin coefficients must be finite")
        nseg = len(self.ts.segments)
        if len(self.q.pieces) != nseg:
            raise ProblemError(
                f"potential piece count mismatch: {len(self.q.pieces)} pieces "
                f"for {nseg} segments"
            )
        for k, (seg, piece) in enumerate(zip(self.ts.segments, self.q.pieces)):
            if piece.kind is PieceKind.SAMPLES:
                tol = self.ts.tolerance
                for t, _ in piece.payload:
                    if not seg.start - tol <= t <= seg.end + tol:
                        raise ProblemError(
                            f"sample at t={t} lies outside segment {k} "
                            f"[{seg.start}, {seg.end}]"
                        )

        a, b = self.ts.a, self.ts.b
        rb = rho(self.ts, b)
        if rb == a:
            raise ProblemError("standing assumption violated: a = rho(b)")
        if 1.0 + self.h_a * mu(self.ts, a) == 0.0:
            raise SingularRobinError("standing assumption violated: 1 + h_a*mu(a) = 0")
        if 1.0 + self.h_b * mu(self.ts, rb) == 0.0:
            raise SingularRobinError(
                "standing assumption violated: 1 + h_b*mu(rho(b)) = 0"
            )

    @property
    def is_neumann(self) -> bool:
        return self.h_a == 0.0 and self.h_b == 0.0

    def default_step(self) -> float:
        return (self.ts.b - self.ts.a) / 1000.0


def sample_potential(problem: SLProblem, grid: Grid) -> GridFunction:
    """Evaluate q at every grid point, piece by piece."""
    if grid.timescale is not problem.ts and grid.timescale != problem.ts:
        raise TimeScaleError("grid does not realize the problem's time scale")
    values = np.empty(grid.size)
    for k, piece in enumerate(problem.q.pieces):
        sel = grid.segment == k
        values[sel] = piece(grid.points[sel])
    return GridFunction(grid, values)


@dataclass(frozen=True, eq=False)
class Tridiagonal:
    """M x M tridiagonal matrix; ``sub[r]`` couples row r+1 to column r."""

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray

    def __post_init__(self):
        arrays = [np.array(x, dtype=float) for x in (self.sub, self.diag, self.sup)]
        sub, diag, sup = arrays
        if len(diag) < 1 or len(sub) != len(diag) - 1 or len(sup) != len(diag) - 1:
            raise ValueError("inconsistent tridiagonal lengths")
        for name, arr in zip(("sub", "diag", "sup"), arrays):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite entry in {name}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def size(self) -> int:
        return len(self.diag)

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.sub, self.sup))

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.sup, 1) + np.diag(self.sub, -1)

    def gershgorin(self) -> tuple[float, float]:
        """Interval containing the spectrum (uses |sub| and |sup| row sums)."""
        radius = np.zeros(self.size)
        radius[:-1] += np.abs(self.sup)
        radius[1:] += np.abs(self.sub)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def norm_bound(self) -> float:
        lo, hi = self.gershgorin()
        return max(abs(lo), abs(hi))


def _boundary_factors(problem: SLProblem, grid: Grid) -> tuple[float, float]:
    mu_ = grid.graininess
    fa = 1.0 + problem.h_a * mu_[0]
    fb = 1.0 + problem.h_b * mu_[-1]
    if abs(fa) <= 1e-10:
        raise SingularRobinError(f"singular Robin condition at a: 1 + h_a*mu(a) = {fa:g}")
    if abs(fb) <= 1e-10:
        raise SingularRobinError(
            f"singular Robin condition at rho(b): 1 + h_b*mu(rho(b)) = {fb:g}"
        )
    return fa, fb


def assemble(problem: SLProblem, grid: Grid) -> Tridiagonal:
    """Matrix of the eliminated operator acting on y_1 .. y_{N-1}.

    Row r = i + 1 holds the equation at t_i. The boundary conditions give
    y_0 = y_1 / (1 + h_a mu_0) and y_N = y_{N-1} (1 + h_b mu_{N-1}), which
    fold into the first and last diagonal entries.
    """
    N = grid.N
    if N < 2:
        raise ProblemError("need at least three grid points")
    fa, fb = _boundary_factors(problem, grid)
    mu_ = grid.graininess
    q = sample_potential(problem, grid).values[: N - 1]

    m0 = mu_[: N - 1]
    m1 = mu_[1:N]
    left = 1.0 / m0**2
    right = 1.0 / (m0 * m1)
    # folded boundary terms in closed form: 1/mu^2 - 1/(mu^2 fa) would cancel
    # catastrophically when mu_0 is small
    left[0] = problem.h_a / (mu_[0] * fa)
    right[-1] = -problem.h_b / mu_[N - 2]
    diag = left + right + q
    sub = -1.0 / m0[1:] ** 2
    sup = -1.0 / (m0[:-1] * m1[:-1])
    return Tridiagonal(sub, diag, sup)


def symmetrize(m: Tridiagonal) -> Tridiagonal:
    """Diagonal similarity to a symmetric matrix with off-diagonal sqrt(e_r c_{r+1})."""
    if m.is_symmetric:
        return m
    prod = m.sup * m.sub
    if np.any(prod <= 0):
        bad = int(np.argmax(prod <= 0))
        raise BracketError(
            f"off-diagonal product e*c = {prod[bad]:g} at row {bad} is not positive"
        )
    beta = np.sqrt(prod)
    return Tridiagonal(beta, m.diag, beta)


def count_below(m: Tridiagonal, x) -> np.ndarray | int:
    """Number of eigenvalues strictly below ``x`` (scalar or array).

    Counts the negative pivots of the LDL^T factorization of m - x I.
    Exact-zero or underflowing pivots are replaced by -pivmin, as in LAPACK's
    bisection, which keeps the count consistent with "strictly below".
    """
    if not m.is_symmetric:
        raise ValueError("count_below needs a symmetric tridiagonal matrix")
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    b2 = m.sup**2
    pivmin = np.finfo(float).tiny * max(1.0, float(np.max(b2, initial=0.0)))

    count = np.zeros(xs.shape, dtype=int)
    d = m.diag[0] - xs
    d = np.where(np.abs(d) < pivmin, -pivmin, d)
    count += d < 0
    for k in range(1, m.size):
        d = (m.diag[k] - xs) - b2[k - 1] / d
        d = np.where(np.abs(d) < pivmin, -pivmin, d)
        count += d < 0
    return int(count[0]) if scalar else count


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted eigenvalues of the eliminated operator.

    ``bound`` is the Gershgorin magnitude of the operator and ``tol`` the
    relative bracket width used by the bisection.
    """

    eigenvalues: np.ndarray
    grid: Grid | None = field(default=None, repr=False)
    tol: float = 1e-10
    bound: float = 1.0

    def __len__(self):
        return len(self.eigenvalues)

    def __getitem__(self, k):
        return self.eigenvalues[k]


def eigenvalues(m: Tridiagonal, tol: float = 1e-10, count: int | None = None) -> Spectrum:
    """The ``count`` smallest eigenvalues (all by default) by Sturm bisection.

    Each eigenvalue is bracketed to width <= tol * max(1, |lo|, |hi|), where
    [lo, hi] is its current bracket.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    sym = m if m.is_symmetric else symmetrize(m)
    M = sym.size
    K = M if count is None else min(int(count), M)
    if K < 1:
        raise ValueError("count must be at least 1")
    bound = sym.norm_bound()
    if M == 1:
        return Spectrum(np.array(sym.diag[:1]), tol=tol, bound=bound)

    glo, ghi = sym.gershgorin()
    pad = 4 * _EPS * max(1.0, abs(glo), abs(ghi))
    glo -= pad
    ghi += pad
    if count_below(sym, glo) != 0 or count_below(sym, ghi) != M:
        raise BracketError("Gershgorin interval does not enclose the spectrum")

    idx = np.arange(K)
    lo = np.full(K, glo)
    hi = np.full(K, ghi)
    active = np.ones(K, dtype=bool)
    for _ in range(2000):
        width_ok = hi - lo <= tol * np.maximum(1.0, np.maximum(np.abs(lo), np.abs(hi)))
        mid = 0.5 * (lo + hi)
        stuck = (mid <= lo) | (mid >= hi)
        active &= ~(width_ok | stuck)
        if not active.any():
            break
        sel = np.flatnonzero(active)
        c = count_below(sym, mid[sel])
        upper = c > idx[sel]
        hi[sel[upper]] = mid[sel[upper]]
        lo[sel[~upper]] = mid[sel[~upper]]
    else:
        k = int(np.flatnonzero(active)[0])
        raise BracketError(f"bisection did not converge for eigenvalue index {k}")

    lam = 0.5 * (lo + hi)
    gaps = np.diff(lam)
    if np.any(gaps <= 0):
        k = int(np.argmax(gaps <= 0))
        raise BracketError(
            f"eigenvalues {k} and {k + 1} are not separated at tol={tol:g}: "
            f"{lam[k]!r}, {lam[k + 1]!r}"
        )
    return Spectrum(lam, tol=tol, bound=bound)


def _shoot_many(q, mu_, h_a, h_b, lams):
    """Vectorized forward shooting for several spectral parameters.

    Returns samples Y (K, N+1), characteristic values chi (K,) and their
    lambda-derivatives dchi (K,). Rows are rescaled by their running sup-norm
    every 64 steps; each row keeps a common positive scale, so the ratio
    chi/dchi and the sign of chi are unaffected.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    K = len(lams)
    N = len(mu_)
    Y = np.empty((K, N + 1))
    Z = np.empty((K, N + 1))
    Y[:, 0] = 1.0
    Z[:, 0] = 0.0
    yd = np.full(K, h_a)
    zd = np.zeros(K)
    for i in range(N):
        Y[:, i + 1] = Y[:, i] + mu_[i] * yd
        Z[:, i + 1] = Z[:, i] + mu_[i] * zd
        if i <= N - 2:
            w = mu_[i] * (q[i] - lams)
            yd = yd + w * Y[:, i + 1]
            zd = zd + w * Z[:, i + 1] - mu_[i] * Y[:, i + 1]
        if i % 64 == 63:
            s = np.max(np.abs(Y[:, : i + 2]), axis=1)
            Y[:, : i + 2] /= s[:, None]
            Z[:, : i + 2] /= s[:, None]
            yd = yd / s
            zd = zd / s
    # yd and zd now hold y^D(t_{N-1}) and its lambda-derivative
    chi = yd - h_b * Y[:, N - 1]
    dchi = zd - h_b * Z[:, N - 1]
    return Y, chi, dchi


def shoot(problem: SLProblem, grid: Grid, lam: float) -> tuple[float, GridFunction]:
    """Solve the initial value problem y(a) = 1, y^D(a) = h_a at ``lam``.

    Returns chi(lam) = y^D(rho(b)) - h_b y(rho(b)) and the samples y_0..y_N.
    For long grids the samples come back rescaled by a positive factor.
    """
    q = sample_potential(problem, grid).values
    Y, chi, _ = _shoot_many(q, grid.graininess, problem.h_a, problem.h_b, [lam])
    return float(chi[0]), GridFunction(grid, Y[0])


@dataclass(frozen=True, eq=False)
class Eigenpair:
    """Eigenvalue with its sup-normalized eigenfunction on the full grid.

    ``shooting_offset`` is |chi/chi'| at ``lam``: the Newton distance from
    the matrix eigenvalue to the nearest root of the shooting function.
    """

    lam: float
    samples: GridFunction
    zero_count: int
    residual: float
    shooting_offset: float = 0.0


def count_generalized_zeros(samples: GridFunction, grid: Grid | None = None) -> int:
    """Zeros at interior points plus nodes between neighbours, inside (a, b).

    An interior value counts as a zero when it is within ZERO_TOL of the
    larger of its two neighbours; sign changes touching such a point are not
    counted again. The test is local because eigenfunctions can decay by many
    orders of magnitude across a coarse isolated grid without vanishing.
    """
    grid = samples.grid if grid is None else grid
    y = samples.values
    if len(y) != grid.size:
        raise ValueError("samples must cover the whole grid")
    if not np.any(y):
        raise ValueError("cannot count zeros of the zero function")
    ay = np.abs(y)
    small = np.zeros(len(y), dtype=bool)
    small[1:-1] = ay[1:-1] <= ZERO_TOL * np.maximum(ay[:-2], ay[2:])
    zeros = int(np.count_nonzero(small))
    nodes = int(np.count_nonzero((y[:-1] * y[1:] < 0) & ~small[:-1] & ~small[1:]))
    return zeros + nodes


def _residuals(Yn, q, mu_, lams):
    """Max |-y^DD + (q - lam) y^sigma| over the interior equations, per row."""
    yd = np.diff(Yn, axis=1) / mu_
    ydd = np.diff(yd, axis=1) / mu_[:-1]
    N = len(mu_)
    defect = -ydd + (q[None, : N - 1] - lams[:, None]) * Yn[:, 1:N]
    return np.max(np.abs(defect), axis=1)


def _twisted_vectors(m: Tridiagonal, lams: np.ndarray) -> np.ndarray:
    """Null vectors of m - lam I by two-sided elimination (twisted factorization).

    Forward pivots come from shooting down from the first row, backward
    pivots from shooting up from the last; the vector is expanded outward
    from the row where the two meet with the smallest defect. Unlike a purely
    forward recurrence this stays accurate when the eigenfunction decays
    towards either end.
    """
    M = m.size
    K = len(lams)
    c, d, e = m.sub, m.diag, m.sup
    tiny = np.finfo(float).tiny * max(1.0, m.norm_bound())

    def guard(x):
        return np.where(np.abs(x) < tiny, np.where(x < 0, -tiny, tiny), x)

    fwd = np.empty((K, M))
    bwd = np.empty((K, M))
    fwd[:, 0] = guard(d[0] - lams)
    for j in range(1, M):
        fwd[:, j] = guard((d[j] - lams) - c[j - 1] * e[j - 1] / fwd[:, j - 1])
    bwd[:, M - 1] = guard(d[M - 1] - lams)
    for j in range(M - 2, -1, -1):
        bwd[:, j] = guard((d[j] - lams) - e[j] * c[j] / bwd[:, j + 1])
    gamma = fwd + bwd - (d[None, :] - lams[:, None])
    twist = np.argmin(np.abs(gamma), axis=1)

    V = np.zeros((K, M))
    rows = np.arange(K)
    V[rows, twist] = 1.0
    for j in range(M - 2, -1, -1):
        sel = j < twist
        V[sel, j] = -e[j] * V[sel, j + 1] / fwd[sel, j]
    for j in range(1, M):
        sel = j > twist
        V[sel, j] = -c[j - 1] * V[sel, j - 1] / bwd[sel, j]
    return V


def _build_eigenpairs(problem, grid, m, q, lams, fa, fb):
    mu_ = grid.graininess
    N = grid.N
    _, chi, dchi = _shoot_many(q, mu_, problem.h_a, problem.h_b, lams)
    Y = np.empty((len(lams), N + 1))
    Y[:, 1:N] = _twisted_vectors(m, lams)
    # endpoints from the Robin conditions, as in the elimination
    Y[:, 0] = Y[:, 1] / fa
    Y[:, N] = Y[:, N - 1] * fb
    Y /= np.max(np.abs(Y), axis=1)[:, None]
    # fix the sign so that y(a) > 0
    Y *= np.where(Y[:, 0] < 0, -1.0, 1.0)[:, None]
    res = _residuals(Y, q, mu_, lams)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        offset = np.abs(chi / dchi)
    offset = np.where(np.isfinite(offset), offset, np.inf)
    pairs = []
    for k, lam in enumerate(lams):
        f = GridFunction(grid, Y[k])
        pairs.append(
            Eigenpair(float(lam), f, count_generalized_zeros(f), float(res[k]), float(offset[k]))
        )
    return pairs


def residual_limit(lam: float, tol: float, bound: float, npoints: int) -> float:
    """Largest acceptable equation defect for a sup-normalized eigenfunction.

    An eigenvalue error delta leaves a defect in the last equation that grows
    with the number of shooting steps, hence the grid-size factor.
    """
    return RESIDUAL_FACTOR * npoints * (tol * max(1.0, abs(lam)) + _EPS * max(1.0, bound))


def eigenpair(problem: SLProblem, grid: Grid, lam: float, tol: float = 1e-10) -> Eigenpair:
    """Eigenfunction for a converged eigenvalue ``lam``.

    Raises NotAnEigenvalueError when the equation residual exceeds
    :func:`residual_limit`.
    """
    fa, fb = _boundary_factors(problem, grid)
    q = sample_potential(problem, grid).values
    m = assemble(problem, grid)
    bound = m.norm_bound()
    (pair,) = _build_eigenpairs(problem, grid, m, q, np.array([float(lam)]), fa, fb)
    limit = residual_limit(lam, tol, bound, grid.size)
    if not pair.residual <= limit:
        raise NotAnEigenvalueError(
            f"{lam!r} is not an eigenvalue: residual {pair.residual:.3e} > {limit:.3e}"
        )
    return pair


def spectrum(
    problem: SLProblem,
    h: float | None = None,
    tol: float = 1e-10,
    num_eigs: int | None = None,
) -> tuple[Spectrum, list[Eigenpair]]:
    """Realize, assemble, bisect, and recover eigenpairs by shooting.

    Parameters
    ----------
    problem : SLProblem
    h : float, optional
        Dense-segment step; defaults to (b - a) / 1000. Ignored on isolated
        time scales.
    tol : float
        Relative bisection tolerance.
    num_eigs : int, optional
        Compute only the lowest ``num_eigs`` eigenvalues.

    Returns
    -------
    spec : Spectrum
    pairs : list of Eigenpair, aligned with ``spec.eigenvalues``
    """
    h = problem.default_step() if h is None else h
    grid = realize(problem.ts, h)
    m = assemble(problem, grid)
    sym = symmetrize(m)
    spec = eigenvalues(sym, tol, num_eigs)
    spec = Spectrum(spec.eigenvalues, grid=grid, tol=tol, bound=spec.bound)

    fa, fb = _boundary_factors(problem, grid)
    q = sample_potential(problem, grid).values
    pairs = _build_eigenpairs(problem, grid, m, q, spec.eigenvalues, fa, fb)

    for k, pair in enumerate(pairs):
        res_limit = residual_limit(pair.lam, tol, spec.bound, grid.size)
        off_limit = cross_check_limit(pair.lam, tol, spec.bound)
        if not pair.shooting_offset <= off_limit:
            raise CrossCheckError(
                f"eigenvalue {k}: matrix gives {pair.lam!r}, shooting root is "
                f"{pair.shooting_offset:.3e} away (limit {off_limit:.3e})"
            )
        if not pair.residual <= res_limit:
            raise NotAnEigenvalueError(
                f"eigenvalue {k} ({pair.lam!r}): residual {pair.residual:.3e} "
                f"> {res_limit:.3e}"
            )
    return spec, pairs


def cross_check_limit(lam: float, tol: float, bound: float) -> float:
    """Allowed distance between a matrix eigenvalue and the shooting root."""
    return RESIDUAL_FACTOR * (tol * max(1.0, abs(lam)) + _EPS * max(1.0, bound))
