"""Ambarzumyan-type identification checks.

If the first eigenvalue reaches the threshold

    tau = (h_a - h_b + int_a^{rho(b)} q(t) Delta t) / (rho(b) - a),

the potential must be the constant lambda_1. This module evaluates that
hypothesis numerically, together with its Neumann specializations (the
mean-value and negative-eigenvalue corollaries and the isolated-point
max-q variant) and the integral identity behind the argument.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .delta_calculus import (
    delta_derivative,
    delta_integral,
    second_delta_derivative,
    sigma_shift,
)
from .sl_solver import Eigenpair, ProblemError, SLProblem, sample_potential, spectrum
from .timescale import Grid, realize

__all__ = [
    "Verdict",
    "Corollary1",
    "Corollary2",
    "RemarkVerdict",
    "AmbarzumyanReport",
    "FalsificationError",
    "InvariantBreach",
    "verification_tolerance",
    "threshold",
    "theorem1_report",
    "verify_theorem1",
    "verify_corollary1",
    "verify_corollary2",
    "verify_remark",
    "proof_identity_residual",
    "quotient_identity_defect",
]

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    APPLIES = "theorem-applies-q-constant"
    NOT_MET = "hypothesis-not-met"


class Corollary1(str, Enum):
    CONFIRMED = "confirmed"
    MEAN_MISMATCH = "mean-mismatch"


class Corollary2(str, Enum):
    NEGATIVE_FOUND = "negative-eigenvalue-found"
    NOT_APPLICABLE = "not-applicable"


class RemarkVerdict(str, Enum):
    APPLIES = "applies"
    NOT_MET = "hypothesis-not-met"
    NOT_ISOLATED = "not-isolated"


class FalsificationError(AssertionError):
    """A hypothesis held numerically but its conclusion did not."""


class InvariantBreach(RuntimeError):
    pass


def verification_tolerance(tau: float, lambda1: float) -> float:
    return 1e-8 * max(1.0, abs(tau), abs(lambda1))


@dataclass(frozen=True)
class AmbarzumyanReport:
    lambda1: float
    threshold: float
    verdict: Verdict
    q_deviation: float
    proof_residual: float
    ver_tol: float
    # lambda1 - threshold; the argument forces it <= 0 whenever q is not constant
    excess: float = 0.0
    falsified: bool = False
    unexpected_regime: bool = False
    quotient_defect: float = 0.0
    corollary2: Corollary2 | None = None
    remark: RemarkVerdict | None = None
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        out = {
            "lambda1": self.lambda1,
            "threshold": self.threshold,
            "excess": self.excess,
            "verdict": self.verdict.value,
            "q_deviation": self.q_deviation,
            "proof_residual": self.proof_residual,
            "quotient_defect": self.quotient_defect,
            "ver_tol": self.ver_tol,
            "falsified": self.falsified,
            "unexpected_regime": self.unexpected_regime,
            "notes": list(self.notes),
        }
        if self.corollary2 is not None:
            out["corollary2"] = self.corollary2.value
        if self.remark is not None:
            out["remark"] = self.remark.value
        return out


def _require_neumann(problem: SLProblem, what: str):
    if not problem.is_neumann:
        raise ProblemError(f"{what} needs Neumann conditions (h_a = h_b = 0)")


def _equation_q(problem: SLProblem, grid: Grid) -> np.ndarray:
    # q enters the operator only at the equation points t_0 .. t_{N-2}
    return sample_potential(problem, grid).values[: grid.N - 1]


def threshold(problem: SLProblem, grid: Grid) -> float:
    """tau = (h_a - h_b + delta integral of q over [a, rho(b))) / (rho(b) - a)."""
    N = grid.N
    length = grid.rho_b - grid.a
    if N < 2 or not length > 0:
        raise ProblemError("degenerate time scale: a = rho(b)")
    q = sample_potential(problem, grid)
    return (problem.h_a - problem.h_b + delta_integral(q, 0, N - 1)) / length


def _first_pair(problem, h, tol):
    spec, pairs = spectrum(problem, h, tol, num_eigs=1)
    return spec.grid, pairs[0]


def quotient_identity_defect(first: Eigenpair) -> float:
    """Max relative defect of y^DD/y^s = (y^D)^2/(y^s y) + (y^D/y)^D on T^{k^2}."""
    y = first.samples
    if np.any(y.values[:-1] == 0):
        raise InvariantBreach("first eigenfunction vanishes at a grid point")
    yd = delta_derivative(y)
    ys = sigma_shift(y)
    lhs = second_delta_derivative(y) / ys
    ratio = yd / y
    square = (yd * yd) / (ys * y)
    slope = delta_derivative(ratio)
    n = len(slope)
    diff = lhs.values[:n] - square.values[:n] - slope.values[:n]
    scale = np.maximum.reduce(
        [np.ones(n), np.abs(lhs.values[:n]), np.abs(square.values[:n]), np.abs(slope.values[:n])]
    )
    return float(np.max(np.abs(diff) / scale))


def proof_identity_residual(problem: SLProblem, first: Eigenpair, grid: Grid) -> float:
    """|LHS - RHS| of the integrated identity along the first eigenfunction.

    LHS = int_a^{rho(b)} (y^D)^2 / (y^sigma y) Delta t
    RHS = h_a - h_b + int_a^{rho(b)} q Delta t - lambda_1 (rho(b) - a)
    """
    y = first.samples
    N = grid.N
    if np.any(y.values[:N] == 0):
        raise InvariantBreach("first eigenfunction vanishes at a grid point")
    yd = delta_derivative(y)
    integrand = (yd * yd) / (sigma_shift(y) * y)
    lhs = delta_integral(integrand, 0, N - 1)
    q = sample_potential(problem, grid)
    rhs = (
        problem.h_a
        - problem.h_b
        + delta_integral(q, 0, N - 1)
        - first.lam * (grid.rho_b - grid.a)
    )
    return abs(lhs - rhs)


def verify_theorem1(
    problem: SLProblem, h: float | None = None, tol: float = 1e-10
) -> AmbarzumyanReport:
    """Compare lambda_1 with the threshold and report the verdict.

    When the hypothesis holds but q is not within ver_tol of lambda_1 the
    report is marked ``falsified`` and a warning is logged.
    """
    grid, first = _first_pair(problem, h, tol)
    return theorem1_report(problem, grid, first)


def theorem1_report(problem: SLProblem, grid: Grid, first: Eigenpair) -> AmbarzumyanReport:
    """Build the report from an already computed first eigenpair."""
    lam1 = first.lam
    tau = threshold(problem, grid)
    ver_tol = verification_tolerance(tau, lam1)
    q = _equation_q(problem, grid)
    q_dev = float(np.max(np.abs(q - lam1)))
    residual = proof_identity_residual(problem, first, grid)
    qdef = quotient_identity_defect(first)

    notes = []
    applies = lam1 >= tau - ver_tol
    falsified = applies and q_dev > ver_tol
    unexpected = lam1 - tau > ver_tol
    if falsified:
        logger.warning(
            "threshold reached (lambda1=%.17g, tau=%.17g) but q deviates from "
            "lambda1 by %.3e",
            lam1,
            tau,
            q_dev,
        )
        fa = 1.0 + problem.h_a * grid.graininess[0]
        if fa < 0:
            notes.append(
                f"1 + h_a*mu(a) = {fa:.6g} < 0: y(a) and y^sigma(a) have opposite "
                "signs, so the first integrand term is negative"
            )
    if unexpected:
        notes.append(f"lambda1 exceeds the threshold by {lam1 - tau:.3e}")

    return AmbarzumyanReport(
        lambda1=lam1,
        threshold=tau,
        verdict=Verdict.APPLIES if applies else Verdict.NOT_MET,
        q_deviation=q_dev,
        proof_residual=residual,
        ver_tol=ver_tol,
        excess=lam1 - tau,
        falsified=falsified,
        unexpected_regime=unexpected,
        quotient_defect=qdef,
        notes=tuple(notes),
    )


def verify_corollary1(
    problem: SLProblem, h: float | None = None, tol: float = 1e-10
) -> Corollary1:
    """Neumann case: lambda_1 equal to the delta-mean of q forces q == lambda_1."""
    _require_neumann(problem, "corollary1")
    grid, first = _first_pair(problem, h, tol)
    mean = threshold(problem, grid)
    ver_tol = verification_tolerance(mean, first.lam)
    if abs(first.lam - mean) > ver_tol:
        return Corollary1.MEAN_MISMATCH
    q_dev = float(np.max(np.abs(_equation_q(problem, grid) - first.lam)))
    if q_dev > ver_tol:
        raise FalsificationError(
            f"lambda1 = mean(q) = {mean!r} but q deviates from it by {q_dev:.3e}"
        )
    return Corollary1.CONFIRMED


def verify_corollary2(
    problem: SLProblem, h: float | None = None, tol: float = 1e-10
) -> Corollary2:
    """Neumann case: zero-integral nonzero q yields a negative eigenvalue."""
    _require_neumann(problem, "corollary2")
    grid, first = _first_pair(problem, h, tol)
    q = sample_potential(problem, grid)
    integral = delta_integral(q, 0, grid.N - 1)
    ver_tol = verification_tolerance(threshold(problem, grid), first.lam)
    q_max = float(np.max(np.abs(_equation_q(problem, grid))))
    if abs(integral) > ver_tol or q_max <= ver_tol:
        return Corollary2.NOT_APPLICABLE
    if not first.lam < -ver_tol:
        raise FalsificationError(
            f"int q = {integral:.3e}, q != 0, yet lambda1 = {first.lam!r} is not negative"
        )
    return Corollary2.NEGATIVE_FOUND


def verify_remark(problem: SLProblem, tol: float = 1e-10) -> RemarkVerdict:
    """Isolated scales, Neumann: lambda_1 >= max q forces q == lambda_1.

    max q is taken over the equation points, the only values that reach the
    operator. A differing max over all of T is logged.
    """
    _require_neumann(problem, "remark")
    if not problem.ts.is_isolated:
        return RemarkVerdict.NOT_ISOLATED
    grid = realize(problem.ts, 1.0)
    _, first = _first_pair(problem, 1.0, tol)
    q = _equation_q(problem, grid)
    q_all = sample_potential(problem, grid).values
    if np.max(q_all) != np.max(q):
        logger.info(
            "max q over T (%.17g) differs from max over equation points (%.17g)",
            np.max(q_all),
            np.max(q),
        )
    q_max = float(np.max(q))
    ver_tol = verification_tolerance(q_max, first.lam)
    if first.lam < q_max - ver_tol:
        return RemarkVerdict.NOT_MET
    q_dev = float(np.max(np.abs(q - first.lam)))
    if q_dev > ver_tol:
        raise FalsificationError(
            f"lambda1 = {first.lam!r} >= max q = {q_max!r} but q is not constant "
            f"(deviation {q_dev:.3e})"
        )
    return RemarkVerdict.APPLIES
