"""Derivative-free minimization with a full evaluation trace.

Two methods:

* ``cobyla`` — Powell's trust-region method on linear interpolation models
  over a simplex of d+1 points, specialized to the unconstrained case: the
  trust-region step is steepest descent on the model to the radius rho, the
  simplex is repaired by geometry steps when it degenerates, and rho shrinks
  by halving from ``initial_step`` down to ``final_tolerance``.
* ``nelder-mead`` — the standard reflect/expand/contract/shrink simplex
  search, used as an independent cross-check.

Both are deterministic: identical (f, x0, config) gives an identical trace.
The objective is called exactly once per trace entry and evaluation 1 is
always f(x0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import NonFiniteObjectiveError

METHOD_COBYLA = "cobyla"
METHOD_NELDER_MEAD = "nelder-mead"
METHODS = (METHOD_COBYLA, METHOD_NELDER_MEAD)

TERMINATION_CONVERGED = "converged"
TERMINATION_BUDGET = "budget_exhausted"

# Powell's simplex-acceptability and step-length constants.
_ALPHA = 0.25
_BETA = 2.1
_GAMMA = 0.5
_DELTA = 1.1


class TraceEntry(NamedTuple):
    index: int  # 1-based evaluation count
    x: np.ndarray
    value: float


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = METHOD_COBYLA
    max_evals: int = 5000
    initial_step: float = 0.5
    final_tolerance: float = 1e-4
    seed: int = 0  # reserved for stochastic variants; both methods are deterministic

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}, expected one of {METHODS}")
        if self.max_evals < 1:
            raise ValueError(f"need max_evals >= 1, got {self.max_evals}")
        if not (0.0 < self.final_tolerance < self.initial_step):
            raise ValueError(
                f"need 0 < final_tolerance < initial_step, got "
                f"{self.final_tolerance} and {self.initial_step}"
            )


@dataclass
class MinimizeResult:
    x: np.ndarray
    value: float
    trace: list[TraceEntry] = field(repr=False)
    termination: str = TERMINATION_CONVERGED


class _BudgetExhausted(Exception):
    pass


class _Recorder:
    """Wraps the objective: budget check, trace append, finiteness check."""

    def __init__(self, f: Callable, max_evals: int):
        self._f = f
        self._max = max_evals
        self.trace: list[TraceEntry] = []

    def __call__(self, x: np.ndarray) -> float:
        if len(self.trace) >= self._max:
            raise _BudgetExhausted
        xs = np.array(x, dtype=np.float64, copy=True)
        value = float(self._f(xs))
        self.trace.append(TraceEntry(len(self.trace) + 1, xs, value))
        if not math.isfinite(value):
            raise NonFiniteObjectiveError(
                f"objective returned {value} at evaluation {len(self.trace)}",
                list(self.trace),
            )
        return value


def minimize(f: Callable, x0, cfg: OptimizerConfig) -> MinimizeResult:
    """Minimize f over d >= 1 reals from x0 under the given budget."""
    x0 = np.asarray(x0, dtype=np.float64).ravel()
    if x0.size == 0:
        raise ValueError("need at least one variable")
    rec = _Recorder(f, cfg.max_evals)
    try:
        if cfg.method == METHOD_COBYLA:
            _cobyla(rec, x0, cfg.initial_step, cfg.final_tolerance)
        else:
            _nelder_mead(rec, x0, cfg.initial_step, cfg.final_tolerance)
        termination = TERMINATION_CONVERGED
    except _BudgetExhausted:
        termination = TERMINATION_BUDGET
    best = min(range(len(rec.trace)), key=lambda i: rec.trace[i].value)
    entry = rec.trace[best]
    return MinimizeResult(
        x=entry.x.copy(), value=entry.value, trace=rec.trace, termination=termination
    )


# --- COBYLA (unconstrained) --------------------------------------------------


def _replace_vertex(sim, simi, jdrop, dx):
    """Swap simplex vertex jdrop for pole+dx, rank-one-updating the inverse."""
    w = simi @ dx
    simi[jdrop, :] /= w[jdrop]
    coef = w.copy()
    coef[jdrop] = 0.0
    simi -= np.outer(coef, simi[jdrop, :])
    sim[:, jdrop] = dx


def _cobyla(call, x0, rhobeg, rhoend):
    n = x0.size
    rho = rhobeg
    sim = np.zeros((n, n + 1))
    sim[:, n] = x0
    for i in range(n):
        sim[i, i] = rho
    simi = np.eye(n) / rho
    fval = np.zeros(n + 1)

    # Initial simplex: pole first, then one vertex per coordinate; a vertex
    # that beats the pole is swapped into the pole position as we go.
    fval[n] = call(sim[:, n])
    for j in range(n):
        x = sim[:, n].copy()
        x[j] += rho
        f = call(x)
        if fval[n] <= f:
            fval[j] = f
        else:
            fval[j] = fval[n]
            fval[n] = f
            sim[j, n] = x[j]
            for k in range(j + 1):
                sim[j, k] = -rho
                simi[j, k] = -simi[k : j + 1, k].sum()

    ibrnch = True  # take a trust-region step next; False lets geometry run first
    identity = np.eye(n)
    while True:
        # Switch the best vertex into the pole position.
        nbest = n
        phimin = fval[n]
        for j in range(n):
            if fval[j] < phimin:
                phimin = fval[j]
                nbest = j
        if nbest != n:
            fval[nbest], fval[n] = fval[n], fval[nbest]
            d = sim[:, nbest].copy()
            sim[:, nbest] = 0.0
            sim[:, n] += d
            sim[:, :n] -= d[:, None]
            simi[nbest, :] = -simi.sum(axis=0)

        # Stop if rounding has made the inverse untrustworthy.
        err = float(np.max(np.abs(simi @ sim[:, :n] - identity)))
        if not err <= 0.1:
            return  # damaging rounding: fall back to the best point seen

        # Linear interpolation model of f around the pole.
        g = (fval[:n] - fval[n]) @ simi
        parsig = _ALPHA * rho
        pareta = _BETA * rho
        vsig = 1.0 / np.sqrt((simi**2).sum(axis=1))
        veta = np.sqrt((sim[:, :n] ** 2).sum(axis=0))
        acceptable = bool(np.all(vsig >= parsig) and np.all(veta <= pareta))

        if not ibrnch and not acceptable:
            # Geometry step: rebuild the worst-conditioned vertex at distance
            # _GAMMA*rho from the pole, on the model's descent side.
            jdrop = None
            temp = pareta
            for j in range(n):
                if veta[j] > temp:
                    jdrop = j
                    temp = veta[j]
            if jdrop is None:
                for j in range(n):
                    if vsig[j] < temp:
                        jdrop = j
                        temp = vsig[j]
            dx = (_GAMMA * rho * vsig[jdrop]) * simi[jdrop, :]
            if float(g @ dx) > 0.0:
                dx = -dx
            _replace_vertex(sim, simi, jdrop, dx)
            fval[jdrop] = call(sim[:, n] + dx)
            ibrnch = True
            continue

        # Trust-region step: steepest descent on the model to radius rho.
        ibrnch = True
        gnorm = float(np.sqrt(g @ g))
        if gnorm > 0.0:
            dx = (-rho / gnorm) * g
            f = call(sim[:, n] + dx)
            prerem = -float(g @ dx)  # predicted reduction, > 0
            trured = fval[n] - f  # actual reduction
            if f == fval[n]:
                prerem = 0.0
                trured = 0.0
            # Choose the vertex to replace with the trial point: mandatory on
            # improvement, otherwise only when the trial point dominates a
            # vertex in barycentric weight; a far-out vertex overrides.
            weights = simi @ dx
            ratio = 1.0 if trured <= 0.0 else 0.0
            jdrop = None
            for j in range(n):
                t = abs(float(weights[j]))
                if t > ratio:
                    jdrop = j
                    ratio = t
            sigbar = np.abs(weights) * vsig
            edgmax = _DELTA * rho
            far = None
            for j in range(n):
                if sigbar[j] >= parsig or sigbar[j] >= vsig[j]:
                    if trured > 0.0:
                        t = float(np.sqrt(((dx - sim[:, j]) ** 2).sum()))
                    else:
                        t = float(veta[j])
                    if t > edgmax:
                        far = j
                        edgmax = t
            if far is not None:
                jdrop = far
            if jdrop is not None:
                _replace_vertex(sim, simi, jdrop, dx)
                fval[jdrop] = f
                if trured > 0.0 and trured >= 0.1 * prerem:
                    continue  # successful step: stay at this rho

        # The step failed (or the model is flat).  Repair geometry if it is
        # poor; otherwise tighten rho, terminating once it reaches the floor.
        if not acceptable:
            ibrnch = False
            continue
        if rho > rhoend:
            rho *= 0.5
            if rho <= 1.5 * rhoend:
                rho = rhoend
            continue
        return


# --- Nelder-Mead --------------------------------------------------------------


def _nelder_mead(call, x0, step, tol):
    n = x0.size
    sim = np.empty((n + 1, n))
    fv = np.empty(n + 1)
    sim[0] = x0
    fv[0] = call(sim[0])
    for i in range(n):
        sim[i + 1] = x0
        sim[i + 1, i] += step
        fv[i + 1] = call(sim[i + 1])

    while True:
        order = np.argsort(fv, kind="stable")
        sim = sim[order]
        fv = fv[order]
        if float(np.max(np.abs(sim[1:] - sim[0]))) <= tol:
            return
        centroid = sim[:-1].mean(axis=0)
        xr = centroid + (centroid - sim[-1])
        fr = call(xr)
        if fr < fv[0]:
            xe = centroid + 2.0 * (xr - centroid)
            fe = call(xe)
            if fe < fr:
                sim[-1], fv[-1] = xe, fe
            else:
                sim[-1], fv[-1] = xr, fr
        elif fr < fv[-2]:
            sim[-1], fv[-1] = xr, fr
        else:
            shrink = False
            if fr < fv[-1]:
                xc = centroid + 0.5 * (xr - centroid)
                fc = call(xc)
                if fc <= fr:
                    sim[-1], fv[-1] = xc, fc
                else:
                    shrink = True
            else:
                xc = centroid - 0.5 * (centroid - sim[-1])
                fc = call(xc)
                if fc < fv[-1]:
                    sim[-1], fv[-1] = xc, fc
                else:
                    shrink = True
            if shrink:
                for i in range(1, n + 1):
                    sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                    fv[i] = call(sim[i])
