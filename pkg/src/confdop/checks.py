"""Randomized property suites behind the `check` CLI command.

Each suite samples admissible inputs (parameter scaled so the flow never
approaches the singular surface), measures the worst violation of the
property it guards, and reports pass/fail against a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conformal import (
    Event,
    GroupParameter,
    differential_map,
    flow_oracle,
    hill_transform,
    interval_scale,
    line_element_squared,
    transform_finite,
)

SUITES = ("group", "oracle", "hill", "metric")

DEFAULT_TOLERANCES = {
    "group": 1e-12,
    "oracle": 1e-9,
    "hill": 1.9,  # minimum empirical convergence order, not an error bound
    "metric": 1e-12,
}

DEFAULT_CASES = {"group": 10_000, "oracle": 100, "hill": 0, "metric": 10_000}


@dataclass
class SuiteResult:
    name: str
    cases: int
    metric_name: str
    observed: float
    tol: float
    passed: bool
    worst_case: str

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"suite={self.name} cases={self.cases} {self.metric_name}={self.observed:.3e} "
            f"tol={self.tol:g} {status} | worst case: {self.worst_case}"
        )


def _sample_event(rng) -> tuple[float, float]:
    r = rng.uniform(0.05, 2.0)
    x4 = rng.uniform(-2.0, 2.0)
    return r, x4


def _scaled_beta(rng, r: float, x4: float, budget: float) -> float:
    # keeps |beta*(|x4| + r)| <= budget so the whole flow stays admissible
    return rng.uniform(-1.0, 1.0) * budget / (r + abs(x4))


def _rel_err(a: Event, b: Event) -> float:
    scale = max(a.r + abs(a.x4), b.r + abs(b.x4), 1e-30)
    return max(abs(a.r - b.r), abs(a.x4 - b.x4)) / scale


def run_group_suite(cases: int, tol: float, seed: int) -> SuiteResult:
    """Composition law: applying beta2 then beta1 equals applying beta1+beta2."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_case = ""
    for _ in range(cases):
        r, x4 = _sample_event(rng)
        b1 = _scaled_beta(rng, r, x4, 0.15)
        b2 = _scaled_beta(rng, r, x4, 0.15)
        e = Event(r=r, x4=x4)
        via_two = transform_finite(GroupParameter(b1), transform_finite(GroupParameter(b2), e))
        direct = transform_finite(GroupParameter(b1 + b2), e)
        err = _rel_err(via_two, direct)
        if err > worst:
            worst = err
            worst_case = f"r={r:.6g} x4={x4:.6g} b1={b1:.6g} b2={b2:.6g}"
    return SuiteResult("group", cases, "max_rel_err", worst, tol, worst <= tol, worst_case)


def run_oracle_suite(cases: int, tol: float, seed: int, steps: int = 5000) -> SuiteResult:
    """Closed form against RK4 integration of the generating flow."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_case = ""
    for _ in range(cases):
        r, x4 = _sample_event(rng)
        b = _scaled_beta(rng, r, x4, 0.3)
        e = Event(r=r, x4=x4)
        p = GroupParameter(b)
        err = _rel_err(transform_finite(p, e), flow_oracle(p, e, steps=steps))
        if err > worst:
            worst = err
            worst_case = f"r={r:.6g} x4={x4:.6g} beta4={b:.6g}"
    return SuiteResult("oracle", cases, "max_rel_err", worst, tol, worst <= tol, worst_case)


def hill_deviation(p: GroupParameter, grid) -> float:
    """Max relative mismatch between the first-order map and the finite one."""
    worst = 0.0
    for r, t in grid:
        x4 = p.c * t
        fin = transform_finite(p, Event(r=r, x4=x4))
        hr, ht = hill_transform(p, r, t)
        scale = r + abs(x4)
        worst = max(worst, max(abs(fin.r - hr), abs(fin.x4 - p.c * ht)) / scale)
    return worst


def hill_grid() -> list[tuple[float, float]]:
    radii = (1e7, 1e8, 5e8, 1e9)
    times = (-30.0, -10.0, 10.0, 30.0)
    return [(r, t) for r in radii for t in times]


def run_hill_suite(min_order: float = 1.9, alpha0: float = 1e-4) -> SuiteResult:
    """Empirical convergence order of the first-order map under alpha halving."""
    grid = hill_grid()
    devs = [hill_deviation(GroupParameter.from_alpha(alpha0 / 2**k), grid) for k in range(4)]
    orders = [math.log2(devs[k] / devs[k + 1]) for k in range(3)]
    observed = min(orders)
    detail = "orders per halving: " + ", ".join(f"{o:.4f}" for o in orders)
    return SuiteResult("hill", len(grid), "min_order", observed, min_order, observed >= min_order, detail)


def run_metric_suite(cases: int, tol: float, seed: int) -> SuiteResult:
    """Line-element rescaling: ds'^2 = gamma^2 * ds^2, null mapping to null.

    Errors are measured against the displacement magnitude scale
    gamma^2*(dr^2 + dx4^2), since ds^2 itself can cancel to zero.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_case = ""
    for i in range(cases):
        r, x4 = _sample_event(rng)
        b = _scaled_beta(rng, r, x4, 0.3)
        e = Event(r=r, x4=x4)
        p = GroupParameter(b)
        dr = rng.uniform(-1.0, 1.0)
        if i % 10 == 0:
            dx4 = -dr  # exact null displacement
        else:
            dx4 = rng.uniform(-1.0, 1.0)
        g2 = interval_scale(p, e)
        drp, dx4p = differential_map(p, e, dr, dx4)
        lhs = line_element_squared(drp, dx4p)
        rhs = g2 * line_element_squared(dr, dx4)
        scale = g2 * (dr * dr + dx4 * dx4)
        err = abs(lhs - rhs) / scale
        if err > worst:
            worst = err
            worst_case = f"r={r:.6g} x4={x4:.6g} beta4={b:.6g} dr={dr:.6g} dx4={dx4:.6g}"
    return SuiteResult("metric", cases, "max_scaled_err", worst, tol, worst <= tol, worst_case)


def run_suite(name: str, tol: float | None, seed: int, cases: int | None) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    tol = DEFAULT_TOLERANCES[name] if tol is None else tol
    cases = DEFAULT_CASES[name] if cases is None else cases
    if name == "group":
        return run_group_suite(cases, tol, seed)
    if name == "oracle":
        return run_oracle_suite(cases, tol, seed)
    if name == "hill":
        return run_hill_suite(min_order=tol)
    return run_metric_suite(cases, tol, seed)
