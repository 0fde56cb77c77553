"""Adaptive Gauss-Legendre panel integration for complex-valued integrands.

Panels refine by bisection; a panel is accepted when its whole-vs-halves
discrepancy fits its proportional share of the absolute error budget.  The
accepted contributions are summed in interval order, so the result does not
depend on how many worker threads evaluated the panels.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from .errors import ToleranceNotMet

_leggauss_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _leggauss_cache:
        _leggauss_cache[n] = np.polynomial.legendre.leggauss(n)
    return _leggauss_cache[n]


def panel_nodes(a: float, b: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(order)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def gl_panel(f_batch: Callable[[np.ndarray], np.ndarray], a: float, b: float, order: int) -> complex:
    nodes, weights = panel_nodes(a, b, order)
    return complex(np.sum(weights * f_batch(nodes)))


def adaptive_complex(
    f_batch: Callable[[np.ndarray], np.ndarray],
    edges: Sequence[float],
    abs_tol: float,
    *,
    order: int = 24,
    max_depth: int = 16,
    threads: int = 1,
    eval_budget: int = 50_000_000,
) -> tuple[complex, float, int]:
    """Integrate f over the partition given by edges.

    Returns (value, error_estimate, evaluation_count).  Raises
    ToleranceNotMet when the budget runs out before the estimate fits.
    """
    edges = list(edges)
    total_width = edges[-1] - edges[0]
    if total_width <= 0:
        return 0.0 + 0.0j, 0.0, 0
    panels = [(edges[i], edges[i + 1], 0) for i in range(len(edges) - 1) if edges[i + 1] > edges[i]]
    accepted: list[tuple[float, complex]] = []
    achieved = 0.0
    n_evals = 0
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None

    def assess(panel):
        a, b, depth = panel
        mid = 0.5 * (a + b)
        whole = gl_panel(f_batch, a, b, order)
        halves = gl_panel(f_batch, a, mid, order) + gl_panel(f_batch, mid, b, order)
        return a, b, depth, whole, halves

    try:
        while panels:
            if pool is not None and len(panels) > 1:
                results = list(pool.map(assess, panels))
            else:
                results = [assess(p) for p in panels]
            n_evals += 3 * order * len(panels)
            if n_evals > eval_budget:
                raise ToleranceNotMet(
                    f"evaluation budget {eval_budget} exhausted", achieved=float("inf")
                )
            panels = []
            for a, b, depth, whole, halves in results:
                err = abs(whole - halves)
                share = abs_tol * (b - a) / total_width
                if err <= share or depth >= max_depth:
                    accepted.append((a, halves))
                    achieved += err
                else:
                    mid = 0.5 * (a + b)
                    panels.append((a, mid, depth + 1))
                    panels.append((mid, b, depth + 1))
    finally:
        if pool is not None:
            pool.shutdown()

    if achieved > abs_tol:
        raise ToleranceNotMet(
            f"achieved error estimate {achieved:.3g} exceeds tolerance {abs_tol:.3g}",
            achieved=achieved,
        )
    accepted.sort(key=lambda item: item[0])
    value = complex(sum(v for _, v in accepted))
    return value, achieved, n_evals


def uniform_edges(a: float, b: float, n_panels: int) -> np.ndarray:
    return np.linspace(a, b, max(1, n_panels) + 1)
