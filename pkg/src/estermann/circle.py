"""Arc decomposition of the counting integral and its main-term models.

The count J_c(N, H) equals the integral over [-1/2, 1/2] of
F(alpha) * e(-alpha*N), where F is the product of the two prime-window sums
and the floor-power window sum.  The interval splits at kappa = (ln N)^2/(2cH)
into a major arc [-kappa, kappa] and two minor arcs.  In exact mode F is the
product of the boundary-inclusive window sums, so the three arc integrals
must add up to the integer count; exact_convolution_count provides that
integer without any quadrature as the cross-check.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .counting import (
    DEFAULT_MEM_ENTRIES,
    admissible_floor_values,
    fast_count,
    window_primes,
)
from .errors import MemoryBudgetExceeded
from .expsums import PhaseReducer, approx_prime_sum, approx_S_c, cis
from .instance import DerivedParams, ProblemInstance, derive_params
from .quadrature import adaptive_complex, uniform_edges

_TWO_PI = 2.0 * math.pi
_PERIODS_PER_PANEL = 4.0
_PANEL_ORDER = 32


class ExactIntegrand:
    """F(alpha) * e(-alpha*N) with F the product of the three window sums.

    Window data is sieved once; each alpha then costs three vectorized
    phase sums.  Every float node is the dyadic rational given by its bit
    pattern; when alpha*v_max is too large for a plain double product to
    keep 1e-10 mod-1 accuracy, phases reduce exactly for that rational via
    64-bit modular arithmetic (the PhaseReducer contract, inlined here for
    the quadrature hot path).
    """

    _DIRECT_LIMIT = float(1 << 20)

    def __init__(self, inst: ProblemInstance):
        self.inst = inst
        self.p1 = window_primes(inst, 1)
        self.p2 = window_primes(inst, 2)
        self.n_range, self.values = admissible_floor_values(inst)
        self._arrays = [np.asarray(a, dtype=np.int64) for a in (self.p1, self.p2, self.values)]
        self._f64 = [a.astype(np.float64) for a in self._arrays]
        self._u64 = [a.astype(np.uint64) for a in self._arrays]
        self._vmax = max((int(a.max()) for a in self._arrays if a.size), default=0)

    def is_empty(self) -> bool:
        return any(a.size == 0 for a in self._arrays)

    def max_frequency(self) -> float:
        """Largest |p1 + p2 + v - N| over the attainable support."""
        if self.is_empty():
            return 1.0
        smin = int(self.p1[0] + self.p2[0] + self.values.min())
        smax = int(self.p1[-1] + self.p2[-1] + self.values.max())
        return float(max(abs(smin - self.inst.N), abs(smax - self.inst.N), 1))

    def _sums(self, a: float) -> tuple[complex, complex, complex, complex]:
        """The three window sums at alpha = a, and e(-a*N)."""
        if abs(a) * max(self._vmax, self.inst.N) <= self._DIRECT_LIMIT:
            w = _TWO_PI * a
            sums = []
            for arr in self._f64:
                theta = w * arr
                sums.append(complex(np.cos(theta).sum(), np.sin(theta).sum()))
            eN = cis((a * self.inst.N) % 1.0).conjugate()
            return sums[0], sums[1], sums[2], eN
        r = PhaseReducer(a)
        sums = []
        for arr in self._arrays:
            theta = _TWO_PI * r.frac(arr)
            sums.append(complex(np.cos(theta).sum(), np.sin(theta).sum()))
        return sums[0], sums[1], sums[2], cis(r.frac_int(self.inst.N)).conjugate()

    def __call__(self, alphas: np.ndarray) -> np.ndarray:
        out = np.empty(len(alphas), dtype=complex)
        if self.is_empty():
            out[:] = 0
            return out
        for i, a in enumerate(alphas):
            s1, s2, s3, eN = self._sums(float(a))
            out[i] = s1 * s2 * s3 * eN
        return out


class ModelIntegrand:
    """Product of the three closed-form approximants, times e(-alpha*N)."""

    def __init__(self, inst: ProblemInstance, dp: DerivedParams):
        self.inst = inst
        self.h3 = float(dp.h3)
        self.centers = [float(inst.mu_N(k)) for k in (1, 2, 3)]
        self.log_mu = [math.log(c) for c in self.centers[:2]]

    def __call__(self, alphas: np.ndarray) -> np.ndarray:
        a = np.asarray(alphas, dtype=np.float64)
        H = self.inst.H
        z = 2.0 * np.pi * a * H
        small = np.abs(z) < 1e-4
        zsafe = np.where(small, 1.0, z)
        s = np.where(small, 1.0 - z * z / 6.0, np.sin(zsafe) / zsafe)
        amp = (2.0 * H) ** 2 * self.h3 * s ** 3 / (self.log_mu[0] * self.log_mu[1])
        phase = np.mod(a * self.centers[0], 1.0)
        phase += np.mod(a * self.centers[1], 1.0)
        phase += np.mod(a * self.centers[2], 1.0)
        phase -= np.mod(a * self.inst.N, 1.0)
        return amp * np.exp(2j * np.pi * phase)


def integrand_F(alpha: float, inst: ProblemInstance, mode: str = "exact") -> complex:
    """Single-point evaluation of the arc integrand F(alpha)*e(-alpha*N)."""
    if mode == "exact":
        return complex(ExactIntegrand(inst)(np.array([alpha]))[0])
    if mode == "model":
        dp = derive_params(inst)
        a = float(alpha)
        s1 = approx_prime_sum(a, float(dp.n1), inst.H, inst.mu[0], inst.N)
        s2 = approx_prime_sum(a, float(dp.n2), inst.H, inst.mu[1], inst.N)
        s3 = approx_S_c(a, dp, inst.c, form="sinc")
        r = PhaseReducer(a)
        return s1 * s2 * s3 * cis(r.frac_int(inst.N)).conjugate()
    raise ValueError(f"unknown mode {mode!r}")


def exact_convolution_count(
    inst: ProblemInstance, *, mem_entries: int = DEFAULT_MEM_ENTRIES
) -> int:
    """The count as the N-th coefficient of the indicator-product series.

    The two prime indicators are convolved exactly in int64; the result is
    then summed against the floor-power value list.  No quadrature, no
    floating point.
    """
    p1 = window_primes(inst, 1)
    p2 = window_primes(inst, 2)
    _, values = admissible_floor_values(inst)
    if len(p1) == 0 or len(p2) == 0 or len(values) == 0:
        return 0
    lo1, hi1 = int(p1[0]), int(p1[-1])
    lo2, hi2 = int(p2[0]), int(p2[-1])
    span1, span2 = hi1 - lo1 + 1, hi2 - lo2 + 1
    if span1 + span2 > mem_entries:
        raise MemoryBudgetExceeded(
            f"convolution span {span1}+{span2} exceeds budget {mem_entries}"
        )
    ind1 = np.zeros(span1, dtype=np.int64)
    ind1[p1 - lo1] = 1
    ind2 = np.zeros(span2, dtype=np.int64)
    ind2[p2 - lo2] = 1
    pair_counts = np.convolve(ind1, ind2)  # exact: int64 in, int64 out
    base = lo1 + lo2
    total = 0
    for v in values:
        idx = inst.N - int(v) - base
        if 0 <= idx < len(pair_counts):
            total += int(pair_counts[idx])
    return total


@dataclass(frozen=True)
class ArcReport:
    """Numeric arc integrals alongside the exact count and the main terms."""

    mode: str
    tol: float
    kappa: float
    arc_split: bool  # False: kappa >= 1/2, single full-interval integral
    I_major: complex
    I_minor_plus: complex
    I_minor_minus: complex
    exact_total: int
    model_major: float
    main_term: float
    additivity_error: float
    ratio_exact_to_main: Optional[float]
    ratio_major_to_model: Optional[float]
    achieved_error: float
    n_evals: int

    @property
    def arc_sum(self) -> complex:
        return self.I_major + self.I_minor_plus + self.I_minor_minus

    def to_json(self) -> str:
        def c2l(z: complex):
            return [z.real, z.imag]

        return json.dumps(
            {
                "mode": self.mode,
                "tol": self.tol,
                "kappa": self.kappa,
                "arc_split": self.arc_split,
                "I_major": c2l(self.I_major),
                "I_minor_plus": c2l(self.I_minor_plus),
                "I_minor_minus": c2l(self.I_minor_minus),
                "exact_total": self.exact_total,
                "model_major": self.model_major,
                "main_term": self.main_term,
                "additivity_error": self.additivity_error,
                "ratio_exact_to_main": self.ratio_exact_to_main,
                "ratio_major_to_model": self.ratio_major_to_model,
                "achieved_error": self.achieved_error,
                "n_evals": self.n_evals,
            },
            indent=2,
        )


def model_major_value(inst: ProblemInstance, dp: Optional[DerivedParams] = None) -> float:
    """Closed-form major-arc value 3*H*H3 / (2 ln(mu1 N) ln(mu2 N))."""
    if dp is None:
        dp = derive_params(inst)
    return (
        3.0
        * inst.H
        * float(dp.h3)
        / (2.0 * math.log(inst.mu_N(1)) * math.log(inst.mu_N(2)))
    )


def main_term_value(inst: ProblemInstance) -> float:
    """Asymptotic main term 3*H^2 / (c * (mu3 N)^(1 - 1/c) * (ln N)^2)."""
    L = math.log(inst.N)
    cf = float(inst.c)
    mu3N = float(inst.mu_N(3))
    return 3.0 * inst.H ** 2 / (cf * mu3N ** (1.0 - 1.0 / cf) * L * L)


def _graded_edges(
    a: float, b: float, origin: str, base: float, H: int, cap: float = 32.0
) -> list[float]:
    """Edges on [a, b] with width growing like 1 + 2H*dist from one endpoint.

    Matches the sinc oscillation scale 1/(2H) near the arc boundary and
    coarsens (capped) where the envelope has decayed; the adaptive pass
    re-splits any panel the grading left too wide.
    """
    if origin == "left":
        edges = [a]
        x = a
        while x < b:
            w = base * min(1.0 + 2.0 * H * (x - a), cap)
            x = min(b, x + w)
            edges.append(x)
        return edges
    rev = [b]
    x = b
    while x > a:
        w = base * min(1.0 + 2.0 * H * (b - x), cap)
        x = max(a, x - w)
        rev.append(x)
    return rev[::-1]


def integrate_arcs(
    inst: ProblemInstance,
    mode: str = "exact",
    tol: float = 1e-6,
    *,
    threads: int = 1,
    mem_entries: int = DEFAULT_MEM_ENTRIES,
) -> ArcReport:
    """Quadrature of F(alpha)e(-alpha N) over the major and two minor arcs.

    Exact mode also computes the convolution count, whose agreement with
    Re(sum of the three integrals) is the additivity cross-check.  When
    kappa >= 1/2 there is no arc separation: the full interval is reported
    as I_major and the minor integrals are zero.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    dp = derive_params(inst)
    kappa = float(dp.kappa)

    if mode == "exact":
        integrand = ExactIntegrand(inst)
        fmax = integrand.max_frequency()
        exact_total = exact_convolution_count(inst, mem_entries=mem_entries)
    elif mode == "model":
        integrand = ModelIntegrand(inst, dp)
        fmax = 3.0 * max(inst.H, 1)
        exact_total = fast_count(inst, mem_entries=mem_entries).total
    else:
        raise ValueError(f"unknown mode {mode!r}")

    peak = abs(complex(integrand(np.array([0.0]))[0]))
    scale = max(peak, 1.0)
    split = kappa < 0.5

    def run(a: float, b: float, edges) -> tuple[complex, float, int]:
        if b <= a:
            return 0j, 0.0, 0
        return adaptive_complex(
            integrand,
            edges,
            abs_tol=tol * scale * (b - a),
            order=_PANEL_ORDER,
            threads=threads,
        )

    width = _PERIODS_PER_PANEL / fmax
    if split:
        major_edges = uniform_edges(-kappa, kappa, int(math.ceil(2 * kappa / width)))
        if mode == "model":
            plus_edges = _graded_edges(kappa, 0.5, "left", width, inst.H)
            minus_edges = _graded_edges(-0.5, -kappa, "right", width, inst.H)
        else:
            # the exact integrand keeps full bandwidth on the minor arcs
            plus_edges = uniform_edges(kappa, 0.5, int(math.ceil((0.5 - kappa) / width)))
            minus_edges = uniform_edges(-0.5, -kappa, int(math.ceil((0.5 - kappa) / width)))
        I_major, e1, n1 = run(-kappa, kappa, major_edges)
        I_plus, e2, n2 = run(kappa, 0.5, plus_edges)
        I_minus, e3, n3 = run(-0.5, -kappa, minus_edges)
    else:
        I_major, e1, n1 = run(-0.5, 0.5, uniform_edges(-0.5, 0.5, int(math.ceil(1.0 / width))))
        I_plus = I_minus = 0j
        e2 = e3 = 0.0
        n2 = n3 = 0

    arc_sum = I_major + I_plus + I_minus
    main_term = main_term_value(inst)
    model_major = model_major_value(inst, dp)
    return ArcReport(
        mode=mode,
        tol=tol,
        kappa=kappa,
        arc_split=split,
        I_major=I_major,
        I_minor_plus=I_plus,
        I_minor_minus=I_minus,
        exact_total=exact_total,
        model_major=model_major,
        main_term=main_term,
        additivity_error=abs(arc_sum.real - exact_total),
        ratio_exact_to_main=(exact_total / main_term) if main_term > 0 else None,
        ratio_major_to_model=(I_major.real / model_major) if model_major > 0 else None,
        achieved_error=e1 + e2 + e3,
        n_evals=n1 + n2 + n3,
    )


def sine_power_integral(n: int, m: int = 1) -> float:
    """Closed form of the improper integral of sin(m u)^n / u^n over [0, inf)."""
    total = 0
    for j in range((n + 1) // 2):
        if n - 2 * j <= 0:
            break
        total += (-1) ** j * math.comb(n, j) * (n - 2 * j) ** (n - 1)
    return math.pi * m ** (n - 1) * total / (2 ** n * math.factorial(n - 1))


def _sin3_over_u3(u: np.ndarray) -> np.ndarray:
    """sin(u)^3 / u^3 with the u -> 0 limit handled by series."""
    u = np.asarray(u, dtype=np.float64)
    small = np.abs(u) < 1e-3
    safe = np.where(small, 1.0, u)
    direct = (np.sin(safe) / safe) ** 3
    u2 = u * u
    series = 1.0 - 0.5 * u2 + (13.0 / 120.0) * u2 * u2
    return np.where(small, series, direct)


def sin3_integral(T: float, *, rel_tol: float = 1e-10) -> float:
    """integral of sin(u)^3/u^3 du over [0, T] by adaptive panels."""
    if T <= 0:
        return 0.0
    n_panels = max(4, int(math.ceil(T / math.pi)))
    value, _err, _n = adaptive_complex(
        lambda u: _sin3_over_u3(u).astype(complex),
        uniform_edges(0.0, T, n_panels),
        abs_tol=rel_tol * max(T, 1.0),
        order=16,
    )
    return value.real


@dataclass(frozen=True)
class SingularIntegralJ:
    """J(H) over [-kappa, kappa], its 3H^2 limit, and the cut-off tail bound."""

    value: float
    reference: float  # 3 H^2, the kappa -> infinity limit
    tail_bound: float


# Integrating sin^3(u)/u^3 panel-by-panel past this point is pointless: the
# remaining tail is below 5e-11 of the integral and the analytic bound covers
# it.
_SIN3_CUTOFF = 1.0e5


def singular_integral_J(H: float, kappa: float, *, rel_tol: float = 1e-10) -> SingularIntegralJ:
    """J(H) = integral over [-kappa, kappa] of sin^3(2 pi alpha H)/(pi alpha)^3.

    Substituting u = 2 pi alpha H gives (8 H^2 / pi) * integral of
    sin^3(u)/u^3 over [0, 2 pi kappa H]; the integrand tends to 1 (so the
    original integrand tends to 8 H^3) at the origin.
    """
    if H <= 0 or kappa <= 0:
        raise ValueError("singular_integral_J requires H > 0 and kappa > 0")
    T = 2.0 * math.pi * kappa * H
    T_eff = min(T, _SIN3_CUTOFF)
    core = sin3_integral(T_eff, rel_tol=rel_tol)
    # |integral beyond T_eff| <= integral of u^-3 = 1/(2 T_eff^2), scaled.
    tail = (8.0 * H * H / math.pi) * 0.5 / (T_eff * T_eff) if T > T_eff else 0.0
    value = (8.0 * H * H / math.pi) * core
    return SingularIntegralJ(value=value, reference=3.0 * H * H, tail_bound=tail)
