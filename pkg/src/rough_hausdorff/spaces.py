"""Numerical evaluators for the weighted norms: L^q, central Morrey, Herz,
Morrey-Herz, and the two-weight Morrey / Herz / Morrey-Herz variants.

Conventions shared by every evaluator:

  * Z-indexed dyadic sums are truncated to a window [k_min, k_max]; tail
    bounds come from geometric fits of the last two shell terms on each
    side, and a norm is reported divergent (rather than silently truncated)
    when those terms fail to decay.
  * Continuous suprema over radii R > 0 run on the quarter-dyadic grid
    R = 2^(j/4); a supremand still climbing at the window edge is likewise
    reported divergent.
  * Separable functions factor exactly into (radial integral) x (sphere
    integral), and the sphere factor is computed once per norm.

q < 1 is rejected: the shell norms would only be quasi-norms and every
boundedness statement exercised here assumes q >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .functions import TestFunction
from .quadrature import (
    Annulus,
    Ball,
    Shell,
    integrate_interval,
    integrate_region,
    integrate_sphere,
)
from .weights import Weight, ball_mass

DEFAULT_WINDOW = (-24, 24)
GRID_PER_OCTAVE = 4


class NormDivergentError(ArithmeticError):
    """A norm evaluated as divergent; carries the partial NormResult."""

    def __init__(self, message: str, partial: "NormResult"):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class NormResult:
    value: float
    k_min: int
    k_max: int
    tail_bound: float
    attained_at: Optional[int] = None
    diverged: bool = False

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "k_min": self.k_min,
            "k_max": self.k_max,
            "tail_bound": self.tail_bound,
            "attained_at": self.attained_at,
        }


def _require_q(q: float) -> None:
    if q < 1:
        raise ValueError("q < 1 (quasi-norm) is not supported")


def _sphere_factor(f: TestFunction, q: float, w: Weight, tol: float) -> float:
    """integral over S^{n-1} of |angular part|^q * (weight angular part)."""

    def g(points):
        return np.abs(f.angular_values(points)) ** q * np.asarray(w.angular(points), dtype=float)

    return integrate_sphere(f.dim, g, tol).value


def _radial_chunk(f: TestFunction, q: float, w: Weight, lo: float, hi: float, tol: float) -> float:
    """integral of |radial part|^q r^{gamma + n - 1} over (lo, hi), support-clipped."""
    slo, shi = f.support
    lo = max(lo, slo)
    hi = min(hi, shi)
    if hi <= lo:
        return 0.0
    expo = w.gamma + f.dim - 1

    def g(r):
        r = np.asarray(r, dtype=float)
        return np.abs(f.radial_values(r)) ** q * r ** expo

    e0 = None
    if lo == 0.0:
        ez = f.radial_exponent_at_zero
        if ez is None:
            raise ValueError(
                f"test function {f.name!r} needs a radial exponent at 0 for integrals down to 0"
            )
        e0 = q * ez + expo if math.isfinite(ez) else math.inf
    einf = None
    if math.isinf(hi):
        ei = f.radial_exponent_at_infinity
        if ei is None:
            raise ValueError(
                f"test function {f.name!r} needs a radial exponent at infinity for full-space integrals"
            )
        einf = q * ei + expo if math.isfinite(ei) else -math.inf
    align = tuple(c for c in (slo, shi, *f.jumps) if math.isfinite(c) and c > 0.0)
    return integrate_interval(g, lo, hi, tol, exponent_at_zero=e0, exponent_at_infinity=einf,
                              align=align).value


def chunk_lq_norm(f: TestFunction, q: float, w: Weight, k: int, tol: float = 1e-11) -> float:
    """Shell norm || f chi_k ||_{q, w} over the dyadic annulus C_k."""
    _require_q(q)
    if f.separable:
        sphere = _sphere_factor(f, q, w, tol)
        radial = _radial_chunk(f, q, w, 2.0 ** (k - 1), 2.0 ** k, tol)
        return (radial * sphere) ** (1.0 / q)

    def integrand(x):
        return np.abs(f(x)) ** q * w(x)

    val = integrate_region(f.dim, integrand, Annulus(k), tol).value
    return val ** (1.0 / q)


def lq_norm(
    f: TestFunction,
    q: float,
    w: Weight,
    region="all",
    tol: float = 1e-11,
    window: tuple[int, int] = DEFAULT_WINDOW,
) -> float:
    """Weighted L^q norm over a region ('all', Ball, Annulus or Shell)."""
    _require_q(q)
    if isinstance(region, Annulus):
        return chunk_lq_norm(f, q, w, region.k, tol)
    if isinstance(region, (Ball, Shell)):
        lo, hi = (0.0, region.radius) if isinstance(region, Ball) else (region.a, region.b)
        if f.separable:
            sphere = _sphere_factor(f, q, w, tol)
            radial = _radial_chunk(f, q, w, lo, hi, tol)
            return (radial * sphere) ** (1.0 / q)

        def integrand(x):
            return np.abs(f(x)) ** q * w(x)

        return integrate_region(f.dim, integrand, region, tol).value ** (1.0 / q)
    if region != "all":
        raise ValueError(f"unknown region {region!r}")

    chunks = _chunk_table(f, q, w, window, tol)
    total, tail, diverged, why = _sum_with_tails(chunks ** q, window)
    if diverged:
        partial = NormResult(total ** (1.0 / q), window[0], window[1], math.inf, None, True)
        raise NormDivergentError(f"L^{q} norm diverges: {why}", partial)
    return total ** (1.0 / q)


def _chunk_table(f: TestFunction, q: float, w: Weight, window: tuple[int, int], tol: float) -> np.ndarray:
    k_min, k_max = window
    if f.separable:
        sphere = _sphere_factor(f, q, w, tol)
        out = np.zeros(k_max - k_min + 1)
        for i, k in enumerate(range(k_min, k_max + 1)):
            radial = _radial_chunk(f, q, w, 2.0 ** (k - 1), 2.0 ** k, tol)
            out[i] = (radial * sphere) ** (1.0 / q)
        return out
    return np.array([chunk_lq_norm(f, q, w, k, tol) for k in range(k_min, k_max + 1)])


def _side_tail(terms: np.ndarray, side: str) -> tuple[float, bool, str]:
    """Geometric tail bound for nonnegative terms beyond one window edge.

    Returns (tail, diverged, reason).  The fit uses the last two nonzero
    terms; exact for geometric (pure power shell) decay.
    """
    seq = terms if side == "right" else terms[::-1]
    total = float(seq.sum())
    nz = np.nonzero(seq)[0]
    if len(nz) == 0:
        return 0.0, False, ""
    last = nz[-1]
    if last < len(seq) - 1:
        # terms vanish before the edge: compactly supported side
        return 0.0, False, ""
    if len(nz) < 2 or nz[-2] != last - 1:
        return float(seq[last]), False, "single edge term"
    a, b = float(seq[last - 1]), float(seq[last])
    if b < 1e-13 * max(total, 1.0):
        return b, False, ""
    rho = b / a if a > 0 else 1.0
    if rho >= 0.9999:
        return math.inf, True, f"{side} shell terms fail to decay (ratio {rho:.4f})"
    return b * rho / (1.0 - rho), False, ""


def _sum_with_tails(terms: np.ndarray, window: tuple[int, int]) -> tuple[float, float, bool, str]:
    total = float(terms.sum())
    tail_r, div_r, why_r = _side_tail(terms, "right")
    tail_l, div_l, why_l = _side_tail(terms, "left")
    diverged = div_r or div_l
    why = "; ".join(x for x in (why_r, why_l) if x)
    return total, tail_l + tail_r, diverged, why


def _power_sum_norm(total: float, tail: float, p: float) -> tuple[float, float]:
    """(sum)^{1/p} with the tail re-expressed at the norm level."""
    value = total ** (1.0 / p) if total > 0 else 0.0
    bumped = (total + tail) ** (1.0 / p) if math.isfinite(tail) else math.inf
    return value, max(0.0, bumped - value)


# ---------------------------------------------------------------------------
# Herz-type sums
# ---------------------------------------------------------------------------

def _herz_engine(
    f: TestFunction,
    q: float,
    w_chunk: Weight,
    log2_weight: Callable[[int], float],
    p: float,
    window: tuple[int, int],
    tol: float,
    strict: bool,
) -> tuple[np.ndarray, NormResult]:
    """Shared sum machinery: terms tau_k = 2^{p log2_weight(k)} chunk_k^p."""
    _require_q(q)
    if p <= 0:
        raise ValueError("p must be positive")
    k_min, k_max = window
    chunks = _chunk_table(f, q, w_chunk, window, tol)
    ks = np.arange(k_min, k_max + 1)
    tau = np.array([2.0 ** (p * log2_weight(int(k))) for k in ks]) * chunks ** p
    total, tail, diverged, why = _sum_with_tails(tau, window)
    value, norm_tail = _power_sum_norm(total, tail, p)
    result = NormResult(value, k_min, k_max, norm_tail, None, diverged)
    if diverged and strict:
        raise NormDivergentError(f"Herz-type sum diverges: {why}", result)
    return tau, result


def herz_norm(
    f: TestFunction,
    alpha: float,
    p: float,
    q: float,
    w: Weight,
    window: tuple[int, int] = DEFAULT_WINDOW,
    tol: float = 1e-11,
    strict: bool = True,
) -> NormResult:
    """Weighted Herz norm (sum_k 2^{k alpha p} ||f chi_k||_{q,w}^p)^{1/p}."""
    _, result = _herz_engine(f, q, w, lambda k: alpha * k, p, window, tol, strict)
    return result


def two_weight_herz_norm(
    f: TestFunction,
    alpha: float,
    p: float,
    q: float,
    w1: Weight,
    w2: Weight,
    window: tuple[int, int] = DEFAULT_WINDOW,
    tol: float = 1e-11,
    strict: bool = True,
) -> NormResult:
    """(sum_k w1(B_k)^{alpha p / n} ||f chi_k||_{q, w2}^p)^{1/p}."""
    n = f.dim

    def lw(k: int) -> float:
        return (alpha / n) * math.log2(ball_mass(w1, 2.0 ** k))

    _, result = _herz_engine(f, q, w2, lw, p, window, tol, strict)
    return result


def _morrey_herz_engine(
    f: TestFunction,
    q: float,
    w_chunk: Weight,
    log2_weight: Callable[[int], float],
    log2_prefactor: Callable[[int], float],
    p: float,
    lam_slope: float,
    window: tuple[int, int],
    tol: float,
    strict: bool,
) -> NormResult:
    """sup over k0 of 2^{log2_prefactor(k0)} (sum_{k<=k0} tau_k)^{1/p}.

    lam_slope is the decrease of log2_prefactor per unit k0 (>= 0).  Terms
    may legitimately grow with k (ratio up to 2^{p lam_slope} is exactly
    compensated by the prefactor; the scale-invariant extremals sit at that
    marginal rate), so the beyond-window supremum is controlled by a
    geometric continuation fitted to the last two shell terms: supremand
    log2-slope beyond the edge is g/p - lam_slope with g the term growth
    rate, divergent when positive.
    """
    _require_q(q)
    if p <= 0:
        raise ValueError("p must be positive")
    k_min, k_max = window
    chunks = _chunk_table(f, q, w_chunk, window, tol)
    ks = np.arange(k_min, k_max + 1)
    tau = np.array([2.0 ** (p * log2_weight(int(k))) for k in ks]) * chunks ** p
    prefix = np.cumsum(tau)
    prefac = np.array([2.0 ** log2_prefactor(int(k)) for k in ks])
    sup_vals = prefac * prefix ** (1.0 / p)
    idx = int(np.argmax(sup_vals))
    value = float(sup_vals[idx])
    attained = int(ks[idx])
    diverged = False
    reasons: list[str] = []
    tail_bound = 0.0

    # right continuation: tau_{k_max + j} modeled as tau[-1] * rho^j
    if tau[-1] > 1e-13 * max(prefix[-1], 1e-300):
        rho = tau[-1] / tau[-2] if len(tau) > 1 and tau[-2] > 0 else 1.0
        excess = math.log2(rho) / p - lam_slope if rho > 0 else -math.inf
        if excess > 1e-9:
            diverged = True
            reasons.append(
                f"supremand climbs beyond the right edge (rate 2^{excess:.3g} per step)"
            )
        else:
            # log-space evaluation: the continued prefix may overflow floats
            l2_tau = math.log2(tau[-1])
            l2_rho = math.log2(rho) if rho > 0 else -math.inf
            l2_prefix = math.log2(prefix[-1]) if prefix[-1] > 0 else -math.inf
            best_beyond = 0.0
            sj_prev = value
            for j in range(1, 4000):
                if rho == 1.0:
                    l2_geom = l2_tau + math.log2(j)
                elif rho > 1.0:
                    l2_geom = (l2_tau + math.log2(rho / (rho - 1.0)) + j * l2_rho
                               + math.log1p(-(rho ** -min(j, 1000))) / math.log(2.0))
                else:
                    l2_geom = l2_tau + math.log2(rho * (1.0 - rho ** j) / (1.0 - rho))
                m = max(l2_prefix, l2_geom)
                l2_run = m + math.log2(2.0 ** (l2_prefix - m) + 2.0 ** (l2_geom - m))
                l2_sj = log2_prefactor(k_max) - lam_slope * j + l2_run / p
                sj = 2.0 ** min(l2_sj, 1000.0)
                best_beyond = max(best_beyond, sj)
                if sj < sj_prev and sj < 0.5 * best_beyond:
                    break
                sj_prev = sj
            if best_beyond > value:
                tail_bound += best_beyond - value
                value = best_beyond
                attained = None

    # left continuation: prefixes below k_min modeled by tau[0] * rho_L^j
    if len(tau) > 1 and tau[0] > 1e-13 * max(prefix[-1], 1e-300) and tau[1] > 0:
        rho_left = tau[0] / tau[1]
        # supremand at k_min - j ~ 2^{lam_slope j} * (tau[0] rho_L^j / (1 - rho_L))^{1/p}
        step = 2.0 ** lam_slope * rho_left ** (1.0 / p)
        if rho_left < 1.0:
            base = 2.0 ** log2_prefactor(k_min) * (tau[0] / (1.0 - rho_left)) ** (1.0 / p)
            if step > 1.0 + 1e-9:
                diverged = True
                reasons.append("supremand climbs beyond the left edge")
            else:
                cand = base * step
                if cand > value:
                    tail_bound += cand - value
                    value = cand
                    attained = None
        elif lam_slope > 0.0:
            diverged = True
            reasons.append("left shell terms fail to decay under a positive damping exponent")

    result = NormResult(value, k_min, k_max, tail_bound, attained, diverged)
    if diverged and strict:
        raise NormDivergentError("Morrey-Herz-type supremum diverges: " + "; ".join(reasons), result)
    return result


def morrey_herz_norm(
    f: TestFunction,
    alpha: float,
    lam: float,
    p: float,
    q: float,
    w: Weight,
    window: tuple[int, int] = DEFAULT_WINDOW,
    tol: float = 1e-11,
    strict: bool = True,
) -> NormResult:
    """sup_{k0} 2^{-k0 lam} (sum_{k<=k0} 2^{k alpha p} ||f chi_k||_{q,w}^p)^{1/p}."""
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    return _morrey_herz_engine(
        f, q, w, lambda k: alpha * k, lambda k0: -lam * k0, p, lam, window, tol, strict
    )


def two_weight_morrey_herz_norm(
    f: TestFunction,
    alpha: float,
    lam: float,
    p: float,
    q: float,
    w1: Weight,
    w2: Weight,
    window: tuple[int, int] = DEFAULT_WINDOW,
    tol: float = 1e-11,
    strict: bool = True,
) -> NormResult:
    """sup_{k0} w1(B_{k0})^{-lam/n} (sum_{k<=k0} w1(B_k)^{alpha p/n} ||f chi_k||_{q,w2}^p)^{1/p}."""
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    n = f.dim

    def lw(k: int) -> float:
        return (alpha / n) * math.log2(ball_mass(w1, 2.0 ** k))

    def pre(k0: int) -> float:
        return (-lam / n) * math.log2(ball_mass(w1, 2.0 ** k0))

    lam_slope = lam * (n + w1.gamma) / n
    return _morrey_herz_engine(f, q, w2, lw, pre, p, lam_slope, window, tol, strict)


# ---------------------------------------------------------------------------
# Morrey-type suprema over continuous radii
# ---------------------------------------------------------------------------

def _cumulative_ball_integrals(
    f: TestFunction,
    p: float,
    w: Weight,
    radii: np.ndarray,
    tol: float,
) -> np.ndarray:
    """integral of |f|^p w over B(0, R) for each R in the increasing grid."""
    if f.separable:
        sphere = _sphere_factor(f, p, w, tol)
        expo = w.gamma + f.dim - 1

        def g(r):
            r = np.asarray(r, dtype=float)
            return np.abs(f.radial_values(r)) ** p * r ** expo

        segs = np.zeros(len(radii))
        segs[0] = _radial_chunk(f, p, w, 0.0, float(radii[0]), tol)
        slo, shi = f.support
        align = tuple(c for c in (slo, shi, *f.jumps) if math.isfinite(c) and c > 0.0)
        for i in range(1, len(radii)):
            a, b = float(radii[i - 1]), float(radii[i])
            if b <= slo or a >= shi:
                continue
            segs[i] = integrate_interval(g, a, b, tol, orders=(6, 13), align=align).value
        return np.cumsum(segs) * sphere

    def integrand(x):
        return np.abs(f(x)) ** p * w(x)

    vals = np.zeros(len(radii))
    vals[0] = integrate_region(
        f.dim, integrand, Ball(float(radii[0])), tol,
        radial_exponent_at_zero=(p * f.radial_exponent_at_zero if f.radial_exponent_at_zero is not None else None),
    ).value
    for i in range(1, len(radii)):
        vals[i] = integrate_region(f.dim, integrand, Shell(float(radii[i - 1]), float(radii[i])), tol).value
    return np.cumsum(vals)


def _morrey_sup(
    f: TestFunction,
    p: float,
    w_int: Weight,
    log_normalizer: Callable[[float], float],
    window: tuple[int, int],
    tol: float,
    strict: bool,
    label: str,
) -> NormResult:
    """sup over the R-grid of exp(log_normalizer(R)/p-ish) ... see callers.

    log_normalizer(R) returns ln of the mass-normalization factor multiplying
    the ball integral before the 1/p-th root.
    """
    k_min, k_max = window
    js = np.arange(GRID_PER_OCTAVE * k_min, GRID_PER_OCTAVE * k_max + 1)
    radii = 2.0 ** (js / GRID_PER_OCTAVE)
    cum = _cumulative_ball_integrals(f, p, w_int, radii, tol)
    with np.errstate(divide="ignore"):
        lognorm = np.array([log_normalizer(float(R)) for R in radii])
        vals = np.where(cum > 0.0, np.exp((np.log(np.where(cum > 0, cum, 1.0)) + lognorm) / p), 0.0)
    idx = int(np.argmax(vals))
    value = float(vals[idx])
    attained = int(js[idx])
    diverged = False
    reasons = []
    for side, sl in (("right", slice(-3, None)), ("left", slice(None, 3))):
        edge = vals[sl] if side == "right" else vals[sl][::-1]
        at_edge = idx == (len(vals) - 1 if side == "right" else 0)
        if at_edge and len(edge) == 3 and edge[-1] >= edge[-2] >= edge[-3] and edge[-1] > (1.0 + 1e-6) * edge[-3] > 0:
            diverged = True
            reasons.append(f"supremand still climbing at the {side} edge")
    result = NormResult(value, k_min, k_max, 0.0, attained, diverged)
    if diverged and strict:
        raise NormDivergentError(f"{label} supremum diverges: " + "; ".join(reasons), result)
    return result


def central_morrey_norm(
    f: TestFunction,
    p: float,
    lam: float,
    w: Weight,
    window: tuple[int, int] = DEFAULT_WINDOW,
    tol: float = 1e-11,
    strict: bool = True,
) -> NormResult:
    """sup_R ( w(B_R)^{-(1+lam p)} integral_{B_R} |f|^p w )^{1/p}."""
    if p < 1:
        raise ValueError("central Morrey norm requires p >= 1")
    if 1.0 + lam * p <= 0:
        raise ValueError("requires 1 + lambda p > 0")
    expo = 1.0 + lam * p

    def lognorm(R: float) -> float:
        return -expo * math.log(ball_mass(w, R))

    return _morrey_sup(f, p, w, lognorm, window, tol, strict, "central Morrey")


def two_weight_morrey_norm(
    f: TestFunction,
    p: float,
    lam: float,
    w1: Weight,
    w2: Weight,
    window: tuple[int, int] = DEFAULT_WINDOW,
    tol: float = 1e-11,
    strict: bool = True,
) -> NormResult:
    """sup_R ( w2(B_R)^{-lam} integral_{B_R} |f|^p w1 )^{1/p}."""
    if p <= 0:
        raise ValueError("p must be positive")
    if lam <= 0:
        raise ValueError("two-weight Morrey requires lambda > 0")

    def lognorm(R: float) -> float:
        return -lam * math.log(ball_mass(w2, R))

    return _morrey_sup(f, p, w1, lognorm, window, tol, strict, "two-weight Morrey")


# ---------------------------------------------------------------------------
# space specification objects
# ---------------------------------------------------------------------------

_KINDS = {
    "Lq": ("q", "w1"),
    "CentralMorrey": ("p", "lam", "w1"),
    "Herz": ("alpha", "p", "q", "w1"),
    "MorreyHerz": ("alpha", "lam", "p", "q", "w1"),
    "TwoWeightMorrey": ("p", "lam", "w1", "w2"),
    "TwoWeightHerz": ("alpha", "p", "q", "w1", "w2"),
    "TwoWeightMorreyHerz": ("alpha", "lam", "p", "q", "w1", "w2"),
}


@dataclass(frozen=True)
class SpaceSpec:
    """A norm selection: kind plus exactly the parameters that kind uses."""

    kind: str
    p: Optional[float] = None
    q: Optional[float] = None
    alpha: Optional[float] = None
    lam: Optional[float] = None
    w1: Optional[Weight] = None
    w2: Optional[Weight] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        used = _KINDS[self.kind]
        for name in ("p", "q", "alpha", "lam", "w1", "w2"):
            val = getattr(self, name)
            if name in used and val is None:
                raise ValueError(f"{self.kind} requires {name}")
            if name not in used and val is not None:
                raise ValueError(f"{self.kind} does not take {name}")
        if self.kind == "CentralMorrey" and self.p < 1:
            raise ValueError("CentralMorrey requires p >= 1")
        if self.kind in ("Herz", "MorreyHerz", "TwoWeightHerz", "TwoWeightMorreyHerz"):
            if self.p <= 0 or self.q <= 0:
                raise ValueError("requires 0 < p, q")
        if self.kind in ("MorreyHerz", "TwoWeightMorreyHerz") and self.lam < 0:
            raise ValueError("requires lambda >= 0")
        if self.kind == "TwoWeightMorrey" and self.lam <= 0:
            raise ValueError("requires lambda > 0")

    def evaluate(
        self,
        f: TestFunction,
        window: tuple[int, int] = DEFAULT_WINDOW,
        tol: float = 1e-11,
        strict: bool = True,
    ) -> NormResult:
        if self.kind == "Lq":
            val = lq_norm(f, self.q, self.w1, "all", tol, window)
            return NormResult(val, window[0], window[1], 0.0, None, False)
        if self.kind == "CentralMorrey":
            return central_morrey_norm(f, self.p, self.lam, self.w1, window, tol, strict)
        if self.kind == "Herz":
            return herz_norm(f, self.alpha, self.p, self.q, self.w1, window, tol, strict)
        if self.kind == "MorreyHerz":
            return morrey_herz_norm(f, self.alpha, self.lam, self.p, self.q, self.w1, window, tol, strict)
        if self.kind == "TwoWeightMorrey":
            return two_weight_morrey_norm(f, self.p, self.lam, self.w1, self.w2, window, tol, strict)
        if self.kind == "TwoWeightHerz":
            return two_weight_herz_norm(f, self.alpha, self.p, self.q, self.w1, self.w2, window, tol, strict)
        if self.kind == "TwoWeightMorreyHerz":
            return two_weight_morrey_herz_norm(
                f, self.alpha, self.lam, self.p, self.q, self.w1, self.w2, window, tol, strict
            )
        raise AssertionError
