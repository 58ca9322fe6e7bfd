"""Quadrature engines for the half-line, spheres S^{n-1} (n <= 3) and radial regions.

Half-line integrals use the substitution t = e^u so that power-law behaviour
at both endpoints becomes exponential decay in u.  Integration proceeds over
panels whose t-endpoints are powers of two (this keeps the jump points of
the indicator presets, in particular t = 1, on panel boundaries) and expands
outward, panels widening geometrically once the integrand is in its
power-law regime, until either

  * panel contributions certify a geometric tail (declared endpoint
    exponents give the exact panel ratio for power-law tails; the observed
    per-octave ratio is taken when it is worse), or
  * contributions stop decaying, which is reported as divergence.

Declared endpoint exponents are the first divergence gate: an integrand
declared ~ t^{e0} at 0 and ~ t^{einf} at infinity converges iff e0 > -1 and
einf < -1 (with +-inf allowed for one-sided compact support).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import roots_legendre

LN2 = math.log(2.0)


class DivergentIntegralError(ArithmeticError):
    """Integral diverges (declared exponents or observed non-decay)."""


class ToleranceNotMetError(ArithmeticError):
    """Panel/node budget exhausted before reaching requested tolerance."""


@dataclass(frozen=True)
class RadialIntegrand:
    """Integrand on (0, inf) with declared endpoint exponents.

    eval must accept a numpy array of t values and return an array.
    exponent_at_zero / exponent_at_infinity describe power-law behaviour
    (+inf means vanishing identically near 0, -inf near infinity).
    """

    eval: Callable[[np.ndarray], np.ndarray]
    exponent_at_zero: float
    exponent_at_infinity: float


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    tail_bound: float
    converged: bool


@dataclass(frozen=True)
class Ball:
    radius: float


@dataclass(frozen=True)
class Annulus:
    k: int


@dataclass(frozen=True)
class Shell:
    a: float
    b: float  # math.inf allowed


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = roots_legendre(order)
    return _GL_CACHE[order]


_REL_FLOOR = 5e-15  # no panel is refined below machine precision x its L1 mass


def _panel(g, a: float, b: float, tol: float, depth: int = 0,
           orders: tuple[int, int] = (10, 21)) -> tuple[float, float]:
    """Adaptive Gauss-Legendre on [a, b]; returns (value, error estimate).

    Bisection only triggers on disagreement between the low- and high-order
    rules, i.e. effectively at interior non-smooth points.
    """
    xlo, wlo = _gl(orders[0])
    xhi, whi = _gl(orders[1])
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    ghi = np.asarray(g(mid + half * xhi), dtype=float)
    vlo = half * float(np.dot(wlo, np.asarray(g(mid + half * xlo), dtype=float)))
    vhi = half * float(np.dot(whi, ghi))
    scale = half * float(np.dot(whi, np.abs(ghi)))
    err = abs(vhi - vlo)
    if err <= tol or err <= _REL_FLOOR * scale or depth >= 48 or half <= 1e-300:
        return vhi, err
    lv, le = _panel(g, a, mid, 0.5 * tol, depth + 1, orders)
    rv, re = _panel(g, mid, b, 0.5 * tol, depth + 1, orders)
    return lv + rv, le + re


def _panel_tol(tol: float, j: int) -> float:
    # sum over both sides of tol / (7 (1 + j^2)) stays below 0.5 tol
    return max(tol / (7.0 * (1.0 + j * j)), 1e-17)


def _log_panel(g, a: float, b: float, tol: float, orders=(10, 21)) -> tuple[float, float]:
    """Panel integral of g over [a, b] in u = ln t coordinates."""

    def gu(u):
        t = np.exp(np.asarray(u, dtype=float))
        return np.asarray(g(t), dtype=float) * t

    return _panel(gu, math.log(a), math.log(b), tol, orders=orders)


class _Expansion:
    """Outward panel expansion from ``edge`` toward 0 or infinity.

    ``rho_oct`` is the declared per-octave decay ratio of panel values
    (< 1 for a convergent power-law side; None when no exponent is known,
    in which case only observed decay with unit-octave panels is used).
    """

    def __init__(self, g, edge: float, direction: int, tol: float,
                 rho_oct: float | None, orders=(10, 21), max_panels: int = 4000,
                 divergence_check: bool = True):
        self.g = g
        self.edge = edge
        self.direction = direction
        self.tol = tol
        self.rho_oct = rho_oct
        self.orders = orders
        self.max_panels = max_panels
        self.divergence_check = divergence_check

    def run(self, value_ref: Callable[[], float], threshold: Callable[[], float]):
        g, direction = self.g, self.direction
        edge = self.edge
        width = 1.0
        total = 0.0
        err = 0.0
        tail = math.inf
        zeros = 0
        history: list[tuple[float, float]] = []  # (|value|, width)
        hits = 0
        for step in range(self.max_panels):
            if direction > 0:
                a, b = edge, edge * 2.0 ** width
            else:
                a, b = edge * 2.0 ** (-width), edge
            v, e = _log_panel(g, a, b, _panel_tol(self.tol, step), self.orders)
            total += v
            err += e
            if v == 0.0:
                zeros += 1
                if zeros >= 6:
                    tail = 0.0
                    break
            else:
                zeros = 0
                history.append((abs(v), width))
                if self.divergence_check and width == 1.0 and len(history) >= 3 and step >= 8:
                    a1, a2, a3 = history[-1][0], history[-2][0], history[-3][0]
                    if a1 > threshold() and a1 >= 0.999 * a2 >= 0.999 * 0.999 * a3 > 0:
                        raise DivergentIntegralError(
                            f"panel contributions fail to decay near {b if direction > 0 else a:.3g}"
                        )
                rho = self._effective_rho(history)
                if rho is not None and rho < 1.0:
                    rho_w = rho ** width
                    tail = abs(v) * rho_w / (1.0 - rho_w)
                    if tail <= threshold():
                        hits += 1
                        if hits >= 2 or tail == 0.0 or width > 1.0:
                            break
                    else:
                        hits = 0
            edge = b if direction > 0 else a
            if self.rho_oct is not None and step >= 3 and abs(v) <= 1e-2 * max(abs(value_ref()), abs(total)):
                width = min(width * 2.0, 8.0)
        else:
            raise ToleranceNotMetError("panel budget exhausted during expansion")
        if not math.isfinite(tail):
            raise ToleranceNotMetError("could not certify endpoint tail")
        return total, err, tail

    def _effective_rho(self, history) -> float | None:
        obs = None
        if len(history) >= 2:
            (v1, w1), (v0, w0) = history[-1], history[-2]
            if v0 > 0 and v1 > 0:
                obs = (v1 / v0) ** (2.0 / (w0 + w1))
        if self.rho_oct is None:
            return min(obs, 0.999999) if obs is not None else None
        if obs is None:
            return self.rho_oct
        return min(max(self.rho_oct, obs), 0.999999)


def _rho_toward_inf(exponent_at_infinity: float | None) -> float | None:
    if exponent_at_infinity is None:
        return None
    if exponent_at_infinity == -math.inf:
        return 0.0
    return 2.0 ** (exponent_at_infinity + 1.0)


def _rho_toward_zero(exponent_at_zero: float | None) -> float | None:
    if exponent_at_zero is None:
        return None
    if exponent_at_zero == math.inf:
        return 0.0
    return 2.0 ** (-(exponent_at_zero + 1.0))


def integrate_halfline(
    f: RadialIntegrand,
    tol: float,
    rel: float = 1e-12,
    max_panels_per_side: int = 4000,
    align: tuple[float, ...] = (),
) -> QuadratureResult:
    """Integrate f over (0, inf); tolerance is max(tol, rel * |value|).

    ``align`` lists known jump locations; panels inside the central block
    are cut there (jumps hiding in the node-free gap at a panel edge would
    otherwise defeat the two-rule error estimate).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    e0, einf = f.exponent_at_zero, f.exponent_at_infinity
    if e0 <= -1.0 or einf >= -1.0:
        raise DivergentIntegralError(
            f"declared exponents (at0={e0}, atinf={einf}) violate convergence"
        )

    cuts = sorted({2.0 ** j for j in range(-8, 9)} | {c for c in align if 2.0 ** -8 < c < 2.0 ** 8})
    state = {"value": 0.0, "err": 0.0}
    for i in range(len(cuts) - 1):
        v, e = _log_panel(f.eval, cuts[i], cuts[i + 1], _panel_tol(tol, i))
        state["value"] += v
        state["err"] += e

    def threshold():
        return max(tol, rel * abs(state["value"])) / 8.0

    tails = []
    for direction, rho in ((+1, _rho_toward_inf(einf)), (-1, _rho_toward_zero(e0))):
        exp = _Expansion(f.eval, 2.0 ** 8 if direction > 0 else 2.0 ** -8, direction, tol,
                         rho, max_panels=max_panels_per_side)
        t, e, tail = exp.run(lambda: state["value"], threshold)
        state["value"] += t
        state["err"] += e
        tails.append(tail)

    value, err = state["value"], state["err"]
    tail_bound = sum(tails)
    converged = err + tail_bound <= max(tol, rel * abs(value))
    if not converged:
        raise ToleranceNotMetError(
            f"error estimate {err:.3g} + tail {tail_bound:.3g} exceeds tol {tol:.3g}"
        )
    return QuadratureResult(value, err, tail_bound, converged)


def integrate_interval(
    g: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float,
    exponent_at_zero: float | None = None,
    exponent_at_infinity: float | None = None,
    rel: float = 1e-12,
    max_panels: int = 4000,
    orders: tuple[int, int] = (10, 21),
    align: tuple[float, ...] = (),
) -> QuadratureResult:
    """Integrate g over (a, b), 0 <= a < b <= inf.

    Endpoints at 0 or inf expand outward with the same certification as
    integrate_halfline; ``align`` lists extra interior cut points (known
    jump locations).  Finite positive endpoints are split at powers of two.
    """
    if not (0.0 <= a < b):
        raise ValueError(f"bad interval ({a}, {b})")
    if a == 0.0 and exponent_at_zero is not None and exponent_at_zero <= -1.0:
        raise DivergentIntegralError("declared exponent at 0 violates convergence")
    if math.isinf(b) and exponent_at_infinity is not None and exponent_at_infinity >= -1.0:
        raise DivergentIntegralError("declared exponent at infinity violates convergence")

    inner = a if a > 0.0 else (min(b, 1.0) if math.isfinite(b) else 1.0) * 0.5 ** 8
    outer = b if math.isfinite(b) else max(a, 1.0) * 2.0 ** 8
    cuts = sorted({inner, outer}
                  | {2.0 ** k for k in range(math.floor(math.log2(inner)) + 1,
                                             math.ceil(math.log2(outer)))
                     if inner < 2.0 ** k < outer}
                  | {c for c in align if inner < c < outer})
    state = {"value": 0.0, "err": 0.0}
    for i in range(len(cuts) - 1):
        v, e = _panel(g, cuts[i], cuts[i + 1], _panel_tol(tol, i), orders=orders)
        state["value"] += v
        state["err"] += e

    def threshold():
        return max(tol, rel * abs(state["value"])) / 8.0

    tail = 0.0
    if a == 0.0:
        exp = _Expansion(g, inner, -1, tol, _rho_toward_zero(exponent_at_zero),
                         orders=orders, max_panels=max_panels)
        t, e, side_tail = exp.run(lambda: state["value"], threshold)
        state["value"] += t
        state["err"] += e
        tail += side_tail
    if math.isinf(b):
        exp = _Expansion(g, outer, +1, tol, _rho_toward_inf(exponent_at_infinity),
                         orders=orders, max_panels=max_panels)
        t, e, side_tail = exp.run(lambda: state["value"], threshold)
        state["value"] += t
        state["err"] += e
        tail += side_tail

    value, err = state["value"], state["err"]
    converged = err + tail <= max(tol, rel * abs(value))
    if not converged:
        raise ToleranceNotMetError("interval tolerance not met")
    return QuadratureResult(value, err, tail, converged)


# ---------------------------------------------------------------------------
# sphere quadrature
# ---------------------------------------------------------------------------

def sphere_nodes(n: int, level: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature nodes/weights on S^{n-1} at refinement ``level``.

    n=1: the two points {-1, +1} with unit weights (counting measure).
    n=2: midpoint/trapezoid rule on the circle (spectral accuracy).
    n=3: Gauss-Legendre in cos(polar) x trapezoid in azimuth.
    """
    if n == 1:
        return np.array([[-1.0], [1.0]]), np.array([1.0, 1.0])
    if n == 2:
        m = 16 << level
        theta = 2.0 * math.pi * (np.arange(m) + 0.5) / m
        pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        w = np.full(m, 2.0 * math.pi / m)
        return pts, w
    if n == 3:
        mp = 8 << level
        mt = 16 << level
        u, wu = _gl(mp)  # u = cos(polar)
        theta = 2.0 * math.pi * (np.arange(mt) + 0.5) / mt
        su = np.sqrt(np.clip(1.0 - u * u, 0.0, None))
        x = np.outer(su, np.cos(theta)).ravel()
        y = np.outer(su, np.sin(theta)).ravel()
        z = np.outer(u, np.ones(mt)).ravel()
        w = np.outer(wu, np.full(mt, 2.0 * math.pi / mt)).ravel()
        return np.stack([x, y, z], axis=1), w
    raise ValueError("sphere quadrature implemented for n in {1, 2, 3}")


def integrate_sphere(n: int, g: Callable[[np.ndarray], np.ndarray], tol: float) -> QuadratureResult:
    """Integrate g over S^{n-1} against surface measure (counting measure for n=1)."""
    if n == 1:
        pts, w = sphere_nodes(1, 0)
        vals = np.asarray(g(pts), dtype=float)
        return QuadratureResult(float(np.dot(w, vals)), 0.0, 0.0, True)
    if n not in (2, 3):
        raise ValueError("sphere quadrature implemented for n in {1, 2, 3}")
    prev = None
    for level in range(0, 12 if n == 2 else 8):
        pts, w = sphere_nodes(n, level)
        val = float(np.dot(w, np.asarray(g(pts), dtype=float)))
        if prev is not None:
            err = abs(val - prev)
            if err <= tol:
                return QuadratureResult(val, err, 0.0, True)
        prev = val
    raise ToleranceNotMetError("sphere quadrature did not reach tolerance")


def sphere_surface(n: int) -> float:
    """|S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


# ---------------------------------------------------------------------------
# region integrals via polar factorization
# ---------------------------------------------------------------------------

def _radial_bounds(region) -> tuple[float, float]:
    if isinstance(region, Ball):
        if region.radius <= 0:
            raise ValueError("ball radius must be positive")
        return 0.0, region.radius
    if isinstance(region, Annulus):
        return 2.0 ** (region.k - 1), 2.0 ** region.k
    if isinstance(region, Shell):
        if not (0.0 <= region.a < region.b):
            raise ValueError("bad shell bounds")
        return region.a, region.b
    raise TypeError(f"unknown region {region!r}")


def integrate_region(
    n: int,
    f: Callable[[np.ndarray], np.ndarray],
    region,
    tol: float,
    radial_exponent_at_zero: float | None = None,
    radial_exponent_at_infinity: float | None = None,
) -> QuadratureResult:
    """Integrate f over a radial region of R^n via polar factorization.

    ``f`` takes batched points of shape (m, n).  The sphere rule level is
    chosen adaptively on probe radii, then the radial integral runs with
    that fixed rule; declared exponents describe the point function's
    behaviour near 0/inf (the r^{n-1} factor is added internally).
    """
    a, b = _radial_bounds(region)

    level = 0
    if n > 1:
        lo = a if a > 0 else (b / 64.0 if math.isfinite(b) else 2.0 ** -6)
        hi = b if math.isfinite(b) else max(2.0 * lo, 2.0 ** 6)
        probes = np.geomspace(max(lo, 1e-12), hi, 5)
        for level in range(0, 10):
            pts, w = sphere_nodes(n, level)
            pts2, w2 = sphere_nodes(n, level + 1)
            worst = 0.0
            for r in probes:
                v1 = float(np.dot(w, np.asarray(f(r * pts), dtype=float)))
                v2 = float(np.dot(w2, np.asarray(f(r * pts2), dtype=float)))
                worst = max(worst, abs(v1 - v2))
            if worst <= tol * 1e-3 or worst <= tol / max(b - a if math.isfinite(b) else 1.0, 1.0) * 0.1:
                level = level + 1
                break

    pts, w = sphere_nodes(n, level)

    def radial(r_batch):
        r = np.asarray(r_batch, dtype=float)
        coords = r[:, None, None] * pts[None, :, :]
        flat = coords.reshape(-1, n)
        vals = np.asarray(f(flat), dtype=float).reshape(len(r), -1)
        return (vals @ w) * r ** (n - 1)

    e0 = None
    if radial_exponent_at_zero is not None:
        e0 = radial_exponent_at_zero + (n - 1)
    einf = None
    if radial_exponent_at_infinity is not None:
        einf = radial_exponent_at_infinity + (n - 1)
    return integrate_interval(radial, a, b, tol, exponent_at_zero=e0, exponent_at_infinity=einf)
