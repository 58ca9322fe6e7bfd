"""Theorem-verification campaigns: upper-bound ratio sweeps, lower-bound
extremal ratios, the annulus-mass identities, the Lipschitz pointwise
inequality, negative controls, and report generation.

Upper-bound checks compare corpus ratios ||T f||_target / ||f||_source
against K * C * ||Omega|| * (||b||), where C is the governing constant and
K is the tracked slack: the explicit product of factors the proof chain
pays.  For a weight w with angular part bounded below by c,

    Morrey:           K = (w(S^{n-1}) / c)^{1/p}
    Herz:             K = (w(S^{n-1}) / c)^{1/q} * (1 + 2^{|alpha|})
    Morrey-Herz:      K = (w(S^{n-1}) / c)^{1/q} * (1 + 2^{|lambda-alpha|})
    commutator cases additionally pay ((n+gamma)/w1(S^{n-1}))^{beta/(n+gamma)}
    for the |x|^beta -> ball-size substitution, and the shift factor uses
    the transported index (1 + 2^{|s|}).

For power weights (c = 1) the Morrey K is attained exactly by the
scale-invariant extremal, so K * C1 * ||Omega||_{p'} is the sharp two-sided
constant the reports quote.

The Herz lower bound follows the truncated-scale route: the reported ratio
at stage m is the exact lower-bound functional

    L(m) = 2^{-(m-1) 2^{-m}} w(S^{n-1})^{1/q} C2(m) * factor,

provably below ||T f_m|| / ||f_m||, nondecreasing in m, and converging to
the untruncated constant; a pointwise chain inequality is spot-checked by
quadrature at sample radii.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import bounds as bmod
from .extremals import conjugate, herz_extremal, morrey_extremal, morrey_herz_extremal
from .functions import (
    AngularProfile,
    LipschitzSymbol,
    RadialKernel,
    TestFunction,
    indicator_shell,
    kernel_presets,
    lipschitz_presets,
    omega_norm,
    separable,
)
from .operators import CommutatorOperator, HausdorffOperator, lipschitz_pointwise_bound
from .spaces import (
    NormDivergentError,
    NormResult,
    central_morrey_norm,
    herz_norm,
    morrey_herz_norm,
    two_weight_herz_norm,
    two_weight_morrey_herz_norm,
    two_weight_morrey_norm,
)
from .weights import Weight, annulus_mass, ball_mass

THEOREMS = (
    "T3_1", "T3_2", "T3_3", "T3_4", "T3_5", "T3_6",
    "Cor3_1", "Cor3_2", "Cor3_3", "Lemma2_1", "Ineq3_8",
)

PASS, FAIL, SKIPPED, DIVERGENT = "PASS", "FAIL", "SKIPPED", "DIVERGENT-AS-PREDICTED"


class ConfigError(ValueError):
    """Bad harness configuration (exit code 2)."""


@dataclass
class ReportRow:
    case_id: str
    quantity: str
    value: float | str
    bound: float | str
    margin: float | str
    verdict: str
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "case_id": self.case_id,
            "quantity": self.quantity,
            "value": self.value,
            "bound": self.bound,
            "margin": self.margin,
            "verdict": self.verdict,
            "detail": self.detail,
        }


@dataclass
class TheoremCase:
    id: str
    theorem: str
    params: dict
    kernel: Optional[RadialKernel] = None
    omega: Optional[AngularProfile] = None
    w1: Optional[Weight] = None
    w2: Optional[Weight] = None
    symbol: Optional[LipschitzSymbol] = None
    corpus: list = field(default_factory=list)
    extremal_ms: list = field(default_factory=list)
    window: tuple[int, int] = (-16, 20)
    expect: str = "pass"


@dataclass
class VerificationReport:
    rows: list
    metadata: dict
    plots: dict = field(default_factory=dict)  # name -> list[(x, y)]

    def to_canonical_json(self) -> str:
        """Deterministic report body; volatile fields (runtime) excluded."""
        meta = {k: v for k, v in self.metadata.items() if k != "runtime_seconds"}
        body = {"metadata": meta, "rows": [r.to_json() for r in self.rows]}
        return json.dumps(body, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["case_id", "quantity", "value", "bound", "margin", "verdict"])
        for r in self.rows:
            writer.writerow([
                r.case_id, r.quantity, _fmt(r.value), _fmt(r.bound), _fmt(r.margin), r.verdict,
            ])
        return out.getvalue()

    @property
    def failed(self) -> bool:
        return any(r.verdict == FAIL for r in self.rows)

    def exit_code(self) -> int:
        return 1 if self.failed else 0


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


# ---------------------------------------------------------------------------
# tracked slack constants
# ---------------------------------------------------------------------------

def tracked_slack(theorem: str, params: dict, w1: Weight, w2: Optional[Weight] = None) -> float:
    """The explicit proof-chain constant K for the upper bound of ``theorem``."""
    n = w1.dim
    gamma = w1.gamma

    def c_of(w: Weight) -> float:
        if w.angular_lower_bound is None:
            raise ConfigError("upper checks need weights with a declared angular lower bound")
        return w.angular_lower_bound

    if theorem in ("T3_1", "Cor3_1"):
        p = params["p"]
        return (w1.sphere_mass / c_of(w1)) ** (1.0 / p)
    if theorem in ("T3_2", "Cor3_2"):
        q, alpha = params["q"], params["alpha"]
        return (w1.sphere_mass / c_of(w1)) ** (1.0 / q) * (1.0 + 2.0 ** abs(alpha))
    if theorem in ("T3_3", "Cor3_3"):
        q, alpha, lam = params["q"], params["alpha"], params["lambda"]
        return (w1.sphere_mass / c_of(w1)) ** (1.0 / q) * (1.0 + 2.0 ** abs(lam - alpha))
    if theorem == "T3_4":
        p, beta = params["p"], params["beta"]
        return ((n + gamma) / w2.sphere_mass) ** (beta / (n + gamma)) * (
            w1.sphere_mass / c_of(w1)
        ) ** (1.0 / p)
    if theorem == "T3_5":
        q, beta, alpha1 = params["q"], params["beta"], params["alpha1"]
        s = (n + gamma) * alpha1 / n
        return (
            (w2.sphere_mass / c_of(w2)) ** (1.0 / q)
            * ((n + gamma) / w1.sphere_mass) ** (beta / (n + gamma))
            * (1.0 + 2.0 ** abs(s))
        )
    if theorem == "T3_6":
        q, beta, alpha1, lam, p = params["q"], params["beta"], params["alpha1"], params["lambda"], params["p"]
        s = (n + gamma) * (lam - alpha1) / n
        k = (
            (w2.sphere_mass / c_of(w2)) ** (1.0 / q)
            * ((n + gamma) / w1.sphere_mass) ** (beta / (n + gamma))
            * (1.0 + 2.0 ** abs(s))
        )
        if p < 1.0:
            k *= (1.0 - 2.0 ** (-(n + gamma) * lam * p / n)) ** (-1.0 / p)
        return k
    raise ConfigError(f"no tracked slack for theorem {theorem}")


# ---------------------------------------------------------------------------
# hypothesis validation
# ---------------------------------------------------------------------------

def validate_case(case: TheoremCase) -> Optional[str]:
    """None when the theorem's hypotheses hold, else the violation reason."""
    p = case.params
    n = p.get("n", case.w1.dim if case.w1 else 1)
    gamma = case.w1.gamma if case.w1 else 0.0
    th = case.theorem
    if th in ("T3_1", "Cor3_1"):
        if gamma <= -n:
            return f"gamma={gamma} <= -n"
        if not (1.0 <= p["p"] < math.inf):
            return "requires 1 <= p < inf"
        if 1.0 + p["lambda"] * p["p"] <= 0.0:
            return f"1 + lambda p = {1 + p['lambda'] * p['p']:.3g} <= 0"
    elif th in ("T3_2", "Cor3_2"):
        if not (1.0 <= p["p"] < math.inf and 1.0 <= p["q"] < math.inf):
            return "requires 1 <= p, q < inf"
        if gamma <= -n:
            return f"gamma={gamma} <= -n"
    elif th in ("T3_3", "Cor3_3"):
        if not (1.0 <= p["q"] < math.inf and 0.0 < p["p"] < math.inf):
            return "requires 1 <= q and 0 < p"
        if p["lambda"] <= 0.0:
            return "requires lambda > 0"
    elif th == "T3_4":
        if not (1.0 <= p["p"] < math.inf):
            return "requires 1 <= p"
        if not (0.0 < p["beta"] <= 1.0):
            return "requires 0 < beta <= 1"
        lam1 = p["lambda"] - p["beta"] * p["p"] / (n + gamma)
        if lam1 <= 0.0:
            return f"lambda1 = {lam1:.3g} <= 0"
    elif th in ("T3_5", "T3_6"):
        if not (1.0 <= p["q"] < math.inf):
            return "requires 1 <= q"
        if th == "T3_5" and not (1.0 <= p["p"] < math.inf):
            return "requires 1 <= p"
        if not (0.0 < p["beta"] <= 1.0):
            return "requires 0 < beta <= 1"
        expected = p["alpha2"] + n * p["beta"] / (n + gamma)
        if abs(expected - p["alpha1"]) > 1e-12:
            return "alpha1 != alpha2 + n beta/(n+gamma)"
        if th == "T3_6" and p["lambda"] < 0.0:
            return "requires lambda >= 0"
    return None


# ---------------------------------------------------------------------------
# default corpus
# ---------------------------------------------------------------------------

def default_corpus(n: int, omega: AngularProfile, rprime: float, size: int = 20) -> list[TestFunction]:
    """Deterministic separable test functions: indicator shells, compact power
    bumps and truncated exponentials crossed with angular profiles
    {1, 2 + first coordinate, |Omega|-matched}."""

    def bump(a: float, lo: float, hi: float, name: str) -> Callable:
        return separable(
            n,
            lambda r, _a=a: np.asarray(r, dtype=float) ** _a,
            support=(lo, hi),
            name=name,
        )

    radials = [
        indicator_shell(n, 1.0, 2.0, name="shell_1_2"),
        indicator_shell(n, 0.25, 4.0, name="shell_.25_4"),
        indicator_shell(n, 2.0 ** -6, 2.0 ** 6, name="shell_wide"),
        bump(0.5, 0.5, 2.0, "bump_r^.5"),
        bump(-0.5, 0.25, 1.0, "bump_r^-.5"),
        bump(1.0, 0.125, 8.0, "bump_r^1"),
        separable(n, lambda r: np.exp(-np.asarray(r, dtype=float)),
                  support=(0.0, 6.0), exponents=(0.0, None), name="texp"),
    ]

    def ang_tilt(points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return 2.0 + pts[:, 0]

    expo = rprime - 2.0

    def ang_matched(points):
        v = omega(points)
        av = np.abs(v)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(av > 0, av ** expo * v, 0.0)

    angulars = [(None, "ang1"), (ang_tilt, "ang2+x1"), (ang_matched, "angmatch")]
    corpus = []
    for rad in radials:
        for ang, aname in angulars:
            corpus.append(
                separable(
                    n,
                    rad.radial,
                    ang,
                    support=rad.support,
                    exponents=(rad.radial_exponent_at_zero, rad.radial_exponent_at_infinity),
                    name=f"{rad.name}__{aname}",
                )
            )
    return corpus[:size]


# ---------------------------------------------------------------------------
# norm dispatch per theorem
# ---------------------------------------------------------------------------

def _norms_for(case: TheoremCase):
    """(source_norm, target_norm) evaluators f -> NormResult."""
    p = case.params
    w1, w2 = case.w1, case.w2
    win = case.window

    def cm(lam):
        return lambda f, strict=True: central_morrey_norm(f, p["p"], lam, w1, win, strict=strict)

    th = case.theorem
    if th in ("T3_1", "Cor3_1"):
        ev = cm(p["lambda"])
        return ev, ev
    if th in ("T3_2", "Cor3_2"):
        ev = lambda f, strict=True: herz_norm(f, p["alpha"], p["p"], p["q"], w1, win, strict=strict)
        return ev, ev
    if th in ("T3_3", "Cor3_3"):
        ev = lambda f, strict=True: morrey_herz_norm(f, p["alpha"], p["lambda"], p["p"], p["q"], w1, win, strict=strict)
        return ev, ev
    if th == "T3_4":
        lam1 = p["lambda"] - p["beta"] * p["p"] / (w1.dim + w1.gamma)
        src = lambda f, strict=True: two_weight_morrey_norm(f, p["p"], lam1, w1, w2, win, strict=strict)
        tgt = lambda f, strict=True: two_weight_morrey_norm(f, p["p"], p["lambda"], w1, w2, win, strict=strict)
        return src, tgt
    if th == "T3_5":
        src = lambda f, strict=True: two_weight_herz_norm(f, p["alpha1"], p["p"], p["q"], w1, w2, win, strict=strict)
        tgt = lambda f, strict=True: two_weight_herz_norm(f, p["alpha2"], p["p"], p["q"], w1, w2, win, strict=strict)
        return src, tgt
    if th == "T3_6":
        src = lambda f, strict=True: two_weight_morrey_herz_norm(f, p["alpha1"], p["lambda"], p["p"], p["q"], w1, w2, win, strict=strict)
        tgt = lambda f, strict=True: two_weight_morrey_herz_norm(f, p["alpha2"], p["lambda"], p["p"], p["q"], w1, w2, win, strict=strict)
        return src, tgt
    raise ConfigError(f"no norms for theorem {th}")


def _constant_for(case: TheoremCase) -> bmod.BoundConstant:
    p = case.params
    n = case.w1.dim
    gamma = case.w1.gamma
    th = case.theorem
    phi = case.kernel
    if th in ("T3_1", "Cor3_1"):
        return bmod.c1(phi, n, gamma, p["lambda"])
    if th in ("T3_2", "Cor3_2"):
        # the upper-bound chain needs the proof's alpha variant
        return bmod.c2(phi, n, gamma, p["q"], alpha=p["alpha"])
    if th in ("T3_3", "Cor3_3"):
        return bmod.c3(phi, n, gamma, p["q"], p["lambda"], p["alpha"])
    if th == "T3_4":
        lam1 = p["lambda"] - p["beta"] * p["p"] / (n + gamma)
        return bmod.c4(phi, n, gamma, p["p"], lam1, p["beta"], lam=p["lambda"])
    if th == "T3_5":
        return bmod.c5(phi, n, gamma, p["q"], p["alpha1"], p["beta"], "herz", alpha2=p["alpha2"])
    if th == "T3_6":
        return bmod.c5(phi, n, gamma, p["q"], p["alpha1"], p["beta"], "morrey_herz",
                       lam=p["lambda"], alpha2=p["alpha2"])
    raise ConfigError(f"no constant for theorem {th}")


def _omega_conjugate(case: TheoremCase) -> float:
    p = case.params
    if case.theorem in ("T3_1", "Cor3_1", "T3_4"):
        return conjugate(p["p"])
    return conjugate(p["q"])


def _apply_operator(case: TheoremCase, f: TestFunction, tol: float = 1e-9) -> TestFunction:
    op = HausdorffOperator(case.kernel, case.omega, case.w1.dim)
    if case.symbol is not None:
        return CommutatorOperator(op, case.symbol).image(f, tol)
    return op.image(f, tol)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def check_upper(case: TheoremCase, tol_rel: float = 1e-3) -> list[ReportRow]:
    """Max corpus ratio against the tracked bound K * C * ||Omega|| (* ||b||)."""
    constant = _constant_for(case)
    rows = [ReportRow(case.id, constant.id, "divergent" if constant.divergent else constant.value,
                      "", "", DIVERGENT if constant.divergent else PASS,
                      "governing constant")]
    if constant.divergent:
        rows[-1].detail = "upper check inapplicable (constant divergent)"
        return rows

    if not case.corpus:
        return rows

    rprime = _omega_conjugate(case)
    onorm = omega_norm(case.omega, rprime)
    K = tracked_slack(case.theorem, case.params, case.w1, case.w2)
    bound = K * constant.value * onorm
    if case.symbol is not None:
        bound *= case.symbol.lip_norm

    src, tgt = _norms_for(case)
    best = 0.0
    best_name = ""
    skipped = 0
    op = HausdorffOperator(case.kernel, case.omega, case.w1.dim)
    for f in case.corpus:
        nf = src(f).value
        if not (nf > 0.0 and math.isfinite(nf)):
            skipped += 1
            continue
        if case.symbol is not None:
            img = CommutatorOperator(op, case.symbol).image(f)
        else:
            img = op.image(f)
        nt = tgt(img).value
        ratio = nt / nf
        if ratio > best:
            best, best_name = ratio, f.name
    verdict = PASS if best <= bound * (1.0 + tol_rel) else FAIL
    rows.append(ReportRow(
        case.id, "upper_max_ratio", best, bound, bound * (1.0 + tol_rel) - best, verdict,
        f"argmax {best_name}; tracked slack K={K:.6g}; {skipped} degenerate corpus members skipped",
    ))
    return rows


def _pushforward_amplitude(case: TheoremCase, f: TestFunction, image_exponent: float,
                           radii=(0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 25.0)) -> tuple[float, float]:
    """Measured constant (T f)(x) / |x|^e over two decades, with its spread."""
    op = HausdorffOperator(case.kernel, case.omega, case.w1.dim)
    amps = []
    for r in radii:
        val = op.radial_apply(f, r, tol=1e-10)
        amps.append(val / r ** image_exponent)
    amps = np.asarray(amps)
    center = float(np.mean(amps))
    spread = float(np.max(np.abs(amps - center)) / max(abs(center), 1e-300))
    return center, spread


def check_lower(case: TheoremCase, tol_rel: float = 1e-3) -> list[ReportRow]:
    """Lower-bound (necessity) checks via the extremal families."""
    if case.kernel.sign == "mixed":
        return [ReportRow(case.id, "lower", "", "", "", SKIPPED, "kernel lacks constant sign")]
    th = case.theorem
    p = case.params
    n, gamma = case.w1.dim, case.w1.gamma
    rprime = _omega_conjugate(case)
    factor = bmod.lower_bound_factor(case.omega, rprime, case.w1)
    onorm = omega_norm(case.omega, rprime)
    wS = case.w1.sphere_mass
    rows: list[ReportRow] = []

    if th in ("T3_1", "Cor3_1"):
        constant = bmod.c1(case.kernel, n, gamma, p["lambda"])
        if constant.divergent:
            return [ReportRow(case.id, "lower", "divergent", "", "", DIVERGENT,
                              "C1 divergent: boundedness fails (see negative control)")]
        fam = morrey_extremal(case.omega, case.w1, p["lambda"], p["p"])
        amp_pred = bmod.c1_signed(case.kernel, n, gamma, p["lambda"]).value * onorm ** rprime
        amp, spread = _pushforward_amplitude(case, fam.function, fam.closed_form_image_exponent)
        rows.append(ReportRow(case.id, "pushforward_amplitude", amp, amp_pred,
                              abs(amp - amp_pred) / abs(amp_pred), PASS if spread < 1e-6 and
                              abs(amp - amp_pred) <= tol_rel * abs(amp_pred) else FAIL,
                              f"power-law fit spread {spread:.2e}"))
        power_norm = ((n + gamma) / wS) ** p["lambda"] * (1.0 + p["lambda"] * p["p"]) ** (-1.0 / p["p"])
        ratio = abs(amp) * power_norm / fam.closed_form_norm
        lower = constant.value * factor
        rows.append(ReportRow(case.id, "extremal_ratio", ratio, lower, ratio - lower,
                              PASS if ratio >= lower * (1.0 - tol_rel) else FAIL,
                              "operator-norm lower bound C1 * factor"))
        if case.theorem == "Cor3_1":
            sharp = tracked_slack(th, p, case.w1) * constant.value * onorm
            rows.append(ReportRow(case.id, "sharp_constant", ratio, sharp,
                                  abs(ratio - sharp) / sharp,
                                  PASS if abs(ratio - sharp) <= tol_rel * sharp else FAIL,
                                  "two-sided constant K * C1 * ||Omega||_{p'} attained"))
        return rows

    if th in ("T3_2", "Cor3_2"):
        q = p["q"]
        ms = case.extremal_ms or [6, 8, 10]
        ratios = []
        for m in ms:
            c2m = bmod.herz_lower_integral(case.kernel, n, gamma, q, m)
            eps = 2.0 ** (-m)
            lm = 2.0 ** (-(m - 1) * eps) * wS ** (1.0 / q) * c2m * factor
            ratios.append(lm)
            thr = 0.95 * c2m * factor
            rows.append(ReportRow(case.id, f"lower_ratio_m{m}", lm, thr, lm - thr,
                                  PASS if lm >= thr else FAIL,
                                  "truncated-scale lower-bound functional"))
        mono = all(ratios[i] <= ratios[i + 1] + 1e-12 for i in range(len(ratios) - 1))
        rows.append(ReportRow(case.id, "lower_monotone_in_m", float(mono), 1.0,
                              0.0 if mono else -1.0, PASS if mono else FAIL,
                              f"ratios {['%.6g' % r for r in ratios]}"))
        # pointwise chain inequality at sample radii: T f_m (x) >= C2(m) ||O||^{q'} |x|^{-A}
        m = ms[-1]
        fam = herz_extremal(case.omega, case.w1, q, p["alpha"], m)
        c2m = bmod.herz_lower_integral(case.kernel, n, gamma, q, m)
        op = HausdorffOperator(case.kernel, case.omega, n)
        A = -fam.closed_form_image_exponent
        worst = math.inf
        for r in (2.0 ** m * 0.75, 2.0 ** (m + 1) * 0.75):
            hv = abs(op.radial_apply(fam.function, r, tol=1e-10))
            lowerpt = c2m * onorm ** rprime * r ** (-A)
            worst = min(worst, hv / lowerpt)
        rows.append(ReportRow(case.id, "pointwise_chain", worst, 1.0, worst - 1.0,
                              PASS if worst >= 1.0 - 1e-8 else FAIL,
                              f"min over sampled radii of Tf_m(x) / (C2(m) ||O||^q' |x|^-A), m={m}"))
        return rows

    if th in ("T3_3", "Cor3_3"):
        q = p["q"]
        constant = bmod.c3(case.kernel, n, gamma, q, p["lambda"], p["alpha"])
        if constant.divergent:
            return [ReportRow(case.id, "lower", "divergent", "", "", DIVERGENT,
                              "C3 divergent")]
        fam = morrey_herz_extremal(case.omega, case.w1, q, p["alpha"], p["lambda"])
        amp_pred = bmod.c3_signed(case.kernel, n, gamma, q, p["lambda"], p["alpha"]).value * onorm ** rprime
        amp, spread = _pushforward_amplitude(case, fam.function, fam.closed_form_image_exponent)
        rows.append(ReportRow(case.id, "pushforward_amplitude", amp, amp_pred,
                              abs(amp - amp_pred) / abs(amp_pred), PASS if spread < 1e-6 and
                              abs(amp - amp_pred) <= tol_rel * abs(amp_pred) else FAIL,
                              f"power-law fit spread {spread:.2e}"))
        s = p["lambda"] - p["alpha"]
        if s != 0.0:
            power_chunk = abs((1.0 - 2.0 ** (-q * s)) / (q * s)) ** (1.0 / q) * wS ** (1.0 / q)
        else:
            power_chunk = math.log(2.0) ** (1.0 / q) * wS ** (1.0 / q)
        power_norm = power_chunk * (1.0 - 2.0 ** (-p["lambda"] * p["p"])) ** (-1.0 / p["p"])
        ratio = abs(amp) * power_norm / fam.herz_norm_closed_form(p["p"])
        lower = constant.value * factor
        rows.append(ReportRow(case.id, "extremal_ratio", ratio, lower, ratio - lower,
                              PASS if ratio >= lower * (1.0 - tol_rel) else FAIL,
                              "operator-norm lower bound C3 * factor"))
        return rows

    return [ReportRow(case.id, "lower", "", "", "", SKIPPED,
                      "no necessity direction for commutator theorems")]


def check_lemma_2_1(gammas=(-0.9, -0.5, 0.0, 1.0, 2.5), dims=(1, 2, 3),
                    ks=range(-5, 6), tol: float = 1e-8) -> list[ReportRow]:
    rows = []
    for n in dims:
        for gamma in gammas:
            w = Weight.power(gamma, n)
            expected = 1.0 - 2.0 ** (-gamma - n)
            worst = 0.0
            for k in ks:
                ratio = annulus_mass(w, k) / ball_mass(w, 2.0 ** k)
                worst = max(worst, abs(ratio - expected))
            rows.append(ReportRow(
                "lemma_2_1", f"annulus_ball_ratio_n{n}_gamma{gamma:g}", worst, tol,
                tol - worst, PASS if worst < tol else FAIL,
                f"max over k in [{min(ks)}, {max(ks)}] of |w(C_k)/w(B_k) - (1 - 2^-gamma-n)|",
            ))
    return rows


def check_ineq_3_8(b: LipschitzSymbol, sample_count: int = 10000, seed: int = 7,
                   case_id: str = "ineq_3_8") -> ReportRow:
    """Pointwise bound |b(x) - b(|x| y'/t)| <= ||b|| |x|^beta (1 + 1/t)^beta
    on log-uniform samples; FAILs with a witness point on violation."""
    rng = np.random.default_rng(seed)
    n = b.dim
    worst = 0.0
    witness = None
    for _ in range(sample_count):
        t = 10.0 ** rng.uniform(-3, 3)
        x = rng.standard_normal(n)
        x *= 10.0 ** rng.uniform(-2, 2) / max(np.linalg.norm(x), 1e-12)
        y = rng.standard_normal(n)
        y /= max(np.linalg.norm(y), 1e-12)
        r = float(np.linalg.norm(x))
        bound = b.lip_norm * r ** b.beta * (1.0 + 1.0 / t) ** b.beta
        actual = abs(float(b(x[None, :])[0]) - float(b((r / t) * y[None, :])[0]))
        slack = actual / bound if bound > 0 else math.inf
        if slack > worst:
            worst = slack
            witness = (x.tolist(), t, y.tolist())
    ok = worst <= 1.0 + 1e-12
    return ReportRow(
        case_id, f"pointwise_bound_{b.name}", worst, 1.0, 1.0 - worst,
        PASS if ok else FAIL,
        f"max slack ratio over {sample_count} samples" + ("" if ok else f"; witness {witness}"),
    )


def check_divergence_control(case: TheoremCase, windows=(8, 16, 24)) -> list[ReportRow]:
    """With a divergent governing constant, window-truncated extremals must
    show monotone ratio growth as the truncation widens."""
    p = case.params
    n, gamma = case.w1.dim, case.w1.gamma
    e = (n + gamma) * p["lambda"]
    op = HausdorffOperator(case.kernel, case.omega, n)
    rows = []
    ratios = []
    for wsize in windows:
        lo, hi = 2.0 ** (-wsize), 2.0 ** wsize
        f = separable(
            n,
            lambda r, _e=e: np.asarray(r, dtype=float) ** _e,
            support=(lo, hi),
            name=f"truncated_extremal_w{wsize}",
        )
        img = op.image(f)
        win = (-wsize - 4, wsize + 4)
        nf = central_morrey_norm(f, p["p"], p["lambda"], case.w1, win)
        nh = central_morrey_norm(img, p["p"], p["lambda"], case.w1, win, strict=False)
        ratios.append(nh.value / nf.value)
        rows.append(ReportRow(case.id, f"ratio_window_{wsize}", ratios[-1], "", "", DIVERGENT,
                              "truncated-extremal ratio at dyadic window"))
    growing = all(ratios[i + 1] >= ratios[i] * 1.05 for i in range(len(ratios) - 1))
    rows.append(ReportRow(case.id, "ratio_growth", ratios[-1] / ratios[0], 1.05, "",
                          DIVERGENT if growing else FAIL,
                          f"ratios {['%.4g' % r for r in ratios]} must grow monotonically"))
    return rows


# ---------------------------------------------------------------------------
# configuration and the suite driver
# ---------------------------------------------------------------------------

def _build_weight(spec: dict) -> Weight:
    gamma = float(spec["gamma"])
    dim = int(spec["dim"])
    angular = spec.get("angular", "const")
    if angular == "const":
        return Weight.power(gamma, dim)
    from . import exprs

    fn = exprs.sphere_expression(angular, dim)
    return Weight(gamma, fn, dim, angular_lower_bound=spec.get("angular_lower_bound"))


def _build_omega(spec: dict) -> AngularProfile:
    dim = int(spec["dim"])
    expr = spec.get("expr", "1")
    if expr.strip() == "1":
        return AngularProfile.constant(1.0, dim)
    return AngularProfile.from_expression(expr, dim, nonvanishing=spec.get("nonvanishing", True))


def _build_kernel(spec: dict) -> RadialKernel:
    preset = spec["preset"]
    if preset == "hardy":
        return kernel_presets("hardy", int(spec["n"]))
    if preset == "adjoint_hardy":
        return kernel_presets("adjoint_hardy")
    if preset == "power":
        return kernel_presets("power", float(spec["a"]), float(spec.get("lo", 0.0)),
                              float(spec.get("hi", math.inf)))
    if preset in ("gaussian", "double_exp"):
        return kernel_presets(preset)
    raise ConfigError(f"unknown kernel preset {preset!r}")


def _build_symbol(spec: dict, dim: int) -> LipschitzSymbol:
    kind = spec.get("kind", "power")
    return lipschitz_presets(kind, float(spec.get("beta", 1.0)), dim)


def load_config(source) -> dict:
    if isinstance(source, dict):
        return source
    text = open(source, "r", encoding="utf-8").read() if isinstance(source, str) else source.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def default_config() -> dict:
    import importlib.resources as res

    with res.files("rough_hausdorff").joinpath("configs/default.json").open("r") as fh:
        return json.load(fh)


def _case_from_config(entry: dict, registries: dict, tolerances: dict) -> TheoremCase:
    try:
        theorem = entry["theorem"]
        if theorem not in THEOREMS:
            raise ConfigError(f"case {entry.get('id')}: unknown theorem {theorem!r}")
        params = dict(entry.get("params", {}))
        w1 = registries["weights"][entry["weight"]] if "weight" in entry else None
        if "weight2" in entry:
            w2 = registries["weights"][entry["weight2"]]
        else:
            w2 = w1
        omega = registries["omegas"][entry["omega"]] if "omega" in entry else None
        kernel = registries["kernels"][entry["kernel"]] if "kernel" in entry else None
        symbol = None
        if "symbol" in entry:
            symbol = _build_symbol(entry["symbol"], w1.dim if w1 else 1)
            params.setdefault("beta", symbol.beta)
        corpus: list[TestFunction] = []
        if entry.get("corpus") == "default" and omega is not None and w1 is not None:
            rprime = conjugate(params.get("q", params.get("p", 2.0)))
            corpus = default_corpus(w1.dim, omega, rprime, int(entry.get("corpus_size", 20)))
        return TheoremCase(
            id=entry["id"],
            theorem=theorem,
            params=params,
            kernel=kernel,
            omega=omega,
            w1=w1,
            w2=w2,
            symbol=symbol,
            corpus=corpus,
            extremal_ms=list(entry.get("extremal_ms", [])),
            window=tuple(entry.get("window", tolerances.get("dyadic_window", (-16, 20)))),
            expect=entry.get("expect", "pass"),
        )
    except KeyError as exc:
        raise ConfigError(f"case {entry.get('id', '?')}: missing key {exc}") from exc


def run_case(case: TheoremCase, tol_rel: float) -> list[ReportRow]:
    if case.theorem == "Lemma2_1":
        return check_lemma_2_1()
    if case.theorem == "Ineq3_8":
        rows = []
        for beta in case.params.get("betas", (0.25, 0.5, 1.0)):
            b = lipschitz_presets("power", beta, case.params.get("n", 1))
            rows.append(check_ineq_3_8(b, case.params.get("samples", 10000), case_id=case.id))
        corrupt = lipschitz_presets("power", 0.5, case.params.get("n", 1))
        corrupted = LipschitzSymbol(corrupt.eval, corrupt.beta, corrupt.lip_norm * 0.5,
                                    corrupt.dim, name="corrupted", validate=False)
        row = check_ineq_3_8(corrupted, 2000, case_id=case.id)
        detected = row.verdict == FAIL
        rows.append(ReportRow(case.id, "corrupted_norm_control", row.value, 1.0, "",
                              PASS if detected else FAIL,
                              "halved lip_norm must be caught with a witness: " + row.detail))
        return rows

    reason = validate_case(case)
    if reason is not None:
        return [ReportRow(case.id, "hypotheses", "", "", "", SKIPPED, reason)]

    if case.expect == "divergent":
        constant = _constant_for(case)
        rows = [ReportRow(case.id, constant.id, "divergent" if constant.divergent else constant.value,
                          "", "", DIVERGENT if constant.divergent else FAIL,
                          "expected divergent governing constant")]
        if constant.divergent and case.theorem in ("T3_1", "Cor3_1"):
            rows.extend(check_divergence_control(case))
        return rows

    rows = check_upper(case, tol_rel)
    rows.extend(check_lower(case, tol_rel))
    return rows


def run_suite(config) -> VerificationReport:
    cfg = load_config(config)
    tolerances = dict(cfg.get("tolerances", {}))
    if "dyadic_window" in cfg:
        tolerances.setdefault("dyadic_window", cfg["dyadic_window"])
    tol_rel = float(tolerances.get("ratio_rel", 1e-3))
    registries = {
        "weights": {k: _build_weight(v) for k, v in cfg.get("weights", {}).items()},
        "omegas": {k: _build_omega(v) for k, v in cfg.get("omegas", {}).items()},
        "kernels": {k: _build_kernel(v) for k, v in cfg.get("kernels", {}).items()},
    }
    cases = [_case_from_config(entry, registries, tolerances) for entry in cfg.get("cases", [])]
    ids = [c.id for c in cases]
    if len(set(ids)) != len(ids):
        raise ConfigError("duplicate case ids")

    t0 = time.time()
    rows: list[ReportRow] = []
    plots: dict[str, list] = {}
    for case in cases:
        case_rows = run_case(case, tol_rel)
        rows.extend(case_rows)
        mrows = [(int(r.quantity.split("_m")[-1]), r.value) for r in case_rows
                 if r.quantity.startswith("lower_ratio_m")]
        if mrows:
            plots[f"{case.id}_ratio_vs_m"] = sorted(mrows)
        wrows = [(int(r.quantity.split("_window_")[-1]), r.value) for r in case_rows
                 if r.quantity.startswith("ratio_window_")]
        if wrows:
            plots[f"{case.id}_ratio_vs_window"] = sorted(wrows)

    metadata = {
        "tolerances": tolerances,
        "dyadic_window": list(tolerances.get("dyadic_window", (-16, 20))),
        "grid": "quarter-dyadic radii 2^(j/4)",
        "cases": ids,
        "runtime_seconds": round(time.time() - t0, 3),
    }
    return VerificationReport(rows, metadata, plots)


def write_report(report: VerificationReport, out_dir: str) -> dict:
    import os

    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    body = report.to_canonical_json()
    paths["json"] = os.path.join(out_dir, "report.json")
    with open(paths["json"], "w", encoding="utf-8") as fh:
        fh.write(body + "\n")
    paths["csv"] = os.path.join(out_dir, "report.csv")
    with open(paths["csv"], "w", encoding="utf-8") as fh:
        fh.write(report.to_csv())
    paths["meta"] = os.path.join(out_dir, "report.meta.json")
    with open(paths["meta"], "w", encoding="utf-8") as fh:
        json.dump(report.metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for name, points in report.plots.items():
        path = os.path.join(out_dir, f"{name}.dat")
        with open(path, "w", encoding="utf-8") as fh:
            for x, y in points:
                fh.write(f"{x} {_fmt(y)}\n")
        paths[name] = path
    return paths
