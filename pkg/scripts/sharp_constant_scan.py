#!/usr/bin/env python3
"""Scan the Morrey sharp constant across lambda: the scale-invariant extremal
must attain K * C1 * ||Omega||_{p'} with K = w(S^{n-1})^{1/p} for every
admissible lambda (power weight).  Prints a small table of ratio vs bound.

Usage: python scripts/sharp_constant_scan.py [n] [gamma] [p]
"""

import sys

from rough_hausdorff.bounds import c1, c1_signed
from rough_hausdorff.functions import AngularProfile, kernel_presets, omega_norm
from rough_hausdorff.extremals import conjugate, morrey_extremal
from rough_hausdorff.weights import Weight


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    gamma = float(sys.argv[2]) if len(sys.argv) > 2 else 0.3
    p = float(sys.argv[3]) if len(sys.argv) > 3 else 2.0
    w = Weight.power(gamma, n)
    om = AngularProfile.constant(1.0, n)
    phi = kernel_presets("hardy", n)
    onorm = omega_norm(om, conjugate(p))
    print(f"n={n} gamma={gamma} p={p}  K = w(S^{{n-1}})^(1/p) = {w.sphere_mass ** (1 / p):.6f}")
    print(f"{'lambda':>8} {'C1':>12} {'extremal ratio':>16} {'K*C1*||O||':>14} {'rel dev':>10}")
    for lam in (-0.02, -0.05, -0.1, -0.2, -0.3, -0.4):
        if 1.0 + lam * p <= 0:
            continue
        constant = c1(phi, n, gamma, lam)
        if constant.divergent:
            print(f"{lam:8.3f} {'divergent':>12}")
            continue
        fam = morrey_extremal(om, w, lam, p)
        amp = c1_signed(phi, n, gamma, lam).value * onorm ** conjugate(p)
        power_norm = ((n + gamma) / w.sphere_mass) ** lam * (1.0 + lam * p) ** (-1.0 / p)
        ratio = abs(amp) * power_norm / fam.closed_form_norm
        bound = w.sphere_mass ** (1.0 / p) * constant.value * onorm
        print(f"{lam:8.3f} {constant.value:12.6f} {ratio:16.9f} {bound:14.9f} "
              f"{abs(ratio - bound) / bound:10.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
