"""Why the family contains no non-minimal biharmonic surface.

Two independent obstructions: a sign mismatch in the normal bitension
component, and an exact integer polynomial identity whose positive roots
cannot occur.  Run with: python3 demos/obstruction.py
"""

import math

import numpy as np

from solgeo import (CONSTANTS, nonexistence_combination, obstruction_cubic,
                    obstruction_quintic, real_roots_interval)
from solgeo.biconservative_family import f_explicit, theta_explicit


def _laplacian_and_rhs(u):
    a = CONSTANTS.a1
    th, f = theta_explicit(u), f_explicit(u)
    s = 1.0 / math.cosh(2.0 * a * u)
    fp = -2.0 * a * a * math.tanh(2.0 * a * u) * s
    fpp = 4.0 * a ** 3 * s * (1.0 - 2.0 * s * s)
    lap = fpp + math.cos(th) * fp
    rhs = 4.0 * f * (f * f + f * math.sin(th) + math.sin(th) ** 2)
    return lap, rhs


def main():
    print("sign obstruction along the explicit profile")
    print(f"  {'u':>6} {'Delta f':>14} {'required rhs':>14}")
    for u in (-4.0, -2.0, -1.0, -0.5, -0.1):
        lap, rhs = _laplacian_and_rhs(u)
        print(f"  {u:6.1f} {lap:14.6e} {rhs:14.6e}")
    print("  Delta f stays negative while the equation needs it positive,")
    print("  so the normal bitension component never vanishes.")

    us = np.linspace(-4.0, -0.01, 201)
    gap = max(lap - rhs for lap, rhs in map(_laplacian_and_rhs, us))
    print(f"  largest gap Delta f - rhs over the grid: {gap:.6e} (< 0)")

    print("\ninteger identity obstruction")
    combo = nonexistence_combination()
    print(f"  quintic: {obstruction_quintic().coefficients}")
    print(f"  cubic:   {obstruction_cubic().coefficients}")
    print(f"  combination degree {combo.degree}, ascending coefficients:")
    print(f"    {combo.coefficients}")
    roots = real_roots_interval(combo, 0, 3)
    print(f"  positive real roots: {len(roots)} isolated intervals")
    for lo, hi in roots:
        print(f"    ({float(lo):.6f}, {float(hi):.6f})")
    print("  neither interval contains the admissible constant, and a")
    print("  constant angle contradicts the nonvanishing gradient anyway.")


if __name__ == "__main__":
    main()
