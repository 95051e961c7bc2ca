"""Tour of the ropelength lower bounds.

Every component of a T(pQ,Q) torus link is linked with the Q-1 others, so
each must be long enough to wrap around the convex hull of that many
unit-radius tubes.  Two bounds come out of this: an isoperimetric one
(alpha_iso) and a sharper hull-perimeter one (alpha_w), and the larger of
the two, times Q, is the certified lower bound on the link's ropelength.

Run:  python3 demos/lower_bound_tour.py
"""

import math

from ropebound.bounds import (
    asymptotic_coefficients,
    lower_bound_report,
    wegner_hull_length,
)
from ropebound.helices import toroidal_correction


def main():
    print("Hull perimeter W(n) around n unit disks (W(1) = 2*pi exactly):")
    for n in (1, 2, 3, 5, 10, 100):
        print(f"  W({n:>3}) = {wegner_hull_length(n):.6f}")

    print("\nLower bounds for small T(Q,Q) links (p = 1):")
    print(f"  {'Q':>3} {'crossings':>9} {'best bound':>12} {'alpha_w':>9} {'rigor':>9}")
    for q in (2, 3, 5, 10, 20):
        rep = lower_bound_report(1, q)
        print(
            f"  {q:>3} {rep.crossing_number:>9} {rep.best_bound:>12.4f} "
            f"{rep.alpha_w:>9.4f} {rep.rigor_flag:>9}"
        )
    print("  (T(3,3) recovers the known 3*(4*pi + 4) =",
          f"{3 * (4 * math.pi + 4):.6f})")

    print("\nLarge-Q coefficients alpha = L / C^(3/4) of the bounds:")
    for p in (1, 2, 4):
        coeff = asymptotic_coefficients(p)
        print(
            f"  p={p}: alpha_w -> {coeff['alpha_w_limit']:.6f}, "
            f"alpha_iso -> {coeff['alpha_iso_limit']:.6f}, "
            f"finite-Q correction ~ {coeff['subleading']:.3f}/sqrt(Q)"
        )
    print("  alpha_w limits scale as p^(-1/4):",
          f"{asymptotic_coefficients(4)['alpha_w_limit'] / asymptotic_coefficients(1)['alpha_w_limit']:.6f}",
          f"vs 4^(-1/4) = {4 ** -0.25:.6f}")

    print("\nToroidal correction (helix on a torus vs on a cylinder) by")
    print("hole-to-strand-circle radius ratio; the factor -> 1 as the torus fattens:")
    for ratio in (1.5, 2.0, 3.0, 5.0, 10.0):
        cells = ", ".join(
            f"p={p}: {toroidal_correction(ratio, p):.6f}" for p in (1, 2, 3)
        )
        print(f"  ratio {ratio:>4}: {cells}")


if __name__ == "__main__":
    main()
