"""Linking numbers of closed polygonal curves.

The linking number of two disjoint closed curves is computed exactly (up to
rounding) as the sum of signed solid angles of segment pairs: each pair of
segments contributes the quadrilateral solid angle spanned by its endpoints,
and the total divided by 4*pi is an integer for disjoint closed loops.
"""

from __future__ import annotations

import numpy as np

from .curves import PolyCurve

__all__ = ["linking_number", "linking_matrix"]

_CHUNK = 1 << 18


def _quad_solid_angles(a, b, c, d):
    """Signed solid angle of the spherical quadrilateral with vertex
    directions a, b, c, d (rows), where a - b + c - d = 0 guarantees the two
    triangle fans share one numerator."""
    la = np.linalg.norm(a, axis=1)
    lb = np.linalg.norm(b, axis=1)
    lc = np.linalg.norm(c, axis=1)
    ld = np.linalg.norm(d, axis=1)
    p = np.einsum("ij,ij->i", a, np.cross(b, c))
    ab = np.einsum("ij,ij->i", a, b)
    bc = np.einsum("ij,ij->i", b, c)
    ca = np.einsum("ij,ij->i", c, a)
    cd = np.einsum("ij,ij->i", c, d)
    da = np.einsum("ij,ij->i", d, a)
    ac = ca
    den1 = la * lb * lc + ab * lc + bc * la + ca * lb
    den2 = la * lc * ld + ac * ld + cd * la + da * lc
    return 2.0 * (np.arctan2(p, den1) + np.arctan2(p, den2))


def linking_number(a: PolyCurve, b: PolyCurve, tol: float = 0.1) -> int:
    """Gauss linking number of two disjoint closed polygonal curves.

    Raises ValueError if either curve is open or if the accumulated value is
    farther than `tol` from an integer (which indicates near-intersection or
    numerically degenerate geometry).
    """
    if not (a.closed and b.closed):
        raise ValueError("linking number requires closed curves")
    s1 = a.segment_starts()
    e1 = a.segment_ends()
    s2 = b.segment_starts()
    e2 = b.segment_ends()
    n1, n2 = len(s1), len(s2)
    total = 0.0
    ii, jj = np.meshgrid(np.arange(n1), np.arange(n2), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    for k in range(0, ii.size, _CHUNK):
        i = ii[k : k + _CHUNK]
        j = jj[k : k + _CHUNK]
        va = s1[i] - s2[j]
        vb = s1[i] - e2[j]
        vc = e1[i] - e2[j]
        vd = e1[i] - s2[j]
        total += float(_quad_solid_angles(va, vb, vc, vd).sum())
    value = total / (4.0 * np.pi)
    nearest = round(value)
    if abs(value - nearest) > tol:
        raise ValueError(
            f"linking number {value:.6f} is not close to an integer; "
            "curves may intersect or be numerically degenerate"
        )
    return int(nearest)


def linking_matrix(curves, tol: float = 0.1) -> np.ndarray:
    """Pairwise linking numbers of a list of closed curves.

    Returns an integer matrix with zeros on the diagonal.
    """
    curves = list(curves)
    q = len(curves)
    out = np.zeros((q, q), dtype=int)
    for i in range(q):
        for j in range(i + 1, q):
            lk = linking_number(curves[i], curves[j], tol=tol)
            out[i, j] = lk
            out[j, i] = lk
    return out
