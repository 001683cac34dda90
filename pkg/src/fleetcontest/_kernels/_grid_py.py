"""Numpy fallback for the joint two-region grid scan.

Blocked over player a's rows so memory stays bounded on large grids.
Arithmetic mirrors the compiled kernel operation for operation.
"""

import numpy as np

_BLOCK = 512


def two_region_scan(bm1, bm2, bc1, bc2, e1, e2, xa, xb, na, nb, block=_BLOCK):
    """Return (ia, ib, eps) minimizing the larger unilateral grid regret.

    Same contract as the compiled kernel: na and nb are cell counts, ties
    resolve to the first point in row-major (ia, ib) order.
    """
    sa = xa / na
    sb = xb / nb
    za_all = np.arange(na + 1) * sa
    zb = np.arange(nb + 1) * sb
    rem_b = xb - zb

    def utilities(za):
        own_a = za[:, None]
        rem_a = (xa - za)[:, None]
        d1 = (own_a + zb[None, :]) + e1
        d2 = (rem_a + rem_b[None, :]) + e2
        gain1 = bm1 / d1 - bc1
        gain2 = bm2 / d2 - bc2
        return own_a * gain1 + rem_a * gain2, zb[None, :] * gain1 + rem_b[None, :] * gain2

    br_a = np.full(nb + 1, -np.inf)
    br_b = np.empty(na + 1)
    for lo in range(0, na + 1, block):
        hi = min(lo + block, na + 1)
        u_a, u_b = utilities(za_all[lo:hi])
        np.maximum(br_a, u_a.max(axis=0), out=br_a)
        br_b[lo:hi] = u_b.max(axis=1)

    best_eps = np.inf
    best_ia = 0
    best_ib = 0
    for lo in range(0, na + 1, block):
        hi = min(lo + block, na + 1)
        u_a, u_b = utilities(za_all[lo:hi])
        regret = np.maximum(br_a[None, :] - u_a, br_b[lo:hi, None] - u_b)
        flat = int(np.argmin(regret))
        value = float(regret.flat[flat])
        if value < best_eps:
            best_eps = value
            best_ia = lo + flat // (nb + 1)
            best_ib = flat % (nb + 1)
    return best_ia, best_ib, best_eps
