# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan of the joint two-region allocation grid.

Arithmetic mirrors _grid_py.two_region_scan operation for operation so
both backends agree to rounding error.
"""

from libc.stdlib cimport free, malloc


def two_region_scan(double bm1, double bm2, double bc1, double bc2,
                    double e1, double e2, double xa, double xb,
                    Py_ssize_t na, Py_ssize_t nb):
    """Return (ia, ib, eps) minimizing the larger unilateral grid regret.

    na and nb are cell counts per player, so the joint grid has
    (na + 1) * (nb + 1) points. Player a's region-1 mass at index ia is
    ia * xa / na. Ties resolve to the first point in row-major order.
    """
    cdef double sa = xa / na
    cdef double sb = xb / nb
    cdef Py_ssize_t ia, ib, best_ia = 0, best_ib = 0
    cdef double za, zb, d1, d2, ua, ub, ra, rb, reg, row_max
    cdef double best_eps = 1e308
    cdef double* br_a = <double*> malloc((nb + 1) * sizeof(double))
    cdef double* br_b = <double*> malloc((na + 1) * sizeof(double))
    if br_a == NULL or br_b == NULL:
        free(br_a)
        free(br_b)
        raise MemoryError()
    try:
        for ib in range(nb + 1):
            br_a[ib] = -1e308
        for ia in range(na + 1):
            za = ia * sa
            row_max = -1e308
            for ib in range(nb + 1):
                zb = ib * sb
                d1 = (za + zb) + e1
                d2 = ((xa - za) + (xb - zb)) + e2
                ua = za * (bm1 / d1 - bc1) + (xa - za) * (bm2 / d2 - bc2)
                ub = zb * (bm1 / d1 - bc1) + (xb - zb) * (bm2 / d2 - bc2)
                if ua > br_a[ib]:
                    br_a[ib] = ua
                if ub > row_max:
                    row_max = ub
            br_b[ia] = row_max
        for ia in range(na + 1):
            za = ia * sa
            for ib in range(nb + 1):
                zb = ib * sb
                d1 = (za + zb) + e1
                d2 = ((xa - za) + (xb - zb)) + e2
                ua = za * (bm1 / d1 - bc1) + (xa - za) * (bm2 / d2 - bc2)
                ub = zb * (bm1 / d1 - bc1) + (xb - zb) * (bm2 / d2 - bc2)
                ra = br_a[ib] - ua
                rb = br_b[ia] - ub
                reg = ra if ra > rb else rb
                if reg < best_eps:
                    best_eps = reg
                    best_ia = ia
                    best_ib = ib
    finally:
        free(br_a)
        free(br_b)
    return best_ia, best_ib, best_eps
