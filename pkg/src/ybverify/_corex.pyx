# cython: language_level=3
"""Compiled twin of ybverify._core.

Same grid representation and semantics; the arithmetic stays on Python
arbitrary-precision ints, Cython only removes interpreter overhead in the
inner loops.
"""

BACKEND = "cython"


def mul_grid(dict arows, dict brows):
    """Row-major sparse product of two grids (Gaussian-integer entries)."""
    cdef dict crows = {}
    cdef dict arow, brow, acc, row
    cdef list cur
    for i, arow in arows.items():
        acc = {}
        for j, av in arow.items():
            brow = <dict> brows.get(j)
            if brow is None:
                continue
            ar = (<tuple> av)[0]
            ai = (<tuple> av)[1]
            for k, bv in brow.items():
                br = (<tuple> bv)[0]
                bi = (<tuple> bv)[1]
                re = ar * br - ai * bi
                im = ar * bi + ai * br
                cur = <list> acc.get(k)
                if cur is None:
                    acc[k] = [re, im]
                else:
                    cur[0] = cur[0] + re
                    cur[1] = cur[1] + im
        row = {}
        for k, v in acc.items():
            re = (<list> v)[0]
            im = (<list> v)[1]
            if re or im:
                row[k] = (re, im)
        if row:
            crows[i] = row
    return crows


def add_grids(dict arows, dict brows, sa, sb):
    """sa*A + sb*B with plain integer scale factors (common-denominator step)."""
    cdef dict crows = {}
    cdef dict arow, brow, crow
    for i, arow in arows.items():
        crow = {}
        for j, v in arow.items():
            crow[j] = (sa * (<tuple> v)[0], sa * (<tuple> v)[1])
        crows[i] = crow
    for i, brow in brows.items():
        crow = <dict> crows.get(i)
        if crow is None:
            crow = {}
            for j, v in brow.items():
                crow[j] = (sb * (<tuple> v)[0], sb * (<tuple> v)[1])
            crows[i] = crow
            continue
        for j, v in brow.items():
            cur = crow.get(j)
            if cur is None:
                crow[j] = (sb * (<tuple> v)[0], sb * (<tuple> v)[1])
            else:
                re = (<tuple> cur)[0] + sb * (<tuple> v)[0]
                im = (<tuple> cur)[1] + sb * (<tuple> v)[1]
                if re or im:
                    crow[j] = (re, im)
                else:
                    del crow[j]
    cdef dict out = {}
    for i, crow in crows.items():
        if crow:
            out[i] = crow
    return out


def scale_grid(dict rows, gre, gim):
    """Multiply every entry by the Gaussian integer gre + i*gim."""
    cdef dict out = {}
    cdef dict row, orow
    if gre == 0 and gim == 0:
        return out
    for i, row in rows.items():
        orow = {}
        for j, v in row.items():
            re = (<tuple> v)[0]
            im = (<tuple> v)[1]
            orow[j] = (gre * re - gim * im, gre * im + gim * re)
        out[i] = orow
    return out


def kron_grid(dict arows, dict brows, Py_ssize_t bdim):
    """Kronecker product grid; indices are i*bdim + k, j*bdim + l."""
    cdef dict crows = {}
    cdef dict arow, brow, crow
    cdef Py_ssize_t i, j, k, l
    for i, arow in arows.items():
        for k, brow in brows.items():
            crow = {}
            for j, av in arow.items():
                ar = (<tuple> av)[0]
                ai = (<tuple> av)[1]
                for l, bv in brow.items():
                    br = (<tuple> bv)[0]
                    bi = (<tuple> bv)[1]
                    crow[j * bdim + l] = (ar * br - ai * bi, ar * bi + ai * br)
            crows[i * bdim + k] = crow
    return crows


def content_gcd(dict rows, den):
    """gcd of ``den`` and every numerator component in the grid."""
    from math import gcd
    cdef dict row
    g = den
    for row in rows.values():
        for v in row.values():
            re = (<tuple> v)[0]
            im = (<tuple> v)[1]
            if re:
                g = gcd(g, re)
            if im:
                g = gcd(g, im)
            if g == 1:
                return 1
    return g


def div_grid(dict rows, g):
    """Divide every numerator component by the exact common divisor g."""
    cdef dict out = {}
    cdef dict row, orow
    for i, row in rows.items():
        orow = {}
        for j, v in row.items():
            orow[j] = ((<tuple> v)[0] // g, (<tuple> v)[1] // g)
        out[i] = orow
    return out
