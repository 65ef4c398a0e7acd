"""Pure-Python arithmetic kernels for sparse Gaussian-integer grids.

A grid is ``{row: {col: (re, im)}}`` with arbitrary-precision integer parts
and no stored zeros.  All exact matrix arithmetic reduces to these five
functions; ``ybverify._corex`` is a compiled twin with identical semantics,
and ``ybverify.kernel`` picks whichever imports.
"""

from math import gcd

BACKEND = "python"


def mul_grid(arows, brows):
    """Row-major sparse product of two grids (Gaussian-integer entries)."""
    crows = {}
    for i, arow in arows.items():
        acc = {}
        for j, av in arow.items():
            brow = brows.get(j)
            if brow is None:
                continue
            ar, ai = av
            for k, bv in brow.items():
                br, bi = bv
                re = ar * br - ai * bi
                im = ar * bi + ai * br
                cur = acc.get(k)
                if cur is None:
                    acc[k] = [re, im]
                else:
                    cur[0] += re
                    cur[1] += im
        row = {k: (v[0], v[1]) for k, v in acc.items() if v[0] or v[1]}
        if row:
            crows[i] = row
    return crows


def add_grids(arows, brows, sa, sb):
    """sa*A + sb*B with plain integer scale factors (common-denominator step)."""
    crows = {}
    for i, arow in arows.items():
        crows[i] = {j: (sa * v[0], sa * v[1]) for j, v in arow.items()}
    for i, brow in brows.items():
        crow = crows.get(i)
        if crow is None:
            crows[i] = {j: (sb * v[0], sb * v[1]) for j, v in brow.items()}
            continue
        for j, v in brow.items():
            cur = crow.get(j)
            if cur is None:
                crow[j] = (sb * v[0], sb * v[1])
            else:
                re = cur[0] + sb * v[0]
                im = cur[1] + sb * v[1]
                if re or im:
                    crow[j] = (re, im)
                else:
                    del crow[j]
    return {i: row for i, row in crows.items() if row}


def scale_grid(rows, gre, gim):
    """Multiply every entry by the Gaussian integer gre + i*gim."""
    if gre == 0 and gim == 0:
        return {}
    out = {}
    for i, row in rows.items():
        out[i] = {
            j: (gre * v[0] - gim * v[1], gre * v[1] + gim * v[0])
            for j, v in row.items()
        }
    return out


def kron_grid(arows, brows, bdim):
    """Kronecker product grid; indices are i*bdim + k, j*bdim + l."""
    crows = {}
    for i, arow in arows.items():
        ib = i * bdim
        for k, brow in brows.items():
            crow = {}
            for j, av in arow.items():
                ar, ai = av
                jb = j * bdim
                for l, bv in brow.items():
                    br, bi = bv
                    crow[jb + l] = (ar * br - ai * bi, ar * bi + ai * br)
            crows[ib + k] = crow
    return crows


def content_gcd(rows, den):
    """gcd of ``den`` and every numerator component in the grid."""
    g = den
    for row in rows.values():
        for re, im in row.values():
            if re:
                g = gcd(g, re)
            if im:
                g = gcd(g, im)
            if g == 1:
                return 1
    return g


def div_grid(rows, g):
    """Divide every numerator component by the exact common divisor g."""
    return {
        i: {j: (v[0] // g, v[1] // g) for j, v in row.items()}
        for i, row in rows.items()
    }
