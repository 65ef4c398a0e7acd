"""Gamma matrices for even d, antisymmetrized basis elements, graded
multi-copy representations, As-exponentials and exchange operators.

The gamma matrices come from the standard recursive (Jordan-Wigner style)
doubling over Pauli factors; the basis is then permuted so the chirality
matrix is diag(+1...,-1...) with the +1 block first.  Entries stay in
{0, +-1, +-i} throughout.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .kernel import ExactScalar, SparseOperator, kron

DEFAULT_MAX_D = 8

_SIGMA1 = SparseOperator.from_entries(2, {(0, 1): 1, (1, 0): 1})
_SIGMA2 = SparseOperator.from_entries(2, {(0, 1): (0, -1), (1, 0): (0, 1)})
_SIGMA3 = SparseOperator.from_entries(2, {(0, 0): 1, (1, 1): -1})
_ID2 = SparseOperator.identity(2)


class GammaBasis:
    """The d gamma matrices plus the chirality matrix, all 2^(d/2)-dimensional.

    ``alpha`` records the branch used in gamma5 = alpha * gamma_1...gamma_d
    (the paper fixes alpha only up to sign; this artifact picks the branch
    that puts the +1 chirality block first).
    """

    def __init__(self, d, gammas, gamma5, alpha):
        self.d = d
        self.dim = gammas[0].dim
        self.gammas = tuple(gammas)
        self.gamma5 = gamma5
        self.alpha = alpha
        self._contractions = {}
        self._antisym = {}

    def gamma(self, a: int) -> SparseOperator:
        """gamma_a for a = 1..d (the paper's index convention)."""
        if not 1 <= a <= self.d:
            raise ValueError(f"gamma index {a} outside 1..{self.d}")
        return self.gammas[a - 1]

    def antisym_mask(self, mask: int) -> SparseOperator:
        """Gamma_A for the bitmask A (bit a-1 set = index a included)."""
        cached = self._antisym.get(mask)
        if cached is None:
            cached = _ordered_product(self, mask)
            self._antisym[mask] = cached
        return cached

    def pair_contraction(self, k: int) -> SparseOperator:
        """T_k = sum over |A| = k of gamma_A (x) gamma^A (subset sum, which
        equals the (1/k!)-weighted ordered multi-index sum)."""
        cached = self._contractions.get(k)
        if cached is None:
            acc = SparseOperator.zero(self.dim * self.dim)
            for A in combinations(range(self.d), k):
                mask = 0
                for a in A:
                    mask |= 1 << a
                g = self.antisym_mask(mask)
                acc = acc + kron(g, g)
            cached = acc
            self._contractions[k] = cached
        return cached

    def __repr__(self):
        return f"GammaBasis(d={self.d}, dim={self.dim})"


def _ordered_product(basis, mask):
    out = SparseOperator.identity(basis.dim)
    a = 0
    while mask:
        if mask & 1:
            out = out @ basis.gammas[a]
        mask >>= 1
        a += 1
    return out


def build_gamma(d: int, max_d: int = DEFAULT_MAX_D) -> GammaBasis:
    """Construct a chiral-basis GammaBasis for even d, 2 <= d <= max_d."""
    if d % 2 != 0 or not 2 <= d <= max_d:
        raise ValueError(f"d must be even with 2 <= d <= {max_d}, got {d}")
    m = d // 2
    gammas = []
    for k in range(m):
        pre = [_SIGMA3] * k
        post = [_ID2] * (m - 1 - k)
        for mid in (_SIGMA1, _SIGMA2):
            factors = pre + [mid] + post
            op = factors[0]
            for f in factors[1:]:
                op = kron(op, f)
            gammas.append(op)
    product = gammas[0]
    for g in gammas[1:]:
        product = product @ g
    alpha = _i_power(-m)  # (-i)^m, a valid branch of alpha^2 = (-1)^(d/2)
    gamma5 = product.scale(alpha)
    # permute the basis so the chirality diagonal is sorted +1 first
    diag = [gamma5.entry(i, i) for i in range(gamma5.dim)]
    if any(v.im != 0 or v.re not in (1, -1) for v in diag):
        raise AssertionError("chirality matrix is not diagonal +-1")
    perm = sorted(range(gamma5.dim), key=lambda i: (-diag[i].re, i))
    gammas = [g.permuted(perm) for g in gammas]
    gamma5 = gamma5.permuted(perm)
    return GammaBasis(d, gammas, gamma5, alpha)


_I_POWERS = (ExactScalar(1), ExactScalar(0, 1), ExactScalar(-1), ExactScalar(0, -1))


def _i_power(n):
    return _I_POWERS[n % 4]


def antisym_product(basis: GammaBasis, indices) -> SparseOperator:
    """Gamma_A as the ordered product over ascending distinct indices (1-based).

    Equals the full k!-term antisymmetrization because distinct gamma
    matrices anticommute; the permutation-sum definition is kept only as a
    test oracle.
    """
    mask = 0
    for a in set(indices):
        if not 1 <= a <= basis.d:
            raise ValueError(f"index {a} outside 1..{basis.d}")
        mask |= 1 << (a - 1)
    return basis.antisym_mask(mask)


class GradedRep:
    """n anticommuting copies of the Clifford algebra on 2^(n*d/2) dims.

    Copy i's generator for index a is gamma5^(x(i-1)) (x) gamma_a (x) 1...,
    which anticommutes across copies and keeps copy-internal relations.
    """

    def __init__(self, basis: GammaBasis, n: int, copy_ops):
        self.basis = basis
        self.n = n
        self.dim = copy_ops[0][0].dim
        self._ops = copy_ops
        self._components = {}

    def op(self, i: int, a: int) -> SparseOperator:
        """Gamma_{i,a} with copy i = 1..n and index a = 1..d."""
        if not 1 <= i <= self.n:
            raise ValueError(f"copy {i} outside 1..{self.n}")
        if not 1 <= a <= self.basis.d:
            raise ValueError(f"index {a} outside 1..{self.basis.d}")
        return self._ops[i - 1][a - 1]

    def __repr__(self):
        return f"GradedRep(d={self.basis.d}, n={self.n})"


def graded_rep(basis: GammaBasis, n: int) -> GradedRep:
    """Build the n-copy graded representation (n = 2 or 3)."""
    if n not in (2, 3):
        raise ValueError(f"unsupported copy count {n}")
    dim = basis.dim
    ident = SparseOperator.identity(dim)
    copy_ops = []
    for i in range(n):
        row = []
        for a in range(basis.d):
            factors = [basis.gamma5] * i + [basis.gammas[a]] + [ident] * (n - 1 - i)
            op = factors[0]
            for f in factors[1:]:
                op = kron(op, f)
            row.append(op)
        copy_ops.append(row)
    return GradedRep(basis, n, copy_ops)


def as_exp_components(rep: GradedRep, i: int, j: int):
    """S_k = s_k * sum over |A| = k of Gamma_{i,A} Gamma_{j,A}, k = 0..d,
    with s_k = (-1)^(k(k-1)/2); so E_ij(t) = sum_k t^k S_k."""
    if i == j:
        raise ValueError("copies must differ")
    key = (i, j)
    cached = rep._components.get(key)
    if cached is not None:
        return cached
    d = rep.basis.d
    comps = []
    for k in range(d + 1):
        acc = SparseOperator.zero(rep.dim)
        for A in combinations(range(1, d + 1), k):
            gi = gj = None
            for a in A:
                gi = rep.op(i, a) if gi is None else gi @ rep.op(i, a)
                gj = rep.op(j, a) if gj is None else gj @ rep.op(j, a)
            if gi is None:
                gi = gj = SparseOperator.identity(rep.dim)
            acc = acc + gi @ gj
        sk = 1 if (k * (k - 1) // 2) % 2 == 0 else -1
        comps.append(acc if sk == 1 else -acc)
    cached = tuple(comps)
    rep._components[key] = cached
    return cached


def as_exponential(rep: GradedRep, i: int, j: int, t) -> SparseOperator:
    """The As-exponential E_ij(t): matrix avatar of As(exp(t Gamma_i.Gamma_j))."""
    t = Fraction(t)
    comps = as_exp_components(rep, i, j)
    acc = comps[0]
    power = Fraction(1)
    for k in range(1, len(comps)):
        power *= t
        if power and not comps[k].is_zero():
            acc = acc + comps[k].scale(power)
    return acc


def exchange_pair(rep: GradedRep):
    """The exchange operators (P, P') = (E_12(1), E_12(-1)) on a 2-copy rep.

    At matrix level E(1) intertwines Gamma_{1,a} P = P Gamma_{2,a} and E(-1)
    the reverse (the roles come out swapped relative to the labelling next
    to the defining relations, which the exchange-identities check pins down
    explicitly).
    """
    if rep.n != 2:
        raise ValueError("exchange operators need the two-copy representation")
    return as_exponential(rep, 1, 2, 1), as_exponential(rep, 1, 2, -1)


def gamma5_pair_reflection(basis: GammaBasis, k: int) -> SparseOperator:
    """Difference of (gamma5 (x) gamma5) T_k and (-1)^(d/2) T_(d-k), summed
    over all grade-k multi-indices; zero iff the complementary-index
    reflection identity holds."""
    if not 0 <= k <= basis.d:
        raise ValueError(f"grade {k} outside 0..{basis.d}")
    g55 = kron(basis.gamma5, basis.gamma5)
    lhs = g55 @ basis.pair_contraction(k)
    sign = 1 if (basis.d // 2) % 2 == 0 else -1
    rhs = basis.pair_contraction(basis.d - k).scale(sign)
    return lhs - rhs
