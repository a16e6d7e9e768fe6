"""Local cohomology H^r_I(R) one multidegree at a time via Cech complexes.

For generators g_1..g_s of I the Cech complex has C^k = sum over k-subsets S
of the localizations R_{g_S}.  In a fixed multidegree alpha each
localization is either k or 0: it is k exactly when alpha_i >= 0 for every
variable i outside the union of the supports of {g_j : j in S}.  The
degree-alpha fiber is therefore a finite complex of 0/1-dimensional terms
with the usual alternating signs, and multiplication by x_i is the identity
on every term that is nonzero in the source degree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .field_linalg import QQ, FieldSpec, Matrix, homology_dim, induced_map_on_homology, rank
from .monomials import MonomialIdeal, SignVector

MAX_GENERATORS = 20


class CechError(ValueError):
    pass


@dataclass(frozen=True)
class CechFiber:
    ideal: MonomialIdeal
    degree: tuple[int, ...]
    terms: tuple[tuple[tuple[int, ...], ...], ...]   # terms[k] = ON k-subsets, lex order
    differentials: tuple[Matrix, ...]                # differentials[k]: C^k -> C^{k+1}

    def dim(self, k: int) -> int:
        return len(self.terms[k]) if 0 <= k < len(self.terms) else 0

    def d(self, k: int) -> Matrix:
        """C^k -> C^{k+1}, with zero matrices past either end."""
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        return Matrix.zero(self.dim(k + 1), self.dim(k))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(t) for k, t in enumerate(self.terms))


def _degree(alpha) -> tuple[int, ...]:
    if isinstance(alpha, SignVector):
        return alpha.signs
    return tuple(int(a) for a in alpha)


@lru_cache(maxsize=65536)
def _fiber(ideal: MonomialIdeal, degree: tuple[int, ...]) -> CechFiber:
    s = len(ideal.generators)
    if s > MAX_GENERATORS:
        raise CechError(f"{s} minimal generators exceeds the Cech cap of {MAX_GENERATORS}")
    if len(degree) != ideal.nvars:
        raise CechError(f"degree {degree} has the wrong length for n={ideal.nvars}")
    negative = frozenset(i for i, a in enumerate(degree) if a < 0)
    supports = ideal.supports()

    def on(S) -> bool:
        covered = frozenset().union(*(supports[j] for j in S)) if S else frozenset()
        return negative <= covered

    terms = tuple(tuple(S for S in itertools.combinations(range(s), k) if on(S))
                  for k in range(s + 1))
    diffs = []
    for k in range(s):
        index = {T: i for i, T in enumerate(terms[k + 1])}
        ents = {}
        for col, S in enumerate(terms[k]):
            for j in range(s):
                if j in S:
                    continue
                T = tuple(sorted(S + (j,)))
                # T is ON whenever S is: its support only grows
                pos = T.index(j)
                ents[(index[T], col)] = -1 if pos % 2 else 1
        diffs.append(Matrix(len(terms[k + 1]), len(terms[k]), ents))
    return CechFiber(ideal, degree, terms, tuple(diffs))


def cech_fiber(I: MonomialIdeal, alpha) -> CechFiber:
    return _fiber(I, _degree(alpha))


def graded_lc_dim(I: MonomialIdeal, r: int, alpha, f: FieldSpec = QQ) -> int:
    """dim_k H^r_I(R)_alpha."""
    if r < 0:
        return 0
    fib = cech_fiber(I, alpha)
    if r >= len(fib.terms):
        return 0
    return homology_dim(fib.d(r - 1), fib.d(r), f)


def graded_lc_dims(I: MonomialIdeal, alpha, f: FieldSpec = QQ) -> dict[int, int]:
    """All nonzero dims {r: dim H^r_I(R)_alpha} from one fiber."""
    fib = cech_fiber(I, alpha)
    ranks = [rank(m, f) for m in fib.differentials]
    out = {}
    for r in range(len(fib.terms)):
        h = fib.dim(r) - (ranks[r] if r < len(ranks) else 0) - (ranks[r - 1] if r > 0 else 0)
        if h:
            out[r] = h
    return out


def _shift_map(src: CechFiber, dst: CechFiber, r: int) -> Matrix:
    index = {S: i for i, S in enumerate(dst.terms[r])} if r < len(dst.terms) else {}
    ents = {}
    for j, S in enumerate(src.terms[r] if r < len(src.terms) else ()):
        ents[(index[S], j)] = 1
    return Matrix(dst.dim(r), src.dim(r), ents)


def multiplication_map(I: MonomialIdeal, r: int, alpha, i: int, f: FieldSpec = QQ) -> Matrix:
    """Matrix of x_i : H^r_I(R)_alpha -> H^r_I(R)_{alpha + e_i}; ``i`` is 0-based.

    Bases are the deterministic homology bases of each fiber, so composites
    of such matrices can be compared entrywise.
    """
    a = _degree(alpha)
    if not 0 <= i < len(a):
        raise CechError(f"variable index {i} out of range")
    b = a[:i] + (a[i] + 1,) + a[i + 1:]
    src, dst = cech_fiber(I, a), cech_fiber(I, b)
    if r < 0 or r >= len(src.terms):
        return Matrix.zero(0, 0)
    return induced_map_on_homology(src.d(r - 1), dst.d(r - 1), src.d(r), dst.d(r),
                                   _shift_map(src, dst, r), f)


def omega_pattern(alpha: Sequence[int]) -> SignVector:
    """Clamp a multidegree into {-1,0}^n: negative -> -1, otherwise 0."""
    return SignVector(tuple(-1 if a < 0 else 0 for a in alpha))


@dataclass
class StraightnessReport:
    r: int
    box: int
    degrees_checked: int
    maps_checked: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def straightness_check(I: MonomialIdeal, r: int, box: int = 2, f: FieldSpec = QQ) -> StraightnessReport:
    """Check that H^r_I(R) behaves as an epsilon-straight module on [-box, box]^n.

    Dimensions must only depend on the sign pattern, and x_i must be
    bijective whenever it keeps the set {j : alpha_j >= 0} unchanged,
    i.e. when alpha_i <= -2 or alpha_i >= 0.
    """
    if box < 1:
        raise ValueError("box must be >= 1")
    n = I.nvars
    rng = range(-box, box + 1)
    pattern_dim: dict[SignVector, int] = {}
    violations = []
    dims = {}
    for alpha in itertools.product(rng, repeat=n):
        d = graded_lc_dim(I, r, alpha, f)
        dims[alpha] = d
        pat = omega_pattern(alpha)
        ref = pattern_dim.setdefault(pat, graded_lc_dim(I, r, pat.signs, f))
        if d != ref:
            violations.append(f"dim at {alpha} is {d}, but {ref} at pattern {pat}")
    maps = 0
    for alpha, d in dims.items():
        for i in range(n):
            if alpha[i] == -1 or alpha[i] == box:
                continue
            beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
            if d != dims[beta]:
                violations.append(f"x{i + 1}: {alpha} -> {beta} changes dimension {d} -> {dims[beta]}")
                continue
            if d == 0:
                continue
            maps += 1
            m = multiplication_map(I, r, alpha, i, f)
            if rank(m, f) != d:
                violations.append(f"x{i + 1}: {alpha} -> {beta} is not bijective")
    return StraightnessReport(r, box, len(dims), maps, violations)
