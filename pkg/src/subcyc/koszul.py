"""Multigraded Betti numbers from Koszul homology, one degree at a time.

Tor_i(J, k)_alpha is the i-th homology of the Koszul complex on x_1..x_n
tensored with J, restricted to degree alpha.  Its k-th term has a basis
e_S (x) x^(alpha - e_S) over k-subsets S with alpha - e_S >= 0 and the
monomial x^(alpha - e_S) in J.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .field_linalg import QQ, FieldSpec, Matrix, rank
from .monomials import (Monomial, MonomialIdeal, SignVector, all_sign_vectors,
                        alexander_dual, contains)


@dataclass
class BettiTable:
    nvars: int
    entries: dict[tuple[int, tuple[int, ...]], int] = field(default_factory=dict)

    def get(self, i: int, alpha) -> int:
        return self.entries.get((i, tuple(alpha)), 0)

    def total(self, i: int) -> int:
        return sum(v for (j, _), v in self.entries.items() if j == i)

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0], sum(kv[0][1]), kv[0][1]))


def koszul_fiber(J: MonomialIdeal, alpha: tuple[int, ...]):
    """Terms and differentials of the Koszul complex of J in degree alpha.

    Returns ``(terms, diffs)`` with ``terms[k]`` the admissible k-subsets and
    ``diffs[k]`` the matrix of K_k -> K_{k-1} (``diffs[0]`` unused).
    """
    n = J.nvars
    terms = []
    for k in range(n + 1):
        row = []
        for S in itertools.combinations(range(n), k):
            rest = list(alpha)
            for j in S:
                rest[j] -= 1
            if min(rest, default=0) < 0:
                continue
            if contains(J, Monomial(tuple(rest))):
                row.append(S)
        terms.append(row)
    diffs = [Matrix.zero(0, len(terms[0]))]
    for k in range(1, n + 1):
        index = {S: i for i, S in enumerate(terms[k - 1])}
        ents = {}
        for col, S in enumerate(terms[k]):
            for pos, j in enumerate(S):
                ents[(index[S[:pos] + S[pos + 1:]], col)] = -1 if pos % 2 else 1
        diffs.append(Matrix(len(terms[k - 1]), len(terms[k]), ents))
    return terms, diffs


def betti_in_degree(J: MonomialIdeal, alpha, f: FieldSpec = QQ) -> dict[int, int]:
    terms, diffs = koszul_fiber(J, tuple(alpha))
    n = J.nvars
    ranks = [rank(d, f) if k else 0 for k, d in enumerate(diffs)] + [0]
    out = {}
    for i in range(n + 1):
        h = len(terms[i]) - ranks[i] - ranks[i + 1]
        if h:
            out[i] = h
    return out


def graded_betti(J: MonomialIdeal, f: FieldSpec = QQ) -> BettiTable:
    """Full multigraded Betti table; degrees range over 0 <= alpha <= lcm(J)."""
    table = BettiTable(J.nvars)
    for alpha in itertools.product(*(range(e + 1) for e in J.lcm())):
        for i, h in betti_in_degree(J, alpha, f).items():
            table.entries[(i, alpha)] = h
    return table


@dataclass
class DualityReport:
    ideal: MonomialIdeal
    dual: MonomialIdeal
    checked: int
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_dual_identity(I: MonomialIdeal, f: FieldSpec = QQ, mults=None) -> DualityReport:
    """beta_{i, supp alpha}(I^dual) == m_{|alpha| - i, alpha} for all i and alpha in Omega.

    ``mults`` is a precomputed multiplicity table of I; computed from the
    poset when omitted.
    """
    from .invariants import multiplicities_of_ideal

    if not I.is_squarefree():
        raise ValueError("the duality identity needs a squarefree ideal")
    if mults is None:
        mults = multiplicities_of_ideal(I, f)
    dual = alexander_dual(I)
    betti = graded_betti(dual, f)
    n = I.nvars
    bad = []
    checked = 0
    for alpha in all_sign_vectors(n):
        deg = tuple(-a for a in alpha.signs)
        for i in range(n + 1):
            checked += 1
            b = betti.get(i, deg)
            m = mults.at(alpha.weight - i, alpha)
            if b != m:
                bad.append(f"beta_{{{i},{deg}}}(I^v) = {b} but m_{{{alpha.weight - i},{alpha}}} = {m}")
    for (i, deg), v in betti.items():
        if any(e > 1 for e in deg):
            bad.append(f"nonzero beta_{{{i},{deg}}} = {v} outside squarefree degrees")
    return DualityReport(I, dual, checked, bad)
