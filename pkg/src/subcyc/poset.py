"""Intersection posets of subspace arrangements and their order complexes.

Order convention: ``p < q`` means X_p is strictly contained in X_q, so the
upper set ``{q > p}`` consists of the subspaces strictly containing X_p.
This is the direction for which the multiplicity formula reproduces the
local cohomology dimensions: for I = (x1*x2) the hyperplane x1 = 0 has
m_{1} = dim H^1_I(R)_{(-1,0)} = 1, which forces K(>hyperplane) to be the
empty complex.  The ambient space is never a node.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .field_linalg import QQ, Matrix, rank, rref
from .homology import SimplicialComplex
from .monomials import MonomialIdeal, SignVector, ensure_squarefree, minimal_primes

log = logging.getLogger("subcyc")


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class AffineSubspace:
    """Solution set of ``A x = b`` over Q, kept in canonical (RREF) form."""

    equations: tuple[tuple[Fraction, ...], ...]
    constants: tuple[Fraction, ...]
    nvars: int

    @classmethod
    def from_system(cls, A: Sequence[Sequence], b: Sequence, nvars: int | None = None) -> "AffineSubspace":
        n = nvars if nvars is not None else (len(A[0]) if A else 0)
        if len(A) != len(b):
            raise ArrangementError("equation and constant counts differ")
        rows = [[Fraction(v) for v in row] + [Fraction(c)] for row, c in zip(A, b)]
        for row in rows:
            if len(row) != n + 1:
                raise ArrangementError(f"equation has {len(row) - 1} coefficients, expected {n}")
        red = rref(Matrix.from_rows(rows, n + 1) if rows else Matrix.zero(0, n + 1), QQ)
        dense = red.to_rows()
        for row in dense:
            if all(v == 0 for v in row[:n]):
                raise ArrangementError("inconsistent system: the subspace is empty")
        return cls(tuple(tuple(Fraction(v) for v in r[:n]) for r in dense),
                   tuple(Fraction(r[n]) for r in dense), n)

    @classmethod
    def coordinate(cls, alpha: SignVector) -> "AffineSubspace":
        n = alpha.nvars
        A = [[1 if j == i else 0 for j in range(n)] for i in sorted(alpha.support)]
        return cls.from_system(A, [0] * len(A), n)

    @property
    def codimension(self) -> int:
        return len(self.equations)

    def _stack(self, other: "AffineSubspace"):
        A = list(self.equations) + list(other.equations)
        b = list(self.constants) + list(other.constants)
        return A, b

    def intersect(self, other: "AffineSubspace") -> "AffineSubspace | None":
        A, b = self._stack(other)
        try:
            return AffineSubspace.from_system(A, b, self.nvars)
        except ArrangementError:
            return None

    def contained_in(self, other: "AffineSubspace") -> bool:
        """Rank test: adding the other's equations changes nothing."""
        A, b = self._stack(other)
        aug = Matrix.from_rows([list(r) + [c] for r, c in zip(A, b)], self.nvars + 1)
        return rank(aug, QQ) == self.codimension

    def __str__(self):
        if not self.equations:
            return "V()"
        eqs = []
        for row, c in zip(self.equations, self.constants):
            terms = []
            for i, a in enumerate(row):
                if a == 0:
                    continue
                coef = "" if abs(a) == 1 else f"{abs(a)}*"
                sign = "-" if a < 0 else "+"
                terms.append((sign, f"{coef}x{i + 1}"))
            s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for sign, t in terms[1:]:
                s += f" {sign} {t}"
            eqs.append(f"{s} = {c}")
        return "V(" + "; ".join(eqs) + ")"


@dataclass(frozen=True)
class PosetNode:
    id: int
    geometry: SignVector | AffineSubspace
    height: int

    @property
    def sign(self) -> SignVector | None:
        return self.geometry if isinstance(self.geometry, SignVector) else None

    def label(self) -> str:
        g = self.geometry
        if isinstance(g, SignVector):
            return "V(" + ",".join(f"x{i + 1}" for i in sorted(g.support)) + ")"
        return str(g)


@dataclass(frozen=True)
class IntersectionPoset:
    nvars: int
    nodes: tuple[PosetNode, ...]
    less_than: frozenset[tuple[int, int]]

    @cached_property
    def _above(self) -> dict[int, list[int]]:
        up: dict[int, list[int]] = {p.id: [] for p in self.nodes}
        for a, b in sorted(self.less_than):
            up[a].append(b)
        return up

    @cached_property
    def _covers(self) -> dict[int, list[int]]:
        up = self._above
        return {a: [b for b in up[a] if not any((c, b) in self.less_than for c in up[a])]
                for a in up}

    def node(self, i: int) -> PosetNode:
        return self.nodes[i]

    def above(self, p: PosetNode) -> list[PosetNode]:
        return [self.nodes[q] for q in self._above[p.id]]

    def lt(self, p: PosetNode, q: PosetNode) -> bool:
        return (p.id, q.id) in self.less_than

    def maximal(self) -> list[PosetNode]:
        return [p for p in self.nodes if not self._above[p.id]]

    def by_sign(self) -> dict[SignVector, PosetNode]:
        return {p.sign: p for p in self.nodes if p.sign is not None}


def _build(nvars: int, geoms: list, heights: list[int], lt) -> IntersectionPoset:
    nodes = tuple(PosetNode(i, g, h) for i, (g, h) in enumerate(zip(geoms, heights)))
    rel = frozenset((p.id, q.id) for p in nodes for q in nodes if p.id != q.id and lt(p.geometry, q.geometry))
    return IntersectionPoset(nvars, nodes, rel)


def poset_from_ideal(I: MonomialIdeal) -> IntersectionPoset:
    """Nodes are the sums of minimal primes, i.e. intersections of components."""
    I = ensure_squarefree(I)
    comps = [a.support for a in minimal_primes(I)]
    closed = set(comps)
    frontier = list(comps)
    while frontier:
        new = []
        for s in frontier:
            for c in comps:
                u = s | c
                if u not in closed:
                    closed.add(u)
                    new.append(u)
        frontier = new
    signs = sorted((SignVector.from_support(s, I.nvars) for s in closed), key=SignVector.sort_key)
    return _build(I.nvars, signs, [a.weight for a in signs],
                  lambda a, b: a.support > b.support)


def _subspace_key(s: AffineSubspace):
    return (s.codimension, s.equations, s.constants)


def poset_from_subspaces(subspaces: Sequence[AffineSubspace]) -> IntersectionPoset:
    if not subspaces:
        raise ArrangementError("empty arrangement")
    n = subspaces[0].nvars
    if any(s.nvars != n for s in subspaces):
        raise ArrangementError("subspaces live in different ambient spaces")
    uniq = list(dict.fromkeys(subspaces))
    comps = []
    for s in uniq:
        if any(s != t and s.contained_in(t) for t in uniq):
            log.warning("discarding %s: contained in another component", s)
        else:
            comps.append(s)
    if any(s.codimension == 0 for s in comps):
        raise ArrangementError("a component is the whole ambient space")
    closed = set(comps)
    frontier = list(comps)
    while frontier:
        new = []
        for s in frontier:
            for c in comps:
                x = s.intersect(c)
                if x is not None and x not in closed:
                    closed.add(x)
                    new.append(x)
        frontier = new
    geoms = sorted(closed, key=_subspace_key)
    return _build(n, geoms, [g.codimension for g in geoms],
                  lambda a, b: a != b and a.contained_in(b))


def coordinate_subspaces(I: MonomialIdeal) -> list[AffineSubspace]:
    return [AffineSubspace.coordinate(a) for a in minimal_primes(ensure_squarefree(I))]


def strict_upset_complex(P: IntersectionPoset, p: PosetNode) -> SimplicialComplex:
    """Order complex of ``{q in P : q > p}``; vertices are the node ids of P.

    Facets are the maximal chains of the upper set.
    """
    if p.id >= len(P.nodes) or P.nodes[p.id] != p:
        raise ArrangementError("node does not belong to this poset")
    up = {q.id for q in P.above(p)}
    facets = []

    def extend(chain: list[int]):
        nxt = P._covers[chain[-1]]
        if not nxt:
            facets.append(tuple(chain))
            return
        for q in nxt:
            extend(chain + [q])

    for q in sorted(up):
        # start chains only at minimal elements of the upper set
        if not any((r, q) in P.less_than for r in up):
            extend([q])
    return SimplicialComplex.from_facets(facets, len(P.nodes))


def parse_subspaces(text: str, nvars: int | None = None) -> list[AffineSubspace]:
    """Blocks separated by blank lines; each row ``a1 a2 ... an | b``; ``#`` comments."""
    blocks: list[list[tuple[int, str]]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append((lineno, line))
    blocks = [b for b in blocks if b]
    if not blocks:
        raise ArrangementError("no subspaces in input")
    out = []
    for block in blocks:
        A, b = [], []
        for lineno, line in block:
            if line.count("|") != 1:
                raise ArrangementError(f"line {lineno}: expected 'a1 ... an | b'")
            lhs, rhs = line.split("|")
            try:
                row = [Fraction(t) for t in lhs.split()]
                c = Fraction(rhs.strip())
            except (ValueError, ZeroDivisionError):
                raise ArrangementError(f"line {lineno}: bad rational entry") from None
            if nvars is None:
                nvars = len(row)
            if len(row) != nvars:
                raise ArrangementError(f"line {lineno}: {len(row)} coefficients, expected {nvars}")
            A.append(row)
            b.append(c)
        try:
            out.append(AffineSubspace.from_system(A, b, nvars))
        except ArrangementError as e:
            raise ArrangementError(f"line {block[0][0]}: {e}") from None
    return out
