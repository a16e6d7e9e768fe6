"""Reduced simplicial homology over a field.

Reduced homology comes from the augmented chain complex: a single
generator in degree -1 receives every vertex with coefficient 1.  Hence
the empty complex has H~_{-1} = k and nothing else, while any nonempty
complex has H~_{-1} = 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .field_linalg import QQ, FieldSpec, Matrix, rank


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    facets: frozenset = frozenset()

    def __post_init__(self):
        fs = [frozenset(f) for f in self.facets if f]
        for f in fs:
            if not all(0 <= v < self.vertex_count for v in f):
                raise ValueError(f"facet {sorted(f)} uses a vertex outside 0..{self.vertex_count - 1}")
        maximal = frozenset(f for f in fs if not any(f < g for g in fs))
        object.__setattr__(self, "facets", maximal)

    @classmethod
    def from_facets(cls, facets, vertex_count: int | None = None) -> "SimplicialComplex":
        facets = [tuple(f) for f in facets]
        if vertex_count is None:
            vertex_count = 1 + max((v for f in facets for v in f), default=-1)
        return cls(vertex_count, frozenset(frozenset(f) for f in facets))

    def is_empty(self) -> bool:
        return not self.facets

    @property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    @cached_property
    def _faces(self) -> dict[int, list[tuple[int, ...]]]:
        by_dim: dict[int, set] = {}
        for f in self.facets:
            verts = sorted(f)
            for k in range(1, len(verts) + 1):
                by_dim.setdefault(k - 1, set()).update(itertools.combinations(verts, k))
        return {d: sorted(s) for d, s in by_dim.items()}

    def faces(self, d: int) -> list[tuple[int, ...]]:
        """d-dimensional faces as sorted vertex tuples, lexicographically ordered."""
        if d == -1:
            return [()]
        return self._faces.get(d, [])

    def f_vector(self) -> list[int]:
        return [len(self.faces(d)) for d in range(self.dimension + 1)]


def boundary_matrix(K: SimplicialComplex, d: int) -> Matrix:
    """Matrix of the boundary from d-faces to (d-1)-faces; d = 0 is the augmentation."""
    if d < 0:
        raise ValueError("boundary_matrix needs d >= 0")
    src = K.faces(d)
    dst = K.faces(d - 1)
    index = {s: i for i, s in enumerate(dst)}
    ents = {}
    for j, s in enumerate(src):
        for pos in range(len(s)):
            face = s[:pos] + s[pos + 1:]
            ents[(index[face], j)] = -1 if pos % 2 else 1
    return Matrix(len(dst), len(src), ents)


def reduced_homology_dims(K: SimplicialComplex, f: FieldSpec = QQ) -> dict[int, int]:
    """Nonzero dims of H~_d(K; f) for d >= -1."""
    if K.is_empty():
        return {-1: 1}
    top = K.dimension
    ranks = {d: rank(boundary_matrix(K, d), f) for d in range(0, top + 1)}
    ranks[top + 1] = 0
    out = {}
    for d in range(-1, top + 1):
        n_faces = len(K.faces(d))
        h = n_faces - ranks.get(d, 0) - ranks[d + 1]
        if h:
            out[d] = h
    return out


def reduced_euler_characteristic(K: SimplicialComplex) -> int:
    """sum_d (-1)^d #faces_d, including the empty face in degree -1."""
    if K.is_empty():
        return -1
    return -1 + sum((-1) ** d * c for d, c in enumerate(K.f_vector()))
