"""Test corpora: every squarefree ideal on few variables, and seeded random ones."""
from __future__ import annotations

import itertools
import random

from .monomials import MonomialIdeal


def all_squarefree_ideals(n: int) -> list[MonomialIdeal]:
    """One ideal per nonempty antichain of nonempty subsets of {1..n} (n <= 4)."""
    if n > 4:
        raise ValueError("exhaustive enumeration is limited to n <= 4")
    subsets = [frozenset(s) for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
    out = []

    def grow(start: int, chosen: list[frozenset]):
        if chosen:
            out.append(MonomialIdeal.from_supports(chosen, n))
        for i in range(start, len(subsets)):
            s = subsets[i]
            if any(s <= c or c <= s for c in chosen):
                continue
            grow(i + 1, chosen + [s])

    grow(0, [])
    return out


def random_squarefree_ideal(rng: random.Random, n: int, max_gens: int = 6) -> MonomialIdeal:
    k = rng.randint(1, max_gens)
    gens = []
    for _ in range(k):
        size = rng.randint(1, max(1, n - 1))
        gens.append(rng.sample(range(n), size))
    return MonomialIdeal.from_supports(gens, n)


def random_corpus(count: int, n: int, seed: int = 0, max_gens: int = 6) -> list[MonomialIdeal]:
    rng = random.Random(seed)
    return [random_squarefree_ideal(rng, n, max_gens) for _ in range(count)]
