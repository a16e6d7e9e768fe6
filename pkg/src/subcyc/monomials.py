"""Monomial ideals, sign vectors and Alexander duality.

Variables are ``x1..xn`` in text and 0-based indices internally.  A
:class:`SignVector` in {-1, 0}^n stands at once for a multidegree, the
face ideal generated by the variables where it is -1, and the
coordinate subspace cut out by that ideal.
"""
from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

log = logging.getLogger("subcyc")

MAX_ENUM_VARS = 16


class IdealError(ValueError):
    """Malformed ideal text or an ideal outside the supported range."""

    def __init__(self, msg: str, pos: int | None = None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at column {pos + 1})")


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise IdealError("negative exponent in monomial")

    @classmethod
    def from_support(cls, support: Iterable[int], n: int) -> "Monomial":
        s = set(support)
        return cls(tuple(1 if i in s else 0 for i in range(n)))

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __str__(self):
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e > 1:
                parts.append(f"x{i + 1}^{e}")
        return "*".join(parts) if parts else "1"


def _gen_key(m: Monomial):
    return (m.degree, tuple(-e for e in m.exponents))


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Drop generators divisible by another one; deterministic order."""
    uniq = sorted(set(gens), key=_gen_key)
    keep: list[Monomial] = []
    for g in uniq:
        if not any(h.divides(g) for h in keep):
            keep.append(g)
    return tuple(keep)


@dataclass(frozen=True)
class MonomialIdeal:
    nvars: int
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        if not self.generators:
            raise IdealError("zero ideal is not supported")
        for g in self.generators:
            if g.nvars != self.nvars:
                raise IdealError(f"generator {g} has {g.nvars} variables, expected {self.nvars}")
            if g.degree == 0:
                raise IdealError("unit ideal is not supported")
        object.__setattr__(self, "generators", minimalize(self.generators))

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], n: int) -> "MonomialIdeal":
        return cls(n, tuple(Monomial.from_support(s, n) for s in supports))

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.generators)

    def supports(self) -> list[frozenset[int]]:
        return [g.support for g in self.generators]

    def lcm(self) -> tuple[int, ...]:
        return tuple(max(g.exponents[i] for g in self.generators) for i in range(self.nvars))

    def permute(self, perm: Sequence[int]) -> "MonomialIdeal":
        """Rename variable i to perm[i]."""
        gens = []
        for g in self.generators:
            e = [0] * self.nvars
            for i, v in enumerate(g.exponents):
                e[perm[i]] = v
            gens.append(Monomial(tuple(e)))
        return MonomialIdeal(self.nvars, tuple(gens))

    def __str__(self):
        return ", ".join(str(g) for g in self.generators)


@dataclass(frozen=True)
class SignVector:
    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 0) for s in self.signs):
            raise ValueError(f"sign vector entries must be -1 or 0: {self.signs}")

    @classmethod
    def from_support(cls, support: Iterable[int], n: int) -> "SignVector":
        s = set(support)
        return cls(tuple(-1 if i in s else 0 for i in range(n)))

    @classmethod
    def parse(cls, text: str) -> "SignVector":
        return cls(tuple(int(t) for t in text.split(",")))

    @property
    def nvars(self) -> int:
        return len(self.signs)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, s in enumerate(self.signs) if s == -1)

    @property
    def weight(self) -> int:
        return len(self.support)

    def sort_key(self):
        return (self.weight, tuple(sorted(self.support)))

    def permute(self, perm: Sequence[int]) -> "SignVector":
        return SignVector.from_support((perm[i] for i in self.support), self.nvars)

    def __str__(self):
        return ",".join(str(s) for s in self.signs)


def all_sign_vectors(n: int) -> list[SignVector]:
    """All of {-1,0}^n, ordered by weight then support."""
    out = [SignVector.from_support(s, n)
           for k in range(n + 1) for s in itertools.combinations(range(n), k)]
    return out


# -- parsing -----------------------------------------------------------------

_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")


def _parse_monomial(text: str, offset: int) -> tuple[dict[int, int], int]:
    """Parse one monomial; returns ({var_index: exponent}, highest index)."""
    stripped = text.strip()
    lead = offset + (len(text) - len(text.lstrip()))
    if not stripped:
        raise IdealError("empty monomial", lead)
    if stripped == "1":
        return {}, 0
    exps: dict[int, int] = {}
    top = 0
    pos = lead
    for factor in stripped.split("*"):
        f = "".join(factor.split())
        m = _FACTOR.fullmatch(f)
        if not m:
            raise IdealError(f"cannot parse factor {factor.strip()!r}", pos)
        k = int(m.group(1))
        if k < 1:
            raise IdealError("variable indices start at 1", pos)
        e = int(m.group(2)) if m.group(2) else 1
        exps[k - 1] = exps.get(k - 1, 0) + e
        top = max(top, k)
        pos += len(factor) + 1
    return exps, top


def parse_ideal(text: str, nvars: int | None = None) -> MonomialIdeal:
    """Parse ``"x1*x2, x1^2*x3"``; ``nvars`` defaults to the highest index used."""
    if not text.strip():
        raise IdealError("zero ideal is not supported", 0)
    parsed = []
    top = 0
    offset = 0
    for chunk in text.split(","):
        exps, hi = _parse_monomial(chunk, offset)
        if not exps:
            raise IdealError("unit ideal is not supported", offset)
        parsed.append(exps)
        top = max(top, hi)
        offset += len(chunk) + 1
    n = top if nvars is None else nvars
    if top > n:
        raise IdealError(f"variable x{top} exceeds n={n}")
    gens = tuple(Monomial(tuple(e.get(i, 0) for i in range(n))) for e in parsed)
    return MonomialIdeal(n, gens)


def format_ideal(I: MonomialIdeal) -> str:
    return str(I)


# -- operations --------------------------------------------------------------

def radical(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(I.nvars, tuple(Monomial.from_support(g.support, I.nvars)
                                        for g in I.generators))


def ensure_squarefree(I: MonomialIdeal) -> MonomialIdeal:
    """Radical of I, warning when that changes the generators."""
    if I.is_squarefree():
        return I
    R = radical(I)
    log.warning("ideal (%s) is not squarefree; using its radical (%s)", I, R)
    return R


def contains(I: MonomialIdeal, m: Monomial) -> bool:
    if m.nvars != I.nvars:
        raise IdealError("monomial and ideal live in different rings")
    return any(g.divides(m) for g in I.generators)


def _covers(support: frozenset[int], gens: list[frozenset[int]]) -> bool:
    return all(g & support for g in gens)


def minimal_primes(I: MonomialIdeal, max_vars: int = MAX_ENUM_VARS) -> list[SignVector]:
    """Minimal face ideals containing I (minimal vertex covers of the supports).

    Exhaustive over {-1,0}^n; ``max_vars`` caps n.
    """
    n = I.nvars
    if n > max_vars:
        raise IdealError(f"n={n} exceeds the enumeration cap of {max_vars} variables")
    gens = I.supports()
    found: list[frozenset[int]] = []
    for alpha in all_sign_vectors(n):
        s = alpha.support
        if _covers(s, gens) and not any(f <= s for f in found):
            found.append(s)
    return [SignVector.from_support(s, n) for s in found]


def alexander_dual(I: MonomialIdeal) -> MonomialIdeal:
    if not I.is_squarefree():
        raise IdealError("Alexander dual requires a squarefree ideal")
    return MonomialIdeal(I.nvars, tuple(Monomial.from_support(a.support, I.nvars)
                                        for a in minimal_primes(I)))


def alexander_dual_bruteforce(I: MonomialIdeal) -> MonomialIdeal:
    """Dual straight from the subset definition: x_S such that x_{complement S} is not in I."""
    if not I.is_squarefree():
        raise IdealError("Alexander dual requires a squarefree ideal")
    n = I.nvars
    gens = []
    for k in range(n + 1):
        for S in itertools.combinations(range(n), k):
            comp = Monomial.from_support(set(range(n)) - set(S), n)
            if not contains(I, comp):
                gens.append(Monomial.from_support(S, n))
    return MonomialIdeal(n, tuple(gens))


def face_ideal(alpha: SignVector) -> MonomialIdeal:
    if not alpha.support:
        raise IdealError("the zero sign vector has no face ideal")
    n = alpha.nvars
    return MonomialIdeal(n, tuple(Monomial.from_support([i], n) for i in sorted(alpha.support)))


def sign_of(p: MonomialIdeal) -> SignVector:
    """Inverse of :func:`face_ideal`."""
    if any(g.degree != 1 for g in p.generators):
        raise IdealError(f"({p}) is not generated by variables")
    return SignVector.from_support(set().union(*p.supports()), p.nvars)


def face_name(alpha: SignVector) -> str:
    """``V(x2,x3)`` style label of the subspace of a sign vector."""
    return "V(" + ",".join(f"x{i + 1}" for i in sorted(alpha.support)) + ")"
