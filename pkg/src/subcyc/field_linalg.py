"""Exact linear algebra over Q and prime fields F_p.

Matrices act on column vectors: a map V -> W is stored as a
``dim W x dim V`` matrix.  Elimination always pivots on the leftmost
column that still has a nonzero entry and, within that column, on the
lowest-index row, so every basis handed out here is reproducible.

Over Q the elimination is fraction-free: rows are kept as primitive
integer vectors and only the final solve step produces ``Fraction``s.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

DENSE_LIMIT = 64


class LinalgError(ValueError):
    """Raised when inputs violate a precondition (not a complex, bad shapes...)."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rationals"
    characteristic: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic not in (None, 0):
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            if self.characteristic is None or not _is_prime(self.characteristic):
                raise ValueError(f"not a prime: {self.characteristic!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``q`` or ``fp:<prime>``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return QQ
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field {text!r}") from None
            return cls("prime-field", p)
        raise ValueError(f"bad field {text!r}; expected 'q' or 'fp:<prime>'")

    @property
    def is_rational(self) -> bool:
        return self.kind == "rationals"

    def element(self, x):
        """Coerce an int/Fraction/str into this field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.is_rational:
            return Fraction(x)
        p = self.characteristic
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise LinalgError(f"{x} is not defined over F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def __str__(self):
        return "q" if self.is_rational else f"fp:{self.characteristic}"


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)


@dataclass
class Matrix:
    """Sparse matrix in triplet form; absent entries are zero."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise LinalgError("negative matrix shape")
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise LinalgError(f"entry ({i}, {j}) out of range for {self.rows}x{self.cols}")
            if v != 0:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        nr = len(rows)
        nc = cols if cols is not None else (len(rows[0]) if rows else 0)
        ents = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise LinalgError("ragged rows")
            for j, v in enumerate(row):
                if v != 0:
                    ents[(i, j)] = v
        return cls(nr, nc, ents)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        ents = {}
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise LinalgError("column length mismatch")
            for i, v in enumerate(col):
                if v != 0:
                    ents[(i, j)] = v
        return cls(rows, len(columns), ents)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, {})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_rows(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> list:
        return [self.entries.get((i, j), 0) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return Matrix(self.rows, other.cols, acc)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise LinalgError("vector length mismatch")
        out = [0] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def over(self, f: FieldSpec) -> "Matrix":
        """Entries coerced into ``f`` (reduced mod p for prime fields)."""
        return Matrix(self.rows, self.cols, {k: f.element(v) for k, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.to_rows()!r})"


# -- elimination core --------------------------------------------------------
#
# Rows are dicts {col: value}.  Over Q values are ints (rows made primitive),
# over F_p values are residues and pivot rows are scaled to a leading 1.


def _integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        d = Fraction(v).denominator
        den = den * d // gcd(den, d)
    out = {}
    for c, v in row.items():
        w = Fraction(v) * den
        out[c] = w.numerator
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _rows_of(m: Matrix, f: FieldSpec) -> list[dict]:
    rows: list[dict] = [{} for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    if f.is_rational:
        return [_integer_row(r) if r else r for r in rows]
    p = f.characteristic
    out = []
    for r in rows:
        r2 = {c: f.element(v) for c, v in r.items()}
        out.append({c: v for c, v in r2.items() if v % p})
    return out


def _combine(target: dict, pivot: dict, col: int, f: FieldSpec) -> dict:
    """Eliminate ``col`` from ``target`` using ``pivot`` (which has a nonzero there)."""
    a = target[col]
    if f.is_rational:
        b = pivot[col]
        out = {c: v * b for c, v in target.items()}
        for c, v in pivot.items():
            w = out.get(c, 0) - a * v
            if w:
                out[c] = w
            else:
                out.pop(c, None)
        return _primitive(out)
    p = f.characteristic
    out = dict(target)
    for c, v in pivot.items():
        w = (out.get(c, 0) - a * v) % p
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def _normalize_pivot(row: dict, col: int, f: FieldSpec) -> dict:
    if f.is_rational:
        if row[col] < 0:
            return {c: -v for c, v in row.items()}
        return row
    p = f.characteristic
    inv = pow(row[col], -1, p)
    return {c: v * inv % p for c, v in row.items()}


def _echelon_sparse(rows: list[dict], f: FieldSpec, reduced: bool):
    # rows bucketed by leading column; only the current bucket touches the pivot column
    buckets: dict[int, list[tuple[int, dict]]] = {}
    for i, r in enumerate(rows):
        if r:
            buckets.setdefault(min(r), []).append((i, r))
    heap = list(buckets)
    heapq.heapify(heap)
    done: list[tuple[int, dict]] = []
    while heap:
        lead = heapq.heappop(heap)
        bucket = sorted(buckets.pop(lead), key=lambda t: t[0])
        _, prow = bucket[0]
        prow = _normalize_pivot(prow, lead, f)
        for i, r in bucket[1:]:
            r = _combine(r, prow, lead, f)
            if r:
                c = min(r)
                if c not in buckets:
                    buckets[c] = []
                    heapq.heappush(heap, c)
                buckets[c].append((i, r))
        done.append((lead, prow))
    if reduced:
        for k in range(len(done) - 1, -1, -1):
            col, prow = done[k]
            for k2 in range(k):
                c2, r2 = done[k2]
                if col in r2:
                    done[k2] = (c2, _normalize_pivot(_combine(r2, prow, col, f), c2, f))
    return done


def _echelon_dense(rows: list[dict], ncols: int, f: FieldSpec, reduced: bool):
    mat = [[r.get(c, 0) for c in range(ncols)] for r in rows]
    p = f.characteristic
    piv_rows: list[list] = []
    pivots: list[int] = []
    active = list(range(len(mat)))
    for col in range(ncols):
        k = next((k for k, i in enumerate(active) if mat[i][col] != 0), None)
        if k is None:
            continue
        pi = active.pop(k)
        prow = mat[pi]
        if f.is_rational:
            if prow[col] < 0:
                prow = [-v for v in prow]
        else:
            inv = pow(prow[col], -1, p)
            prow = [v * inv % p for v in prow]
        b = prow[col]
        for i in active:
            a = mat[i][col]
            if a == 0:
                continue
            if f.is_rational:
                row = [v * b - a * w for v, w in zip(mat[i], prow)]
                g = 0
                for v in row:
                    g = gcd(g, v)
                mat[i] = [v // g for v in row] if g > 1 else row
            else:
                mat[i] = [(v - a * w) % p for v, w in zip(mat[i], prow)]
        piv_rows.append(prow)
        pivots.append(col)
    if reduced:
        for k in range(len(pivots) - 1, -1, -1):
            col, prow = pivots[k], piv_rows[k]
            b = prow[col]
            for k2 in range(k):
                r2 = piv_rows[k2]
                a = r2[col]
                if a == 0:
                    continue
                if f.is_rational:
                    row = [v * b - a * w for v, w in zip(r2, prow)]
                    g = 0
                    for v in row:
                        g = gcd(g, v)
                    row = [v // g for v in row] if g > 1 else row
                    if row[pivots[k2]] < 0:
                        row = [-v for v in row]
                    piv_rows[k2] = row
                else:
                    piv_rows[k2] = [(v - a * w) % p for v, w in zip(r2, prow)]
    return [(c, {j: v for j, v in enumerate(r) if v != 0}) for c, r in zip(pivots, piv_rows)]


def echelon(m: Matrix, f: FieldSpec, reduced: bool = False, dense: bool | None = None):
    """Row echelon form as a list of ``(pivot_col, row_dict)`` pairs.

    With ``reduced=True`` every pivot column is cleared in the other rows.
    ``dense=None`` picks the dense routine for matrices under 64x64.
    """
    rows = _rows_of(m, f)
    if dense is None:
        dense = m.rows < DENSE_LIMIT and m.cols < DENSE_LIMIT
    if dense:
        return _echelon_dense(rows, m.cols, f, reduced)
    return _echelon_sparse(rows, f, reduced)


def rank(m: Matrix, f: FieldSpec = QQ) -> int:
    if not m.entries:
        return 0
    return len(echelon(m, f))


def _ratio(num, den, f: FieldSpec):
    if f.is_rational:
        return Fraction(num, den)
    return num * pow(den, -1, f.characteristic) % f.characteristic


def kernel_basis(m: Matrix, f: FieldSpec = QQ) -> list[list]:
    """Basis of ker(m), one vector per free column in increasing order.

    Each vector has a 1 in its free column and zeros in the other free columns.
    """
    ech = echelon(m, f, reduced=True)
    pivot_cols = {c for c, _ in ech}
    basis = []
    zero = Fraction(0) if f.is_rational else 0
    for free in range(m.cols):
        if free in pivot_cols:
            continue
        v = [zero] * m.cols
        v[free] = Fraction(1) if f.is_rational else 1
        for col, row in ech:
            a = row.get(free, 0)
            if a:
                v[col] = _ratio(-a, row[col], f)
        basis.append(v)
    return basis


def rref(m: Matrix, f: FieldSpec = QQ) -> Matrix:
    """Reduced row echelon form with pivots scaled to 1 (zero rows dropped)."""
    ech = echelon(m, f, reduced=True)
    ents = {}
    for i, (col, row) in enumerate(ech):
        piv = row[col]
        for c, v in row.items():
            ents[(i, c)] = _ratio(v, piv, f) if f.is_rational else v
    return Matrix(len(ech), m.cols, ents)


def solve(m: Matrix, y: Sequence, f: FieldSpec = QQ) -> list | None:
    """A particular solution of ``m x = y`` (free variables set to 0), or None."""
    if len(y) != m.rows:
        raise LinalgError("right-hand side length mismatch")
    ents = dict(m.entries)
    for i, v in enumerate(y):
        if v != 0:
            ents[(i, m.cols)] = v
    ech = echelon(Matrix(m.rows, m.cols + 1, ents), f, reduced=True)
    zero = Fraction(0) if f.is_rational else 0
    x = [zero] * m.cols
    for col, row in ech:
        if col == m.cols:
            return None
        b = row.get(m.cols, 0)
        if b:
            x[col] = _ratio(b, row[col], f)
    return x


class _Span:
    """Incrementally maintained echelon basis, used for greedy independence."""

    def __init__(self, f: FieldSpec):
        self.f = f
        self.rows: dict[int, dict] = {}

    def _reduce(self, vec: Sequence) -> dict:
        f = self.f
        if f.is_rational:
            r = _integer_row({i: v for i, v in enumerate(vec) if v != 0})
        else:
            r = {i: f.element(v) for i, v in enumerate(vec)}
            r = {i: v for i, v in r.items() if v}
        while r:
            changed = False
            for c in sorted(r):
                if c in self.rows:
                    r = _combine(r, self.rows[c], c, f)
                    changed = True
                    break
            if not changed:
                break
        return r

    def add(self, vec: Sequence) -> bool:
        r = self._reduce(vec)
        if not r:
            return False
        lead = min(r)
        self.rows[lead] = _normalize_pivot(r, lead, self.f)
        return True


def _check_zero(m: Matrix, what: str):
    if not m.is_zero():
        raise LinalgError(what)


def homology_basis(d_in: Matrix, d_out: Matrix, f: FieldSpec = QQ) -> list[list]:
    """Representatives of ker(d_out)/im(d_in).

    Kernel vectors (from ``kernel_basis``) are taken greedily in order,
    keeping those independent of the image and of earlier choices.
    """
    if d_in.rows != d_out.cols:
        raise LinalgError("d_in and d_out do not share a middle space")
    _check_zero((d_out @ d_in).over(f), "d_out . d_in != 0: not a complex")
    span = _Span(f)
    for j in range(d_in.cols):
        span.add(d_in.column(j))
    return [z for z in kernel_basis(d_out, f) if span.add(z)]


def homology_dim(d_in: Matrix, d_out: Matrix, f: FieldSpec = QQ) -> int:
    return d_out.cols - rank(d_out, f) - rank(d_in, f)


def induced_map_on_homology(dIn_top: Matrix, dIn_bot: Matrix, dOut_top: Matrix,
                            dOut_bot: Matrix, chainMap: Matrix, f: FieldSpec = QQ) -> Matrix:
    """Matrix of the map on middle homology induced by ``chainMap``.

    ``*_top`` is the source complex U -> V -> W, ``*_bot`` the target; the
    chain map goes V_top -> V_bot.  Columns are indexed by the source
    homology basis, rows by the target one (see ``homology_basis``).  Only
    rank and zero-ness are basis independent.
    """
    if chainMap.cols != dIn_top.rows or chainMap.rows != dIn_bot.rows:
        raise LinalgError("chain map shape does not match the middle spaces")
    src = homology_basis(dIn_top, dOut_top, f)
    dst = homology_basis(dIn_bot, dOut_bot, f)
    cm = chainMap.over(f)
    # cycles must go to cycles, boundaries to boundaries
    for z in kernel_basis(dOut_top, f):
        img = cm.apply(z)
        if any(_nz(v, f) for v in dOut_bot.over(f).apply(img)):
            raise LinalgError("chain map does not commute with the outgoing differentials")
    b_bot = dIn_bot.over(f)
    for j in range(dIn_top.cols):
        img = cm.apply(dIn_top.over(f).column(j))
        if any(_nz(v, f) for v in img) and solve(b_bot, img, f) is None:
            raise LinalgError("chain map does not commute with the incoming differentials")
    nb = dIn_bot.cols
    cols = [b_bot.column(j) for j in range(nb)] + dst
    system = Matrix.from_columns(cols, dIn_bot.rows)
    ents = {}
    for j, h in enumerate(src):
        coords = solve(system, cm.apply(h), f)
        assert coords is not None
        for i, v in enumerate(coords[nb:]):
            if _nz(v, f):
                ents[(i, j)] = v
    return Matrix(len(dst), len(src), ents)


def _nz(v, f: FieldSpec) -> bool:
    if f.is_rational:
        return v != 0
    return v % f.characteristic != 0


def format_entry(v) -> str:
    """Rational string for structured output ("1", "-2", "3/4")."""
    return str(Fraction(v))
