"""Multiplicities, characteristic cycles, complement Betti numbers, hypercubes.

The poset route: m_{r,p} = dim H~_{h(p)-r-1}(K(>p)).  Everything here is
assembled from that table, and :func:`cross_validate` checks it against
the Cech engine and the Koszul engine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .cech import graded_lc_dim, multiplication_map
from .field_linalg import QQ, FieldSpec, Matrix, rank
from .homology import reduced_homology_dims
from .koszul import verify_dual_identity
from .monomials import MonomialIdeal, SignVector, all_sign_vectors, ensure_squarefree
from .poset import IntersectionPoset, PosetNode, poset_from_ideal, strict_upset_complex


class CrossRouteError(RuntimeError):
    """Two independent engines disagree; always an implementation bug."""


@dataclass
class MultiplicityTable:
    poset: IntersectionPoset
    field: FieldSpec
    values: dict[tuple[int, int], int] = field(default_factory=dict)

    def get(self, r: int, p: PosetNode) -> int:
        return self.values.get((r, p.id), 0)

    def at(self, r: int, alpha: SignVector) -> int:
        """Reindexed view: m_{r,alpha}, zero when alpha is not a node."""
        p = self.poset.by_sign().get(alpha)
        return 0 if p is None else self.get(r, p)

    def nonzero(self) -> list[tuple[int, PosetNode, int]]:
        return sorted(((r, self.poset.nodes[i], v) for (r, i), v in self.values.items()),
                      key=lambda t: (t[0], t[1].id))

    def by_sign(self) -> dict[tuple[int, SignVector], int]:
        return {(r, p.sign): v for r, p, v in self.nonzero()}


def multiplicities(P: IntersectionPoset, f: FieldSpec = QQ) -> MultiplicityTable:
    table = MultiplicityTable(P, f)
    for p in P.nodes:
        K = strict_upset_complex(P, p)
        for d, h in reduced_homology_dims(K, f).items():
            table.values[(p.height - d - 1, p.id)] = h
    return table


@lru_cache(maxsize=4096)
def multiplicities_of_ideal(I: MonomialIdeal, f: FieldSpec = QQ) -> MultiplicityTable:
    return multiplicities(poset_from_ideal(I), f)


# -- characteristic cycles ---------------------------------------------------

@dataclass
class CharacteristicCycle:
    terms: dict[int, list[tuple[PosetNode, int]]]

    def render(self, r: int) -> str:
        parts = []
        for p, m in self.terms.get(r, []):
            lab = f"T*_{{{p.label()}}}"
            parts.append(lab if m == 1 else f"{m}*{lab}")
        return " + ".join(parts) if parts else "0"


def characteristic_cycle(source) -> CharacteristicCycle:
    """CC(H^r_I(R)) for every r, always over Q.

    ``source`` is a monomial ideal or an already built intersection poset.
    """
    table = (multiplicities_of_ideal(ensure_squarefree(source), QQ)
             if isinstance(source, MonomialIdeal) else multiplicities(source, QQ))
    terms: dict[int, list] = {}
    for r, p, v in table.nonzero():
        terms.setdefault(r, []).append((p, v))
    return CharacteristicCycle(terms)


def complement_betti(P: IntersectionPoset, flavor: str = "real") -> list[int]:
    """Reduced rational Betti numbers of the complement of the arrangement.

    real: b_i = sum_p m_{i+1,p}, for 0 <= i < n.
    complex: b_i = sum_p m_{i+1-h(p),p}, for 0 <= i < 2n.
    """
    table = multiplicities(P, QQ)
    n = P.nvars
    if flavor == "real":
        out = [0] * n
        for r, p, v in table.nonzero():
            out[r - 1] += v
    elif flavor == "complex":
        out = [0] * (2 * n)
        for r, p, v in table.nonzero():
            out[r + p.height - 1] += v
    else:
        raise ValueError(f"flavor must be 'real' or 'complex', got {flavor!r}")
    return out


# -- hypercubes and extensions -----------------------------------------------

def _step(alpha: SignVector, i: int) -> SignVector:
    s = list(alpha.signs)
    s[i] += 1
    return SignVector(tuple(s))


@dataclass
class Hypercube:
    """Vertex dims m_{r,alpha} and the maps x_i : alpha -> alpha + e_i for alpha_i = -1.

    The structure maps are the graded multiplications; the partial
    variations vanish identically for these modules, so none are stored.
    """
    r: int
    nvars: int
    vertices: dict[SignVector, int]
    maps: dict[tuple[int, SignVector], Matrix]

    def nonzero_maps(self) -> list[tuple[int, SignVector, Matrix]]:
        return [(i, a, m) for (i, a), m in sorted(self.maps.items(), key=lambda kv: (kv[0][1].sort_key(), kv[0][0]))
                if not m.is_zero()]

    def commutativity_violations(self) -> list[str]:
        bad = []
        for alpha in self.vertices:
            neg = sorted(alpha.support)
            for a in range(len(neg)):
                for b in range(a + 1, len(neg)):
                    i, j = neg[a], neg[b]
                    via_i = self.maps[(j, _step(alpha, i))] @ self.maps[(i, alpha)]
                    via_j = self.maps[(i, _step(alpha, j))] @ self.maps[(j, alpha)]
                    if via_i != via_j:
                        bad.append(f"x{i + 1},x{j + 1} do not commute at {alpha}")
        return bad


def hypercube(I: MonomialIdeal, r: int, f: FieldSpec = QQ) -> Hypercube:
    n = I.nvars
    mults = multiplicities_of_ideal(ensure_squarefree(I), f)
    vertices = {}
    for alpha in all_sign_vectors(n):
        d = graded_lc_dim(I, r, alpha.signs, f)
        m = mults.at(r, alpha)
        if d != m:
            raise CrossRouteError(f"H^{r} at {alpha}: Cech dim {d} != poset multiplicity {m}")
        vertices[alpha] = d
    maps = {}
    for alpha in vertices:
        for i in sorted(alpha.support):
            maps[(i, alpha)] = multiplication_map(I, r, alpha.signs, i, f)
    return Hypercube(r, n, vertices, maps)


@dataclass
class ExtensionLevel:
    j: int
    quotient_dim: int
    splits: bool
    nonzero_maps: list[str]


def extension_analysis(I: MonomialIdeal, r: int, f: FieldSpec = QQ, cube: Hypercube | None = None) -> list[ExtensionLevel]:
    """Per filtration level j: dim of F_j/F_{j-1} and whether (s_j) splits.

    (s_j) splits iff every x_i on a weight-j degree with alpha_i = -1 is zero.
    """
    cube = cube or hypercube(I, r, f)
    levels = []
    for j in range(I.nvars + 1):
        qdim = sum(d for a, d in cube.vertices.items() if a.weight == j)
        bad = [f"x{i + 1}|{a} (rank {rank(m, f)})" for i, a, m in cube.nonzero_maps() if a.weight == j]
        levels.append(ExtensionLevel(j, qdim, not bad, bad))
    return levels


# -- cross validation --------------------------------------------------------

@dataclass
class CrossValidation:
    ideal: MonomialIdeal
    field: FieldSpec
    diffs: list[str]
    multiplicities: dict[str, int]
    cech_dims: dict[str, int]
    betti_dual: dict[str, int]

    @property
    def ok(self) -> bool:
        return not self.diffs

    def tables(self) -> dict:
        return {"m": self.multiplicities, "cech": self.cech_dims, "betti_dual": self.betti_dual}


def cross_validate(I: MonomialIdeal, f: FieldSpec = QQ) -> CrossValidation:
    """Poset route vs Cech route vs Koszul route on a (radicalized) ideal."""
    from .koszul import graded_betti
    from .monomials import alexander_dual

    I = ensure_squarefree(I)
    n = I.nvars
    mults = multiplicities_of_ideal(I, f)
    diffs = []
    m_tab, c_tab = {}, {}
    for alpha in all_sign_vectors(n):
        for r in range(n + 1):
            m = mults.at(r, alpha)
            c = graded_lc_dim(I, r, alpha.signs, f)
            if m:
                m_tab[f"{r}|{alpha}"] = m
            if c:
                c_tab[f"{r}|{alpha}"] = c
            if m != c:
                diffs.append(f"poset-vs-cech: r={r} alpha={alpha}: poset {m} != cech {c}")
    dual_report = verify_dual_identity(I, f, mults)
    diffs.extend(f"duality: {d}" for d in dual_report.mismatches)
    for r in range(n + 1):
        try:
            cube = hypercube(I, r, f)
        except CrossRouteError as e:
            diffs.append(f"hypercube: {e}")
            continue
        diffs.extend(f"hypercube: {d}" for d in cube.commutativity_violations())
    betti = graded_betti(alexander_dual(I), f)
    b_tab = {f"{i}|{','.join(map(str, a))}": v for (i, a), v in betti.items()}
    return CrossValidation(I, f, diffs, m_tab, c_tab, b_tab)
