import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from subcyc.corpus import all_squarefree_ideals
from subcyc.field_linalg import GF, QQ, rank
from subcyc.homology import SimplicialComplex, reduced_homology_dims
from subcyc.invariants import (CrossRouteError, characteristic_cycle, complement_betti, cross_validate,
                               extension_analysis, hypercube, multiplicities, multiplicities_of_ideal)
from subcyc.koszul import graded_betti
from subcyc.monomials import SignVector, all_sign_vectors, alexander_dual, face_ideal, parse_ideal
from subcyc.poset import AffineSubspace, poset_from_ideal, poset_from_subspaces
from strategies import squarefree_ideals


def sv(*s):
    return SignVector(s)


def real_complement_homology(I):
    """Reduced homology of R^n minus V(I), computed from cells rather than the poset.

    R^n is cut into the relatively open cells {sign(x) = sigma}, sigma in
    {-,0,+}^n.  A cell lies in the complement iff its nonzero coordinates
    meet every minimal prime.  The complement is an open union of cells of
    a regular cell structure (after compactifying each orthant) and is
    homotopy equivalent to the order complex of that cell poset.
    """
    n = I.nvars
    gens = I.supports()
    from subcyc.monomials import minimal_primes
    primes = [a.support for a in minimal_primes(I)]
    cells = [s for s in itertools.product((-1, 0, 1), repeat=n)
             if all(any(s[i] for i in p) for p in primes)]
    index = {c: k for k, c in enumerate(cells)}

    def face_of(a, b):  # a is a proper face of b
        return a != b and all(x == 0 or x == y for x, y in zip(a, b))

    chains = []

    def extend(chain):
        ups = [c for c in cells if face_of(chain[-1], c)]
        covers = [c for c in ups if not any(face_of(d, c) for d in ups)]
        if not covers:
            chains.append([index[c] for c in chain])
        for c in covers:
            extend(chain + [c])

    for c in cells:
        if not any(face_of(d, c) for d in cells):
            extend([c])
    return reduced_homology_dims(SimplicialComplex.from_facets(chains, len(cells)))


def test_multiplicity_examples(two_comp, three_axes):
    n = 4
    mx = parse_ideal("x1, x2, x3, x4", n)
    assert multiplicities_of_ideal(mx).by_sign() == {(4, sv(-1, -1, -1, -1)): 1}
    assert multiplicities_of_ideal(two_comp).by_sign() == {
        (1, sv(-1, 0, 0)): 1, (2, sv(0, -1, -1)): 1, (2, sv(-1, -1, -1)): 1}
    assert multiplicities_of_ideal(three_axes).by_sign() == {
        (2, sv(-1, -1, 0)): 1, (2, sv(-1, 0, -1)): 1, (2, sv(0, -1, -1)): 1, (2, sv(-1, -1, -1)): 2}


def test_characteristic_cycle_examples(two_comp):
    cc = characteristic_cycle(parse_ideal("x1, x2, x3", 3))
    assert cc.render(3) == "T*_{V(x1,x2,x3)}" and set(cc.terms) == {3}
    cc = characteristic_cycle(two_comp)
    assert cc.render(1) == "T*_{V(x1)}"
    assert cc.render(2) == "T*_{V(x2,x3)} + T*_{V(x1,x2,x3)}"
    assert cc.render(3) == "0"
    cc = characteristic_cycle(parse_ideal("x1*x2", 2))
    assert cc.render(1) == "T*_{V(x1)} + T*_{V(x2)} + T*_{V(x1,x2)}"
    cc = characteristic_cycle(parse_ideal("x1*x2, x2*x3, x1*x3", 3))
    assert cc.render(2).endswith("2*T*_{V(x1,x2,x3)}")


def test_complement_examples(three_axes):
    hyper = poset_from_subspaces([AffineSubspace.from_system([[1, 0, 0]], [0])])
    assert complement_betti(hyper, "real") == [1, 0, 0]
    assert complement_betti(hyper, "complex") == [0, 1, 0, 0, 0, 0]
    axes = poset_from_ideal(three_axes)
    assert complement_betti(axes, "real") == [0, 5, 0]
    with pytest.raises(ValueError):
        complement_betti(axes, "quaternionic")


def test_complement_against_cell_complex():
    for n in (1, 2, 3):
        for I in all_squarefree_ideals(n):
            b = complement_betti(poset_from_ideal(I), "real")
            assert {i: v for i, v in enumerate(b) if v} == real_complement_homology(I), str(I)


def test_affine_complement_lines_in_plane():
    # three generic lines in R^2 (not concurrent): 7 regions
    lines = [AffineSubspace.from_system([r], [c]) for r, c in (([1, 0], 0), ([0, 1], 0), ([1, 1], 1))]
    assert complement_betti(poset_from_subspaces(lines), "real") == [6, 0]
    # the complex complement of a generic arrangement of 3 lines: b1 = 3, b2 = 3
    assert complement_betti(poset_from_subspaces(lines), "complex")[:3] == [0, 3, 3]


@given(squarefree_ideals(max_n=4))
@settings(max_examples=40, deadline=None)
def test_complement_sanity(I):
    P = poset_from_ideal(I)
    real, cplx = complement_betti(P, "real"), complement_betti(P, "complex")
    assert len(real) == I.nvars and len(cplx) == 2 * I.nvars
    assert min(real + cplx) >= 0
    table = multiplicities(P)
    assert sum(cplx) == sum(v for _, _, v in table.nonzero())


@given(squarefree_ideals(max_n=4))
@settings(max_examples=40, deadline=None)
def test_multiplicity_support_invariant(I):
    from subcyc.poset import strict_upset_complex
    P = poset_from_ideal(I)
    table = multiplicities(P)
    for r, p, v in table.nonzero():
        K = strict_upset_complex(P, p)
        d = p.height - r - 1
        assert (0 <= d <= K.dimension) or (r == p.height and K.is_empty())
    for p in P.maximal():
        assert sum(table.get(r, p) for r in range(I.nvars + 1)) >= 1


def test_hypercube_examples(two_comp):
    for a in all_sign_vectors(3)[1:]:
        cube = hypercube(face_ideal(a), a.weight)
        assert {b: d for b, d in cube.vertices.items() if d} == {a: 1}
        assert not cube.nonzero_maps()
    cube = hypercube(two_comp, 2)
    assert {b: d for b, d in cube.vertices.items() if d} == {sv(0, -1, -1): 1, sv(-1, -1, -1): 1}
    (i, a, m), = cube.nonzero_maps()
    assert (i, a) == (0, sv(-1, -1, -1)) and rank(m) == 1
    cube = hypercube(two_comp, 1)
    assert {b: d for b, d in cube.vertices.items() if d} == {sv(-1, 0, 0): 1}
    assert not cube.nonzero_maps()


def test_hypercube_detects_cross_route_mismatch(monkeypatch, two_comp):
    import subcyc.invariants as inv
    monkeypatch.setattr(inv, "graded_lc_dim", lambda I, r, a, f: 7)
    with pytest.raises(CrossRouteError):
        inv.hypercube(two_comp, 2)


def test_extension_examples(two_comp):
    levels = extension_analysis(two_comp, 2)
    assert [lv.quotient_dim for lv in levels] == [0, 0, 1, 1]
    assert [lv.splits for lv in levels] == [True, True, True, False]
    for a in all_sign_vectors(3)[1:]:
        assert all(lv.splits for lv in extension_analysis(face_ideal(a), a.weight))
    # (x1*x2): three one-dimensional vertices, both maps out of (-1,-1) have rank 1
    levels = extension_analysis(parse_ideal("x1*x2", 2), 1)
    assert [lv.quotient_dim for lv in levels] == [0, 2, 1]
    assert [lv.splits for lv in levels] == [True, True, False]
    assert len(levels[2].nonzero_maps) == 2


def test_cross_validate_examples(two_comp):
    rep = cross_validate(two_comp)
    assert rep.ok, rep.diffs
    assert rep.multiplicities == {"1|-1,0,0": 1, "2|0,-1,-1": 1, "2|-1,-1,-1": 1}
    assert rep.multiplicities == rep.cech_dims
    a = cross_validate(parse_ideal("x1^2*x2, x1*x3^3", 3))
    b = cross_validate(parse_ideal("x1*x2, x1*x3", 3))
    assert a.ideal == b.ideal and a.tables() == b.tables() and a.diffs == b.diffs


def test_cross_validate_exhaustive_n3():
    for I in all_squarefree_ideals(3):
        rep = cross_validate(I)
        assert rep.ok, (str(I), rep.diffs)


def test_multiplicities_over_f2_match_q():
    for I in all_squarefree_ideals(4):
        assert multiplicities_of_ideal(I, QQ).by_sign() == multiplicities_of_ideal(I, GF(2)).by_sign()


@given(squarefree_ideals(max_n=4), st.data())
@settings(max_examples=30, deadline=None)
def test_permutation_equivariance(I, data):
    n = I.nvars
    perm = data.draw(st.permutations(range(n)))
    J = I.permute(perm)
    mi, mj = multiplicities_of_ideal(I).by_sign(), multiplicities_of_ideal(J).by_sign()
    assert mj == {(r, a.permute(perm)): v for (r, a), v in mi.items()}
    for flavor in ("real", "complex"):
        assert complement_betti(poset_from_ideal(I), flavor) == complement_betti(poset_from_ideal(J), flavor)
    bi, bj = graded_betti(alexander_dual(I)), graded_betti(alexander_dual(J))
    assert bj.entries == {(i, tuple(a[perm.index(k)] for k in range(n))): v for (i, a), v in bi.entries.items()}
    for r in range(n + 1):
        ei = [(lv.quotient_dim, lv.splits) for lv in extension_analysis(I, r)]
        ej = [(lv.quotient_dim, lv.splits) for lv in extension_analysis(J, r)]
        assert ei == ej
        ci, cj = hypercube(I, r), hypercube(J, r)
        for (k, a), m in ci.maps.items():
            assert rank(m) == rank(cj.maps[(perm[k], a.permute(perm))])


@given(squarefree_ideals(max_n=4))
@settings(max_examples=30, deadline=None)
def test_hypercube_commutes(I):
    for r in range(I.nvars + 1):
        assert hypercube(I, r).commutativity_violations() == []
