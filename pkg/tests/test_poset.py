import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from subcyc.monomials import SignVector, minimal_primes, parse_ideal
from subcyc.homology import reduced_homology_dims
from subcyc.poset import (AffineSubspace, ArrangementError, coordinate_subspaces, parse_subspaces,
                          poset_from_ideal, poset_from_subspaces, strict_upset_complex)
from strategies import squarefree_ideals


def sv(*s):
    return SignVector(s)


def node(P, *signs):
    return P.by_sign()[sv(*signs)]


def relation_by_sign(P):
    return {(P.nodes[a].sign, P.nodes[b].sign) for a, b in P.less_than}


def test_two_component_poset(two_comp):
    P = poset_from_ideal(two_comp)
    assert {(p.sign, p.height) for p in P.nodes} == {
        (sv(-1, 0, 0), 1), (sv(0, -1, -1), 2), (sv(-1, -1, -1), 3)}
    assert relation_by_sign(P) == {(sv(-1, -1, -1), sv(-1, 0, 0)), (sv(-1, -1, -1), sv(0, -1, -1))}


def test_maximal_ideal_poset():
    P = poset_from_ideal(parse_ideal("x1, x2, x3, x4", 4))
    assert len(P.nodes) == 1 and not P.less_than


def test_three_axes_poset(three_axes):
    P = poset_from_ideal(three_axes)
    assert sorted(p.height for p in P.nodes) == [2, 2, 2, 3]
    origin = node(P, -1, -1, -1)
    assert {q.sign for q in P.above(origin)} == {sv(-1, -1, 0), sv(0, -1, -1), sv(-1, 0, -1)}


def test_strict_upset_examples(two_comp):
    P = poset_from_ideal(two_comp)
    K = strict_upset_complex(P, node(P, -1, -1, -1))
    assert sorted(K.facets, key=sorted) == [frozenset({node(P, -1, 0, 0).id}),
                                             frozenset({node(P, 0, -1, -1).id})]
    assert strict_upset_complex(P, node(P, -1, 0, 0)).is_empty()


def test_coordinate_hyperplanes_in_three_space():
    planes = [AffineSubspace.from_system([[1 if j == i else 0 for j in range(3)]], [0]) for i in range(3)]
    P = poset_from_subspaces(planes)
    assert len(P.nodes) == 7
    assert sorted(p.height for p in P.nodes) == [1, 1, 1, 2, 2, 2, 3]
    origin = next(p for p in P.nodes if p.height == 3)
    K = strict_upset_complex(P, origin)
    # chains among the six proper flats: 6 vertices, and one edge per (axis, plane) incidence
    assert len(K.faces(0)) == 6
    assert len(K.faces(1)) == 6
    assert len(K.faces(2)) == 0
    assert reduced_homology_dims(K) == {1: 1}
    # Boolean order: each axis lies in exactly two planes
    for p in P.nodes:
        if p.height == 2:
            assert sum(1 for q in P.above(p)) == 2


def test_two_hyperplanes_through_origin():
    A = AffineSubspace.from_system([[1, 1, 0]], [0])
    B = AffineSubspace.from_system([[0, 1, -1]], [0])
    P = poset_from_subspaces([A, B])
    assert sorted(p.height for p in P.nodes) == [1, 1, 2]
    line = next(p for p in P.nodes if p.height == 2)
    assert len(P.above(line)) == 2


def test_parallel_hyperplanes():
    A = AffineSubspace.from_system([[1, 0]], [0])
    B = AffineSubspace.from_system([[2, 0]], [1])
    P = poset_from_subspaces([A, B])
    assert len(P.nodes) == 2 and not P.less_than


def test_duplicate_and_contained_inputs(caplog):
    A = AffineSubspace.from_system([[1, 0, 0]], [0])
    A2 = AffineSubspace.from_system([[3, 0, 0]], [0])
    line = AffineSubspace.from_system([[1, 0, 0], [0, 1, 0]], [0, 0])
    assert A == A2
    P = poset_from_subspaces([A, A2, line])
    assert len(P.nodes) == 1
    assert "discarding" in caplog.text


def test_inconsistent_subspace():
    with pytest.raises(ArrangementError):
        AffineSubspace.from_system([[1, 0], [1, 0]], [0, 1])


def test_subspace_equality_and_containment():
    a = AffineSubspace.from_system([[1, 1], [1, -1]], [2, 0])
    b = AffineSubspace.from_system([[1, 0], [0, 1]], [1, 1])
    assert a == b
    line = AffineSubspace.from_system([[1, -1]], [0])
    assert a.contained_in(line) and not line.contained_in(a)


@given(squarefree_ideals(max_n=4))
@settings(max_examples=60, deadline=None)
def test_ideal_and_subspace_routes_isomorphic(I):
    P = poset_from_ideal(I)
    Q = poset_from_subspaces(coordinate_subspaces(I))
    # match nodes by geometry
    to_q = {}
    for p in P.nodes:
        sub = AffineSubspace.coordinate(p.sign)
        (q,) = [q for q in Q.nodes if q.geometry == sub]
        assert q.height == p.height
        to_q[p.id] = q.id
    assert {(to_q[a], to_q[b]) for a, b in P.less_than} == set(Q.less_than)


@given(squarefree_ideals(max_n=5))
@settings(max_examples=60, deadline=None)
def test_poset_invariants(I):
    P = poset_from_ideal(I)
    comps = {a.support for a in minimal_primes(I)}
    assert len(P.nodes) <= 2 ** len(comps)
    supports = {p.sign.support for p in P.nodes}
    for s, t in itertools.combinations(supports, 2):
        assert s | t in supports
    for a, b in P.less_than:
        assert P.nodes[a].height > P.nodes[b].height
        assert (b, a) not in P.less_than
    for a, b in P.less_than:
        for c in P.above(P.nodes[b]):
            assert (a, c.id) in P.less_than
    assert {p.sign.support for p in P.maximal()} == comps


def test_parse_subspaces():
    text = """
    # a line and a plane in 3-space
    1 0 0 | 0
    0 1 0 | 1/2

    0 0 1 | -1
    """
    subs = parse_subspaces(text)
    assert [s.codimension for s in subs] == [2, 1]
    assert subs[0].constants == (Fraction(0), Fraction(1, 2))
    with pytest.raises(ArrangementError):
        parse_subspaces("1 0 | 0\n0 1 0 | 1")
    with pytest.raises(ArrangementError):
        parse_subspaces("1 0 0 0")
    with pytest.raises(ArrangementError):
        parse_subspaces("1 0 | 0\n1 0 | 1")
