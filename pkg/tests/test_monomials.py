import itertools

import pytest
from hypothesis import given, settings

from subcyc.monomials import (IdealError, Monomial, MonomialIdeal, SignVector, alexander_dual,
                              alexander_dual_bruteforce, all_sign_vectors, contains, face_ideal,
                              minimal_primes, parse_ideal, radical, sign_of)
from subcyc.corpus import all_squarefree_ideals
from strategies import monomial_ideals, squarefree_ideals


def minimal_covers(supports, n):
    """Minimal vertex covers by direct search: covers with no removable vertex."""
    out = set()
    for k in range(n + 1):
        for S in itertools.combinations(range(n), k):
            S = set(S)
            covers = all(S & set(g) for g in supports)
            if covers and all(not all((S - {v}) & set(g) for g in supports) for v in S):
                out.add(frozenset(S))
    return out


def gens(I):
    return sorted(str(g) for g in I.generators)


def test_parse_minimalizes():
    assert gens(parse_ideal("x1*x2, x1*x2*x3", 3)) == ["x1*x2"]
    I = parse_ideal("x1^2*x2", 2)
    assert I.generators == (Monomial((2, 1)),)
    assert parse_ideal(" x1 * x3 ,x2").nvars == 3


@pytest.mark.parametrize("text", ["1", "x1, 1", "", "  "])
def test_parse_rejects_unit_and_zero(text):
    with pytest.raises(IdealError):
        parse_ideal(text, 2)


def test_parse_errors_carry_position():
    with pytest.raises(IdealError) as e:
        parse_ideal("x1*x2, x3*y", 3)
    assert e.value.pos == 10
    with pytest.raises(IdealError):
        parse_ideal("x4", 3)
    with pytest.raises(IdealError):
        parse_ideal("x0", 3)


@given(monomial_ideals())
def test_print_parse_round_trip(I):
    assert parse_ideal(str(I), I.nvars) == I


def test_radical_examples():
    assert gens(radical(parse_ideal("x1^2*x2, x2^3", 2))) == ["x2"]
    I = parse_ideal("x1*x2, x1*x3", 3)
    assert radical(I) == I
    assert gens(radical(parse_ideal("x1^3", 1))) == ["x1"]


@given(monomial_ideals())
def test_radical_idempotent_same_primes(I):
    R = radical(I)
    assert R.is_squarefree()
    assert radical(R) == R
    assert minimal_primes(R) == minimal_primes(I)


def test_contains():
    I = parse_ideal("x1*x2, x1*x3", 3)
    assert not contains(I, Monomial((0, 1, 1)))
    assert contains(parse_ideal("x1", 2), Monomial((2, 1)))
    assert not contains(parse_ideal("x1*x2", 2), Monomial((1, 0)))


def test_minimal_primes_examples():
    sv = lambda *s: SignVector(s)
    assert set(minimal_primes(parse_ideal("x1*x2, x1*x3", 3))) == {sv(-1, 0, 0), sv(0, -1, -1)}
    assert minimal_primes(parse_ideal("x1, x2, x3, x4", 4)) == [sv(-1, -1, -1, -1)]
    assert set(minimal_primes(parse_ideal("x1*x2, x2*x3, x1*x3", 3))) == {
        sv(-1, -1, 0), sv(0, -1, -1), sv(-1, 0, -1)}


@given(squarefree_ideals(max_n=5))
@settings(max_examples=80)
def test_minimal_primes_vs_cover_search(I):
    primes = minimal_primes(I)
    assert {a.support for a in primes} == minimal_covers(I.supports(), I.nvars)
    for a, b in itertools.permutations(primes, 2):
        assert not a.support <= b.support


def test_alexander_dual_examples():
    assert gens(alexander_dual(parse_ideal("x1*x2, x1*x3", 3))) == ["x1", "x2*x3"]
    assert gens(alexander_dual(parse_ideal("x1, x2, x3", 3))) == ["x1*x2*x3"]
    with pytest.raises(IdealError):
        alexander_dual(parse_ideal("x1^2", 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_alexander_dual_exhaustive(n):
    for I in all_squarefree_ideals(n):
        D = alexander_dual(I)
        assert D == alexander_dual_bruteforce(I)
        assert alexander_dual(D) == I


@given(squarefree_ideals(max_n=5))
@settings(max_examples=50)
def test_alexander_dual_two_routes(I):
    assert alexander_dual(I) == alexander_dual_bruteforce(I)
    assert alexander_dual(alexander_dual(I)) == I


def test_face_ideal():
    p = face_ideal(SignVector((-1, 0, -1)))
    assert gens(p) == ["x1", "x3"]
    with pytest.raises(IdealError):
        face_ideal(SignVector((0, 0, 0)))
    for n in range(1, 6):
        for a in all_sign_vectors(n)[1:]:
            assert sign_of(face_ideal(a)) == a


def test_sign_vector_validation():
    with pytest.raises(ValueError):
        SignVector((1, 0))
    a = SignVector.parse("-1,0,-1")
    assert a.weight == 2 and a.support == {0, 2} and str(a) == "-1,0,-1"


def test_corpus_size():
    # nonempty antichains of nonempty subsets: Dedekind number minus 2
    assert [len(all_squarefree_ideals(n)) for n in (1, 2, 3, 4)] == [1, 4, 18, 166]
