"""Tabulate real and complex complement Betti numbers for a few arrangements."""
from subcyc.invariants import complement_betti
from subcyc.monomials import parse_ideal
from subcyc.poset import AffineSubspace, poset_from_ideal, poset_from_subspaces

CASES = [
    ("hyperplane x1=0 in 3-space", poset_from_subspaces([AffineSubspace.from_system([[1, 0, 0]], [0])])),
    ("three lines in the plane", poset_from_subspaces([
        AffineSubspace.from_system([[1, 0]], [0]),
        AffineSubspace.from_system([[0, 1]], [0]),
        AffineSubspace.from_system([[1, 1]], [1])])),
    ("coordinate axes in 3-space", poset_from_ideal(parse_ideal("x1*x2, x2*x3, x1*x3", 3))),
    ("coordinate hyperplanes in 3-space", poset_from_ideal(parse_ideal("x1*x2*x3", 3))),
    ("origin in 4-space", poset_from_ideal(parse_ideal("x1, x2, x3, x4", 4))),
    ("two planes meeting at a point in 4-space", poset_from_ideal(parse_ideal("x1*x3, x1*x4, x2*x3, x2*x4", 4))),
]


def fmt(b):
    return " ".join(f"{v}" for v in b)


def main():
    w = max(len(name) for name, _ in CASES)
    print(f"{'arrangement':<{w}}  real b~_i (i=0..n-1)   complex b~_i (i=0..2n-1)")
    for name, P in CASES:
        print(f"{name:<{w}}  {fmt(complement_betti(P, 'real')):<21}  {fmt(complement_betti(P, 'complex'))}")


if __name__ == "__main__":
    main()
