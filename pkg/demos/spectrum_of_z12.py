"""Primes, basic opens and the structure sheaf of Z/12, then Psi at s = 3."""

from grset import specplus as sp
from grset.aset import RingASet
from grset.genring import make_from_rig
from grset.rigs import zmod


def main():
    A = make_from_rig(zmod(12))
    X = sp.topology(A)
    for i, p in enumerate(X.primes):
        print(f"point {i}: {p.label()}")
    F = sp.sheafify(RingASet(A), X)
    for s, D in sorted(X.basic_opens.items()):
        print(f"D+({s[0]:>2}) = {sorted(D)!s:<7} sections: {F.sections(D).size}")
    rep = sp.psi_iso_check(RingASet(A), (3,), X)
    print(f"Psi at 3: {rep.left_size} -> {rep.right_size}, bijective={rep.bijective}")
    print(X.to_dot())


if __name__ == "__main__":
    main()
