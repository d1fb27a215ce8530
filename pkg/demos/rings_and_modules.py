"""Axioms of a few finite generalized rings, then module constructions over Z/6."""

from grset.aset import LinearASet, RingASet, free_aset, internal_hom, is_isomorphic, tensor
from grset.axioms import check_axioms
from grset.genring import make_F, make_from_rig
from grset.rigs import boolean, zmod


def main():
    for A in (make_F(), make_from_rig(boolean()), make_from_rig(zmod(6))):
        report = check_axioms(A, 2)
        print(f"{A.name:>4}: {'all laws hold' if report.passed else 'FAILED'} at arity 2")

    Z6 = make_from_rig(zmod(6))
    Z2, Z3 = LinearASet.zmod_module(Z6, (2,)), LinearASet.zmod_module(Z6, (3,))
    print("Z/2 (x) Z/3 has", tensor(Z2, Z3).aset.size, "element(s)")
    print("Hom(Z/2, Z/6) has", internal_hom(Z2, RingASet(Z6)).size, "elements")
    F1 = free_aset(Z6, 1)
    print("free Z/6-set on one generator is Z/6:", is_isomorphic(F1.aset, RingASet(Z6)),
          "| stabilized:", F1.quotient.stabilized)


if __name__ == "__main__":
    main()
