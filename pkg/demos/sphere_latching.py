"""Latching maps of free sphere modules F_m(S^0), two ways.

The latching object built with the plain symmetric-sequence tensor and the
one built over the sphere agree for n <= m + 1 and differ above.
"""

from grset import symspec as ss
from grset.simpset import make_std


def main():
    S = ss.sphere(3, 2)
    X = make_std("delta", 0, 2).sset
    print(" m n  expected  sequence-tensor  over-sphere")
    for m in range(4):
        F = ss.free_module(m, X, S)
        for n in range(4):
            L, ML = ss.latching(F, n), ss.module_latching(F, n)
            if n > m:
                row = ("iso", L.map_is_iso, ML.map_is_iso)
            else:
                row = ("zero", L.map_is_zero, ML.map_is_zero)
            print(f" {m} {n}  {row[0]:<8}  {str(row[1]):<15}  {row[2]}")


if __name__ == "__main__":
    main()
