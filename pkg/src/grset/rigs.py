"""Finite commutative rigs and monoids given by operation tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class TableValidationError(ValueError):
    """An operation table breaks a law; ``law`` names it, ``witness`` shows where."""

    def __init__(self, law: str, witness, path: str = ""):
        self.law = law
        self.witness = witness
        self.path = path
        super().__init__(f"{path + ': ' if path else ''}{law} fails at {witness}")


def _identity_of(table, size):
    for e in range(size):
        if all(table[e][x] == x and table[x][e] == x for x in range(size)):
            return e
    return None


def _check_commutative_monoid(table, size, name, path):
    if len(table) != size or any(len(row) != size for row in table):
        raise TableValidationError(f"{name} table shape", (len(table),), path)
    for x, y in itertools.product(range(size), repeat=2):
        if not 0 <= table[x][y] < size:
            raise TableValidationError(f"{name} closure", (x, y), f"{path}[{x}][{y}]")
        if table[x][y] != table[y][x]:
            raise TableValidationError(f"{name} commutativity", (x, y), f"{path}[{x}][{y}]")
    for x, y, z in itertools.product(range(size), repeat=3):
        if table[table[x][y]][z] != table[x][table[y][z]]:
            raise TableValidationError(f"{name} associativity", (x, y, z), path)
    unit = _identity_of(table, size)
    if unit is None:
        raise TableValidationError(f"{name} unit", None, path)
    return unit


@dataclass(frozen=True)
class FiniteMonoid:
    """A finite commutative monoid on ``range(len(labels))``."""

    labels: tuple
    mul: tuple
    unit: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "mul", tuple(tuple(r) for r in self.mul))
        unit = _check_commutative_monoid(self.mul, len(self.labels), "multiplication", "mul")
        object.__setattr__(self, "unit", unit)

    @property
    def size(self):
        return len(self.labels)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteMonoid":
        return cls(tuple(f"g{k}" if k else "e" for k in range(n)),
                   tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))

    @classmethod
    def trivial(cls) -> "FiniteMonoid":
        return cls(("e",), ((0,),))


@dataclass(frozen=True)
class FiniteRig:
    """A finite commutative rig on ``range(len(labels))``.

    Construction checks associativity, commutativity, units, distributivity
    and absorption by zero unless ``validate=False``.
    """

    labels: tuple
    add: tuple
    mul: tuple
    name: str = ""
    validate: bool = True
    zero: int = field(init=False)
    one: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "add", tuple(tuple(r) for r in self.add))
        object.__setattr__(self, "mul", tuple(tuple(r) for r in self.mul))
        n = len(self.labels)
        if self.validate:
            zero = _check_commutative_monoid(self.add, n, "addition", "add")
            one = _check_commutative_monoid(self.mul, n, "multiplication", "mul")
            for x in range(n):
                if self.mul[x][zero] != zero:
                    raise TableValidationError("absorption x*0 = 0", (x,), f"mul[{x}][{zero}]")
            for x, y, z in itertools.product(range(n), repeat=3):
                if self.mul[x][self.add[y][z]] != self.add[self.mul[x][y]][self.mul[x][z]]:
                    raise TableValidationError("distributivity", (x, y, z), "mul")
        else:
            zero = _identity_of(self.add, n)
            one = _identity_of(self.mul, n)
            zero = 0 if zero is None else zero
            one = 1 if one is None else one
        object.__setattr__(self, "zero", zero)
        object.__setattr__(self, "one", one)

    @property
    def size(self):
        return len(self.labels)

    def units(self):
        return [x for x in range(self.size) if any(self.mul[x][y] == self.one for y in range(self.size))]

    def is_ring(self):
        return all(any(self.add[x][y] == self.zero for y in range(self.size)) for x in range(self.size))


def zmod(n: int) -> FiniteRig:
    return FiniteRig(tuple(range(n)),
                     tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
                     tuple(tuple((a * b) % n for b in range(n)) for a in range(n)),
                     name=f"Z/{n}")


def boolean() -> FiniteRig:
    return FiniteRig((0, 1), ((0, 1), (1, 1)), ((0, 0), (0, 1)), name="B")


def tropical01() -> FiniteRig:
    """``{0, 1}`` with the usual product and ``max`` as addition."""
    return FiniteRig((0, 1), tuple(tuple(max(a, b) for b in (0, 1)) for a in (0, 1)),
                     tuple(tuple(a * b for b in (0, 1)) for a in (0, 1)), name="trop01")
