"""Finite sets, partial functions, partial bijections and monotone maps.

Every finite set is the canonical skeleton ``{0, ..., n-1}`` and is named by
its size.  A pointed finite set ``n_+`` is represented by ``n`` alone: the
basepoint is implicit and "undefined" plays the role of "sent to the
basepoint".  Ordinals ``[n] = {0 < 1 < ... < n}`` have ``n + 1`` elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence


class EndpointError(ValueError):
    """Raised when maps with mismatched endpoints are composed."""


class EnumerationBoundError(RuntimeError):
    """Raised when an enumeration is requested beyond the configured bound."""


ENUMERATION_BOUND = 6


@dataclass(frozen=True, eq=False)
class PartialFn:
    """A partially defined function ``source -> target``.

    ``graph[i]`` is the image of ``i`` or ``None`` where undefined.
    """

    source: int
    target: int
    graph: tuple

    def __post_init__(self):
        if len(self.graph) != self.source:
            raise ValueError(f"graph has {len(self.graph)} entries, source is {self.source}")
        for y in self.graph:
            if y is not None and not 0 <= y < self.target:
                raise ValueError(f"value {y} outside target {self.target}")

    @classmethod
    def from_dict(cls, source: int, target: int, mapping: dict) -> "PartialFn":
        return cls(source, target, tuple(mapping.get(i) for i in range(source)))

    def __call__(self, i: int):
        return self.graph[i]

    def __eq__(self, other):
        if not isinstance(other, PartialFn):
            return NotImplemented
        return (self.source, self.target, self.graph) == (other.source, other.target, other.graph)

    def __hash__(self):
        return hash((self.source, self.target, self.graph))

    @property
    def domain(self) -> tuple:
        return tuple(i for i, y in enumerate(self.graph) if y is not None)

    @property
    def image(self) -> tuple:
        return tuple(sorted({y for y in self.graph if y is not None}))

    def fiber(self, j: int) -> tuple:
        """Preimage of ``j`` in increasing order."""
        return tuple(i for i, y in enumerate(self.graph) if y == j)

    def fibers(self) -> tuple:
        out = [[] for _ in range(self.target)]
        for i, y in enumerate(self.graph):
            if y is not None:
                out[y].append(i)
        return tuple(tuple(f) for f in out)

    def is_total(self) -> bool:
        return None not in self.graph

    def is_injective(self) -> bool:
        img = [y for y in self.graph if y is not None]
        return len(img) == len(set(img))

    def then(self, g: "PartialFn") -> "PartialFn":
        """The composite ``g o self``."""
        return compose(g, self)

    def sort_key(self) -> tuple:
        mask = sum(1 << i for i in self.domain)
        return (mask, tuple(-1 if y is None else y for y in self.graph))

    def __repr__(self):
        body = ", ".join(f"{i}->{y}" for i, y in enumerate(self.graph) if y is not None)
        return f"PartialFn({self.source}->{self.target}: {{{body}}})"


class PartialBijection(PartialFn):
    """A bijection between a subset of the source and a subset of the target."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_injective():
            raise ValueError(f"{self.graph} is not injective on its domain")

    def transpose(self) -> "PartialBijection":
        return transpose(self)

    def inverse_of(self, j: int):
        for i, y in enumerate(self.graph):
            if y == j:
                return i
        return None

    def __repr__(self):
        return "PartialBijection" + super().__repr__()[len("PartialFn"):]


def identity(n: int) -> PartialBijection:
    return PartialBijection(n, n, tuple(range(n)))


def empty_map(m: int, n: int) -> PartialBijection:
    return PartialBijection(m, n, (None,) * m)


def to_point(n: int) -> PartialFn:
    """The total map ``n -> [1]``."""
    return PartialFn(n, 1, (0,) * n)


def permutation(images: Sequence[int]) -> PartialBijection:
    return PartialBijection(len(images), len(images), tuple(images))


def compose(g: PartialFn, f: PartialFn) -> PartialFn:
    """``g o f``: defined where ``f`` is defined and lands in the domain of ``g``."""
    if f.target != g.source:
        raise EndpointError(f"cannot compose {g} after {f}")
    graph = tuple(None if y is None else g.graph[y] for y in f.graph)
    if isinstance(f, PartialBijection) and isinstance(g, PartialBijection):
        return PartialBijection(f.source, g.target, graph)
    return PartialFn(f.source, g.target, graph)


def transpose(f: PartialFn) -> PartialBijection:
    if not f.is_injective():
        raise ValueError("only partial bijections have a transpose")
    graph = [None] * f.target
    for i, y in enumerate(f.graph):
        if y is not None:
            graph[y] = i
    return PartialBijection(f.target, f.source, tuple(graph))


def as_bijection(f: PartialFn):
    """Return ``f`` as a :class:`PartialBijection`, or ``None`` if it is not one."""
    if not f.is_injective():
        return None
    return PartialBijection(f.source, f.target, f.graph)


@dataclass(frozen=True)
class KerCok:
    """Kernel inclusion and cokernel projection of a pointed map.

    ``kernel`` is the total injection of the points sent to the basepoint
    into the source.  ``cokernel`` is the projection of the target onto the
    target with the image collapsed into the basepoint; it is undefined
    exactly on the image.
    """

    kernel: PartialFn
    cokernel: PartialFn


def kernel_cokernel(f: PartialFn) -> KerCok:
    ker_pts = [i for i, y in enumerate(f.graph) if y is None]
    kernel = PartialFn(len(ker_pts), f.source, tuple(ker_pts))
    img = set(f.image)
    rest = [j for j in range(f.target) if j not in img]
    slot = {j: k for k, j in enumerate(rest)}
    cokernel = PartialFn(f.target, len(rest), tuple(slot.get(j) for j in range(f.target)))
    return KerCok(kernel, cokernel)


def coker_of_ker(f: PartialFn) -> PartialFn:
    """Projection of the source onto ``X / f^{-1}(basepoint)``."""
    return kernel_cokernel(kernel_cokernel(f).kernel).cokernel


def ker_of_coker(f: PartialFn) -> PartialFn:
    """Inclusion of ``f(X)`` into the target."""
    return kernel_cokernel(kernel_cokernel(f).cokernel).kernel


def is_in_F(f: PartialFn):
    """Decide whether ``f`` is bijective away from the basepoint.

    The test builds the canonical map from the coimage (source modulo the
    kernel) to the image (kernel of the cokernel) and checks that it is a
    bijection.  Returns the corresponding :class:`PartialBijection`, or
    ``None``.
    """
    proj = coker_of_ker(f)
    incl = ker_of_coker(f)
    back = {y: k for k, y in enumerate(incl.graph)}
    induced = {}
    for i, y in enumerate(f.graph):
        if y is None:
            continue
        src = proj.graph[i]
        dst = back[y]
        if induced.get(src, dst) != dst:
            return None
        induced[src] = dst
    if len(set(induced.values())) != len(induced) or len(induced) != incl.source:
        return None
    if len(induced) != proj.target:
        return None
    return PartialBijection(f.source, f.target, f.graph)


@dataclass(frozen=True)
class MonotoneMap:
    """A weakly increasing map of ordinals ``[source] -> [target]``."""

    source: int
    target: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.source + 1:
            raise ValueError("an ordinal [n] has n + 1 points")
        if any(not 0 <= v <= self.target for v in self.values):
            raise ValueError("value outside target ordinal")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"{self.values} is not monotone")

    def __call__(self, i):
        return self.values[i]

    def then(self, g: "MonotoneMap") -> "MonotoneMap":
        if self.target != g.source:
            raise EndpointError("cannot compose monotone maps")
        return MonotoneMap(self.source, g.target, tuple(g.values[v] for v in self.values))

    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    def is_surjective(self):
        return set(self.values) == set(range(self.target + 1))

    def sort_key(self):
        return (0, self.values)


def face(n: int, i: int) -> MonotoneMap:
    """The coface ``[n-1] -> [n]`` skipping ``i``."""
    return MonotoneMap(n - 1, n, tuple(k if k < i else k + 1 for k in range(n)))


def degeneracy(n: int, i: int) -> MonotoneMap:
    """The codegeneracy ``[n+1] -> [n]`` hitting ``i`` twice."""
    return MonotoneMap(n + 1, n, tuple(k if k <= i else k - 1 for k in range(n + 2)))


def _check_bound(*sizes, bound=None):
    bound = ENUMERATION_BOUND if bound is None else bound
    if max(sizes, default=0) > bound:
        raise EnumerationBoundError(f"sizes {sizes} exceed enumeration bound {bound}")


def iter_partial_fns(m: int, n: int) -> Iterator[PartialFn]:
    maps = [PartialFn(m, n, g) for g in itertools.product((None, *range(n)), repeat=m)]
    return iter(sorted(maps, key=PartialFn.sort_key))


def iter_partial_bijections(m: int, n: int) -> Iterator[PartialBijection]:
    for f in iter_partial_fns(m, n):
        if f.is_injective():
            yield PartialBijection(m, n, f.graph)


def iter_monotone(m: int, n: int) -> Iterator[MonotoneMap]:
    for vals in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield MonotoneMap(m, n, vals)


def enumerate_maps(kind: str, m: int, n: int, bound: int | None = None) -> list:
    """All maps of the given kind in canonical order.

    ``kind`` is ``"partial_fn"``, ``"partial_bij"`` or ``"monotone"``.  The
    order is lexicographic on (domain bitmask, graph).
    """
    _check_bound(m, n, bound=bound)
    if kind == "partial_fn":
        return list(iter_partial_fns(m, n))
    if kind == "partial_bij":
        return list(iter_partial_bijections(m, n))
    if kind == "monotone":
        return list(iter_monotone(m, n))
    raise ValueError(f"unknown map kind {kind!r}")


def permutations(n: int) -> list:
    return [permutation(p) for p in itertools.permutations(range(n))]


def fiber_product(f: PartialFn, g: PartialFn):
    """Pullback ``n x_m k`` of ``f: n -> m`` and ``g: k -> m``.

    Returns ``(pairs, p1, p2)`` where ``pairs`` lists the points ``(x, y)``
    with ``f(x) = g(y)`` in lexicographic order and ``p1``, ``p2`` are the
    projections.
    """
    if f.target != g.target:
        raise EndpointError("fiber product needs a common target")
    pairs = [(x, y) for x in range(f.source) for y in range(g.source)
             if f.graph[x] is not None and f.graph[x] == g.graph[y]]
    p1 = PartialFn(len(pairs), f.source, tuple(x for x, _ in pairs))
    p2 = PartialFn(len(pairs), g.source, tuple(y for _, y in pairs))
    return pairs, p1, p2


def restrict_to_fiber(f: PartialFn, g: PartialFn, j: int):
    """Restrict ``g: k -> m`` over the fiber ``f^{-1}(j)`` of ``f: m -> n``.

    The result is a total map from ``(f o g)^{-1}(j)`` to ``f^{-1}(j)``, both
    renumbered in increasing order.
    """
    fib = f.fiber(j)
    pos = {x: p for p, x in enumerate(fib)}
    over = [i for i, y in enumerate(g.graph) if y is not None and y in pos]
    return PartialFn(len(over), len(fib), tuple(pos[g.graph[i]] for i in over)), tuple(over)
