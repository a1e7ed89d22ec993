"""Explicit value tables for functions L^n -> L and the objects derived from them.

Tables are row-major with the last coordinate varying fastest, so the point
``(x_1, ..., x_n)`` lives at index ``sum(x_i * m**(n-i))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement, product
from typing import Callable, Iterator, Sequence

import numpy as np

from .chain import ChainError, ChainTuple, FiniteChain, med3


def point_index(m: int, x: Sequence[int]) -> int:
    idx = 0
    for a in x:
        idx = idx * m + a
    return idx


def index_point(m: int, n: int, idx: int) -> tuple[int, ...]:
    comps = []
    for _ in range(n):
        idx, r = divmod(idx, m)
        comps.append(r)
    return tuple(reversed(comps))


def colex_order(m: int, n: int) -> list[int]:
    """Table indices visited with the first coordinate varying fastest.

    Witness searches scan points in this order.
    """
    return [point_index(m, tuple(reversed(p))) for p in product(range(m), repeat=n)]


@dataclass(frozen=True)
class DiscreteFunction:
    chain: FiniteChain
    arity: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        table = tuple(int(v) for v in self.table)
        if self.arity < 1:
            raise ChainError(f"arity must be >= 1, got {self.arity}")
        expected = self.chain.size**self.arity
        if len(table) != expected:
            raise ChainError(f"expected {expected} table values, got {len(table)}")
        for v in table:
            self.chain.check(v)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_callable(
        cls, chain: FiniteChain, n: int, fn: Callable[..., int]
    ) -> "DiscreteFunction":
        return cls(chain, n, tuple(fn(*x) for x in product(chain.elements(), repeat=n)))

    @classmethod
    def from_array(cls, m: int, n: int, values) -> "DiscreteFunction":
        return cls(FiniteChain(m), n, tuple(int(v) for v in values))

    @property
    def m(self) -> int:
        return self.chain.size

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.table, dtype=np.int8)
        arr.setflags(write=False)
        return arr

    def index(self, x: ChainTuple | Sequence[int]) -> int:
        if isinstance(x, ChainTuple):
            if x.chain != self.chain:
                raise ChainError(f"chain mismatch: {x.chain.size} vs {self.m}")
        comps = tuple(x)
        if len(comps) != self.arity:
            raise ChainError(f"expected a {self.arity}-tuple, got {len(comps)} components")
        for a in comps:
            self.chain.check(a)
        return point_index(self.m, comps)

    def __call__(self, *x: int) -> int:
        return self.table[self.index(x)]

    def points(self) -> Iterator[tuple[int, ...]]:
        return product(range(self.m), repeat=self.arity)

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        return zip(self.points(), self.table)

    @property
    def bottom_value(self) -> int:
        """f(0, ..., 0)."""
        return self.table[0]

    @property
    def top_value(self) -> int:
        """f(1, ..., 1)."""
        return self.table[-1]

    def range_hull(self) -> tuple[int, int]:
        """Endpoints of the convex hull of the range."""
        return min(self.table), max(self.table)


@dataclass(frozen=True)
class UnaryMap:
    chain: FiniteChain
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        if len(values) != self.chain.size:
            raise ChainError(f"expected {self.chain.size} values, got {len(values)}")
        for v in values:
            self.chain.check(v)
        object.__setattr__(self, "values", values)

    @classmethod
    def identity(cls, chain: FiniteChain) -> "UnaryMap":
        return cls(chain, tuple(chain.elements()))

    @classmethod
    def constant(cls, chain: FiniteChain, c: int) -> "UnaryMap":
        return cls(chain, (c,) * chain.size)

    def __call__(self, a: int) -> int:
        return self.values[a]

    def is_nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    def then(self, other: "UnaryMap") -> "UnaryMap":
        """Composition ``other o self``."""
        return UnaryMap(self.chain, tuple(other.values[v] for v in self.values))

    def dual(self) -> "UnaryMap":
        top = self.chain.top
        return UnaryMap(self.chain, tuple(top - v for v in reversed(self.values)))

    def as_function(self) -> DiscreteFunction:
        return DiscreteFunction(self.chain, 1, self.values)


@dataclass(frozen=True)
class VertexFunction:
    """Values f(e_I) on the vertex cube, indexed by subset bitmask."""

    chain: FiniteChain
    arity: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        if len(values) != 1 << self.arity:
            raise ChainError(f"expected {1 << self.arity} values, got {len(values)}")
        for v in values:
            self.chain.check(v)
        object.__setattr__(self, "values", values)

    def __getitem__(self, mask: int) -> int:
        return self.values[mask]


def eval_at(f: DiscreteFunction, x: ChainTuple | Sequence[int]) -> int:
    return f.table[f.index(x)]


def diagonal(f: DiscreteFunction) -> UnaryMap:
    """delta_f(c) = f(c, ..., c); use ``.is_nondecreasing()`` on the result."""
    return UnaryMap(f.chain, tuple(f(*(c,) * f.arity) for c in f.chain.elements()))


def vertex_index(m: int, n: int, mask: int) -> int:
    top = m - 1
    return point_index(m, [top if mask >> i & 1 else 0 for i in range(n)])


def vertex_restriction(f: DiscreteFunction) -> VertexFunction:
    n = f.arity
    return VertexFunction(
        f.chain, n, tuple(f.table[vertex_index(f.m, n, mask)] for mask in range(1 << n))
    )


def covering_pairs(m: int, n: int) -> Iterator[tuple[int, int, int]]:
    """(lower index, upper index, 0-based coordinate) for every Hasse edge of L^n.

    Lower points are visited in witness scan order, coordinates ascending.
    """
    for idx in colex_order(m, n):
        x = index_point(m, n, idx)
        for k in range(n):
            if x[k] < m - 1:
                stride = m ** (n - 1 - k)
                yield idx, idx + stride, k


def is_nondecreasing(
    f: DiscreteFunction,
) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Monotonicity over covering pairs; on failure returns a violating (a, b) with a <= b."""
    t = f.table
    for lo, hi, _ in covering_pairs(f.m, f.arity):
        if t[lo] > t[hi]:
            return False, (index_point(f.m, f.arity, lo), index_point(f.m, f.arity, hi))
    return True, None


def clamp(f: DiscreteFunction, x):
    """<x>_f = med(f(0), x, f(1)), componentwise for tuples."""
    lo, hi = f.bottom_value, f.top_value
    if isinstance(x, ChainTuple):
        return ChainTuple(x.chain, tuple(med3(lo, a, hi) for a in x))
    if isinstance(x, (tuple, list)):
        return type(x)(med3(lo, a, hi) for a in x)
    return med3(lo, x, hi)


def clamp_function(p: DiscreteFunction, f: DiscreteFunction) -> DiscreteFunction:
    """The table of <p>_f, i.e. x -> <p(x)>_f."""
    lo, hi = f.bottom_value, f.top_value
    return DiscreteFunction(p.chain, p.arity, tuple(med3(lo, v, hi) for v in p.table))


def clamp_map(phi: UnaryMap, p: DiscreteFunction) -> UnaryMap:
    """<phi>_p, i.e. c -> <phi(c)>_p."""
    lo, hi = p.bottom_value, p.top_value
    return UnaryMap(phi.chain, tuple(med3(lo, v, hi) for v in phi.values))


def compose_unary(p: DiscreteFunction, phi: UnaryMap) -> DiscreteFunction:
    """(p o phi)(x_1, ..., x_n) = p(phi(x_1), ..., phi(x_n))."""
    if phi.chain != p.chain:
        raise ChainError(f"chain mismatch: {p.m} vs {phi.chain.size}")
    m, vals, t = p.m, phi.values, p.table
    return DiscreteFunction(
        p.chain,
        p.arity,
        tuple(t[point_index(m, [vals[a] for a in x])] for x in p.points()),
    )


def dualize(f: DiscreteFunction) -> DiscreteFunction:
    """f^d(x) = top - f(top - x); reversing the table reverses every point."""
    top = f.chain.top
    return DiscreteFunction(f.chain, f.arity, tuple(top - v for v in reversed(f.table)))


# Named functions used in examples, tests and the CLI.


def constant(chain: FiniteChain, n: int, c: int) -> DiscreteFunction:
    chain.check(c)
    return DiscreteFunction(chain, n, (c,) * chain.size**n)


def projection(chain: FiniteChain, n: int, k: int) -> DiscreteFunction:
    """x -> x_k for 1-based k."""
    return DiscreteFunction.from_callable(chain, n, lambda *x: x[k - 1])


def join_function(chain: FiniteChain, n: int) -> DiscreteFunction:
    return DiscreteFunction.from_callable(chain, n, lambda *x: max(x))


def meet_function(chain: FiniteChain, n: int) -> DiscreteFunction:
    return DiscreteFunction.from_callable(chain, n, lambda *x: min(x))


def median_function(chain: FiniteChain) -> DiscreteFunction:
    return DiscreteFunction.from_callable(chain, 3, med3)


def bounded_sum(chain: FiniteChain, n: int) -> DiscreteFunction:
    return DiscreteFunction.from_callable(chain, n, lambda *x: min(sum(x), chain.top))


def nondecreasing_maps(chain: FiniteChain) -> list[UnaryMap]:
    """All nondecreasing maps L -> L in lexicographic order of their value lists."""
    return [
        UnaryMap(chain, vals)
        for vals in combinations_with_replacement(chain.elements(), chain.size)
    ]
