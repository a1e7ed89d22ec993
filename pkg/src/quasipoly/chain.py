"""Finite bounded chains and the tuple operations used throughout the package.

A chain of size ``m`` is identified with ``{0, ..., m-1}`` in natural order, so
meet is ``min`` and join is ``max``.  Tuples of chain elements carry a reference
to their chain so that mixing chains or arities is caught early.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence


class ChainError(ValueError):
    """Raised on mismatched chains/arities or out-of-range elements."""


@dataclass(frozen=True)
class FiniteChain:
    size: int

    def __post_init__(self) -> None:
        if not isinstance(self.size, int) or self.size < 2:
            raise ChainError(f"a chain needs at least 2 elements, got {self.size!r}")

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    def elements(self) -> range:
        return range(self.size)

    def check(self, a: int) -> int:
        if not 0 <= a < self.size:
            raise ChainError(f"{a!r} is not an element of the chain 0..{self.top}")
        return a

    def neg(self, a: int) -> int:
        """Order-reversing involution a -> top - a."""
        return self.top - a

    def tuples(self, n: int) -> Iterator["ChainTuple"]:
        """All points of L^n in table order (last coordinate fastest)."""
        size = self.size
        for code in range(size**n):
            comps = []
            for _ in range(n):
                code, r = divmod(code, size)
                comps.append(r)
            yield ChainTuple(self, tuple(reversed(comps)))


@dataclass(frozen=True)
class ChainTuple:
    chain: FiniteChain
    components: tuple[int, ...]

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        if not comps:
            raise ChainError("tuples need arity >= 1")
        for a in comps:
            self.chain.check(a)
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, chain: FiniteChain, values: Iterable[int]) -> "ChainTuple":
        return cls(chain, tuple(values))

    @property
    def arity(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[int]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> int:
        return self.components[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.components)) + ")"


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1}; ``images[i]`` is sigma(i+1) - 1."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        imgs = tuple(self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ChainError(f"{imgs!r} is not a permutation of 0..{len(imgs) - 1}")
        object.__setattr__(self, "images", imgs)

    @property
    def arity(self) -> int:
        return len(self.images)

    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.images)

    def upper_set(self, i: int) -> int:
        """Bitmask of {sigma(i), ..., sigma(n)} for 1-based i; empty for i = n+1."""
        mask = 0
        for j in self.images[i - 1 :]:
            mask |= 1 << j
        return mask

    def lower_set(self, i: int) -> int:
        """Bitmask of {sigma(1), ..., sigma(i)} for 1-based i; empty for i = 0."""
        mask = 0
        for j in self.images[:i]:
            mask |= 1 << j
        return mask


def _same_shape(x: ChainTuple, y: ChainTuple) -> None:
    if x.chain != y.chain:
        raise ChainError(f"chain mismatch: {x.chain.size} vs {y.chain.size}")
    if x.arity != y.arity:
        raise ChainError(f"arity mismatch: {x.arity} vs {y.arity}")


def tuple_meet(x: ChainTuple, y: ChainTuple) -> ChainTuple:
    _same_shape(x, y)
    return ChainTuple(x.chain, tuple(map(min, x, y)))


def tuple_join(x: ChainTuple, y: ChainTuple) -> ChainTuple:
    _same_shape(x, y)
    return ChainTuple(x.chain, tuple(map(max, x, y)))


def med3(a: int, b: int, c: int) -> int:
    """Ternary median, (a v b) ^ (b v c) ^ (c v a)."""
    return min(max(a, b), max(b, c), max(c, a))


def cut_meet(x: ChainTuple, c: int) -> ChainTuple:
    x.chain.check(c)
    return ChainTuple(x.chain, tuple(min(a, c) for a in x))


def cut_join(x: ChainTuple, c: int) -> ChainTuple:
    x.chain.check(c)
    return ChainTuple(x.chain, tuple(max(a, c) for a in x))


def upper_part(x: ChainTuple, c: int) -> ChainTuple:
    """[x]_c: components <= c are sent to bottom, the rest are kept."""
    x.chain.check(c)
    return ChainTuple(x.chain, tuple(0 if a <= c else a for a in x))


def lower_part(x: ChainTuple, c: int) -> ChainTuple:
    """[x]^c: components >= c are sent to top, the rest are kept."""
    x.chain.check(c)
    top = x.chain.top
    return ChainTuple(x.chain, tuple(top if a >= c else a for a in x))


def is_comonotonic(x: ChainTuple, y: ChainTuple) -> bool:
    """True iff no pair of indices is ordered strictly oppositely in x and y."""
    _same_shape(x, y)
    return _inversion_free(x.components, y.components)


def _inversion_free(x: Sequence[int], y: Sequence[int]) -> bool:
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            if (x[i] - x[j]) * (y[i] - y[j]) < 0:
                return False
    return True


def comonotonic_by_search(x: ChainTuple, y: ChainTuple) -> bool:
    """Direct definition: some permutation sorts both tuples nondecreasingly."""
    _same_shape(x, y)
    for sigma in permutations(range(x.arity)):
        if all(
            x[sigma[k]] <= x[sigma[k + 1]] and y[sigma[k]] <= y[sigma[k + 1]]
            for k in range(x.arity - 1)
        ):
            return True
    return False


def sorting_permutation(x: ChainTuple | Sequence[int]) -> Permutation:
    comps = list(x)
    return Permutation(tuple(sorted(range(len(comps)), key=lambda i: (comps[i], i))))


def dual_tuple(x: ChainTuple) -> ChainTuple:
    top = x.chain.top
    return ChainTuple(x.chain, tuple(top - a for a in x))


def vertex(chain: FiniteChain, n: int, mask: int) -> ChainTuple:
    """e_I: top on the coordinates in the bitmask, bottom elsewhere."""
    return ChainTuple(chain, tuple(chain.top if mask >> i & 1 else 0 for i in range(n)))


def mask_to_set(mask: int) -> tuple[int, ...]:
    """1-based members of a subset bitmask."""
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)
