"""Lattice polynomial functions over a finite chain.

Coefficients are set functions on subsets of [n], stored as tables indexed by
bitmask (bit i-1 set iff i is in the subset).  The empty meet is top and the
empty join is bottom, so the I = {} terms carry the constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chain import ChainError, ChainTuple, FiniteChain, med3, sorting_permutation
from .table import (
    DiscreteFunction,
    VertexFunction,
    clamp,
    colex_order,
    index_point,
    point_index,
    vertex_restriction,
)


class NotIsotone(ValueError):
    def __init__(self, lower: int, upper: int, values: tuple[int, int]):
        self.lower, self.upper = lower, upper
        super().__init__(
            f"not isotone: value {values[0]} at mask {lower} exceeds {values[1]} at mask {upper}"
        )


class NotPolynomial(ValueError):
    def __init__(self, witness: tuple[int, ...] | None = None, detail: str = ""):
        self.witness = witness
        super().__init__(f"not a polynomial function{': ' + detail if detail else ''}")


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class SetFunction:
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

    @classmethod
    def from_vertices(cls, g: VertexFunction) -> "SetFunction":
        return cls(g.chain, g.arity, g.values)

    def __getitem__(self, mask: int) -> int:
        return self.values[mask]

    def isotone_violation(self) -> tuple[int, int] | None:
        """First (I, I + {i}) with a strict decrease, or None when isotone."""
        vals = self.values
        for mask in range(len(vals)):
            for i in range(self.arity):
                up = mask | 1 << i
                if up != mask and vals[mask] > vals[up]:
                    return mask, up
        return None

    def is_isotone(self) -> bool:
        return self.isotone_violation() is None

    def is_capacity(self) -> bool:
        return (
            self.is_isotone()
            and self.values[0] == 0
            and self.values[-1] == self.chain.top
        )


def _check_arity(alpha: SetFunction, x: Sequence[int]) -> tuple[int, ...]:
    if isinstance(x, ChainTuple) and x.chain != alpha.chain:
        raise ChainError(f"chain mismatch: {alpha.chain.size} vs {x.chain.size}")
    comps = tuple(x)
    if len(comps) != alpha.arity:
        raise ChainError(f"expected a {alpha.arity}-tuple, got {len(comps)} components")
    return comps


def dnf_eval(alpha: SetFunction, x: Sequence[int]) -> int:
    """Join over I of (alpha(I) meet the meet of x_i, i in I)."""
    x = _check_arity(alpha, x)
    best = 0
    for mask, a in enumerate(alpha.values):
        term = a
        for i, xi in enumerate(x):
            if mask >> i & 1 and xi < term:
                term = xi
        if term > best:
            best = term
    return best


def cnf_eval(beta: SetFunction, x: Sequence[int]) -> int:
    """Meet over I of (beta(I) join the join of x_i, i in I)."""
    x = _check_arity(beta, x)
    best = beta.chain.top
    for mask, b in enumerate(beta.values):
        term = b
        for i, xi in enumerate(x):
            if mask >> i & 1 and xi > term:
                term = xi
        if term < best:
            best = term
    return best


def dnf_table(alpha: SetFunction) -> DiscreteFunction:
    return DiscreteFunction.from_callable(alpha.chain, alpha.arity, lambda *x: dnf_eval(alpha, x))


def cnf_table(beta: SetFunction) -> DiscreteFunction:
    return DiscreteFunction.from_callable(beta.chain, beta.arity, lambda *x: cnf_eval(beta, x))


def canonical_alpha(f: DiscreteFunction) -> SetFunction:
    """alpha_f(I) = f(e_I)."""
    return SetFunction.from_vertices(vertex_restriction(f))


def canonical_beta(f: DiscreteFunction) -> SetFunction:
    """beta_f(I) = f(e_{[n] minus I})."""
    g = vertex_restriction(f)
    full = (1 << f.arity) - 1
    return SetFunction(f.chain, f.arity, tuple(g[full ^ mask] for mask in range(full + 1)))


def extend_from_vertices(g: VertexFunction) -> DiscreteFunction:
    """The unique polynomial function agreeing with ``g`` on the vertex cube."""
    alpha = SetFunction.from_vertices(g)
    bad = alpha.isotone_violation()
    if bad is not None:
        raise NotIsotone(bad[0], bad[1], (alpha[bad[0]], alpha[bad[1]]))
    return dnf_table(alpha)


def simplex_eval(alpha: SetFunction, x: Sequence[int]) -> int:
    """Join over i = 1..n+1 of alpha({sigma(i),...,sigma(n)}) meet x_sigma(i), x_sigma(n+1) = top.

    ``alpha`` must be isotone.
    """
    x = _check_arity(alpha, x)
    bad = alpha.isotone_violation()
    if bad is not None:
        raise NotIsotone(bad[0], bad[1], (alpha[bad[0]], alpha[bad[1]]))
    sigma = sorting_permutation(x).images
    n = len(x)
    value = alpha[0]  # i = n+1: empty set, x_sigma(n+1) = top
    mask = 0
    for i in range(n - 1, -1, -1):
        mask |= 1 << sigma[i]
        value = max(value, min(alpha[mask], x[sigma[i]]))
    return value


def simplex_cnf_eval(beta: SetFunction, x: Sequence[int]) -> int:
    """Meet over i = 0..n of beta({sigma(1),...,sigma(i)}) join x_sigma(i), x_sigma(0) = bottom.

    ``beta`` must be antitone.
    """
    x = _check_arity(beta, x)
    full = (1 << beta.arity) - 1
    flipped = SetFunction(beta.chain, beta.arity, tuple(beta[full ^ m] for m in range(full + 1)))
    bad = flipped.isotone_violation()
    if bad is not None:
        raise NotIsotone(full ^ bad[1], full ^ bad[0], (beta[full ^ bad[1]], beta[full ^ bad[0]]))
    sigma = sorting_permutation(x).images
    value = beta[0]  # i = 0: empty set, x_sigma(0) = bottom
    mask = 0
    for i in range(len(x)):
        mask |= 1 << sigma[i]
        value = min(value, max(beta[mask], x[sigma[i]]))
    return value


def median_eval(f: DiscreteFunction, x: Sequence[int]) -> int:
    """Pin coordinates to bottom/top in order k = 1..n, taking medians on the way back."""
    comps = list(x)
    if len(comps) != f.arity:
        raise ChainError(f"expected a {f.arity}-tuple, got {len(comps)} components")
    top = f.chain.top

    def rec(k: int) -> int:
        if k == len(comps):
            return f.table[point_index(f.m, comps)]
        xk = comps[k]
        comps[k] = 0
        low = rec(k + 1)
        comps[k] = top
        high = rec(k + 1)
        comps[k] = xk
        return med3(low, xk, high)

    return rec(0)


def is_polynomial(f: DiscreteFunction) -> tuple[bool, SetFunction | tuple[int, ...]]:
    """(True, alpha_f) if f equals the DNF of its vertex coefficients, else (False, witness point)."""
    alpha = canonical_alpha(f)
    m, n = f.m, f.arity
    for idx in colex_order(m, n):
        x = index_point(m, n, idx)
        if dnf_eval(alpha, x) != f.table[idx]:
            return False, x
    return True, alpha


def sugeno_from_capacity(mu: SetFunction) -> DiscreteFunction:
    if not mu.is_capacity():
        raise CapacityError(
            "a capacity must be isotone with value bottom at {} and top at [n]"
        )
    return dnf_table(mu)


def sugeno_normalize(p: DiscreteFunction) -> SetFunction:
    """Capacity of a Sugeno integral q with <q>_p = p.

    Proper nonempty subsets keep alpha_p(I) when it lies strictly inside
    (p(0), p(1)); coefficients at p(1) are raised to top and those at p(0)
    lowered to bottom.  Clamping into [p(0), p(1)] undoes the stretch, so
    the DNF of q clamps back to p.
    """
    ok, alpha = is_polynomial(p)
    if not ok:
        raise NotPolynomial(alpha)
    lo, hi = p.bottom_value, p.top_value
    top = p.chain.top
    full = (1 << p.arity) - 1

    def stretch(mask: int) -> int:
        if mask == 0:
            return 0
        if mask == full:
            return top
        a = alpha[mask]
        if a >= hi:
            return top
        if a <= lo:
            return 0
        return a

    mu = SetFunction(p.chain, p.arity, tuple(stretch(mask) for mask in range(full + 1)))
    q = sugeno_from_capacity(mu)
    for x, v in p.items():
        if clamp(p, q.table[point_index(p.m, x)]) != v:
            raise AssertionError(f"normalization postcondition fails at {x}")
    return mu


def homogeneity_shift(
    p: DiscreteFunction, x: Sequence[int], c: int, dual: bool = False
) -> tuple[int, int]:
    """Both sides of p(x v c) = p(x) v <c>_p, or of the meet form when ``dual``."""
    ok, witness = is_polynomial(p)
    if not ok:
        raise NotPolynomial(witness)
    x = tuple(x)
    if dual:
        return p(*(min(a, c) for a in x)), min(p(*x), clamp(p, c))
    return p(*(max(a, c) for a in x)), max(p(*x), clamp(p, c))


def isotone_set_functions(chain: FiniteChain, n: int) -> list[SetFunction]:
    """All isotone set functions 2^[n] -> L, in lexicographic order of their tables."""
    size = 1 << n
    top = chain.top
    out: list[SetFunction] = []
    vals = [0] * size

    def fill(mask: int) -> None:
        if mask == size:
            out.append(SetFunction(chain, n, tuple(vals)))
            return
        lower = max((vals[mask & ~(1 << i)] for i in range(n) if mask >> i & 1), default=0)
        for v in range(lower, top + 1):
            vals[mask] = v
            fill(mask + 1)

    fill(0)
    return out


def all_polynomials(chain: FiniteChain, n: int) -> list[DiscreteFunction]:
    """Every n-ary polynomial function, one per isotone coefficient function."""
    return [dnf_table(alpha) for alpha in isotone_set_functions(chain, n)]
