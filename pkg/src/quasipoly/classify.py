"""Recognition and factorization of quasi-polynomial functions.

A function is recognized by rebuilding it: take the polynomial ``p_f``
extending its vertex values and its diagonal section ``delta_f``, and compare
``p_f o delta_f`` with ``f`` pointwise.  Every factorization handed back has
been recomposed and compared against the input table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .axioms import Axiom, AxiomResult, check
from .chain import FiniteChain, mask_to_set
from .poly import (
    NotIsotone,
    SetFunction,
    all_polynomials,
    dnf_table,
    extend_from_vertices,
    is_polynomial,
    sugeno_from_capacity,
    sugeno_normalize,
)
from .table import (
    DiscreteFunction,
    UnaryMap,
    clamp_function,
    clamp_map,
    colex_order,
    compose_unary,
    diagonal,
    index_point,
    nondecreasing_maps,
    point_index,
    vertex_index,
    vertex_restriction,
)

KINDS = ("general", "sugeno", "term", "weighted-max", "weighted-min")


class NotIsotoneOnVertices(NotIsotone):
    pass


class NotQuasiPolynomial(ValueError):
    def __init__(self, recognition: "Recognition"):
        self.recognition = recognition
        super().__init__(f"not quasi-polynomial ({recognition.describe()})")


class Refused(ValueError):
    """The function is outside the requested subclass; ``result`` holds the failed axiom."""

    def __init__(self, kind: str, result: AxiomResult):
        self.kind = kind
        self.result = result
        super().__init__(f"not quasi-{kind}: {result.describe()}")


class ConstructionFailed(AssertionError):
    """A construction that the characterization theorems guarantee did not recompose."""


@dataclass(frozen=True)
class Factorization:
    p: DiscreteFunction
    phi: UnaryMap
    kind: str = "general"
    weights: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown factorization kind {self.kind!r}")

    def compose(self) -> DiscreteFunction:
        return compose_unary(self.p, self.phi)


@dataclass(frozen=True)
class Recognition:
    holds: bool
    factorization: Factorization | None = None
    stage: str | None = None
    witness: dict | None = None

    def describe(self) -> str:
        if self.holds:
            return "yes"
        w = self.witness
        if self.stage == "diagonal":
            return f"diagonal section decreases at c={w['c']}: {w['value']} > {w['next']}"
        if self.stage == "vertices":
            return (
                f"vertex values not isotone: f(e_{_fmt_set(w['I'])})={w['lower']}"
                f" > f(e_{_fmt_set(w['J'])})={w['upper']}"
            )
        x = "(" + ",".join(map(str, w["x"])) + ")"
        return f"witness x={x}: p_f∘δ_f={w['recomposed']}, f={w['f']}"


def _fmt_set(members) -> str:
    return "{" + ",".join(map(str, members)) + "}"


def _verified(f: DiscreteFunction, fact: Factorization) -> Factorization:
    got = fact.compose()
    if got != f:
        bad = next(x for x, a, b in zip(f.points(), got.table, f.table) if a != b)
        raise ConstructionFailed(f"{fact.kind} factorization does not recompose at {bad}")
    return fact


def canonical_polynomial(f: DiscreteFunction) -> DiscreteFunction:
    """p_f, the polynomial function extending f on the vertex cube."""
    try:
        return extend_from_vertices(vertex_restriction(f))
    except NotIsotone as exc:
        g = vertex_restriction(f)
        raise NotIsotoneOnVertices(exc.lower, exc.upper, (g[exc.lower], g[exc.upper])) from None


def is_quasi_polynomial(f: DiscreteFunction) -> Recognition:
    delta = diagonal(f)
    for c in range(f.m - 1):
        if delta(c) > delta(c + 1):
            return Recognition(
                False, stage="diagonal", witness={"c": c, "value": delta(c), "next": delta(c + 1)}
            )
    try:
        p = canonical_polynomial(f)
    except NotIsotoneOnVertices as exc:
        g = vertex_restriction(f)
        return Recognition(
            False,
            stage="vertices",
            witness={
                "I": mask_to_set(exc.lower),
                "J": mask_to_set(exc.upper),
                "lower": g[exc.lower],
                "upper": g[exc.upper],
            },
        )
    rebuilt = compose_unary(p, delta)
    for idx in colex_order(f.m, f.arity):
        if rebuilt.table[idx] != f.table[idx]:
            return Recognition(
                False,
                stage="recomposition",
                witness={
                    "x": index_point(f.m, f.arity, idx),
                    "recomposed": rebuilt.table[idx],
                    "f": f.table[idx],
                },
            )
    return Recognition(True, Factorization(p, delta))


def _require_quasi_polynomial(f: DiscreteFunction) -> Factorization:
    rec = is_quasi_polynomial(f)
    if not rec.holds:
        raise NotQuasiPolynomial(rec)
    return rec.factorization


@lru_cache(maxsize=None)
def _pieces(m: int, n: int):
    chain = FiniteChain(m)
    return tuple(all_polynomials(chain, n)), tuple(nondecreasing_maps(chain))


def brute_force_factorizations(f: DiscreteFunction) -> set[Factorization]:
    """All (p, phi) with p polynomial, phi nondecreasing and p o phi = f, by exhaustive search."""
    polys, maps = _pieces(f.m, f.arity)
    return {
        Factorization(p, phi)
        for p in polys
        for phi in maps
        if compose_unary(p, phi) == f
    }


def characterized_factorizations(f: DiscreteFunction) -> set[Factorization]:
    """Pairs (p, phi) with p_f = <p>_f and delta_f = <phi>_p."""
    polys, maps = _pieces(f.m, f.arity)
    pf = canonical_polynomial(f)
    delta = diagonal(f)
    out = set()
    for p in polys:
        if clamp_function(p, f) != pf:
            continue
        out.update(Factorization(p, phi) for phi in maps if clamp_map(phi, p) == delta)
    return out


def factorizations(f: DiscreteFunction) -> frozenset[Factorization]:
    """Every factorization of a quasi-polynomial f into polynomial o nondecreasing map.

    The exhaustive enumeration is cross-checked against the clamp
    characterization before it is returned.
    """
    canonical = _require_quasi_polynomial(f)
    found = brute_force_factorizations(f)
    if found != characterized_factorizations(f):
        raise ConstructionFailed("factorization set differs from its characterization")
    if canonical not in found:
        raise ConstructionFailed("(p_f, delta_f) missing from the factorization set")
    return frozenset(found)


def as_quasi_sugeno(f: DiscreteFunction) -> Factorization:
    canonical = _require_quasi_polynomial(f)
    pf, delta = canonical.p, canonical.phi
    q = sugeno_from_capacity(sugeno_normalize(pf))
    return _verified(f, Factorization(q, clamp_map(delta, pf), "sugeno"))


def as_quasi_term(f: DiscreteFunction) -> Factorization:
    canonical = _require_quasi_polynomial(f)
    result = check(f, Axiom.QUASI_CONSERVATIVE)
    if not result.holds:
        raise Refused("term", result)
    chain, n = f.chain, f.arity
    if f.bottom_value == f.top_value:
        # constant: any term works; x_1 is the fixed representative
        term = dnf_table(SetFunction(chain, n, tuple(chain.top if s & 1 else 0 for s in range(1 << n))))
        return _verified(f, Factorization(term, UnaryMap.constant(chain, f.top_value), "term"))
    g = vertex_restriction(f)
    alpha = SetFunction(
        chain, n, tuple(chain.top if g[s] == f.top_value else 0 for s in range(1 << n))
    )
    return _verified(f, Factorization(dnf_table(alpha), canonical.phi, "term"))


def weighted_max(chain: FiniteChain, weights: tuple[int, ...]) -> DiscreteFunction:
    """v_0 v (v_1 ^ x_1) v ... v (v_n ^ x_n)."""
    v0, vs = weights[0], weights[1:]
    return DiscreteFunction.from_callable(
        chain, len(vs), lambda *x: max([v0] + [min(v, a) for v, a in zip(vs, x)])
    )


def weighted_min(chain: FiniteChain, weights: tuple[int, ...]) -> DiscreteFunction:
    """w_0 ^ (w_1 v x_1) ^ ... ^ (w_n v x_n)."""
    w0, ws = weights[0], weights[1:]
    return DiscreteFunction.from_callable(
        chain, len(ws), lambda *x: min([w0] + [max(w, a) for w, a in zip(ws, x)])
    )


def as_quasi_weighted_max(f: DiscreteFunction) -> Factorization:
    canonical = _require_quasi_polynomial(f)
    result = check(f, Axiom.MAXITIVE)
    if not result.holds:
        raise Refused("weighted-max", result)
    pf, delta = canonical.p, canonical.phi
    n = f.arity
    weights = (delta(0),) + tuple(pf.table[vertex_index(f.m, n, 1 << i)] for i in range(n))
    p = weighted_max(f.chain, weights)
    return _verified(f, Factorization(p, delta, "weighted-max", weights))


def as_quasi_weighted_min(f: DiscreteFunction) -> Factorization:
    canonical = _require_quasi_polynomial(f)
    result = check(f, Axiom.MINITIVE)
    if not result.holds:
        raise Refused("weighted-min", result)
    pf, delta = canonical.p, canonical.phi
    n, full = f.arity, (1 << f.arity) - 1
    weights = (delta(f.chain.top),) + tuple(
        pf.table[vertex_index(f.m, n, full ^ 1 << i)] for i in range(n)
    )
    p = weighted_min(f.chain, weights)
    return _verified(f, Factorization(p, delta, "weighted-min", weights))


def slot_functions(f: DiscreteFunction, fill: int) -> list[UnaryMap]:
    """f_i(a) = f evaluated at the constant ``fill`` tuple with slot i set to a."""
    out = []
    for i in range(f.arity):
        vals = []
        for a in f.chain.elements():
            x = [fill] * f.arity
            x[i] = a
            vals.append(f.table[point_index(f.m, x)])
        out.append(UnaryMap(f.chain, tuple(vals)))
    return out


def reassembles(f: DiscreteFunction, slots: list[UnaryMap], minitive: bool = False) -> bool:
    """Are the slots nondecreasing with f(x) = join (or meet) of slots[i](x_i)?"""
    if not all(s.is_nondecreasing() for s in slots):
        return False
    op = min if minitive else max
    return all(v == op(s(a) for s, a in zip(slots, x)) for x, v in f.items())


def maxitive_decomposition(f: DiscreteFunction) -> list[UnaryMap]:
    result = check(f, Axiom.MAXITIVE)
    if not result.holds:
        raise Refused("maxitive", result)
    slots = slot_functions(f, 0)
    if not reassembles(f, slots):
        raise ConstructionFailed("slot functions do not reassemble a maxitive function")
    return slots


def minitive_decomposition(f: DiscreteFunction) -> list[UnaryMap]:
    result = check(f, Axiom.MINITIVE)
    if not result.holds:
        raise Refused("minitive", result)
    slots = slot_functions(f, f.chain.top)
    if not reassembles(f, slots, minitive=True):
        raise ConstructionFailed("slot functions do not reassemble a minitive function")
    return slots


@dataclass(frozen=True)
class ClassReport:
    is_polynomial: bool
    is_quasi_polynomial: bool
    is_quasi_sugeno: bool
    is_quasi_term: bool
    is_quasi_weighted_max: bool
    is_quasi_weighted_min: bool
    recognition: Recognition
    factorizations: dict[str, Factorization]
    refusals: dict[str, str]

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "polynomial": self.is_polynomial,
            "quasi_polynomial": self.is_quasi_polynomial,
            "quasi_sugeno": self.is_quasi_sugeno,
            "quasi_term": self.is_quasi_term,
            "quasi_weighted_max": self.is_quasi_weighted_max,
            "quasi_weighted_min": self.is_quasi_weighted_min,
        }


def classify(f: DiscreteFunction) -> ClassReport:
    rec = is_quasi_polynomial(f)
    facts: dict[str, Factorization] = {}
    refusals: dict[str, str] = {}
    if rec.holds:
        facts["general"] = rec.factorization
        builders = {
            "sugeno": as_quasi_sugeno,
            "term": as_quasi_term,
            "weighted-max": as_quasi_weighted_max,
            "weighted-min": as_quasi_weighted_min,
        }
        for kind, build in builders.items():
            try:
                facts[kind] = build(f)
            except Refused as exc:
                refusals[kind] = exc.result.describe()
    else:
        for kind in ("sugeno", "term", "weighted-max", "weighted-min"):
            refusals[kind] = rec.describe()
    return ClassReport(
        is_polynomial=is_polynomial(f)[0],
        is_quasi_polynomial=rec.holds,
        is_quasi_sugeno="sugeno" in facts,
        is_quasi_term="term" in facts,
        is_quasi_weighted_max="weighted-max" in facts,
        is_quasi_weighted_min="weighted-min" in facts,
        recognition=rec,
        factorizations=facts,
        refusals=refusals,
    )
