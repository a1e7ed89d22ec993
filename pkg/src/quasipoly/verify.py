"""Function universes and the theorem-verification harness.

A theorem check evaluates both sides of a characterization over every
function of a universe using independent deciders, and reports the first
function (in universe order) on which they disagree.

Random tables come from splitmix64 (see ``rng``).  Table ``k`` of a sample
universe consumes stream outputs ``k*N .. k*N + N - 1`` (``N = m**n``):

* unconstrained: entry ``j`` is ``draw[k*N + j] mod m``;
* nondecreasing, ``m == 2``: unconstrained candidates are drawn in order and
  the nondecreasing ones are kept (rejection);
* nondecreasing, ``m > 2``: entries are filled in table order, entry ``j``
  being ``max(lb, draw[k*N + j] mod m)`` where ``lb`` is the largest entry
  at a covering predecessor of point ``j`` (0 if none).  This reaches every
  nondecreasing table but is not uniform over them.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from . import batch
from .axioms import Axiom, domain, holds_batch
from .chain import FiniteChain
from .classify import (
    ConstructionFailed,
    NotQuasiPolynomial,
    Refused,
    as_quasi_sugeno,
    as_quasi_term,
    as_quasi_weighted_max,
    as_quasi_weighted_min,
    weighted_max,
    weighted_min,
)
from .poly import SetFunction, all_polynomials, dnf_table, is_polynomial, isotone_set_functions
from .rng import splitmix64
from .table import DiscreteFunction, UnaryMap, compose_unary, diagonal, nondecreasing_maps

DEFAULT_BUDGET = 10**7
MODES = ("exhaustive", "exhaustive-nondecreasing", "sample", "sample-nondecreasing")


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Universe:
    m: int
    n: int
    mode: str = "exhaustive"
    samples: int = 0
    seed: int = 0
    budget: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        if self.m < 2 or self.n < 1:
            raise ValueError(f"need m >= 2 and n >= 1, got m={self.m}, n={self.n}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.exhaustive:
            total = self.m ** (self.m**self.n)
            if total > self.budget:
                raise BudgetExceeded(
                    f"exhaustive universe m={self.m}, n={self.n} has {self.m}^{self.m ** self.n}"
                    f" = {total} functions, over the budget of {self.budget}"
                )
        elif self.samples < 1:
            raise ValueError("sample universes need samples >= 1")

    @property
    def exhaustive(self) -> bool:
        return self.mode.startswith("exhaustive")

    @property
    def nondecreasing(self) -> bool:
        return self.mode.endswith("nondecreasing")

    def describe(self) -> str:
        text = f"m={self.m} n={self.n} mode={self.mode}"
        if not self.exhaustive:
            text += f" samples={self.samples} seed={self.seed}"
        return text


def exhaustive_tables(m: int, n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Tables number start..stop-1 in lexicographic table order (first entry most significant)."""
    size = m**n
    stop = m**size if stop is None else stop
    codes = np.arange(start, stop, dtype=np.int64)
    powers = m ** np.arange(size - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] // powers) % m).astype(np.int8)


@lru_cache(maxsize=None)
def _predecessors(m: int, n: int) -> list[list[int]]:
    d = domain(m, n)
    preds: list[list[int]] = [[] for _ in range(d.size)]
    for lo, hi, _ in d.cover:
        preds[hi].append(int(lo))
    return preds


def _random_any(m: int, n: int, seed: int, start: int, count: int) -> np.ndarray:
    size = m**n
    draws = splitmix64(seed, start * size, count * size).reshape(count, size)
    return (draws % np.uint64(m)).astype(np.int8)


def _random_monotone(m: int, n: int, seed: int, count: int) -> np.ndarray:
    size = m**n
    draws = splitmix64(seed, 0, count * size).reshape(count, size)
    out = np.zeros((count, size), dtype=np.int64)
    for j, preds in enumerate(_predecessors(m, n)):
        lb = out[:, preds].max(axis=1) if preds else np.zeros(count, dtype=np.int64)
        out[:, j] = np.maximum(lb, (draws[:, j] % np.uint64(m)).astype(np.int64))
    return out.astype(np.int8)


def _random_by_rejection(m: int, n: int, seed: int, count: int) -> np.ndarray:
    kept: list[np.ndarray] = []
    have, start, block = 0, 0, max(64, 4 * count)
    while have < count:
        cand = _random_any(m, n, seed, start, block)
        good = cand[holds_batch(cand, m, n, Axiom.NONDECREASING)]
        kept.append(good)
        have += len(good)
        start += block
    return np.concatenate(kept)[:count]


def sample_tables(m: int, n: int, count: int, seed: int, constraint: str = "any") -> np.ndarray:
    if constraint == "any":
        return _random_any(m, n, seed, 0, count)
    if constraint != "nondecreasing":
        raise ValueError(f"unknown constraint {constraint!r}")
    if m == 2:
        return _random_by_rejection(m, n, seed, count)
    return _random_monotone(m, n, seed, count)


def random_function(m: int, n: int, seed: int, constraint: str = "any") -> DiscreteFunction:
    return DiscreteFunction.from_array(m, n, sample_tables(m, n, 1, seed, constraint)[0])


def random_quasi_polynomials(m: int, n: int, count: int, seed: int) -> list[DiscreteFunction]:
    """p o phi with isotone vertex values for p and a nondecreasing phi, drawn like monotone tables.

    Function ``k`` consumes stream outputs ``k*(2**n + m)`` onwards.
    """
    chain = FiniteChain(m)
    width = (1 << n) + m
    draws = splitmix64(seed, 0, count * width).reshape(count, width)
    out = []
    for row in draws:
        alpha = [0] * (1 << n)
        for mask in range(1 << n):
            lb = max((alpha[mask & ~(1 << i)] for i in range(n) if mask >> i & 1), default=0)
            alpha[mask] = max(lb, int(row[mask] % np.uint64(m)))
        phi, lb = [], 0
        for a in range(m):
            lb = max(lb, int(row[(1 << n) + a] % np.uint64(m)))
            phi.append(lb)
        p = dnf_table(SetFunction(chain, n, tuple(alpha)))
        out.append(compose_unary(p, UnaryMap(chain, tuple(phi))))
    return out


def universe_tables(u: Universe) -> np.ndarray:
    if u.mode == "exhaustive":
        return exhaustive_tables(u.m, u.n)
    if u.mode == "exhaustive-nondecreasing":
        F = exhaustive_tables(u.m, u.n)
        return F[holds_batch(F, u.m, u.n, Axiom.NONDECREASING)]
    return sample_tables(u.m, u.n, u.samples, u.seed, "nondecreasing" if u.nondecreasing else "any")


def enumerate_functions(u: Universe) -> Iterator[DiscreteFunction]:
    chain = FiniteChain(u.m)
    for row in universe_tables(u):
        yield DiscreteFunction(chain, u.n, tuple(int(v) for v in row))


# --- theorems ---------------------------------------------------------------


class Theorem(enum.Enum):
    T_HORMAX = "T-HORMAX"
    L_DNFSIMPLEX = "L-DNFSIMPLEX"
    T_HORMIN = "T-HORMIN"
    C_HORMAXMIN = "C-HORMAXMIN"
    L_COMHOR = "L-COMHOR"
    T_COMMAX = "T-COMMAX"
    T_COMMIN = "T-COMMIN"
    T_QUASIPOL = "T-QUASIPOL"
    L_HOM = "L-HOM"
    P_FACT = "P-FACT"
    C_QSUGENO = "C-QSUGENO"
    L_QHOM_HOR = "L-QHOM-HOR"
    T_QHOM = "T-QHOM"
    T_QMED = "T-QMED"
    T_QTERM = "T-QTERM"
    P_MAXDEC = "P-MAXDEC"
    T_QWMAX = "T-QWMAX"
    T_QWMIN = "T-QWMIN"
    R_BOOLHOR = "R-BOOLHOR"
    R_POLYCHAR = "R-POLYCHAR"

    @classmethod
    def parse(cls, text: str) -> "Theorem":
        try:
            return cls(text.upper())
        except ValueError:
            names = ", ".join(t.value for t in cls)
            raise ValueError(f"unknown theorem {text!r}; expected one of {names}") from None


@dataclass
class Outcome:
    """Per-function side values and the functions on which the theorem fails."""

    sides: dict[str, np.ndarray]
    violated: np.ndarray


def _ax(F, m, n, *names: str) -> dict[str, np.ndarray]:
    return {name: holds_batch(F, m, n, Axiom[name]) for name in names}


def _equal(*arrays: np.ndarray) -> np.ndarray:
    bad = np.zeros(arrays[0].shape, dtype=bool)
    for a in arrays[1:]:
        bad |= a != arrays[0]
    return bad


def _rows(F: np.ndarray, m: int, n: int, mask: np.ndarray):
    chain = FiniteChain(m)
    for i in np.flatnonzero(mask):
        yield int(i), DiscreteFunction(chain, n, tuple(int(v) for v in F[i]))


def _thm_hormax(F, m, n):
    s = _ax(F, m, n, "HOR_MAX", "P1", "P2")
    s["form"] = batch.form_max(F, m, n)
    return Outcome(s, _equal(s["HOR_MAX"] & s["P1"], s["form"] & s["P2"]))


def _thm_hormin(F, m, n):
    s = _ax(F, m, n, "HOR_MIN", "D1", "D2")
    s["form"] = batch.form_min(F, m, n)
    return Outcome(s, _equal(s["HOR_MIN"] & s["D1"], s["form"] & s["D2"]))


def _thm_dnfsimplex(F, m, n):
    s = _ax(F, m, n, "P1", "D1")
    s["form_max"] = batch.form_max(F, m, n)
    s["simplex_max"] = batch.simplex_form_max(F, m, n)
    s["form_min"] = batch.form_min(F, m, n)
    s["simplex_min"] = batch.simplex_form_min(F, m, n)
    bad = s["P1"] & (s["form_max"] != s["simplex_max"])
    bad |= s["D1"] & (s["form_min"] != s["simplex_min"])
    return Outcome(s, bad)


def _thm_hormaxmin(F, m, n):
    s = _ax(F, m, n, "HOR_MAX", "HOR_MIN", "P1", "D1", "P2", "D2")
    s["unary_max"] = batch.form_max(F, m, n) & s["P2"]
    s["unary_min"] = batch.form_min(F, m, n) & s["D2"]
    s["alpha_max"] = batch.alpha_form_max(F, m, n)
    s["alpha_min"] = batch.alpha_form_min(F, m, n)
    left_max = s["HOR_MAX"] & s["P1"]
    left_min = s["HOR_MIN"] & s["D1"]
    bad = _equal(left_max, s["unary_max"]) | _equal(left_min, s["unary_min"])
    bad |= left_max & ~s["alpha_max"]
    bad |= left_min & ~s["alpha_min"]
    return Outcome(s, bad)


def _thm_comhor(F, m, n):
    s = _ax(F, m, n, "COM_MAX", "COM_MIN", "HOR_MAX", "HOR_MIN", "P1", "D1", "NONDECREASING")
    bad = _equal(s["COM_MAX"], s["HOR_MAX"] & s["P1"])
    bad |= _equal(s["COM_MIN"], s["HOR_MIN"] & s["D1"])
    bad |= (s["COM_MAX"] | s["COM_MIN"]) & ~s["NONDECREASING"]
    return Outcome(s, bad)


def _thm_commax(F, m, n):
    s = _ax(F, m, n, "COM_MAX", "P2")
    s["form"] = batch.form_max(F, m, n)
    return Outcome(s, _equal(s["COM_MAX"], s["form"] & s["P2"]))


def _thm_commin(F, m, n):
    s = _ax(F, m, n, "COM_MIN", "D2")
    s["form"] = batch.form_min(F, m, n)
    return Outcome(s, _equal(s["COM_MIN"], s["form"] & s["D2"]))


def _quasi_sets(F, m, n) -> dict[str, np.ndarray]:
    a = _ax(F, m, n, "HOR_MAX", "HOR_MIN", "P1", "D1", "COM_MAX", "COM_MIN")
    return {
        "i": a["HOR_MAX"] & a["HOR_MIN"] & (a["P1"] | a["D1"]),
        "ii": a["COM_MAX"] & a["COM_MIN"],
        "iii": a["HOR_MAX"] & a["COM_MIN"],
        "iv": a["COM_MAX"] & a["HOR_MIN"],
        "v": batch.quasi_polynomial_mask(F, m, n),
    }


def _thm_quasipol(F, m, n):
    s = _quasi_sets(F, m, n)
    return Outcome(s, _equal(*s.values()))


def _thm_hom(F, m, n):
    d = domain(m, n)
    poly = batch.polynomial_mask(F, m, n)
    xs = np.repeat(np.arange(d.size), m)
    cs = np.tile(np.arange(m), d.size)
    clamped = batch.clamp_to(F, np.broadcast_to(cs, (F.shape[0], cs.size)))
    join_ok = (F[:, d.join_c[cs, xs]] == np.maximum(F[:, xs], clamped)).all(axis=1)
    meet_ok = (F[:, d.meet_c[cs, xs]] == np.minimum(F[:, xs], clamped)).all(axis=1)
    s = {"polynomial": poly, "join_form": join_ok, "meet_form": meet_ok}
    return Outcome(s, poly & ~(join_ok & meet_ok))


@lru_cache(maxsize=None)
def _factor_pieces(m: int, n: int):
    chain = FiniteChain(m)
    polys = np.array([p.table for p in all_polynomials(chain, n)], dtype=np.int64)
    maps = np.array([phi.values for phi in nondecreasing_maps(chain)], dtype=np.int64)
    d = domain(m, n)
    # composed[P, Phi, x] = p(phi(x_1), ..., phi(x_n))
    weights = m ** np.arange(n - 1, -1, -1)
    mapped = maps[:, d.points] @ weights  # (Phi, N) index of phi(x)
    composed = polys[:, mapped]
    return polys, maps, composed


def factorization_masks(table: np.ndarray, m: int, n: int):
    """(brute, characterized, canonical) membership over all (p, phi) pairs.

    ``brute[P, Phi]`` is ``p o phi == f``; ``characterized`` is
    ``p_f == <p>_f and delta_f == <phi>_p``; ``canonical`` is the
    position of ``(p_f, delta_f)`` or None when absent.
    """
    f = np.asarray(table, dtype=np.int64)
    polys, maps, composed = _factor_pieces(m, n)
    d = domain(m, n)
    brute = (composed == f).all(axis=2)
    pf = batch._dnf(f[None, d.vertices], np.arange(m)[None], batch.subset_extremes(m, n)[0])[0]
    delta = f[d.diag]
    p_ok = (batch._med(f[0], polys, f[-1]) == pf).all(axis=1)
    phi_ok = (batch._med(polys[:, :1, None], maps[None], polys[:, -1:, None]) == delta).all(axis=2)
    characterized = p_ok[:, None] & phi_ok
    hit_p = np.flatnonzero((polys == pf).all(axis=1))
    hit_phi = np.flatnonzero((maps == delta).all(axis=1))
    canonical = (int(hit_p[0]), int(hit_phi[0])) if len(hit_p) and len(hit_phi) else None
    return brute, characterized, canonical


def _thm_fact(F, m, n):
    quasi = batch.quasi_polynomial_mask(F, m, n)
    same = np.ones(F.shape[0], dtype=bool)
    contains = np.ones(F.shape[0], dtype=bool)
    for i in np.flatnonzero(quasi):
        brute, charac, canon = factorization_masks(F[i], m, n)
        same[i] = bool((brute == charac).all())
        contains[i] = canon is not None and bool(brute[canon])
    s = {"quasi_polynomial": quasi, "sets_equal": same, "contains_canonical": contains}
    return Outcome(s, quasi & ~(same & contains))


def _thm_qsugeno(F, m, n):
    a = _ax(F, m, n, "COM_MAX", "COM_MIN")
    left = a["COM_MAX"] & a["COM_MIN"]
    built = np.zeros(F.shape[0], dtype=bool)
    for i, f in _rows(F, m, n, np.ones(F.shape[0], dtype=bool)):
        try:
            fact = as_quasi_sugeno(f)
        except (NotQuasiPolynomial, ConstructionFailed):
            continue
        q = fact.p
        built[i] = (
            is_polynomial(q)[0]
            and diagonal(q).values == tuple(range(m))
            and fact.phi.is_nondecreasing()
        )
    s = {"comonotonic_max_min": left, "quasi_sugeno": built}
    return Outcome(s, left != built)


def _thm_qhom_hor(F, m, n):
    s = _ax(F, m, n, "NONDECREASING", "QUASI_MAX_HOM", "QUASI_MIN_HOM", "HOR_MAX", "HOR_MIN")
    nd = s["NONDECREASING"]
    bad = nd & s["QUASI_MIN_HOM"] & (s["QUASI_MAX_HOM"] != s["HOR_MAX"])
    bad |= nd & s["QUASI_MAX_HOM"] & (s["QUASI_MIN_HOM"] != s["HOR_MIN"])
    return Outcome(s, bad)


def _thm_qhom(F, m, n):
    s = _ax(F, m, n, "NONDECREASING", "QUASI_MAX_HOM", "QUASI_MIN_HOM")
    s["quasi_polynomial"] = batch.quasi_polynomial_mask(F, m, n)
    right = s["NONDECREASING"] & s["QUASI_MAX_HOM"] & s["QUASI_MIN_HOM"]
    return Outcome(s, s["quasi_polynomial"] != right)


def _thm_qmed(F, m, n):
    s = _ax(F, m, n, "QUASI_MEDIAN_DECOMP")
    s["diagonal_nondecreasing"] = batch.diagonal_nondecreasing(F, m, n)
    s["quasi_polynomial"] = batch.quasi_polynomial_mask(F, m, n)
    right = s["diagonal_nondecreasing"] & s["QUASI_MEDIAN_DECOMP"]
    return Outcome(s, s["quasi_polynomial"] != right)


@lru_cache(maxsize=None)
def _subclass_keys(m: int, n: int, kind: str) -> frozenset[bytes]:
    """Tables of every p o phi with p in the named subclass and phi nondecreasing."""
    chain = FiniteChain(m)
    if kind == "term":
        ps = [
            dnf_table(a)
            for a in isotone_set_functions(chain, n)
            if set(a.values) <= {0, chain.top} and a[0] == 0 and a[-1] == chain.top
        ]
    else:
        build = weighted_max if kind == "weighted-max" else weighted_min
        grid = np.array(np.meshgrid(*[range(m)] * (n + 1), indexing="ij")).reshape(n + 1, -1).T
        ps = [build(chain, tuple(int(v) for v in w)) for w in grid]
    tables = np.array(
        [compose_unary(p, phi).table for p in ps for phi in nondecreasing_maps(chain)],
        dtype=np.int8,
    )
    return frozenset(batch.row_keys(tables))


def _membership(F, m, n, kind):
    keys = _subclass_keys(m, n, kind)
    return np.array([k in keys for k in batch.row_keys(F)], dtype=bool)


def _constructed(F, m, n, mask, build) -> np.ndarray:
    out = np.zeros(F.shape[0], dtype=bool)
    for i, f in _rows(F, m, n, mask):
        try:
            build(f)
        except Refused:
            continue
        out[i] = True
    return out


def _thm_qterm(F, m, n):
    s = _ax(F, m, n, "QUASI_CONSERVATIVE")
    quasi = batch.quasi_polynomial_mask(F, m, n)
    s["quasi_polynomial"] = quasi
    s["quasi_term"] = _membership(F, m, n, "term")
    s["constructed"] = _constructed(F, m, n, quasi, as_quasi_term)
    bad = quasi & (s["QUASI_CONSERVATIVE"] != s["quasi_term"])
    bad |= quasi & (s["constructed"] != s["quasi_term"])
    bad |= s["quasi_term"] & ~quasi
    return Outcome(s, bad)


def _thm_maxdec(F, m, n):
    s = _ax(F, m, n, "MAXITIVE", "MINITIVE")
    s["slots_max"] = batch.slot_reassembly(F, m, n)
    s["slots_min"] = batch.slot_reassembly(F, m, n, minitive=True)
    bad = _equal(s["MAXITIVE"], s["slots_max"]) | _equal(s["MINITIVE"], s["slots_min"])
    return Outcome(s, bad)


def _thm_weighted(kind: str, axiom: str, build: Callable):
    def run(F, m, n):
        s = _ax(F, m, n, axiom)
        quasi = batch.quasi_polynomial_mask(F, m, n)
        s["quasi_polynomial"] = quasi
        s["quasi_" + kind] = member = _membership(F, m, n, kind)
        s["constructed"] = _constructed(F, m, n, quasi, build)
        bad = quasi & (s[axiom] != member)
        bad |= quasi & (s["constructed"] != member)
        bad |= member & ~quasi
        return Outcome(s, bad)

    return run


def _thm_boolhor(F, m, n):
    """Boolean functions f with f(0) <= f(x) are horizontally maxitive (dually, minitive).

    For m > 2 the statement is applied to the vertex restrictions that take
    only the values bottom and top, read as functions on the two-element chain.
    """
    if m == 2:
        G = F
        boolean = np.ones(F.shape[0], dtype=bool)
    else:
        verts = batch.vertex_values(F, m, n)
        boolean = np.isin(verts, (0, m - 1)).all(axis=1)
        # vertex bitmask -> two-element-chain table index
        order = [sum(1 << i for i in range(n) if idx >> (n - 1 - i) & 1) for idx in range(1 << n)]
        G = (verts[:, order] == m - 1).astype(np.int8)
    s = _ax(G, 2, n, "HOR_MAX", "HOR_MIN", "NONDECREASING")
    s["boolean"] = boolean
    s["lower_bounded"] = (G >= G[:, :1]).all(axis=1)
    s["upper_bounded"] = (G <= G[:, -1:]).all(axis=1)
    bad = boolean & s["lower_bounded"] & ~s["HOR_MAX"]
    bad |= boolean & s["upper_bounded"] & ~s["HOR_MIN"]
    return Outcome(s, bad)


def _thm_polychar(F, m, n):
    s = _ax(
        F, m, n, "NONDECREASING", "RANGE_IDEMPOTENT", "HOR_MAX", "HOR_MIN",
        "COM_MAX", "COM_MIN", "MEDIAN_DECOMP",
    )
    s["polynomial"] = batch.polynomial_mask(F, m, n)
    horizontal = s["NONDECREASING"] & s["RANGE_IDEMPOTENT"] & s["HOR_MAX"] & s["HOR_MIN"]
    comonotonic = s["RANGE_IDEMPOTENT"] & s["COM_MAX"] & s["COM_MIN"]
    return Outcome(s, _equal(s["polynomial"], horizontal, comonotonic, s["MEDIAN_DECOMP"]))


_THEOREMS: dict[Theorem, Callable[[np.ndarray, int, int], Outcome]] = {
    Theorem.T_HORMAX: _thm_hormax,
    Theorem.L_DNFSIMPLEX: _thm_dnfsimplex,
    Theorem.T_HORMIN: _thm_hormin,
    Theorem.C_HORMAXMIN: _thm_hormaxmin,
    Theorem.L_COMHOR: _thm_comhor,
    Theorem.T_COMMAX: _thm_commax,
    Theorem.T_COMMIN: _thm_commin,
    Theorem.T_QUASIPOL: _thm_quasipol,
    Theorem.L_HOM: _thm_hom,
    Theorem.P_FACT: _thm_fact,
    Theorem.C_QSUGENO: _thm_qsugeno,
    Theorem.L_QHOM_HOR: _thm_qhom_hor,
    Theorem.T_QHOM: _thm_qhom,
    Theorem.T_QMED: _thm_qmed,
    Theorem.T_QTERM: _thm_qterm,
    Theorem.P_MAXDEC: _thm_maxdec,
    Theorem.T_QWMAX: _thm_weighted("weighted-max", "MAXITIVE", as_quasi_weighted_max),
    Theorem.T_QWMIN: _thm_weighted("weighted-min", "MINITIVE", as_quasi_weighted_min),
    Theorem.R_BOOLHOR: _thm_boolhor,
    Theorem.R_POLYCHAR: _thm_polychar,
}


def evaluate(theorem: Theorem, tables: np.ndarray, m: int, n: int) -> Outcome:
    """Run one theorem's deciders over a batch of tables."""
    F = np.atleast_2d(np.asarray(tables, dtype=np.int64))
    return _THEOREMS[theorem](F, m, n)


# --- reports ----------------------------------------------------------------


@dataclass
class VerificationReport:
    theorem: Theorem
    universe: Universe
    functions_checked: int
    holds: bool
    counts: dict[str, int] = field(default_factory=dict)
    counterexample: dict | None = None
    wall_time: float = 0.0

    def summary(self) -> str:
        if self.holds:
            return f"holds ({self.functions_checked} functions)"
        ce = self.counterexample
        table = ",".join(map(str, ce["table"]))
        sides = " ".join(f"{k}={int(v)}" for k, v in ce["sides"].items())
        return (
            f"FAILS ({self.functions_checked} functions; counterexample #{ce['index']}"
            f" table=[{table}] {sides})"
        )

    def porcelain(self) -> str:
        u = self.universe
        fields = [
            f"theorem={self.theorem.value}",
            f"m={u.m}",
            f"n={u.n}",
            f"mode={u.mode}",
            f"seed={u.seed if not u.exhaustive else 0}",
            f"samples={u.samples if not u.exhaustive else 0}",
            f"checked={self.functions_checked}",
            f"holds={'yes' if self.holds else 'no'}",
            "counts=" + ",".join(f"{k}:{v}" for k, v in self.counts.items()),
        ]
        if self.counterexample is None:
            fields.append("witness=-")
        else:
            ce = self.counterexample
            fields.append(
                f"witness=index:{ce['index']};table:{','.join(map(str, ce['table']))};"
                + "sides:"
                + ",".join(f"{k}={int(v)}" for k, v in ce["sides"].items())
            )
        return "\t".join(fields)


PORCELAIN_HEADER = "qp-porcelain 1"


def _run_chunk(args) -> tuple[int, dict[str, int], int | None, dict[str, bool] | None]:
    theorem, m, n, rows, offset = args
    out = evaluate(theorem, rows, m, n)
    counts = {k: int(v.sum()) for k, v in out.sides.items()}
    bad = np.flatnonzero(out.violated)
    if len(bad) == 0:
        return len(rows), counts, None, None
    first = int(bad[0])
    return len(rows), counts, offset + first, {k: bool(v[first]) for k, v in out.sides.items()}


def _chunks(F: np.ndarray, pieces: int) -> list[tuple[int, np.ndarray]]:
    bounds = np.linspace(0, len(F), pieces + 1).astype(int)
    return [(int(a), F[a:b]) for a, b in zip(bounds, bounds[1:]) if b > a]


def verify(theorem: Theorem, u: Universe, jobs: int = 1, tables: np.ndarray | None = None) -> VerificationReport:
    """Check one theorem over a universe; the report does not depend on ``jobs``."""
    start = time.perf_counter()
    F = universe_tables(u) if tables is None else np.asarray(tables)
    work = [(theorem, u.m, u.n, rows, off) for off, rows in _chunks(F, max(1, jobs) * 4)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_chunk, work))
    else:
        results = [_run_chunk(w) for w in work]
    checked = 0
    counts: dict[str, int] = {}
    first = None
    for rows, part, bad, sides in results:
        checked += rows
        for k, v in part.items():
            counts[k] = counts.get(k, 0) + v
        if bad is not None and (first is None or bad < first[0]):
            first = (bad, sides)
    counterexample = None
    if first is not None:
        counterexample = {
            "index": first[0],
            "table": tuple(int(v) for v in F[first[0]]),
            "sides": first[1],
        }
    return VerificationReport(
        theorem=theorem,
        universe=u,
        functions_checked=checked,
        holds=first is None,
        counts=counts,
        counterexample=counterexample,
        wall_time=time.perf_counter() - start,
    )


def replay_counterexample(report: VerificationReport) -> bool:
    """True iff the reported counterexample still violates the theorem."""
    if report.counterexample is None:
        return False
    table = np.array(report.counterexample["table"], dtype=np.int64)[None]
    return bool(evaluate(report.theorem, table, report.universe.m, report.universe.n).violated[0])


# --- class counts -----------------------------------------------------------


def count_classes(m: int, n: int, budget: int = DEFAULT_BUDGET) -> dict[str, int]:
    """Cardinality of every axiom class and every recognized class over all m^(m^n) functions."""
    u = Universe(m, n, "exhaustive", budget=budget)
    F = universe_tables(u).astype(np.int64)
    counts: dict[str, int] = {"functions": len(F)}
    for a in Axiom:
        counts[a.value] = int(holds_batch(F, m, n, a).sum())
    quasi = batch.quasi_polynomial_mask(F, m, n)
    counts["polynomial"] = int(batch.polynomial_mask(F, m, n).sum())
    counts["quasi_polynomial"] = int(quasi.sum())
    counts["quasi_sugeno"] = int(_constructed(F, m, n, quasi, as_quasi_sugeno).sum())
    counts["quasi_term"] = int(_constructed(F, m, n, quasi, as_quasi_term).sum())
    counts["quasi_weighted_max"] = int(_constructed(F, m, n, quasi, as_quasi_weighted_max).sum())
    counts["quasi_weighted_min"] = int(_constructed(F, m, n, quasi, as_quasi_weighted_min).sum())
    return counts
