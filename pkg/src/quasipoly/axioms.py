"""Decision procedures, with counterexample witnesses, for the functional axioms.

Every checker is a brute-force scan of the axiom's whole quantifier domain.
The scans are vectorized over a batch of tables (a ``(B, m**n)`` integer
array) so that whole function universes can be filtered at once; ``check``
runs the same scan on a single function and reports the first violating
instance.  Points are visited with the first coordinate varying fastest,
then by the remaining quantified variables in ascending order.

``replay`` re-evaluates one witness directly from the axiom's formula,
independently of the vectorized scans.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from .chain import _inversion_free, med3
from .table import DiscreteFunction, colex_order, index_point, point_index, vertex_index


class Axiom(enum.Enum):
    NONDECREASING = "NONDECREASING"
    IDEMPOTENT = "IDEMPOTENT"
    RANGE_IDEMPOTENT = "RANGE_IDEMPOTENT"
    HOR_MAX = "HOR_MAX"
    HOR_MIN = "HOR_MIN"
    P1 = "P1"
    D1 = "D1"
    P2 = "P2"
    D2 = "D2"
    COM_MAX = "COM_MAX"
    COM_MIN = "COM_MIN"
    MAXITIVE = "MAXITIVE"
    MINITIVE = "MINITIVE"
    S_MAX_HOM = "S_MAX_HOM"
    S_MIN_HOM = "S_MIN_HOM"
    QUASI_MAX_HOM = "QUASI_MAX_HOM"
    QUASI_MIN_HOM = "QUASI_MIN_HOM"
    MEDIAN_DECOMP = "MEDIAN_DECOMP"
    QUASI_MEDIAN_DECOMP = "QUASI_MEDIAN_DECOMP"
    CONSERVATIVE = "CONSERVATIVE"
    QUASI_CONSERVATIVE = "QUASI_CONSERVATIVE"

    @property
    def dual(self) -> "Axiom":
        return _DUALS.get(self, self)

    @property
    def parameterized(self) -> bool:
        return self in (Axiom.S_MAX_HOM, Axiom.S_MIN_HOM)


_PAIRS = [
    ("HOR_MAX", "HOR_MIN"),
    ("P1", "D1"),
    ("P2", "D2"),
    ("COM_MAX", "COM_MIN"),
    ("MAXITIVE", "MINITIVE"),
    ("S_MAX_HOM", "S_MIN_HOM"),
    ("QUASI_MAX_HOM", "QUASI_MIN_HOM"),
]
_DUALS = {}
for _a, _b in _PAIRS:
    _DUALS[Axiom[_a]] = Axiom[_b]
    _DUALS[Axiom[_b]] = Axiom[_a]


class AxiomError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomResult:
    axiom: Axiom
    holds: bool
    witness: dict | None = None
    subset: frozenset[int] | None = field(default=None, compare=True)

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise ValueError("a witness is present exactly when the axiom fails")

    def describe(self) -> str:
        name = self.axiom.value
        if self.subset is not None:
            name += "{" + ",".join(map(str, sorted(self.subset))) + "}"
        if self.holds:
            return f"{name}: holds"
        return f"{name}: fails ({format_witness(self.witness)})"


def format_witness(witness: dict) -> str:
    parts = []
    for key, val in witness.items():
        if isinstance(val, tuple):
            val = "(" + ",".join(map(str, val)) + ")"
        parts.append(f"{key}={val}")
    return " ".join(parts)


# --- precomputed index structure per (m, n) --------------------------------


@dataclass(frozen=True, eq=False)
class Domain:
    m: int
    n: int
    points: np.ndarray  # (N, n) coordinates in table order
    scan: np.ndarray  # table indices in witness scan order
    rank: np.ndarray  # rank[idx] = position of idx in ``scan``
    diag: np.ndarray  # (m,) index of (c, ..., c)
    vertices: np.ndarray  # (2**n,) index of e_I by bitmask
    meet_c: np.ndarray  # (m, N) index of x ^ c
    join_c: np.ndarray  # (m, N) index of x v c
    upper_c: np.ndarray  # (m, N) index of [x]_c
    lower_c: np.ndarray  # (m, N) index of [x]^c
    pin: np.ndarray  # (n, 2, N) index of x with coordinate k set to bottom / top
    cover: np.ndarray  # (K, 3) lower index, upper index, coordinate
    pairs: np.ndarray  # (K, 2) all i, j with rank[i] < rank[j], in scan order
    comonotonic: np.ndarray  # (K,) bool per pair

    @property
    def size(self) -> int:
        return self.m**self.n

    def point(self, idx: int) -> tuple[int, ...]:
        return tuple(int(a) for a in self.points[idx])

    def index(self, x: Iterable[int]) -> int:
        return point_index(self.m, tuple(x))


@lru_cache(maxsize=None)
def domain(m: int, n: int) -> Domain:
    size = m**n
    weights = m ** np.arange(n - 1, -1, -1)
    points = np.array([index_point(m, n, i) for i in range(size)], dtype=np.int64).reshape(size, n)
    scan = np.array(colex_order(m, n), dtype=np.int64)
    rank = np.empty(size, dtype=np.int64)
    rank[scan] = np.arange(size)
    top = m - 1
    cs = np.arange(m)[:, None, None]
    meet_c = (np.minimum(points[None], cs) @ weights)
    join_c = (np.maximum(points[None], cs) @ weights)
    upper_c = (np.where(points[None] <= cs, 0, points[None]) @ weights)
    lower_c = (np.where(points[None] >= cs, top, points[None]) @ weights)
    pin = np.empty((n, 2, size), dtype=np.int64)
    for k in range(n):
        for s, v in enumerate((0, top)):
            q = points.copy()
            q[:, k] = v
            pin[k, s] = q @ weights
    cover = [
        (lo, lo + m ** (n - 1 - k), k)
        for lo in scan
        for k in range(n)
        if points[lo, k] < top
    ]
    pairs = [(int(scan[a]), int(scan[b])) for a in range(size) for b in range(a + 1, size)]
    comon = [_inversion_free(points[i], points[j]) for i, j in pairs]
    return Domain(
        m=m,
        n=n,
        points=points,
        scan=scan,
        rank=rank,
        diag=np.array([point_index(m, (c,) * n) for c in range(m)], dtype=np.int64),
        vertices=np.array([vertex_index(m, n, s) for s in range(1 << n)], dtype=np.int64),
        meet_c=meet_c,
        join_c=join_c,
        upper_c=upper_c,
        lower_c=lower_c,
        pin=pin,
        cover=np.array(cover, dtype=np.int64).reshape(-1, 3),
        pairs=np.array(pairs, dtype=np.int64).reshape(-1, 2),
        comonotonic=np.array(comon, dtype=bool),
    )


# --- vectorized scans -------------------------------------------------------
#
# Each scan maps a (B, N) table batch to a (B, K) "instance satisfied" matrix
# whose columns follow the witness scan order, and has a companion that turns
# a column number back into witness data.


def _x_c_instances(d: Domain) -> tuple[np.ndarray, np.ndarray]:
    return np.repeat(d.scan, d.m), np.tile(np.arange(d.m), d.size)


def _med(a, b, c):
    return np.maximum(np.minimum(a, b), np.minimum(np.maximum(a, b), c))


def _hull_mask(F: np.ndarray, m: int) -> np.ndarray:
    """(B, m) membership of each chain element in the convex hull of each range."""
    cs = np.arange(m)
    return (F.min(axis=1)[:, None] <= cs) & (cs <= F.max(axis=1)[:, None])


def _vertex_pairs(d: Domain):
    """(mask, bigger mask) covering pairs of the subset lattice."""
    return [(s, s | 1 << i) for s in range(1 << d.n) for i in range(d.n) if not s >> i & 1]


def _scan_nondecreasing(F, d, S):
    return F[:, d.cover[:, 0]] <= F[:, d.cover[:, 1]]


def _wit_nondecreasing(d, col):
    lo, hi, _ = d.cover[col]
    return {"a": d.point(lo), "b": d.point(hi)}


def _scan_idempotent(F, d, S):
    return F[:, d.diag] == np.arange(d.m)


def _scan_range_idempotent(F, d, S):
    return (F[:, d.diag] == np.arange(d.m)) | ~_hull_mask(F, d.m)


def _wit_c(d, col):
    return {"c": int(col)}


def _scan_hor_max(F, d, S):
    xs, cs = _x_c_instances(d)
    return F[:, xs] == np.maximum(F[:, d.meet_c[cs, xs]], F[:, d.upper_c[cs, xs]])


def _scan_hor_min(F, d, S):
    xs, cs = _x_c_instances(d)
    return F[:, xs] == np.minimum(F[:, d.join_c[cs, xs]], F[:, d.lower_c[cs, xs]])


def _wit_x_c(d, col):
    x, c = divmod(int(col), d.m)
    return {"x": d.point(d.scan[x]), "c": c}


def _p_instances(d):
    rows = [(s, t, c) for s, t in _vertex_pairs(d) for c in range(d.m)]
    return np.array(rows, dtype=np.int64).reshape(-1, 3)


def _scan_p1(F, d, S):
    inst = _p_instances(d)
    lo = d.meet_c[inst[:, 2], d.vertices[inst[:, 0]]]
    hi = d.meet_c[inst[:, 2], d.vertices[inst[:, 1]]]
    return F[:, lo] <= F[:, hi]


def _scan_d1(F, d, S):
    inst = _p_instances(d)
    lo = d.join_c[inst[:, 2], d.vertices[inst[:, 0]]]
    hi = d.join_c[inst[:, 2], d.vertices[inst[:, 1]]]
    return F[:, lo] <= F[:, hi]


def _wit_p1(d, col):
    s, t, c = _p_instances(d)[col]
    return {"e": d.point(d.vertices[s]), "e2": d.point(d.vertices[t]), "c": int(c)}


def _scan_p2(F, d, S):
    e = np.repeat(d.vertices, d.m - 1)
    c = np.tile(np.arange(d.m - 1), 1 << d.n)
    return F[:, d.meet_c[c, e]] <= F[:, d.meet_c[c + 1, e]]


def _scan_d2(F, d, S):
    e = np.repeat(d.vertices, d.m - 1)
    c = np.tile(np.arange(d.m - 1), 1 << d.n)
    return F[:, d.join_c[c, e]] <= F[:, d.join_c[c + 1, e]]


def _wit_p2(d, col):
    s, c = divmod(int(col), d.m - 1)
    return {"e": d.point(d.vertices[s]), "c": c, "c2": c + 1}


def _pair_ok(F, d, pairs, combine, merge):
    i, j = pairs[:, 0], pairs[:, 1]
    merged = combine(d.points[i], d.points[j]) @ (d.m ** np.arange(d.n - 1, -1, -1))
    return F[:, merged] == merge(F[:, i], F[:, j])


def _scan_com_max(F, d, S):
    return _pair_ok(F, d, d.pairs[d.comonotonic], np.maximum, np.maximum)


def _scan_com_min(F, d, S):
    return _pair_ok(F, d, d.pairs[d.comonotonic], np.minimum, np.minimum)


def _scan_maxitive(F, d, S):
    return _pair_ok(F, d, d.pairs, np.maximum, np.maximum)


def _scan_minitive(F, d, S):
    return _pair_ok(F, d, d.pairs, np.minimum, np.minimum)


def _wit_com_pair(d, col):
    i, j = d.pairs[d.comonotonic][col]
    return {"x": d.point(i), "y": d.point(j)}


def _wit_pair(d, col):
    i, j = d.pairs[col]
    return {"x": d.point(i), "y": d.point(j)}


def _subset_mask(F, d, S):
    if S is None:
        return _hull_mask(F, d.m)
    row = np.zeros(d.m, dtype=bool)
    row[sorted(S)] = True
    return np.broadcast_to(row, (F.shape[0], d.m))


def _scan_s_max_hom(F, d, S):
    xs, cs = _x_c_instances(d)
    inside = _subset_mask(F, d, S)[:, cs]
    return (F[:, d.join_c[cs, xs]] == np.maximum(F[:, xs], cs)) | ~inside


def _scan_s_min_hom(F, d, S):
    xs, cs = _x_c_instances(d)
    inside = _subset_mask(F, d, S)[:, cs]
    return (F[:, d.meet_c[cs, xs]] == np.minimum(F[:, xs], cs)) | ~inside


def _scan_quasi_max_hom(F, d, S):
    xs, cs = _x_c_instances(d)
    return F[:, d.join_c[cs, xs]] == np.maximum(F[:, xs], F[:, d.diag[cs]])


def _scan_quasi_min_hom(F, d, S):
    xs, cs = _x_c_instances(d)
    return F[:, d.meet_c[cs, xs]] == np.minimum(F[:, xs], F[:, d.diag[cs]])


def _x_k_instances(d):
    return np.repeat(d.scan, d.n), np.tile(np.arange(d.n), d.size)


def _scan_median(F, d, S):
    xs, ks = _x_k_instances(d)
    mid = d.points[xs, ks]
    return F[:, xs] == _med(F[:, d.pin[ks, 0, xs]], mid, F[:, d.pin[ks, 1, xs]])


def _scan_quasi_median(F, d, S):
    xs, ks = _x_k_instances(d)
    mid = F[:, d.diag[d.points[xs, ks]]]
    return F[:, xs] == _med(F[:, d.pin[ks, 0, xs]], mid, F[:, d.pin[ks, 1, xs]])


def _wit_x_k(d, col):
    x, k = divmod(int(col), d.n)
    return {"x": d.point(d.scan[x]), "k": k + 1}


def _scan_conservative(F, d, S):
    vals = F[:, d.scan]
    return (vals[:, :, None] == d.points[d.scan][None]).any(axis=2)


def _scan_quasi_conservative(F, d, S):
    vals = F[:, d.scan]
    return (vals[:, :, None] == F[:, d.diag[d.points[d.scan]]]).any(axis=2)


def _wit_x(d, col):
    return {"x": d.point(d.scan[col])}


_Scan = Callable[[np.ndarray, Domain, "frozenset[int] | None"], np.ndarray]
_RULES: dict[Axiom, tuple[_Scan, Callable[[Domain, int], dict]]] = {
    Axiom.NONDECREASING: (_scan_nondecreasing, _wit_nondecreasing),
    Axiom.IDEMPOTENT: (_scan_idempotent, _wit_c),
    Axiom.RANGE_IDEMPOTENT: (_scan_range_idempotent, _wit_c),
    Axiom.HOR_MAX: (_scan_hor_max, _wit_x_c),
    Axiom.HOR_MIN: (_scan_hor_min, _wit_x_c),
    Axiom.P1: (_scan_p1, _wit_p1),
    Axiom.D1: (_scan_d1, _wit_p1),
    Axiom.P2: (_scan_p2, _wit_p2),
    Axiom.D2: (_scan_d2, _wit_p2),
    Axiom.COM_MAX: (_scan_com_max, _wit_com_pair),
    Axiom.COM_MIN: (_scan_com_min, _wit_com_pair),
    Axiom.MAXITIVE: (_scan_maxitive, _wit_pair),
    Axiom.MINITIVE: (_scan_minitive, _wit_pair),
    Axiom.S_MAX_HOM: (_scan_s_max_hom, _wit_x_c),
    Axiom.S_MIN_HOM: (_scan_s_min_hom, _wit_x_c),
    Axiom.QUASI_MAX_HOM: (_scan_quasi_max_hom, _wit_x_c),
    Axiom.QUASI_MIN_HOM: (_scan_quasi_min_hom, _wit_x_c),
    Axiom.MEDIAN_DECOMP: (_scan_median, _wit_x_k),
    Axiom.QUASI_MEDIAN_DECOMP: (_scan_quasi_median, _wit_x_k),
    Axiom.CONSERVATIVE: (_scan_conservative, _wit_x),
    Axiom.QUASI_CONSERVATIVE: (_scan_quasi_conservative, _wit_x),
}


def _validate_subset(S, m: int) -> frozenset[int] | None:
    if S is None:
        return None
    S = frozenset(int(c) for c in S)
    if any(not 0 <= c < m for c in S):
        raise AxiomError(f"S must be a subset of 0..{m - 1}, got {sorted(S)}")
    return S


def holds_batch(
    tables: np.ndarray, m: int, n: int, axiom: Axiom, S: Iterable[int] | None = None
) -> np.ndarray:
    """Boolean vector: does each row of ``tables`` satisfy ``axiom``?

    For the S-homogeneity axioms ``S=None`` means each function's own
    range hull.
    """
    F = np.atleast_2d(np.asarray(tables))
    if F.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    scan, _ = _RULES[axiom]
    ok = scan(F, domain(m, n), _validate_subset(S, m))
    if ok.shape[1] == 0:
        return np.ones(F.shape[0], dtype=bool)
    return ok.all(axis=1)


def check(f: DiscreteFunction, axiom: Axiom, S: Iterable[int] | None = None) -> AxiomResult:
    S = _validate_subset(S, f.m)
    d = domain(f.m, f.arity)
    scan, wit = _RULES[axiom]
    ok = scan(f.array[None].astype(np.int64), d, S)[0]
    shown = None
    if axiom.parameterized:
        lo, hi = f.range_hull()
        shown = S if S is not None else frozenset(range(lo, hi + 1))
    if ok.all():
        return AxiomResult(axiom, True, None, shown)
    return AxiomResult(axiom, False, wit(d, int(np.argmin(ok))), shown)


def check_all(f: DiscreteFunction) -> list[AxiomResult]:
    return [check(f, a) for a in Axiom]


# --- direct replay of witnesses --------------------------------------------


def replay(
    f: DiscreteFunction, axiom: Axiom, witness: dict, S: Iterable[int] | None = None
) -> bool:
    """True iff ``witness`` instantiates a violation of ``axiom`` for ``f``.

    Evaluates the defining formula directly on the table, without the
    precomputed index arrays used by the scans.
    """
    top = f.chain.top
    n = f.arity
    w = witness

    def F(x) -> int:
        return f(*x)

    def delta(c: int) -> int:
        return F((c,) * n)

    if axiom is Axiom.NONDECREASING:
        a, b = w["a"], w["b"]
        return all(p <= q for p, q in zip(a, b)) and F(a) > F(b)
    if axiom is Axiom.IDEMPOTENT:
        return delta(w["c"]) != w["c"]
    if axiom is Axiom.RANGE_IDEMPOTENT:
        lo, hi = f.range_hull()
        return lo <= w["c"] <= hi and delta(w["c"]) != w["c"]
    if axiom in (Axiom.P1, Axiom.D1):
        e, e2, c = w["e"], w["e2"], w["c"]
        cut = min if axiom is Axiom.P1 else max
        is_vertex = all(a in (0, top) for a in e + e2)
        ordered = all(p <= q for p, q in zip(e, e2))
        return is_vertex and ordered and F([cut(a, c) for a in e]) > F([cut(a, c) for a in e2])
    if axiom in (Axiom.P2, Axiom.D2):
        e, c, c2 = w["e"], w["c"], w["c2"]
        cut = min if axiom is Axiom.P2 else max
        is_vertex = all(a in (0, top) for a in e)
        return is_vertex and c <= c2 and F([cut(a, c) for a in e]) > F([cut(a, c2) for a in e])
    if axiom in (Axiom.MEDIAN_DECOMP, Axiom.QUASI_MEDIAN_DECOMP):
        x, k = list(w["x"]), w["k"] - 1
        mid = x[k] if axiom is Axiom.MEDIAN_DECOMP else delta(x[k])
        low = F(x[:k] + [0] + x[k + 1 :])
        high = F(x[:k] + [top] + x[k + 1 :])
        return F(x) != med3(low, mid, high)
    if axiom is Axiom.CONSERVATIVE:
        return F(w["x"]) not in w["x"]
    if axiom is Axiom.QUASI_CONSERVATIVE:
        return F(w["x"]) not in {delta(a) for a in w["x"]}
    if axiom in (Axiom.COM_MAX, Axiom.COM_MIN, Axiom.MAXITIVE, Axiom.MINITIVE):
        x, y = w["x"], w["y"]
        if axiom in (Axiom.COM_MAX, Axiom.COM_MIN) and not _inversion_free(x, y):
            return False
        op = max if axiom in (Axiom.COM_MAX, Axiom.MAXITIVE) else min
        return F([op(a, b) for a, b in zip(x, y)]) != op(F(x), F(y))

    x, c = w["x"], w["c"]
    if axiom is Axiom.HOR_MAX:
        cut = [min(a, c) for a in x]
        upper = [0 if a <= c else a for a in x]
        return F(x) != max(F(cut), F(upper))
    if axiom is Axiom.HOR_MIN:
        cut = [max(a, c) for a in x]
        lower = [top if a >= c else a for a in x]
        return F(x) != min(F(cut), F(lower))
    if axiom is Axiom.QUASI_MAX_HOM:
        return F([max(a, c) for a in x]) != max(F(x), delta(c))
    if axiom is Axiom.QUASI_MIN_HOM:
        return F([min(a, c) for a in x]) != min(F(x), delta(c))
    if axiom in (Axiom.S_MAX_HOM, Axiom.S_MIN_HOM):
        if S is None:
            lo, hi = f.range_hull()
            S = range(lo, hi + 1)
        if c not in set(S):
            return False
        if axiom is Axiom.S_MAX_HOM:
            return F([max(a, c) for a in x]) != max(F(x), c)
        return F([min(a, c) for a in x]) != min(F(x), c)
    raise AxiomError(f"unknown axiom {axiom!r}")


_SWAPPED = {"a": "b", "b": "a", "e": "e2", "e2": "e", "c": "c2", "c2": "c"}
_ORDERED = {Axiom.NONDECREASING, Axiom.P1, Axiom.D1, Axiom.P2, Axiom.D2}


def dual_witness(axiom: Axiom, witness: dict, m: int) -> dict:
    """Image of a witness for ``axiom`` on f as a witness for ``axiom.dual`` on dualize(f)."""
    top = m - 1
    out = {}
    for key, val in witness.items():
        if key == "k":
            new = val
        elif isinstance(val, tuple):
            new = tuple(top - a for a in val)
        else:
            new = top - val
        if axiom in _ORDERED and key in _SWAPPED and _SWAPPED[key] in witness:
            key = _SWAPPED[key]
        out[key] = new
    return {k: out[k] for k in witness}


def dual_subset(S: Iterable[int] | None, m: int) -> frozenset[int] | None:
    return None if S is None else frozenset(m - 1 - c for c in S)
