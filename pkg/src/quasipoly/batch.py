"""Vectorized deciders over batches of tables, shaped ``(B, m**n)``.

These mirror scalar routines elsewhere in the package (polynomial and
quasi-polynomial recognition, the normal forms with ``g = f``) so whole
universes can be classified in one pass.  The test suite checks each one
against its scalar counterpart.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from .axioms import Domain, domain


def _med(a, b, c):
    return np.maximum(np.minimum(a, b), np.minimum(np.maximum(a, b), c))


@lru_cache(maxsize=None)
def subset_extremes(m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(N, 2**n) meet and join of x_i over i in I; empty meet is top, empty join bottom."""
    d = domain(m, n)
    size = 1 << n
    lo = np.full((d.size, size), m - 1, dtype=np.int64)
    hi = np.zeros((d.size, size), dtype=np.int64)
    for mask in range(1, size):
        cols = [i for i in range(n) if mask >> i & 1]
        lo[:, mask] = d.points[:, cols].min(axis=1)
        hi[:, mask] = d.points[:, cols].max(axis=1)
    return lo, hi


def _dnf(alpha: np.ndarray, args: np.ndarray, lo: np.ndarray) -> np.ndarray:
    """Join over I of alpha(I) ^ meet of args over I.

    ``args`` is (B, m): the values substituted for each chain element, so
    p(phi(x)) uses args = phi and p(x) uses args = identity.
    """
    B = alpha.shape[0]
    size = alpha.shape[1]
    out = np.broadcast_to(alpha[:, :1], (B, lo.shape[0])).copy()  # I = {}: alpha({}) ^ top
    for mask in range(1, size):
        term = np.minimum(alpha[:, mask : mask + 1], args[:, lo[:, mask]])
        np.maximum(out, term, out=out)
    return out


def vertex_values(F: np.ndarray, m: int, n: int) -> np.ndarray:
    return F[:, domain(m, n).vertices]


def isotone_mask(alpha: np.ndarray, n: int) -> np.ndarray:
    ok = np.ones(alpha.shape[0], dtype=bool)
    for mask in range(1 << n):
        for i in range(n):
            if not mask >> i & 1:
                ok &= alpha[:, mask] <= alpha[:, mask | 1 << i]
    return ok


def polynomial_mask(F: np.ndarray, m: int, n: int) -> np.ndarray:
    """f equals the DNF of its vertex coefficients."""
    F = np.asarray(F, dtype=np.int64)
    lo, _ = subset_extremes(m, n)
    ident = np.broadcast_to(np.arange(m), (F.shape[0], m))
    return (_dnf(vertex_values(F, m, n), ident, lo) == F).all(axis=1)


def canonical_recomposition(F: np.ndarray, m: int, n: int) -> np.ndarray:
    """Tables of p_f o delta_f, with p_f the DNF of the vertex values."""
    F = np.asarray(F, dtype=np.int64)
    lo, _ = subset_extremes(m, n)
    return _dnf(vertex_values(F, m, n), F[:, domain(m, n).diag], lo)


def diagonal_nondecreasing(F: np.ndarray, m: int, n: int) -> np.ndarray:
    diag = np.asarray(F)[:, domain(m, n).diag]
    return (np.diff(diag, axis=1) >= 0).all(axis=1)


def quasi_polynomial_mask(F: np.ndarray, m: int, n: int) -> np.ndarray:
    """Vectorized twin of ``classify.is_quasi_polynomial``."""
    F = np.asarray(F, dtype=np.int64)
    return (
        diagonal_nondecreasing(F, m, n)
        & isotone_mask(vertex_values(F, m, n), n)
        & (canonical_recomposition(F, m, n) == F).all(axis=1)
    )


# --- normal forms with g = f ---------------------------------------------


def form_max(F: np.ndarray, m: int, n: int) -> np.ndarray:
    """f(x) = join over I of f(e_I ^ meet_{i in I} x_i), for every x."""
    d = domain(m, n)
    lo, _ = subset_extremes(m, n)
    idx = d.meet_c[lo, d.vertices[None, :]]  # (N, 2**n)
    return (F[:, idx].max(axis=2) == F).all(axis=1)


def form_min(F: np.ndarray, m: int, n: int) -> np.ndarray:
    """f(x) = meet over I of f(e_{[n] minus I} v join_{i in I} x_i), for every x."""
    d = domain(m, n)
    _, hi = subset_extremes(m, n)
    full = (1 << n) - 1
    comp = d.vertices[full ^ np.arange(1 << n)]
    idx = d.join_c[hi, comp[None, :]]
    return (F[:, idx].min(axis=2) == F).all(axis=1)


@lru_cache(maxsize=None)
def _simplex_instances(m: int, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For every x and every sigma with x in the simplex of sigma: the n+1 term indices
    of the join form and of the meet form."""
    d = domain(m, n)
    xs, up_terms, down_terms = [], [], []
    full = (1 << n) - 1
    for idx in d.scan:
        x = d.points[idx]
        for sigma in permutations(range(n)):
            if any(x[sigma[k]] > x[sigma[k + 1]] for k in range(n - 1)):
                continue
            ups = [0]  # i = n+1: e_{} ^ top = bottom tuple
            mask = 0
            for i in range(n - 1, -1, -1):
                mask |= 1 << sigma[i]
                ups.append(d.meet_c[x[sigma[i]], d.vertices[mask]])
            downs = [d.size - 1]  # i = 0: e_[n] v bottom = top tuple
            mask = 0
            for i in range(n):
                mask |= 1 << sigma[i]
                downs.append(d.join_c[x[sigma[i]], d.vertices[full ^ mask]])
            xs.append(idx)
            up_terms.append(ups)
            down_terms.append(downs)
    return np.array(xs), np.array(up_terms), np.array(down_terms)


def simplex_form_max(F: np.ndarray, m: int, n: int) -> np.ndarray:
    xs, ups, _ = _simplex_instances(m, n)
    return (F[:, ups].max(axis=2) == F[:, xs]).all(axis=1)


def simplex_form_min(F: np.ndarray, m: int, n: int) -> np.ndarray:
    xs, _, downs = _simplex_instances(m, n)
    return (F[:, downs].min(axis=2) == F[:, xs]).all(axis=1)


@lru_cache(maxsize=None)
def _alpha_form_instances(m: int, n: int, dual: bool) -> np.ndarray:
    """(N, 2**n - 1, n) indices of e_I ^ x_i (or e_{[n] minus I} v x_i) for i in I, padded."""
    d = domain(m, n)
    full = (1 << n) - 1
    out = np.empty((d.size, full, n), dtype=np.int64)
    for mask in range(1, full + 1):
        members = [i for i in range(n) if mask >> i & 1]
        members += [members[0]] * (n - len(members))
        for pos, i in enumerate(members):
            if dual:
                out[:, mask - 1, pos] = d.join_c[d.points[:, i], d.vertices[full ^ mask]]
            else:
                out[:, mask - 1, pos] = d.meet_c[d.points[:, i], d.vertices[mask]]
    return out


def alpha_form_max(F: np.ndarray, m: int, n: int) -> np.ndarray:
    """f(x) = join over I of alpha_f(I) ^ meet_{i in I} (f(e_I) ^ f(e_I ^ x_i))."""
    d = domain(m, n)
    inst = _alpha_form_instances(m, n, False)
    alpha = F[:, d.vertices[1:]]  # (B, 2**n - 1)
    terms = np.minimum(alpha[:, None, :], F[:, inst].min(axis=3))
    value = np.maximum(F[:, :1], terms.max(axis=2))
    return (value == F).all(axis=1)


def alpha_form_min(F: np.ndarray, m: int, n: int) -> np.ndarray:
    """f(x) = meet over I of beta_f(I) v join_{i in I} (f(e_{[n]-I}) v f(e_{[n]-I} v x_i))."""
    d = domain(m, n)
    full = (1 << n) - 1
    inst = _alpha_form_instances(m, n, True)
    beta = F[:, d.vertices[full ^ np.arange(1, full + 1)]]
    terms = np.maximum(beta[:, None, :], F[:, inst].max(axis=3))
    value = np.minimum(F[:, -1:], terms.min(axis=2))
    return (value == F).all(axis=1)


def slot_reassembly(F: np.ndarray, m: int, n: int, minitive: bool = False) -> np.ndarray:
    """Slot maps f_i(a) = f(fill with a at slot i) are nondecreasing and rebuild f."""
    d: Domain = domain(m, n)
    fill = m - 1 if minitive else 0
    ok = np.ones(F.shape[0], dtype=bool)
    slots = []
    weights = m ** np.arange(n - 1, -1, -1)
    for i in range(n):
        pts = np.full((m, n), fill)
        pts[:, i] = np.arange(m)
        s = F[:, pts @ weights]  # (B, m)
        ok &= (np.diff(s, axis=1) >= 0).all(axis=1)
        slots.append(s[:, d.points[:, i]])  # (B, N)
    combined = np.minimum.reduce(slots) if minitive else np.maximum.reduce(slots)
    return ok & (combined == F).all(axis=1)


def clamp_to(F: np.ndarray, values: np.ndarray) -> np.ndarray:
    """<values>_f row-wise: med(f(0), v, f(1))."""
    return _med(F[:, :1], values, F[:, -1:])


def row_keys(F: np.ndarray) -> list[bytes]:
    F = np.ascontiguousarray(np.asarray(F, dtype=np.int8))
    return [row.tobytes() for row in F]
