import numpy as np
import pytest

from quasipoly.axioms import Axiom, holds_batch
from quasipoly.chain import FiniteChain
from quasipoly.classify import is_quasi_polynomial
from quasipoly.rng import SplitMix64, splitmix64
from quasipoly.table import DiscreteFunction, dualize, is_nondecreasing
from quasipoly.verify import (
    BudgetExceeded,
    Theorem,
    Universe,
    count_classes,
    enumerate_functions,
    evaluate,
    exhaustive_tables,
    factorization_masks,
    random_function,
    random_quasi_polynomials,
    replay_counterexample,
    sample_tables,
    universe_tables,
    verify,
)


def test_splitmix64_reference_values():
    assert [int(v) for v in splitmix64(0, 0, 3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
    ]
    assert SplitMix64(1234567).next() == 6457827717110365317


def test_splitmix64_slices_and_sequential_view():
    full = splitmix64(99, 0, 20)
    assert (splitmix64(99, 7, 5) == full[7:12]).all()
    gen = SplitMix64(99)
    assert [gen.next() for _ in range(20)] == [int(v) for v in full]


def test_universe_validation():
    with pytest.raises(BudgetExceeded):
        Universe(3, 3)
    with pytest.raises(ValueError):
        Universe(3, 2, "sample", samples=0)
    with pytest.raises(ValueError):
        Universe(3, 2, "bogus")
    assert Universe(3, 3, "exhaustive", budget=10**13).m == 3


def test_enumeration_counts():
    assert len(list(enumerate_functions(Universe(2, 1)))) == 4
    assert len(universe_tables(Universe(3, 2))) == 19683
    assert len(universe_tables(Universe(3, 1, "exhaustive-nondecreasing"))) == 10


def test_exhaustive_order_and_distinctness():
    F = exhaustive_tables(2, 2)
    assert F[0].tolist() == [0, 0, 0, 0] and F[1].tolist() == [0, 0, 0, 1]
    assert F[-1].tolist() == [1, 1, 1, 1]
    F = exhaustive_tables(3, 2)
    assert len({row.tobytes() for row in F}) == 19683


def test_nondecreasing_universe_closed_under_dual():
    for m, n in [(2, 2), (3, 2), (2, 3)]:
        F = universe_tables(Universe(m, n, "exhaustive-nondecreasing"))
        keys = {row.tobytes() for row in F}
        duals = {(m - 1 - row[::-1]).astype(np.int8).tobytes() for row in F}
        assert keys == duals


def test_random_function_deterministic():
    assert random_function(4, 2, 17) == random_function(4, 2, 17)
    assert random_function(4, 2, 17) != random_function(4, 2, 18)
    for seed in range(30):
        for m, n in [(2, 2), (3, 2), (4, 2), (2, 3)]:
            f = random_function(m, n, seed, "nondecreasing")
            assert is_nondecreasing(f)[0]


def test_random_any_layout():
    m, n = 3, 2
    draws = splitmix64(5, 0, 2 * m**n)
    F = sample_tables(m, n, 2, 5)
    assert F.reshape(-1).tolist() == [int(v) % m for v in draws]


def test_monotone_sampler_covers_all_small_monotone_tables():
    F = sample_tables(3, 2, 300000, seed=3, constraint="nondecreasing")
    assert holds_batch(F, 3, 2, Axiom.NONDECREASING).all()
    assert len({row.tobytes() for row in F}) == 175


def test_random_quasi_polynomials():
    fs = random_quasi_polynomials(3, 2, 50, seed=1)
    assert all(is_quasi_polynomial(f).holds for f in fs)
    assert fs == random_quasi_polynomials(3, 2, 50, seed=1)
    assert len({f.table for f in fs}) > 10


@pytest.mark.parametrize("theorem", list(Theorem))
@pytest.mark.parametrize("m,n", [(2, 2), (3, 2)])
def test_every_theorem_exhaustive(theorem, m, n):
    report = verify(theorem, Universe(m, n))
    assert report.holds, report.summary()
    assert report.counterexample is None
    assert report.functions_checked == m ** (m**n)


@pytest.mark.parametrize("theorem", list(Theorem))
@pytest.mark.parametrize("m,n,mode", [(4, 2, "sample"), (4, 2, "sample-nondecreasing"),
                                      (2, 3, "sample"), (2, 3, "sample-nondecreasing")])
def test_every_theorem_sampled(theorem, m, n, mode):
    report = verify(theorem, Universe(m, n, mode, samples=2000, seed=2024))
    assert report.holds, report.summary()


def test_small_universe_counts():
    r = verify(Theorem.T_QMED, Universe(2, 2))
    assert r.functions_checked == 16 and r.counts["quasi_polynomial"] == 6
    r = verify(Theorem.R_BOOLHOR, Universe(2, 2))
    assert r.counts["HOR_MAX"] == 9
    c = count_classes(2, 2)
    assert c["quasi_polynomial"] == 6 and c["polynomial"] == 6
    assert count_classes(3, 1)["quasi_polynomial"] == 10


def test_quasipol_sets_are_independent_and_equal():
    out = evaluate(Theorem.T_QUASIPOL, exhaustive_tables(3, 2), 3, 2)
    sets = [frozenset(np.flatnonzero(v)) for v in out.sides.values()]
    assert len(sets) == 5 and len(set(sets)) == 1 and len(sets[0]) == 46


def test_broken_decider_is_caught():
    """A counterexample appears once one side of a theorem is perturbed."""
    F = exhaustive_tables(2, 2)
    out = evaluate(Theorem.T_QUASIPOL, F, 2, 2)
    sides = dict(out.sides)
    sides["v"] = sides["v"].copy()
    sides["v"][3] = not sides["v"][3]
    vals = list(sides.values())
    bad = np.zeros(len(F), dtype=bool)
    for v in vals[1:]:
        bad |= v != vals[0]
    assert np.flatnonzero(bad).tolist() == [3]


def test_report_with_counterexample(monkeypatch):
    import importlib

    V = importlib.import_module("quasipoly.verify")

    def fake(F, m, n):
        violated = np.zeros(len(F), dtype=bool)
        violated[F[:, 0] == 1] = True
        return V.Outcome({"left": F[:, 0] == 1, "right": np.zeros(len(F), bool)}, violated)

    monkeypatch.setitem(V._THEOREMS, Theorem.T_QUASIPOL, fake)
    # the 16 tables are split into several chunks even with one job
    for _ in range(2):
        r = verify(Theorem.T_QUASIPOL, Universe(2, 2))
        assert not r.holds
        assert r.counterexample["index"] == 8
        assert r.counterexample["table"] == (1, 0, 0, 0)
        assert r.counterexample["sides"] == {"left": True, "right": False}
        assert "witness=index:8;table:1,0,0,0;sides:left=1,right=0" in r.porcelain()
        assert r.summary().startswith("FAILS (16 functions; counterexample #8")
    assert replay_counterexample(r)


def test_verify_deterministic_across_jobs():
    u = Universe(3, 2, "sample", samples=3000, seed=9)
    a = verify(Theorem.L_COMHOR, u, jobs=1)
    b = verify(Theorem.L_COMHOR, u, jobs=4)
    assert a.porcelain() == b.porcelain()
    assert a.counts == b.counts


def test_factorization_masks_match_scalar():
    chain = FiniteChain(2)
    for row in exhaustive_tables(2, 2):
        f = DiscreteFunction(chain, 2, tuple(int(v) for v in row))
        if not is_quasi_polynomial(f).holds:
            continue
        brute, charac, canon = factorization_masks(row, 2, 2)
        assert (brute == charac).all() and canon is not None and brute[canon]


def test_duality_on_random_functions():
    F = sample_tables(4, 2, 2000, seed=4).astype(np.int64)
    D = (3 - F)[:, ::-1]
    for a in Axiom:
        assert (holds_batch(F, 4, 2, a) == holds_batch(D, 4, 2, a.dual)).all()
    f = DiscreteFunction.from_array(4, 2, F[0])
    assert dualize(f).table == tuple(int(v) for v in D[0])
