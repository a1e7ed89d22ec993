from itertools import product

import numpy as np
import pytest
from hypothesis import given

from quasipoly.axioms import Axiom, check, holds_batch
from quasipoly.chain import FiniteChain
from quasipoly.classify import (
    NotIsotoneOnVertices,
    NotQuasiPolynomial,
    Refused,
    as_quasi_sugeno,
    as_quasi_term,
    as_quasi_weighted_max,
    as_quasi_weighted_min,
    brute_force_factorizations,
    canonical_polynomial,
    characterized_factorizations,
    classify,
    factorizations,
    is_quasi_polynomial,
    maxitive_decomposition,
    minitive_decomposition,
    weighted_max,
    weighted_min,
)
from quasipoly.poly import SetFunction, dnf_table, is_polynomial, isotone_set_functions, sugeno_from_capacity
from quasipoly.table import (
    DiscreteFunction,
    UnaryMap,
    bounded_sum,
    clamp_function,
    clamp_map,
    compose_unary,
    constant,
    diagonal,
    join_function,
    meet_function,
    nondecreasing_maps,
    projection,
)
from quasipoly.verify import exhaustive_tables

from conftest import functions

M2, M3 = FiniteChain(2), FiniteChain(3)
JOIN3 = join_function(M3, 2)
F_STEP = compose_unary(JOIN3, UnaryMap(M3, (0, 0, 2)))


def all_functions(m, n):
    chain = FiniteChain(m)
    return [DiscreteFunction(chain, n, tuple(int(v) for v in row)) for row in exhaustive_tables(m, n)]


def test_canonical_polynomial_examples():
    assert canonical_polynomial(F_STEP) == JOIN3
    assert canonical_polynomial(bounded_sum(M3, 2)) == JOIN3
    p = dnf_table(SetFunction(M3, 2, (0, 1, 1, 2)))
    assert canonical_polynomial(p) == p
    with pytest.raises(NotIsotoneOnVertices):
        canonical_polynomial(DiscreteFunction(M2, 2, (1, 0, 0, 0)))


def test_is_quasi_polynomial_examples():
    rec = is_quasi_polynomial(F_STEP)
    assert rec.holds
    assert rec.factorization.p == JOIN3
    assert rec.factorization.phi.values == (0, 0, 2)
    rec = is_quasi_polynomial(bounded_sum(M3, 2))
    assert not rec.holds and rec.stage == "recomposition"
    assert rec.describe() == "witness x=(1,0): p_f∘δ_f=2, f=1"
    p = dnf_table(SetFunction(M3, 2, (1, 1, 1, 2)))
    rec = is_quasi_polynomial(p)
    assert rec.holds and rec.factorization.compose() == p


def test_is_quasi_polynomial_stages():
    rec = is_quasi_polynomial(DiscreteFunction(M3, 1, (2, 0, 1)))
    assert not rec.holds and rec.stage == "diagonal"
    rec = is_quasi_polynomial(DiscreteFunction(M2, 2, (0, 1, 0, 0)))
    assert not rec.holds and rec.stage == "vertices"
    assert is_quasi_polynomial(DiscreteFunction(M2, 2, (0, 1, 0, 1))).holds  # x2


def test_quasi_polynomial_equals_brute_force_membership():
    for m, n in [(2, 2), (3, 1), (3, 2)]:
        chain = FiniteChain(m)
        members = {
            compose_unary(dnf_table(a), phi).table
            for a in isotone_set_functions(chain, n)
            for phi in nondecreasing_maps(chain)
        }
        for f in all_functions(m, n):
            assert is_quasi_polynomial(f).holds == (f.table in members)


def test_quasi_polynomial_iff_comonotonic_max_and_min():
    F = exhaustive_tables(3, 2)
    both = holds_batch(F, 3, 2, Axiom.COM_MAX) & holds_batch(F, 3, 2, Axiom.COM_MIN)
    for f, flag in zip(all_functions(3, 2), both):
        assert is_quasi_polynomial(f).holds == flag


def test_factorizations_constant_zero():
    f = constant(M2, 2, 0)
    facts = {(x.p.table, x.phi.values) for x in factorizations(f)}
    for phi in nondecreasing_maps(M2):
        assert ((0, 0, 0, 0), phi.values) in facts
    for alpha in isotone_set_functions(M2, 2):
        if alpha.is_capacity():
            assert (dnf_table(alpha).table, (0, 0)) in facts


def test_factorizations_join():
    f = join_function(M2, 2)
    facts = factorizations(f)
    assert any(x.p == f and x.phi == UnaryMap.identity(M2) for x in facts)
    count = sum(
        compose_unary(p, phi) == f
        for p in (dnf_table(a) for a in isotone_set_functions(M2, 2))
        for phi in nondecreasing_maps(M2)
    )
    assert len(facts) == count


def test_factorizations_characterization_exhaustive():
    for f in all_functions(2, 2) + all_functions(3, 1):
        rec = is_quasi_polynomial(f)
        if not rec.holds:
            with pytest.raises(NotQuasiPolynomial):
                factorizations(f)
            continue
        brute = brute_force_factorizations(f)
        assert brute == characterized_factorizations(f)
        assert rec.factorization in brute
        pf, delta = rec.factorization.p, rec.factorization.phi
        for x in brute:
            assert clamp_function(x.p, f) == pf
            assert clamp_map(x.phi, x.p) == delta


def test_as_quasi_sugeno_examples():
    fact = as_quasi_sugeno(constant(M3, 2, 1))
    assert fact.p == JOIN3 and fact.phi.values == (1, 1, 1)
    q = sugeno_from_capacity(SetFunction(M3, 2, (0, 1, 1, 2)))
    fact = as_quasi_sugeno(q)
    assert fact.p == q and fact.phi == UnaryMap.identity(M3)
    fact = as_quasi_sugeno(F_STEP)
    assert fact.p == JOIN3 and fact.phi.values == (0, 0, 2)
    with pytest.raises(NotQuasiPolynomial):
        as_quasi_sugeno(bounded_sum(M3, 2))


def test_as_quasi_sugeno_universe():
    for f in all_functions(3, 2):
        if not is_quasi_polynomial(f).holds:
            continue
        fact = as_quasi_sugeno(f)
        assert fact.compose() == f
        assert diagonal(fact.p) == UnaryMap.identity(M3)
        assert is_polynomial(fact.p)[0]
        assert fact.phi.is_nondecreasing()


def test_as_quasi_term_examples():
    fact = as_quasi_term(F_STEP)
    assert fact.p == JOIN3 and fact.phi.values == (0, 0, 2)
    q = sugeno_from_capacity(SetFunction(M3, 2, (0, 1, 1, 2)))
    with pytest.raises(Refused) as exc:
        as_quasi_term(q)
    assert exc.value.result.axiom is Axiom.QUASI_CONSERVATIVE
    x = exc.value.result.witness["x"]
    assert q(*x) not in {diagonal(q)(a) for a in x}
    assert q(0, 2) == 1
    x1 = projection(M3, 2, 1)
    fact = as_quasi_term(x1)
    assert fact.p == x1 and fact.phi == UnaryMap.identity(M3)
    fact = as_quasi_term(constant(M3, 2, 2))
    assert fact.p == x1 and fact.phi.values == (2, 2, 2)


def test_weighted_examples():
    fact = as_quasi_weighted_max(F_STEP)
    assert fact.weights == (0, 2, 2) and fact.phi.values == (0, 0, 2)
    with pytest.raises(Refused) as exc:
        as_quasi_weighted_max(meet_function(M3, 2))
    w = exc.value.result.witness
    meet = meet_function(M3, 2)
    assert meet(*map(max, w["x"], w["y"])) != max(meet(*w["x"]), meet(*w["y"]))
    fact = as_quasi_weighted_max(constant(M3, 2, 1))
    assert fact.weights == (1, 1, 1)
    fact = as_quasi_weighted_min(meet)
    assert fact.compose() == meet


def test_weighted_shapes():
    f = weighted_max(M3, (0, 1, 2))
    for x, v in f.items():
        assert v == max(0, min(1, x[0]), min(2, x[1]))
    g = weighted_min(M3, (2, 1, 0))
    for x, v in g.items():
        assert v == min(2, max(1, x[0]), max(0, x[1]))


def test_maxitive_decomposition_examples():
    assert maxitive_decomposition(JOIN3) == [UnaryMap.identity(M3)] * 2
    slots = maxitive_decomposition(weighted_max(M3, (0, 1, 2)))
    assert [s.values for s in slots] == [(0, 1, 1), (0, 1, 2)]
    with pytest.raises(Refused):
        maxitive_decomposition(meet_function(M3, 2))
    assert minitive_decomposition(meet_function(M3, 2)) == [UnaryMap.identity(M3)] * 2


def test_subclass_constructors_match_axioms_exhaustive():
    F = exhaustive_tables(3, 2)
    cons = holds_batch(F, 3, 2, Axiom.QUASI_CONSERVATIVE)
    maxi = holds_batch(F, 3, 2, Axiom.MAXITIVE)
    mini = holds_batch(F, 3, 2, Axiom.MINITIVE)
    for f, c, a, b in zip(all_functions(3, 2), cons, maxi, mini):
        if not is_quasi_polynomial(f).holds:
            continue
        for build, flag in ((as_quasi_term, c), (as_quasi_weighted_max, a),
                            (as_quasi_weighted_min, b)):
            try:
                fact = build(f)
            except Refused:
                assert not flag
            else:
                assert flag and fact.compose() == f


@given(functions(max_m=4, max_n=2))
def test_classify_consistency(f):
    report = classify(f)
    assert report.is_quasi_polynomial == report.is_quasi_sugeno
    assert report.is_quasi_polynomial == is_quasi_polynomial(f).holds
    if report.is_polynomial:
        assert report.is_quasi_polynomial
    for kind, fact in report.factorizations.items():
        assert fact.compose() == f
        assert fact.phi.is_nondecreasing()
        assert is_polynomial(fact.p)[0]
    flags = report.flags
    assert set(flags) == {"polynomial", "quasi_polynomial", "quasi_sugeno", "quasi_term",
                          "quasi_weighted_max", "quasi_weighted_min"}


def test_classify_bounded_sum():
    report = classify(bounded_sum(M3, 2))
    assert not any(report.flags.values())
    assert report.recognition.describe() == "witness x=(1,0): p_f∘δ_f=2, f=1"
