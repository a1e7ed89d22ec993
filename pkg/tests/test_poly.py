from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasipoly.chain import FiniteChain
from quasipoly.poly import (
    CapacityError,
    NotIsotone,
    NotPolynomial,
    SetFunction,
    canonical_alpha,
    canonical_beta,
    cnf_eval,
    cnf_table,
    dnf_eval,
    dnf_table,
    extend_from_vertices,
    homogeneity_shift,
    is_polynomial,
    isotone_set_functions,
    median_eval,
    simplex_cnf_eval,
    simplex_eval,
    sugeno_from_capacity,
    sugeno_normalize,
)
from quasipoly.table import (
    DiscreteFunction,
    VertexFunction,
    bounded_sum,
    clamp,
    constant,
    join_function,
    meet_function,
    median_function,
    projection,
)

from conftest import functions

M2, M3 = FiniteChain(2), FiniteChain(3)
ALPHA_MED = SetFunction(M3, 3, (0, 0, 0, 2, 0, 2, 2, 2))
BETA_MED = SetFunction(M3, 3, (2, 2, 2, 0, 2, 0, 0, 0))


def set_functions(m, n):
    return st.lists(st.integers(0, m - 1), min_size=1 << n, max_size=1 << n).map(
        lambda v: SetFunction(FiniteChain(m), n, tuple(v))
    )


def test_dnf_examples():
    assert dnf_eval(ALPHA_MED, (0, 1, 2)) == 1
    assert dnf_table(SetFunction(M3, 2, (0, 0, 0, 0))) == constant(M3, 2, 0)
    assert dnf_table(SetFunction(M3, 2, (1, 0, 0, 0))) == constant(M3, 2, 1)


def test_cnf_examples():
    assert cnf_eval(BETA_MED, (0, 0, 2)) == 0
    assert cnf_eval(BETA_MED, (0, 1, 2)) == 1
    assert cnf_table(SetFunction(M3, 2, (2,) * 4)) == constant(M3, 2, 2)
    assert canonical_beta(median_function(M3)) == BETA_MED


def test_arity_mismatch():
    with pytest.raises(Exception):
        dnf_eval(ALPHA_MED, (0, 1))


def test_canonical_alpha_examples():
    f = DiscreteFunction.from_callable(M2, 2, lambda a, b: max(a, min(a, b)))
    assert canonical_alpha(f).values == (0, 1, 0, 1)
    assert canonical_alpha(f) == canonical_alpha(projection(M2, 2, 1))
    assert canonical_alpha(join_function(M2, 2)).values == (0, 1, 1, 1)
    med = canonical_alpha(median_function(M2))
    assert [med[mask] for mask in (3, 5, 6)] == [1, 1, 1]
    assert [med[mask] for mask in (1, 2, 4)] == [0, 0, 0]


def test_extend_from_vertices_examples():
    g = VertexFunction(M2, 2, (0, 1, 0, 1))
    assert extend_from_vertices(g).table == (0, 0, 1, 1)
    with pytest.raises(NotIsotone):
        extend_from_vertices(VertexFunction(M2, 2, (0, 1, 0, 0)))
    assert extend_from_vertices(VertexFunction(M3, 2, (1,) * 4)) == constant(M3, 2, 1)


def test_simplex_examples():
    assert simplex_eval(ALPHA_MED, (0, 1, 2)) == 1
    assert simplex_eval(canonical_alpha(projection(M3, 2, 1)), (2, 0)) == 2
    assert simplex_eval(SetFunction(M3, 2, (1,) * 4), (2, 0)) == 1
    with pytest.raises(NotIsotone):
        simplex_eval(SetFunction(M3, 2, (0, 2, 1, 1)), (1, 1))


def test_median_eval_examples():
    assert median_eval(join_function(M3, 2), (1, 2)) == 2
    med = median_function(M2)
    for x in product((0, 1), repeat=3):
        assert median_eval(med, x) == med(*x)
    bsum = bounded_sum(M3, 2)
    assert median_eval(bsum, (1, 0)) == 1 == bsum(1, 0)
    assert any(median_eval(bsum, x) != v for x, v in bsum.items())


def test_is_polynomial_examples():
    ok, alpha = is_polynomial(join_function(M3, 2))
    assert ok and alpha.values == (0, 2, 2, 2)
    assert is_polynomial(constant(M3, 2, 1))[0]
    ok, witness = is_polynomial(bounded_sum(M3, 2))
    assert not ok
    # the DNF of alpha_f = (0,2,2,2) is the join, which first differs from
    # the bounded sum at (1,1) in witness scan order
    assert witness == (1, 1)
    assert dnf_eval(canonical_alpha(bounded_sum(M3, 2)), witness) == 1
    assert bounded_sum(M3, 2)(*witness) == 2


def test_sugeno_from_capacity_examples():
    assert sugeno_from_capacity(SetFunction(M3, 2, (0, 2, 2, 2))) == join_function(M3, 2)
    assert sugeno_from_capacity(SetFunction(M3, 2, (0, 0, 0, 2))) == meet_function(M3, 2)
    assert sugeno_from_capacity(SetFunction(M3, 2, (0, 1, 1, 2)))(0, 2) == 1
    with pytest.raises(CapacityError):
        sugeno_from_capacity(SetFunction(M3, 2, (1, 1, 1, 2)))


def test_sugeno_normalize_examples():
    p = constant(M3, 2, 1)
    mu = sugeno_normalize(p)
    assert mu.values == (0, 2, 2, 2)
    assert sugeno_normalize(join_function(M3, 2)).values == (0, 2, 2, 2)
    p = DiscreteFunction.from_callable(M3, 2, lambda a, b: max(a, 1))
    mu = sugeno_normalize(p)
    assert mu.values == (0, 2, 0, 2)
    q = sugeno_from_capacity(mu)
    assert q == projection(M3, 2, 1)
    assert all(clamp(p, q(*x)) == v for x, v in p.items())
    with pytest.raises(NotPolynomial):
        sugeno_normalize(bounded_sum(M3, 2))


def test_sugeno_normalize_every_polynomial():
    for m, n in [(2, 2), (3, 2), (4, 2), (3, 3)]:
        chain = FiniteChain(m)
        for alpha in isotone_set_functions(chain, n):
            p = dnf_table(alpha)
            mu = sugeno_normalize(p)
            assert mu.is_capacity()
            q = sugeno_from_capacity(mu)
            assert all(clamp(p, v) == w for v, w in zip(q.table, p.table))


def test_isotone_set_function_counts():
    # counts of isotone maps from the Boolean lattice 2^n into an m-chain
    assert len(isotone_set_functions(M2, 2)) == 6
    assert len(isotone_set_functions(M3, 2)) == 20
    assert len(isotone_set_functions(M2, 3)) == 20
    for alpha in isotone_set_functions(M3, 2):
        assert alpha.is_isotone()


def test_idempotent_polynomials_are_capacities():
    """Sugeno integrals = idempotent polynomials = DNFs of capacities."""
    for m, n in [(2, 2), (3, 2), (2, 3)]:
        chain = FiniteChain(m)
        for alpha in isotone_set_functions(chain, n):
            p = dnf_table(alpha)
            idempotent = all(p(*(c,) * n) == c for c in chain.elements())
            assert idempotent == alpha.is_capacity()


def test_four_evaluators_agree_exhaustively():
    for m, n in [(2, 2), (3, 2), (2, 3)]:
        chain = FiniteChain(m)
        for alpha in isotone_set_functions(chain, n):
            f = extend_from_vertices(VertexFunction(chain, n, alpha.values))
            beta = canonical_beta(f)
            for x, v in f.items():
                assert dnf_eval(alpha, x) == v
                assert cnf_eval(beta, x) == v
                assert simplex_eval(alpha, x) == v
                assert simplex_cnf_eval(beta, x) == v
                assert median_eval(f, x) == v


def test_vertex_values_and_extension_are_inverse():
    for m, n in [(2, 2), (3, 2), (2, 3)]:
        chain = FiniteChain(m)
        for alpha in isotone_set_functions(chain, n):
            p = dnf_table(alpha)
            assert canonical_alpha(p) == alpha
            assert extend_from_vertices(VertexFunction(chain, n, alpha.values)) == p


@given(st.sampled_from([(2, 2), (3, 2), (4, 2), (2, 3)]), st.data())
def test_normalization_soundness(shape, data):
    m, n = shape
    alpha = data.draw(set_functions(m, n))
    p = dnf_table(alpha)
    assert dnf_table(canonical_alpha(p)) == p
    assert is_polynomial(p)[0]
    assert canonical_alpha(p).is_isotone()


@given(functions(max_m=4, max_n=2))
def test_is_polynomial_matches_enumeration(f):
    polys = {dnf_table(a).table for a in isotone_set_functions(f.chain, f.arity)}
    ok, info = is_polynomial(f)
    assert ok == (f.table in polys)
    if not ok:
        assert dnf_eval(canonical_alpha(f), info) != f(*info)


def test_homogeneity_shift_exhaustive():
    for m, n in [(3, 2), (3, 1), (2, 3)]:
        chain = FiniteChain(m)
        for alpha in isotone_set_functions(chain, n):
            p = dnf_table(alpha)
            for x in product(range(m), repeat=n):
                for c in range(m):
                    lhs, rhs = homogeneity_shift(p, x, c)
                    assert lhs == rhs
                    lhs, rhs = homogeneity_shift(p, x, c, dual=True)
                    assert lhs == rhs


def test_homogeneity_shift_examples():
    ident = projection(M3, 1, 1)
    assert homogeneity_shift(ident, (0,), 2) == (2, 2)
    assert homogeneity_shift(constant(M3, 2, 1), (2, 0), 2) == (1, 1)
    with pytest.raises(NotPolynomial):
        homogeneity_shift(bounded_sum(M3, 2), (0, 0), 1)


def test_isotone_violation_reported():
    alpha = SetFunction(M3, 2, (0, 2, 1, 1))
    assert alpha.isotone_violation() == (1, 3)
    assert not alpha.is_isotone()
