import pytest

from isoschubert import chow_ring as cr
from isoschubert.bgg_oracle import multiply_classes
from isoschubert.chow_ring import CycleClass, ProductCycle
from isoschubert.shapes import Shape, enumerate_shapes, special_shape, top_shape


def S(text, n=3):
    return Shape.parse(text, n)


def test_cycle_class_arithmetic():
    a = CycleClass.basic("B", S("2//∅"), 2)
    b = CycleClass.basic("B", S("2//∅"), -2)
    assert (a + b).is_zero()
    assert (3 * a).coeffs == {S("2//∅"): 6}
    with pytest.raises(ValueError):
        a + CycleClass.basic("C", S("2//∅"))


def test_multiply_special_unit_and_linearity(oracle3):
    tb = oracle3.table_b
    e = CycleClass.basic("B", special_shape(3, 0))
    assert cr.multiply_special(e, 1, tb) == CycleClass.basic("B", special_shape(3, 1))
    assert cr.multiply_special(e.scale(2), 1, tb) == CycleClass.basic("B", special_shape(3, 1), 2)


def test_missing_table():
    c = CycleClass.basic("B", special_shape(3, 0))
    with pytest.raises(cr.TableDependencyError):
        cr.multiply_special(c, 1, None)


def test_tau_pi1_times_tau1(oracle3):
    got = cr.multiply_special(CycleClass.basic("C", special_shape(3, 1)), 1, oracle3.table_c)
    assert got.coeffs == {S("2//1"): 1, S("3//∅"): 1}
    got_b = cr.multiply_special(CycleClass.basic("B", special_shape(3, 1)), 1, oracle3.table_b)
    assert got_b.coeffs == {S("2//1"): 2, S("3//∅"): 1}


def test_special_monomial_small(oracle3):
    tb = oracle3.table_b
    assert cr.special_monomial(tb, 0, 0) == CycleClass.basic("B", special_shape(3, 0))
    assert cr.special_monomial(tb, 1, 0) == CycleClass.basic("B", special_shape(3, 1))
    assert cr.special_monomial(tb, 8, 0).is_zero()


def _direct_rep_monomial(rt, m, a1, a2):
    """The monomial computed with a single polynomial product in the oracle."""
    factors = [rt.special[1]] * a1 + [rt.special[2]] * a2
    if not factors:
        return {m.to_shape[rt.basis.reps[0]]: 1}
    return {m.to_shape[w]: c for w, c in multiply_classes(rt.basis, factors).items()}


@pytest.mark.parametrize("n", [3, 4])
def test_chains_match_oracle(n, oracle3, oracle4):
    o = oracle3 if n == 3 else oracle4
    tb, tc = o.table_b, o.table_c
    top = 4 * n - 5
    for a2 in range(top // 2 + 1):
        for a1 in range(top - 2 * a2 + 1):
            chains = cr.enumerate_chains(tb, tc, a1, a2)
            for ch in chains:
                assert ch.b - ch.c == ch.end.bottom_length
                assert ch.end.weight == a1 + 2 * a2
                if ch.end.weight in (2 * n - 3, 2 * n - 2):
                    assert ch.b - ch.c == 1
            for fam, t in (("B", tb), ("C", tc)):
                agg = cr.aggregate_chains(chains, fam, n)
                assert agg == cr.special_monomial(t, a1, a2)
                direct = _direct_rep_monomial(o.rep_table(fam), o.matching, a1, a2)
                assert agg.coeffs == direct


def test_empty_chain(oracle3):
    (ch,) = cr.enumerate_chains(oracle3.table_b, oracle3.table_c, 0, 0)
    assert ch.steps == (special_shape(3, 0),) and ch.b == ch.c == 0


def test_solve_special_expansion(oracle3):
    tc = oracle3.table_c
    assert cr.solve_special_expansion(special_shape(3, 1), tc) == [1]
    assert cr.solve_special_expansion(special_shape(3, 0), tc) == [1]
    u = cr.solve_special_expansion(S("3//1"), tc)
    assert cr.combine_monomials(tc, 3, u) == CycleClass.basic("C", S("3//1"))


def test_solve_special_expansion_fails_in_type_b(oracle3):
    with pytest.raises(cr.GenerationFailure):
        cr.solve_special_expansion(S("2//1"), oracle3.table_b)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_lemma_tech(n):
    from conftest import oracle

    o = oracle(n)
    cases = cr.lemma_tech_check(o.table_b, o.table_c)
    assert {c.shape for c in cases} == set(enumerate_shapes(n, 2 * n - 3) + enumerate_shapes(n, 2 * n - 2))
    for c in cases:
        assert c.passed, c.shape
        assert c.gamma_prime == CycleClass.basic("B", c.shape, 2)


@pytest.mark.parametrize("n", [3, 4])
def test_type_c_rank_bound(n, oracle3, oracle4):
    for r in (2 * n - 3, 2 * n - 2):
        assert len(enumerate_shapes(n, r)) <= r // 2 + 1


@pytest.mark.parametrize("n", [3, 4])
def test_generation(n, oracle3, oracle4):
    o = oracle3 if n == 3 else oracle4
    gc, gb = cr.generation_report(o.table_c), cr.generation_report(o.table_b)
    assert gc.integrally_generated
    assert not gb.integrally_generated
    assert gb.generated_after_inverting_2


def test_degree(oracle3):
    assert cr.degree(CycleClass.basic("B", top_shape(3))) == 1
    assert cr.degree(CycleClass.basic("B", special_shape(3, 0))) == 0
    assert cr.degree(CycleClass.basic("B", top_shape(3), 4)) == 4


@pytest.mark.parametrize("n", [3, 4])
def test_pairing(n, oracle3, oracle4):
    from isoschubert.intlinalg import det_mod2

    tb = (oracle3 if n == 3 else oracle4).table_b
    assert cr.pairing_matrix(tb, 0)[2] == [[1]]
    for r in range(4 * n - 4):
        assert det_mod2(cr.pairing_matrix(tb, r)[2]) == 1
    _, _, m = cr.pairing_matrix(tb, 1, 2)
    assert all(v == 0 for row in m for v in row)


def test_multiplicity_and_transpose(oracle3):
    n = 3
    e, pt = special_shape(n, 0), top_shape(n)
    d = ProductCycle(n, {(e, pt): 1})
    assert cr.multiplicity(d) == 1 and cr.multiplicity(cr.transpose(d)) == 0
    diag = cr.diagonal_class(oracle3.table_b)
    assert cr.multiplicity(diag) == 1 and cr.multiplicity(cr.transpose(diag)) == 1
    assert cr.transpose(cr.transpose(diag)) == diag
    assert cr.multiplicity(diag.scale(4) + d.scale(4)) % 4 == 0
    with pytest.raises(ValueError):
        cr.multiplicity(ProductCycle(n, {(e, e): 1}))


def test_diagonal_is_dual(oracle3):
    tb = oracle3.table_b
    for la, dual in cr.dual_basis(tb).items():
        for mu in enumerate_shapes(3, la.weight):
            paired = cr.degree(cr.multiply(CycleClass.basic("B", mu), dual, tb))
            assert paired == int(mu == la)
