from fractions import Fraction
from itertools import permutations
import random

import pytest

from dqpcy.exact_arith import CCoeffTable, binomial
from dqpcy.identities import (CorruptedTable, admissible_triples, bcm_grid, cgen_expanded,
                              cgen_grid, cgen_symmetry_grid, check_ide, check_maincomp,
                              indicator_weights, maincomp_grid, mu0_circ, mu_bcvmc2, mu_circ,
                              mu_raw, mu_reduced, mu_reduced_grid, parity_i, parity_p,
                              random_weights, residual_bcm, residual_cgen, script_e,
                              script_e_cform, script_e_split, weight)


def test_parity_helpers():
    for j in range(-6, 7):
        assert parity_p(j) + parity_i(j) == 1
        assert parity_p(j) == (1 if j % 2 else 0)


def test_weight_defaults_and_substitution():
    assert weight(2) == Fraction(1, 6)
    assert weight(3) == 0
    assert weight(4, {4: 7}) == 7
    assert weight(5, {5: 7}) == 0
    assert weight(6, {4: 7}) == 0


def test_admissible_triples_count():
    for k in range(2, 9):
        triples = list(admissible_triples(k))
        total = 2 * k + 1
        assert len(triples) == binomial(total - 1, 2)
        assert all(min(t) >= 1 and sum(t) == total for t in triples)


def test_smallest_instance_by_hand():
    C = CCoeffTable(1)
    assert C[2, 3] == Fraction(1, 240) and C[1, 4] == Fraction(1, 720)
    assert C[2, 3] + 2 * C[1, 4] == C[1, 2] ** 2 == Fraction(1, 144)
    assert residual_cgen(1, 1, 3) == 0


def test_cgen_rejects_bad_parity():
    with pytest.raises(ValueError):
        residual_cgen(1, 1, 2)
    with pytest.raises(ValueError):
        residual_cgen(1, 1, 1)


def test_cgen_grid_bernoulli():
    rep = cgen_grid(24)
    assert rep.ok and rep.checked == sum(binomial(n - 2, 2) for n in range(6, 25, 2))


def test_cgen_scales_with_tau():
    # nonzero tau only rescales each term uniformly
    for tau in (2, Fraction(-3, 5)):
        for k in range(2, 6):
            for t in admissible_triples(k):
                assert residual_cgen(*t, tau=tau) == 0


@pytest.mark.parametrize("seed", range(5))
def test_cgen_permutation_invariant_any_weights(seed):
    w = random_weights(random.Random(seed), 16)
    for k in range(2, 8):
        for t in admissible_triples(k):
            values = {residual_cgen(*p, weights=w) for p in permutations(t)}
            assert len(values) == 1


def test_cgen_symmetry_grid():
    assert cgen_symmetry_grid(14, random_weights(random.Random(1), 12)).ok


def test_direct_and_expanded_forms_agree():
    for seed in range(4):
        w = random_weights(random.Random(100 + seed), 16)
        for k in range(2, 8):
            for t in admissible_triples(k):
                direct = residual_cgen(*t, weights=w, form="direct")
                assert direct == (-1) ** k * cgen_expanded(*t, w)
                assert direct == residual_cgen(*t, weights=w, form="expanded")


def test_generalized_residuals_are_not_trivially_zero():
    # otherwise the generalized checks below would prove nothing
    w = random_weights(random.Random(7), 16)
    assert any(residual_cgen(*t, weights=w) for t in admissible_triples(5))
    assert any(residual_bcm(5, a, b, 9 - a - b, w)
               for a in range(10) for b in range(10 - a))


def test_corrupted_table_is_caught():
    rep = cgen_grid(12, table=CorruptedTable(1, (1, 4)))
    assert not rep.ok and rep.violation_count > 0
    assert CorruptedTable(1, (1, 4))[4, 1] == CCoeffTable(1)[4, 1] + Fraction(1, 1000)


def test_bcm_grid():
    rep = bcm_grid(12)
    assert rep.ok and rep.checked > 0


def test_bcm_constraint_violation():
    with pytest.raises(ValueError):
        residual_bcm(3, 1, 1, 1)
    with pytest.raises(ValueError):
        residual_bcm(1, 0, 0, 1)


def test_odd_k_middle_term_irrelevant():
    rng = random.Random(3)
    for k in (3, 5, 7):
        w = random_weights(rng, 2 * k)
        w_with_bk = dict(w)
        w_with_bk[k] = Fraction(11, 3)  # odd index: ignored by weight()
        for a in range(2 * k):
            for b in range(2 * k - a):
                c = 2 * k - 1 - a - b
                assert residual_bcm(k, a, b, c, w) == residual_bcm(k, a, b, c, w_with_bk)


def test_mu0_closed_form():
    for k in range(2, 10):
        for a in range(2 * k):
            for b in range(2 * k - a):
                c = 2 * k - 1 - a - b
                assert mu_raw(k, 0, a, b, c) == mu0_circ(k, a, b, c)
                assert mu_circ(k, 0, a, b, c) == mu0_circ(k, a, b, c)


def test_reduced_forms_match_raw():
    assert mu_reduced_grid(8).ok
    for k in range(2, 9):
        for j in range(1, k // 2 + 1):
            for a in range(2 * k):
                for b in range(2 * k - a):
                    c = 2 * k - 1 - a - b
                    assert mu_bcvmc2(k, j, a, b, c) == mu_circ(k, j, a, b, c)


def test_reduced_form_edges():
    with pytest.raises(ValueError):
        mu_reduced(4, 1, 3, 4, 0)
    with pytest.raises(ValueError):
        mu_reduced(4, 3, 3, 3, 1)
    # a = c and j at its upper bound
    for k in (4, 6, 8):
        for a in range(1, k):
            b = 2 * k - 1 - 2 * a
            assert mu_reduced(k, k // 2, a, b, a) == mu_circ(k, k // 2, a, b, a)


def test_maincomp_grid_and_edges():
    assert maincomp_grid(8).ok
    for k in range(2, 9):
        for j in range(1, k // 2 + 1):
            assert check_maincomp(k, 2 * k - 2, 0, 1, j) == (0, 0)
            assert check_maincomp(k, 0, 0, 2 * k - 1, j) == (0, 0)
    with pytest.raises(ValueError):
        check_maincomp(4, 7, 0, 0, 1)
    with pytest.raises(ValueError):
        check_maincomp(4, 6, 0, 1, 0)


def test_ide_bernoulli():
    for k in range(2, 9):
        for t in admissible_triples(k):
            assert check_ide(*t) == 0


@pytest.mark.parametrize("seed", range(3))
def test_ide_random_weights(seed):
    w = random_weights(random.Random(f"t{seed}"), 16)
    for k in range(2, 9):
        for t in admissible_triples(k):
            assert check_ide(*t, w) == 0
            assert check_ide(*t, w, form="direct") == 0


def test_ide_indicators():
    for w in indicator_weights(16):
        for k in range(2, 9):
            for t in admissible_triples(k):
                assert check_ide(*t, w) == 0


def test_ide_needs_both_terms():
    # dropping either half of the combination is not an identity
    from math import factorial
    w = random_weights(random.Random(5), 12)
    bad = 0
    for t in admissible_triples(4):
        l, l2, l3 = t
        lhs = residual_cgen(*t, weights=w)
        first = Fraction(l, 8) * residual_bcm(4, l3 - 1, l2 - 1, l, w)
        second = Fraction(l2, 8) * residual_bcm(4, l3 - 1, l - 1, l2, w)
        assert lhs == -(first + second) / factorial(8)
        bad += lhs != -first / factorial(8)
        bad += lhs != -second / factorial(8)
    assert bad > 0


def test_script_e_examples():
    for k in range(2, 9):
        for t in admissible_triples(k):
            l1, l2, l3 = t
            e = script_e(*t)
            if l2 == 1 and l1 % 2 and l3 % 2:
                assert e == 0
            assert e == script_e(l3, l2, l1)
            assert e == script_e_split(*t)


def test_script_e_forms_any_weights():
    w = random_weights(random.Random(11), 16)
    for k in range(2, 9):
        for t in admissible_triples(k):
            assert script_e(*t, w) == script_e_split(*t, w) == script_e_cform(*t, w)
            assert script_e(*t, w) == script_e(t[2], t[1], t[0], w)
