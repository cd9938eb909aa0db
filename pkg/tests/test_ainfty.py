from fractions import Fraction
from itertools import product
import random

import pytest

from dqpcy.ainfty import (AInfinityStructure, CanonicalSplit, b_bar, canonicalize_cycle, ev,
                          is_acceptable, is_good, m4_closed_form, rotate, same_cycle, script_m)
from dqpcy.algebra import MixedTuple, basis_vec, evaluate, mul, natural_form, phi
from dqpcy.double_bracket import DoubleBracket, eval_bracket
from dqpcy.exact_arith import CCoeffTable
from dqpcy.stasheff import parity_patterns, random_tuple

ONE, T, T2 = basis_vec(0), basis_vec(1), basis_vec(2)


def _rand_vec(rng, dim):
    return {k: Fraction(rng.randint(-6, 6), rng.choice((1, 2))) for k in range(dim)
            if rng.random() < 0.85}


# -- m3 ----------------------------------------------------------------------

def test_m3_dp3_example(structures):
    S = structures["dp3"]
    assert S.m(3, MixedTuple.of((0, T), (1, T), (0, T))) == {(0, 0): -1}


def test_m3_zero_bracket(bundled):
    S = AInfinityStructure(DoubleBracket(bundled["qp3"].algebra, {}, 0))
    for pattern in product((0, 1), repeat=3):
        for idx in product(range(3), repeat=3):
            assert S.m_basis(3, tuple(zip(pattern, idx))) == {}


@pytest.mark.parametrize("name", ["qp3", "dp3"])
def test_m3_defining_pairings(structures, name):
    S = structures[name]
    for a, b, f, g in product(range(3), repeat=4):
        br = eval_bracket(S.db, basis_vec(a), basis_vec(b))
        expected = br.get((f, g), 0)
        out = S.m(3, MixedTuple.of((0, basis_vec(b)), (1, basis_vec(g)), (0, basis_vec(a))))
        assert out.get((0, f), 0) == expected
        out = S.m(3, MixedTuple.of((1, basis_vec(f)), (0, basis_vec(b)), (1, basis_vec(g))))
        assert out.get((1, a), 0) == expected


@pytest.mark.parametrize("name", ["qp3", "dp3"])
def test_m3_unit_normalized(structures, name):
    S = structures[name]
    for pattern in product((0, 1), repeat=3):
        for idx in product(range(3), repeat=3):
            keys = tuple(zip(pattern, idx))
            if any(k == (0, 0) for k in keys):
                assert S.m_basis(3, keys) == {}


# -- cyclic words ------------------------------------------------------------

def test_canonicalize_examples():
    word = MixedTuple.basis([(0, 1), (1, 0), (0, 2), (1, 1), (1, 2)])
    split = canonicalize_cycle(word)
    assert (split.i, split.j) == (1, 2)
    assert rotate(split.reassemble(), -split.rotation) == word

    adjacent = MixedTuple.basis([(0, 1), (0, 2), (1, 0), (1, 1), (1, 2)])
    assert canonicalize_cycle(adjacent).i == 0

    canonical = MixedTuple.basis([(1, 0), (0, 1), (1, 1), (1, 2), (0, 2)])
    assert canonicalize_cycle(canonical).rotation == 0


def test_canonicalize_all_rotations_agree():
    for length in (5, 7, 9):
        for pattern in parity_patterns(length, length - 2):
            word = MixedTuple.basis([(p, i) for i, p in enumerate(pattern)])
            split = canonicalize_cycle(word)
            assert split.j > split.i and (split.i + split.j) % 2 == 1
            assert rotate(split.reassemble(), -split.rotation) == word
            for r in range(length):
                other = canonicalize_cycle(rotate(word, r))
                assert other.reassemble() == split.reassemble()
            assert same_cycle(word, rotate(word, 3))


@pytest.mark.parametrize("pattern", [(0, 0, 0, 1, 1), (1, 1, 1, 1, 0), (0, 1, 0, 1, 1, 1)])
def test_canonicalize_rejects_bad_parity(pattern):
    with pytest.raises(ValueError):
        canonicalize_cycle(MixedTuple.basis([(p, 0) for p in pattern]))


def test_ev_examples(bundled):
    alg = bundled["qp3"].algebra
    assert ev(alg, [T, T, T]) == 0
    assert ev(alg, [ONE, ONE, ONE]) == 1
    rng = random.Random(2)
    for _ in range(20):
        word = [_rand_vec(rng, 3) for _ in range(5)]
        assert ev(alg, word) == ev(alg, word[2:] + word[:2])
    with pytest.raises(ValueError):
        ev(alg, [ONE, ONE])
    with pytest.raises(ValueError):
        ev(alg, MixedTuple.of((0, ONE), (1, ONE), (1, ONE)))


def test_script_m_examples(bundled):
    alg = bundled["qp3"].algebra
    C = CCoeffTable(Fraction(1))
    zero = CanonicalSplit(0, 3, (), T, (ONE, ONE, ONE), T, 0)
    assert script_m(alg, zero, C) == []
    f1, g1, g2 = {0: 1, 1: 2}, {1: 1}, {2: 1, 0: 3}
    split = CanonicalSplit(1, 2, (f1,), T, (g1, g2), T2, 0)
    words = script_m(alg, split, C)
    assert [c for c, _ in words] == [Fraction(1, 12), Fraction(1, 12),
                                     Fraction(-1, 12), Fraction(-1, 12)]
    assert all(len(w) == 3 for _, w in words)
    split = CanonicalSplit(2, 3, (f1, g2), T, (g1, g2, f1), ONE, 0)
    assert {c for c, _ in script_m(alg, split, C)} == {C[2, 3], -C[2, 3]}


@pytest.mark.parametrize("n", [4, 6])
def test_pairing_fast_path_matches_words(structures, n):
    S = structures["qp3"]
    alg = S.alg
    rng = random.Random(n)
    for pattern in parity_patterns(n + 1, n - 1):
        for _ in range(4):
            tup = random_tuple(rng, 3, pattern)
            split = canonicalize_cycle(tup)
            if split.i == 0:
                assert S.pair_mn(n, tup) == 0
                continue
            via_words = sum((c * ev(alg, w) for c, w in script_m(alg, split, S.coeffs)),
                            Fraction(0))
            assert S.pair_mn(n, tup) == via_words


@pytest.mark.parametrize("n", [4, 6])
def test_basis_pairing_matches_general(structures, n):
    S = structures["qp3"]
    for pattern in parity_patterns(n + 1, n - 1):
        for idx in product(range(3), repeat=n + 1):
            keys = tuple(zip(pattern, idx))
            assert S.pair_basis(n, keys) == S.pair_mn(n, MixedTuple.basis(keys))


@pytest.mark.parametrize("n", [4, 6, 8])
def test_pairing_rotation_invariant(structures, n):
    S = structures["qp3"]
    rng = random.Random(10 + n)
    patterns = list(parity_patterns(n + 1, n - 1))
    for _ in range(30):
        tup = random_tuple(rng, 3, rng.choice(patterns))
        value = S.pair_mn(n, tup)
        for r in range(1, n + 1):
            assert S.pair_mn(n, rotate(tup, r)) == value


def test_pairing_degree_support(structures):
    S = structures["qp3"]
    rng = random.Random(5)
    for n in (4, 6):
        for ones in range(n + 2):
            if ones == n - 1:
                continue
            for pattern in list(parity_patterns(n + 1, ones))[:5]:
                assert S.pair(n, random_tuple(rng, 3, pattern)) == 0


def test_m4_pairing_example(structures):
    S = structures["qp3"]
    alg = S.alg
    rng = random.Random(7)
    for _ in range(40):
        a, f, b, g, h = (_rand_vec(rng, 3) for _ in range(5))
        one = alg.unit
        expected = Fraction(1, 12) * (evaluate(f, b) * evaluate(g, one) * evaluate(h, a)
                                      + evaluate(f, a) * evaluate(g, b) * evaluate(h, one)
                                      - evaluate(f, one) * evaluate(g, b) * evaluate(h, a)
                                      - evaluate(f, mul(alg, b, a)) * evaluate(g, one)
                                      * evaluate(h, one))
        tup = MixedTuple.of((0, a), (1, f), (0, b), (1, g), (1, h))
        assert S.pair_mn(4, tup) == expected
        head = MixedTuple(tup.parity[:4], tup.slots[:4])
        assert natural_form(S.m(4, head), phi(None, h)) == expected


@pytest.mark.parametrize("pattern", ["1010", "0101", "0110"])
@pytest.mark.parametrize("name", ["qp2", "qp3"])
def test_m4_closed_forms(structures, name, pattern):
    S = structures[name]
    rng = random.Random(pattern)
    for _ in range(30):
        xs = [_rand_vec(rng, S.dim) for _ in range(4)]
        tup = MixedTuple(tuple(int(c) for c in pattern), tuple(xs))
        assert S.m(4, tup) == m4_closed_form(S.alg, S.tau, pattern, *xs)


def test_higher_products_vanish_without_tau(structures):
    S = structures["dp3"]
    rng = random.Random(0)
    for n in (4, 5, 6):
        for ones in (n - 2, n - 1):
            for pattern in list(parity_patterns(n, ones))[:4]:
                assert S.m(n, random_tuple(rng, 3, pattern)) == {}


def test_odd_higher_products_vanish(structures):
    S = structures["qp3"]
    rng = random.Random(1)
    for pattern in parity_patterns(5, 3):
        assert S.m(5, random_tuple(rng, 3, pattern)) == {}
    assert S.m(1, MixedTuple.of((0, T))) == {}


def test_b_bar_examples(structures):
    S = structures["qp3"]
    assert b_bar(S, 4, 0, T, T2) == {}
    assert b_bar(S, 3, 0, T, T) == {}
    br = eval_bracket(S.db, T, T)
    assert b_bar(S, 3, 1, T, T) == {k: -v for k, v in br.items()}
    c = Fraction(1, 12)
    a, b = T, T
    # a⊗b⊗1 - ba⊗1⊗1 + b⊗1⊗a - 1⊗b⊗a
    expected = {(1, 1, 0): c, (2, 0, 0): -c, (1, 0, 1): c, (0, 1, 1): -c}
    assert b_bar(S, 4, 1, a, b) == expected
    with pytest.raises(ValueError):
        b_bar(S, 4, 3, T, T)


def test_b_bar_pairing_small(structures):
    S = structures["qp3"]
    for n in (3, 4, 6):
        for ell in range(n - 1):
            for a, b in product(range(3), repeat=2):
                tensor = b_bar(S, n, ell, basis_vec(a), basis_vec(b))
                for fs in product(range(3), repeat=n - 1):
                    keys = (((0, a),) + tuple((1, f) for f in fs[:ell]) + ((0, b),)
                            + tuple((1, f) for f in fs[ell:]))
                    assert tensor.get(fs, 0) == S.pair_basis(n, keys)


def test_support_conditions(structures):
    S = structures["qp3"]
    assert is_good(S, 3).ok
    assert is_acceptable(S, 4).ok
    assert is_acceptable(S, 6, limit=3000).ok
    assert is_acceptable(S, 2).ok
    assert is_acceptable(S, 3).ok
    with pytest.raises(ValueError):
        is_good(S, 4)


def test_structure_pickles_without_caches(structures):
    import pickle
    S = structures["qp3"]
    S.pair_basis(4, ((0, 1), (1, 1), (0, 1), (1, 0), (1, 0)))
    clone = pickle.loads(pickle.dumps(S))
    assert clone._pair_cache == {} and clone.tau == S.tau
