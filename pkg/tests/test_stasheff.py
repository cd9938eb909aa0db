from fractions import Fraction
from itertools import product
import random

import pytest

from dqpcy.algebra import MixedTuple
from dqpcy.stasheff import (parity_patterns, random_tuple, si_basis, si_gamma,
                            verify_cyclic_reduction, verify_cyclicity, verify_pcy, verify_si)


def _orbit(pattern):
    return {pattern[r:] + pattern[:r] for r in range(len(pattern))}


@pytest.mark.parametrize("N", [1, 2, 3])
def test_low_identities_vanish(structures, N):
    S = structures["qp3"]
    for pattern in product((0, 1), repeat=N + 1):
        for idx in product(range(3), repeat=N + 1):
            assert si_basis(S, N, tuple(zip(pattern, idx))) == 0


@pytest.mark.parametrize("name", ["qp3", "dp3", "dp3_tau1"])
def test_fourth_identity_vanishes_on_leibniz_brackets(structures, name):
    # holds for any skew Leibniz bracket, quasi-Poisson or not
    S = structures[name]
    for idx in product(range(3), repeat=5):
        keys = tuple(zip((0, 0, 1, 0, 1), idx))
        assert si_basis(S, 4, keys) == 0


def test_fifth_identity_detects_missing_quasi_poisson(structures):
    S = structures["dp3_tau1"]
    hits = set()
    for pattern in parity_patterns(6, 3):
        for idx in product(range(3), repeat=6):
            if si_basis(S, 5, tuple(zip(pattern, idx))):
                hits.add(pattern)
    assert hits and hits <= _orbit((0, 1, 0, 1, 0, 1))


def test_basis_and_general_evaluators_agree(structures):
    S = structures["qp3"]
    rng = random.Random(0)
    for N in (4, 5, 6):
        patterns = list(parity_patterns(N + 1, N - 2))
        for _ in range(40):
            keys = tuple((p, rng.randrange(3)) for p in rng.choice(patterns))
            assert si_basis(S, N, keys) == si_gamma(S, N, MixedTuple.basis(keys))


def test_si_multilinear(structures):
    S = structures["dp3_tau1"]
    rng = random.Random(3)
    pattern = (0, 1, 0, 1, 0, 1)
    for _ in range(10):
        tup = random_tuple(rng, 3, pattern)
        total = Fraction(0)
        for idx in product(range(3), repeat=6):
            coeff = Fraction(1)
            for slot, i in zip(tup.slots, idx):
                coeff *= slot.get(i, 0)
            if coeff:
                total += coeff * si_basis(S, 5, tuple(zip(pattern, idx)))
        assert si_gamma(S, 5, tup) == total


def test_wrong_degree_vanishes(structures):
    S = structures["qp3"]
    rng = random.Random(9)
    for N in (4, 5, 6):
        for ones in range(N + 2):
            if ones == N - 2:
                continue
            pattern = rng.choice(list(parity_patterns(N + 1, ones)))
            assert si_gamma(S, N, random_tuple(rng, 3, pattern)) == 0


def test_length_mismatch_rejected(structures):
    with pytest.raises(ValueError):
        si_basis(structures["qp3"], 4, ((0, 0),) * 4)


@pytest.mark.parametrize("name", ["qp2", "qp3", "dp3"])
def test_verify_si_small(structures, name):
    reps = verify_si(structures[name], 6, mode="exhaustive")
    assert [r.N for r in reps] == list(range(1, 7))
    assert all(r.ok for r in reps)


def test_verify_si_negative_control(structures):
    reps = verify_si(structures["dp3_tau1"], 5, mode="exhaustive", n_min=5)
    assert not reps[0].ok
    tup, value = reps[0].violations[0]
    assert value != 0 and tuple(p for p, _ in tup) in _orbit((0, 1, 0, 1, 0, 1))


def test_sampled_mode_deterministic(structures):
    S = structures["dp3_tau1"]
    a = verify_si(S, 5, mode="sampled", samples=60, seed=11, n_min=5)[0]
    b = verify_si(S, 5, mode="sampled", samples=60, seed=11, n_min=5)[0]
    assert a.violations == b.violations and a.violation_count == b.violation_count
    assert a.violation_count > 0


def test_auto_mode_picks_by_budget(structures):
    S = structures["qp3"]
    assert verify_si(S, 4, n_min=4)[0].mode == "exhaustive"
    assert verify_si(S, 4, n_min=4, budget=10, samples=5)[0].mode == "sampled"
    with pytest.raises(ValueError):
        verify_si(S, 4, mode="bogus")


def test_parallel_matches_serial(structures):
    S = structures["dp3_tau1"]
    serial = verify_si(S, 5, mode="exhaustive", n_min=5, jobs=1)[0]
    parallel = verify_si(S, 5, mode="exhaustive", n_min=5, jobs=2)[0]
    assert serial.violations == parallel.violations
    assert serial.violation_count == parallel.violation_count
    assert serial.tuples_checked == parallel.tuples_checked


@pytest.mark.parametrize("name", ["qp2", "qp3", "dp3", "dp3_tau1"])
def test_cyclicity_small(structures, name):
    assert verify_cyclicity(structures[name], 6).ok


def test_cyclicity_catches_a_broken_sign(structures, monkeypatch):
    S = structures["qp3"]
    from dqpcy import ainfty
    fresh = ainfty.AInfinityStructure(S.db)
    original = fresh.pair_basis

    def skewed(n, keys):
        value = original(n, keys)
        return -value if n == 3 and keys[0][0] == 1 else value

    monkeypatch.setattr(fresh, "pair_basis", skewed)
    assert not verify_cyclicity(fresh, 3, arities=[3]).ok


@pytest.mark.parametrize("N", [4, 5, 6])
def test_cyclic_reduction(structures, N):
    for name in ("qp3", "dp3_tau1"):
        assert verify_cyclic_reduction(structures[name], N, trials=15, seed=N).ok


@pytest.mark.parametrize("name", ["qp2", "qp3", "dp3"])
def test_pcy_small(structures, name):
    reports = verify_pcy(structures[name], 6)
    assert set(reports) == {"pcy1", "pcy2", "unit_pairing", "strict_unit"}
    assert all(r.ok for r in reports.values()), reports
