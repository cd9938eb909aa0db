"""Bernoulli-number identities behind the odd Stasheff identities.

Weight sequences are dicts mapping an even index ``2i`` to a rational that
replaces the Bernoulli number ``B_{2i}``; ``None`` means the genuine
Bernoulli numbers.  With free weights the identities below become
equalities of bilinear forms, which is what :func:`check_ide` tests.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from math import factorial

from .exact_arith import CCoeffTable, bernoulli, binomial
from .report import CheckReport

__all__ = [
    "parity_p",
    "parity_i",
    "weight",
    "residual_cgen",
    "cgen_expanded",
    "mu_raw",
    "mu_circ",
    "mu0_circ",
    "mu_bcvmc2",
    "mu_reduced",
    "residual_bcm",
    "check_maincomp",
    "check_ide",
    "script_e",
    "script_e_split",
    "script_e_cform",
    "admissible_triples",
    "cgen_grid",
    "bcm_grid",
    "maincomp_grid",
    "mu_reduced_grid",
    "ide_trials",
    "random_weights",
    "indicator_weights",
    "CorruptedTable",
]


def parity_p(j: int) -> int:
    """1 for odd j, 0 for even j."""
    return j % 2


def parity_i(j: int) -> int:
    """1 for even j, 0 for odd j."""
    return 1 - j % 2


def weight(m: int, weights=None) -> Fraction:
    """``B_m`` or its substitute; odd indices above 1 always give 0."""
    if weights is None:
        return bernoulli(m)
    if m % 2:
        return Fraction(0)
    return Fraction(weights.get(m, 0))


def _scaled(m: int, weights) -> Fraction:
    return weight(m, weights) / factorial(m)


def _k_of(total: int) -> int:
    if total % 2 == 0:
        raise ValueError(f"l1 + l2 + l3 must be odd, got {total}")
    k = (total - 1) // 2
    if k < 2:
        raise ValueError(f"l1 + l2 + l3 must be >= 5, got {total}")
    return k


def admissible_triples(k: int):
    """All (l1, l2, l3) with entries >= 1 and sum 2k + 1."""
    total = 2 * k + 1
    for l1 in range(1, total - 1):
        for l2 in range(1, total - l1):
            yield l1, l2, total - l1 - l2


# -- the C-identity ----------------------------------------------------------

class CorruptedTable(CCoeffTable):
    """A coefficient table with one symmetric pair of entries shifted by ``delta``."""

    def __init__(self, tau, entry, delta=Fraction(1, 1000), weights=None):
        super().__init__(Fraction(tau), weights)
        self.entry = tuple(entry)
        self.delta = Fraction(delta)

    def __getitem__(self, key):
        value = super().__getitem__(key)
        if tuple(key) in (self.entry, self.entry[::-1]):
            value += self.delta
        return value


def _cgen_direct(l, l2, l3, C) -> Fraction:
    i_ = parity_i
    lhs = ((-1) ** (l + 1) * C[l, l2 + l3] + (-1) ** (l3 + 1) * C[l3, l2 + l]
           + (-1) ** (l2 + 1) * C[l2, l + l3])
    s1 = sum((C[l, 2 * j - i_(l)] * C[l3, l2 - 2 * j + 1 + i_(l)]
              for j in range(1, l2 // 2 + i_(l) * i_(l3) + 1)), Fraction(0))
    s2 = sum((C[l2, 2 * j - i_(l2)] * C[l, l3 - 2 * j + 1 + i_(l2)]
              for j in range(1, l3 // 2 + i_(l) * i_(l2) + 1)), Fraction(0))
    s3 = sum((C[l3, 2 * j - i_(l3)] * C[l2, l - 2 * j + 1 + i_(l3)]
              for j in range(1, l // 2 + i_(l2) * i_(l3) + 1)), Fraction(0))
    rhs = (-1) ** (l2 + 1) * s1 + (-1) ** (l3 + 1) * s2 + (-1) ** (l + 1) * s3
    return lhs - rhs


def cgen_expanded(l1: int, l2: int, l3: int, weights=None) -> Fraction:
    """LHS - RHS of the bilinear normal form of the C-identity (tau = 1)."""
    k = _k_of(l1 + l2 + l3)
    ls = (l1, l2, l3)
    top = _scaled(2 * k, weights)
    lhs = sum(((-1) ** lp * binomial(2 * k - 1, lp - 1) for lp in ls), 0) * top
    rhs = Fraction(0)
    mid = _scaled(k, weights) ** 2 if k % 2 == 0 else Fraction(0)
    for p in range(3):
        lq, lr = (ls[x] for x in range(3) if x != p)
        inner = Fraction(0)
        for i in range(1, (k - 1) // 2 + 1):
            coeff = (binomial(2 * i - 1, lq - 1) * binomial(2 * k - 2 * i - 1, lr - 1)
                     + binomial(2 * i - 1, lr - 1) * binomial(2 * k - 2 * i - 1, lq - 1))
            if coeff:
                inner += coeff * _scaled(2 * i, weights) * _scaled(2 * k - 2 * i, weights)
        if mid:
            inner += binomial(k - 1, lq - 1) * binomial(k - 1, lr - 1) * mid
        rhs += (-1) ** (ls[p] + 1) * inner
    return lhs - rhs


def residual_cgen(l1: int, l2: int, l3: int, tau=1, weights=None, form: str = "direct",
                  table=None) -> Fraction:
    """LHS - RHS of the C-identity indexed by (l1, l2, l3).

    ``form="direct"`` evaluates the C-products literally (through ``table``
    when given, else a fresh table for ``tau`` and ``weights``);
    ``form="expanded"`` uses the bilinear normal form times ``(-1)^k tau^k``.
    """
    k = _k_of(l1 + l2 + l3)
    if min(l1, l2, l3) < 1:
        raise ValueError("l1, l2, l3 must be >= 1")
    if form == "direct":
        C = table if table is not None else CCoeffTable(Fraction(tau), weights)
        return _cgen_direct(l1, l2, l3, C)
    if form == "expanded":
        return (-1) ** k * Fraction(tau) ** k * cgen_expanded(l1, l2, l3, weights)
    raise ValueError(f"unknown form {form!r}")


# -- BCM identities ----------------------------------------------------------

def _check_abc(k: int, a: int, b: int, c: int) -> None:
    if k < 1 or min(a, b, c) < 0 or a + b + c != 2 * k - 1:
        raise ValueError(f"need a, b, c >= 0 with a + b + c = 2k - 1, got k={k}, ({a}, {b}, {c})")


def _alt_sum(x: int, lo: int, hi: int) -> int:
    return sum((-1) ** d * binomial(x, d) for d in range(lo, hi + 1))


def mu_raw(k: int, j: int, a: int, b: int, c: int) -> int:
    """mu_{2j}(a, b, c) straight from the double-sum definition."""
    _check_abc(k, a, b, c)
    if not 0 <= j <= k // 2:
        raise ValueError(f"j must lie in [0, {k // 2}], got {j}")
    J, K = 2 * j, 2 * k - 2 * j
    inner = ((-1) ** c * binomial(K, c) * _alt_sum(J, max(0, J - b), min(a, J))
             + (-1) ** c * binomial(J, c) * _alt_sum(K, max(0, K - b), min(a, K))
             - (-1) ** a * binomial(K, a) * _alt_sum(J, max(0, J - b), min(c, J))
             - (-1) ** a * binomial(J, a) * _alt_sum(K, max(0, K - b), min(c, K)))
    return binomial(2 * k, J) * inner


def mu_circ(k: int, j: int, a: int, b: int, c: int) -> Fraction:
    return Fraction(mu_raw(k, j, a, b, c), binomial(2 * k, 2 * j))


def mu0_circ(k: int, a: int, b: int, c: int) -> int:
    """Closed form of mu_0 / C(2k, 0)."""
    _check_abc(k, a, b, c)
    return (-1) ** c * binomial(2 * k, c) - (-1) ** a * binomial(2 * k, a)


def mu_bcvmc2(k: int, j: int, a: int, b: int, c: int) -> int:
    """First reduced form of mu_{2j} / C(2k, 2j), valid for 1 <= j <= k/2."""
    _check_abc(k, a, b, c)
    if not 1 <= j <= k // 2:
        raise ValueError(f"j must lie in [1, {k // 2}], got {j}")
    B = binomial
    J, K = 2 * j, 2 * k - 2 * j
    return ((-1) ** (a + c) * ((B(K, c) * B(J - 1, a) - B(K - 1, c) * B(J, a))
                               + (B(J, c) * B(K - 1, a) - B(J - 1, c) * B(K, a)))
            + (-1) ** (b + c) * (B(K, c) * B(J - 1, b) + B(J, c) * B(K - 1, b))
            - (-1) ** (a + b) * (B(K, a) * B(J - 1, b) + B(J, a) * B(K - 1, b)))


def mu_reduced(k: int, j: int, a: int, b: int, c: int) -> Fraction:
    """Second reduced form of mu_{2j} / C(2k, 2j); needs c > 0."""
    _check_abc(k, a, b, c)
    if c <= 0:
        raise ValueError("the reduced form needs c > 0; use mu_circ instead")
    if not 1 <= j <= k // 2:
        raise ValueError(f"j must lie in [1, {k // 2}], got {j}")
    B = binomial
    J, K = 2 * j, 2 * k - 2 * j
    cf = Fraction(c)
    first = (B(K - 1, c - 1) * (K / cf * B(J - 1, a) - (K - c) / cf * B(J, a))
             + B(J - 1, c - 1) * (J / cf * B(K - 1, a) - (J - c) / cf * B(K, a)))
    second = B(K - 1, c - 1) * B(J - 1, b) * K / cf + B(J - 1, c - 1) * B(K - 1, b) * J / cf
    third = B(K - 1, b) * B(J, a) + B(J - 1, b) * B(K, a)
    return (-1) ** (a + c) * first + (-1) ** (b + c) * second - (-1) ** (a + b) * third


def residual_bcm(k: int, a: int, b: int, c: int, weights=None) -> Fraction:
    """-mu_0 B_{2k} - (mu_k / 2) B_k^2 - sum_j mu_{2j} B_{2j} B_{2k-2j}.

    The B_k term only appears for even k.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    _check_abc(k, a, b, c)
    W = lambda m: weight(m, weights)  # noqa: E731
    out = -mu_raw(k, 0, a, b, c) * W(2 * k)
    if k % 2 == 0:
        out -= Fraction(mu_raw(k, k // 2, a, b, c), 2) * W(k) ** 2
    for j in range(1, (k - 1) // 2 + 1):
        out -= mu_raw(k, j, a, b, c) * W(2 * j) * W(2 * k - 2 * j)
    return out


def check_maincomp(k: int, a: int, b: int, c: int, j: int) -> tuple[Fraction, Fraction]:
    """Residuals of the two mu-recursions (for mu_0 and for mu_{2j}); needs c > 0."""
    _check_abc(k, a, b, c)
    if c <= 0:
        raise ValueError("the recursion needs c > 0")
    if not 1 <= j <= k // 2:
        raise ValueError(f"j must lie in [1, {k // 2}], got {j}")
    B = binomial
    lhs0 = c * mu_circ(k, 0, a, b, c) + (b + 1) * mu_circ(k, 0, a, c - 1, b + 1)
    rhs0 = 2 * k * ((-1) ** c * B(2 * k - 1, c - 1) - (-1) ** b * B(2 * k - 1, b)
                    - (-1) ** a * B(2 * k - 1, a))
    J, K = 2 * j, 2 * k - 2 * j
    lhs = c * mu_circ(k, j, a, b, c) + (b + 1) * mu_circ(k, j, a, c - 1, b + 1)
    rhs = 2 * k * ((-1) ** (a + c) * (B(K - 1, c - 1) * B(J - 1, a) + B(J - 1, c - 1) * B(K - 1, a))
                   + (-1) ** (b + c) * (B(K - 1, c - 1) * B(J - 1, b) + B(J - 1, c - 1) * B(K - 1, b))
                   - (-1) ** (a + b) * (B(K - 1, b) * B(J - 1, a) + B(J - 1, b) * B(K - 1, a)))
    return lhs0 - rhs0, lhs - rhs


def check_ide(l: int, l2: int, l3: int, weights=None, form: str = "expanded") -> Fraction:
    """C-identity residual minus its expression through two BCM residuals.

    With ``2k + 1 = l + l2 + l3`` the combination is
    ``-(-1)^k / (2k)! * (l/(2k) Eq(l3-1, l2-1, l) + l2/(2k) Eq(l3-1, l-1, l2))``.
    """
    k = _k_of(l + l2 + l3)
    lhs = residual_cgen(l, l2, l3, 1, weights, form=form)
    combo = (Fraction(l, 2 * k) * residual_bcm(k, l3 - 1, l2 - 1, l, weights)
             + Fraction(l2, 2 * k) * residual_bcm(k, l3 - 1, l - 1, l2, weights))
    rhs = -(-1) ** k * combo / factorial(2 * k)
    return lhs - rhs


# -- the sums E(l1, l2, l3) --------------------------------------------------

def script_e(l1: int, l2: int, l3: int, weights=None) -> Fraction:
    """(-1)^k sum_{i=1}^{k-1} C(2i-1, l1-1) C(2k-2i-1, l3-1) B_{2i} B_{2k-2i} / ((2i)! (2k-2i)!)."""
    k = _k_of(l1 + l2 + l3)
    total = Fraction(0)
    for i in range(1, k):
        coeff = binomial(2 * i - 1, l1 - 1) * binomial(2 * k - 2 * i - 1, l3 - 1)
        if coeff:
            total += coeff * _scaled(2 * i, weights) * _scaled(2 * k - 2 * i, weights)
    return (-1) ** k * total


def script_e_split(l1: int, l2: int, l3: int, weights=None) -> Fraction:
    """The same sum folded around i = k/2."""
    k = _k_of(l1 + l2 + l3)
    sign = (-1) ** k
    total = Fraction(0)
    for i in range(1, (k - 1) // 2 + 1):
        w = _scaled(2 * i, weights) * _scaled(2 * k - 2 * i, weights)
        total += sign * binomial(2 * i - 1, l1 - 1) * binomial(2 * k - 2 * i - 1, l3 - 1) * w
        total += sign * binomial(2 * i - 1, l3 - 1) * binomial(2 * k - 2 * i - 1, l1 - 1) * w
    if k % 2 == 0:
        total += binomial(k - 1, l1 - 1) * binomial(k - 1, l3 - 1) * _scaled(k, weights) ** 2
    return total


def script_e_cform(l1: int, l2: int, l3: int, weights=None) -> Fraction:
    """The same quantity as a sum of products of C-coefficients at tau = 1."""
    _k_of(l1 + l2 + l3)
    C = CCoeffTable(Fraction(1), weights)
    i1 = parity_i(l1)
    return sum((C[l1, 2 * j - i1] * C[l3, l2 - 2 * j + 1 + i1]
                for j in range(1, l2 // 2 + i1 * parity_i(l3) + 1)), Fraction(0))


# -- weights -----------------------------------------------------------------

def random_weights(rng: random.Random, max_index: int) -> dict:
    """Independent rationals for every even index up to ``max_index``."""
    return {m: Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for m in range(2, max_index + 1, 2)}


def indicator_weights(max_index: int):
    """Weight sequences with a single entry equal to 1."""
    for m in range(2, max_index + 1, 2):
        yield {m: Fraction(1)}


# -- grids -------------------------------------------------------------------

def cgen_grid(max_even_n: int = 24, weights=None, table=None, form: str = "direct") -> CheckReport:
    """The C-identity on every admissible triple with 6 <= n <= max_even_n."""
    report = CheckReport("cgen")
    for n in range(6, max_even_n + 1, 2):
        k = (n - 2) // 2
        for triple in admissible_triples(k):
            report.checked += 1
            r = residual_cgen(*triple, 1, weights, form=form, table=table)
            if r:
                report.add((triple, r))
    return report


def cgen_symmetry_grid(max_even_n: int = 24, weights=None) -> CheckReport:
    report = CheckReport("cgen_symmetry")
    for n in range(6, max_even_n + 1, 2):
        for triple in admissible_triples((n - 2) // 2):
            base = residual_cgen(*triple, 1, weights)
            for perm in set(permutations(triple)):
                report.checked += 1
                if residual_cgen(*perm, 1, weights) != base:
                    report.add((triple, perm))
    return report


def bcm_grid(k_max: int = 12, weights=None) -> CheckReport:
    report = CheckReport("bcm")
    for k in range(2, k_max + 1):
        for a in range(2 * k):
            for b in range(2 * k - a):
                c = 2 * k - 1 - a - b
                report.checked += 1
                r = residual_bcm(k, a, b, c, weights)
                if r:
                    report.add(((k, a, b, c), r))
    return report


def maincomp_grid(k_max: int = 8) -> CheckReport:
    report = CheckReport("maincomp")
    for k in range(2, k_max + 1):
        for a in range(2 * k):
            for b in range(2 * k - a):
                c = 2 * k - 1 - a - b
                if c <= 0:
                    continue
                for j in range(1, k // 2 + 1):
                    report.checked += 1
                    r0, r2 = check_maincomp(k, a, b, c, j)
                    if r0 or r2:
                        report.add(((k, a, b, c, j), r0, r2))
    return report


def mu_reduced_grid(k_max: int = 8) -> CheckReport:
    """Both reduced forms and the mu_0 closed form against the raw definition."""
    report = CheckReport("mu_reduced")
    for k in range(2, k_max + 1):
        for a in range(2 * k):
            for b in range(2 * k - a):
                c = 2 * k - 1 - a - b
                report.checked += 1
                if mu_circ(k, 0, a, b, c) != mu0_circ(k, a, b, c):
                    report.add(((k, 0, a, b, c), "mu0"))
                for j in range(1, k // 2 + 1):
                    raw = mu_circ(k, j, a, b, c)
                    report.checked += 1
                    if raw != mu_bcvmc2(k, j, a, b, c):
                        report.add(((k, j, a, b, c), "first"))
                    if c > 0 and raw != mu_reduced(k, j, a, b, c):
                        report.add(((k, j, a, b, c), "second"))
    return report


def ide_trials(k_max: int = 8, trials: int = 100, seed: int = 0,
               indicators: bool = True) -> CheckReport:
    """check_ide on every admissible triple with k <= k_max, for seeded random
    weight sequences and (optionally) every indicator sequence."""
    report = CheckReport("ide")
    rng = random.Random(f"ide-{seed}")
    sequences = [random_weights(rng, 2 * k_max) for _ in range(trials)]
    if indicators:
        sequences.extend(indicator_weights(2 * k_max))
    for w in sequences:
        for k in range(2, k_max + 1):
            for triple in admissible_triples(k):
                report.checked += 1
                r = check_ide(*triple, w)
                if r:
                    report.add((triple, w, r))
    return report
