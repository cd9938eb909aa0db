"""Exact scalars: binomials, Bernoulli numbers and the coefficients C_{i,j}.

Everything here works over :class:`fractions.Fraction`; nothing is ever
rounded.  Rationals are serialized as ``"p/q"`` (or ``"p"`` when ``q == 1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from numbers import Rational

__all__ = [
    "Fraction",
    "binomial",
    "bernoulli",
    "bernoulli_table",
    "c_coeff",
    "CCoeffTable",
    "parse_rational",
    "format_rational",
]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def binomial(x: int, d: int) -> int:
    """Generalized binomial coefficient for integer ``x`` and ``d``.

    Uses the product formula ``prod_{i<d} (x - i) / d!`` for ``d >= 0`` (so it
    is also defined for negative ``x``) and returns 0 for ``d < 0``.
    """
    if d < 0:
        return 0
    if x >= 0:
        return comb(x, d)
    # (-1)^d * C(d - x - 1, d) is the product formula for negative x
    value = comb(d - x - 1, d)
    return -value if d % 2 else value


_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli_table(n: int) -> list[Fraction]:
    """Return ``[B_0, ..., B_n]`` with ``B_1 = -1/2``, extending the memo."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for m in range(len(_BERNOULLI), n + 1):
        if m >= 3 and m % 2:
            _BERNOULLI.append(Fraction(0))
            continue
        # sum_{j=0}^{m} C(m+1, j) B_j = 0
        s = sum((comb(m + 1, j) * _BERNOULLI[j] for j in range(m)), Fraction(0))
        _BERNOULLI.append(-s / (m + 1))
    return _BERNOULLI[: n + 1]


def bernoulli(n: int) -> Fraction:
    """The n-th Bernoulli number (convention ``B_1 = -1/2``)."""
    return bernoulli_table(n)[n]


def c_coeff(i: int, j: int, tau=1, weights=None) -> Fraction:
    """The coefficient C_{i,j} weighting the even higher multiplications.

    ``weights`` optionally maps an even index ``2m`` to a rational used in
    place of the Bernoulli number ``B_{2m}``; missing entries count as zero.
    """
    if i < 1 or j < 1:
        raise ValueError(f"C_{{i,j}} needs positive indices, got ({i}, {j})")
    if (i + j) % 2 == 0:
        raise ValueError(f"C_{{i,j}} needs i + j odd, got ({i}, {j})")
    ell = i + j - 1
    half = ell // 2
    b = bernoulli(ell) if weights is None else Fraction(weights.get(ell, 0))
    sign = 1 if half % 2 else -1  # (-1)^(1 + half)
    return binomial(ell - 1, i - 1) * sign * b / factorial(ell) * Fraction(tau) ** half


@dataclass
class CCoeffTable:
    """Memoized C_{i,j} for a fixed tau, symmetric-closed by construction."""

    tau: Fraction = Fraction(1)
    weights: dict | None = None
    _memo: dict = field(default_factory=dict, repr=False)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        try:
            return self._memo[key]
        except KeyError:
            value = c_coeff(key[0], key[1], self.tau, self.weights)
            self._memo[key] = value
            return value

    def fill(self, max_sum: int) -> "CCoeffTable":
        """Populate every valid entry with ``i + j <= max_sum``."""
        for i, j in self.indices(max_sum):
            self[i, j]
        return self

    @staticmethod
    def indices(max_sum: int):
        for s in range(3, max_sum + 1, 2):
            for i in range(1, s):
                yield i, s - i

    def items(self, max_sum: int):
        for key in self.indices(max_sum):
            yield key, self[key]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals, empty strings and q = 0 are rejected."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals must be strings like 'p/q', got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_rational(x) -> bool:
    return isinstance(x, Rational)
