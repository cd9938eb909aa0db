"""Finite-dimensional unital algebras, their shifted duals and the space ∂A.

Elements are sparse vectors ``{index: Fraction}`` with zero entries never
stored.  An algebra element and a functional share that representation; the
functional ``f`` with coefficients ``f[k]`` evaluates as ``sum f[k] * a[k]``
(coefficients on the dual basis ``e_k*``).  An element of
``∂A = A ⊕ A^#[-1]`` is a sparse map ``{(parity, index): Fraction}`` where
parity 0 is the algebra part and parity 1 the shifted dual part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .report import CheckReport

Vec = dict  # {int: Fraction}
Phi = dict  # {(parity, int): Fraction}

__all__ = [
    "Algebra",
    "MixedTuple",
    "validate_algebra",
    "mul",
    "dual_action",
    "evaluate",
    "natural_form",
    "m2_phi",
    "phi",
    "permute_graded",
    "koszul_sign",
    "truncated_polynomial_algebra",
]


# -- sparse vector helpers ---------------------------------------------------

def vec(entries: dict | Iterable = ()) -> Vec:
    items = entries.items() if isinstance(entries, dict) else entries
    out: Vec = {}
    for k, c in items:
        c = Fraction(c)
        if c:
            out[k] = out.get(k, 0) + c
            if not out[k]:
                del out[k]
    return out


def add_into(acc: dict, other: dict, scale=1) -> dict:
    if not scale:
        return acc
    for k, c in other.items():
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


def scaled(v: dict, s) -> dict:
    if not s:
        return {}
    return {k: s * c for k, c in v.items()}


def evaluate(f: Vec, a: Vec) -> Fraction:
    """Exact pairing of a functional with an algebra element."""
    if len(f) > len(a):
        f, a = a, f
    return sum((c * a[k] for k, c in f.items() if k in a), Fraction(0))


def basis_vec(i: int) -> Vec:
    return {i: Fraction(1)}


# -- algebras ----------------------------------------------------------------

@dataclass
class Algebra:
    """Unital associative algebra presented by structure constants.

    ``table[(i, j)]`` is the sparse vector ``e_i * e_j``; missing pairs
    multiply to zero.
    """

    dim: int
    table: dict
    unit: Vec
    basis_names: list = field(default_factory=list)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("an algebra needs dimension >= 1")
        if not self.basis_names:
            self.basis_names = [f"e{i}" for i in range(self.dim)]
        if len(self.basis_names) != self.dim:
            raise ValueError("basis_names length must equal dim")
        self.table = {k: vec(v) for k, v in self.table.items() if vec(v)}
        self.unit = vec(self.unit)

    def product(self, i: int, j: int) -> Vec:
        return self.table.get((i, j), {})

    def name(self, i: int) -> str:
        return self.basis_names[i]

    def check_index(self, v: dict) -> None:
        for k in v:
            if not 0 <= k < self.dim:
                raise ValueError(f"index {k} out of range for dimension {self.dim}")


def truncated_polynomial_algebra(m: int, var: str = "t") -> Algebra:
    """The algebra Q[t]/(t^m) with basis 1, t, ..., t^(m-1)."""
    table = {(i, j): {i + j: 1} for i in range(m) for j in range(m) if i + j < m}
    names = ["1", var] + [f"{var}^{p}" for p in range(2, m)]
    return Algebra(m, table, {0: 1}, names[:m])


def mul(alg: Algebra, a: Vec, b: Vec) -> Vec:
    """Bilinear extension of the structure constants."""
    alg.check_index(a)
    alg.check_index(b)
    out: Vec = {}
    for i, x in a.items():
        for j, y in b.items():
            add_into(out, alg.product(i, j), x * y)
    return out


def validate_algebra(alg: Algebra) -> CheckReport:
    """List failed associativity triples and unit failures (empty = valid)."""
    report = CheckReport("algebra")
    n = alg.dim
    for i, j, k in product(range(n), repeat=3):
        report.checked += 1
        left = mul(alg, alg.product(i, j), basis_vec(k))
        right = mul(alg, basis_vec(i), alg.product(j, k))
        if left != right:
            report.add(("associativity", (i, j, k)))
    if not alg.unit:
        report.add(("unit", "unit vector is zero"))
    for i in range(n):
        report.checked += 1
        e = basis_vec(i)
        if mul(alg, alg.unit, e) != e:
            report.add(("unit", ("left", i)))
        if mul(alg, e, alg.unit) != e:
            report.add(("unit", ("right", i)))
    return report


def dual_action(alg: Algebra, a: Vec, f: Vec, b: Vec) -> Vec:
    """The functional ``a . tf . b``, i.e. ``c -> f(b c a)``."""
    out: Vec = {}
    for k in range(alg.dim):
        val = evaluate(f, mul(alg, mul(alg, b, basis_vec(k)), a))
        if val:
            out[k] = val
    return out


# -- the graded space ∂A -----------------------------------------------------

def phi(alg_part: Vec | None = None, dual_part: Vec | None = None) -> Phi:
    out: Phi = {}
    for k, c in (alg_part or {}).items():
        if c:
            out[(0, k)] = Fraction(c)
    for k, c in (dual_part or {}).items():
        if c:
            out[(1, k)] = Fraction(c)
    return out


def split_phi(x: Phi) -> tuple[Vec, Vec]:
    a = {k: c for (p, k), c in x.items() if p == 0}
    f = {k: c for (p, k), c in x.items() if p == 1}
    return a, f


def natural_form(x: Phi, y: Phi) -> Fraction:
    """g(tf, a) = g(a, tf) = f(a); g vanishes on A x A and on duals x duals."""
    xa, xf = split_phi(x)
    ya, yf = split_phi(y)
    return evaluate(xf, ya) + evaluate(yf, xa)


def m2_phi(alg: Algebra, x: Phi, y: Phi) -> Phi:
    """(a, tf) . (a', tf') = (a a', tf . a' + a . tf')."""
    xa, xf = split_phi(x)
    ya, yf = split_phi(y)
    one = alg.unit
    dual = add_into(dual_action(alg, one, xf, ya), dual_action(alg, xa, yf, one))
    return phi(mul(alg, xa, ya), dual)


# -- tuples of homogeneous elements and graded permutations ------------------

@dataclass(frozen=True)
class MixedTuple:
    """A tuple of homogeneous ∂A elements.

    ``parity[i]`` is 0 when ``slots[i]`` is an algebra element and 1 when it
    is a (shifted) functional; slots are sparse vectors in both cases.
    """

    parity: tuple
    slots: tuple

    def __post_init__(self):
        if len(self.parity) != len(self.slots):
            raise ValueError("parity and slots must have equal length")
        if any(p not in (0, 1) for p in self.parity):
            raise ValueError("parities must be 0 or 1")

    @classmethod
    def of(cls, *items: tuple[int, Vec]) -> "MixedTuple":
        return cls(tuple(p for p, _ in items), tuple(dict(v) for _, v in items))

    @classmethod
    def basis(cls, keys: Sequence[tuple[int, int]]) -> "MixedTuple":
        return cls(tuple(p for p, _ in keys), tuple(basis_vec(i) for _, i in keys))

    def __len__(self) -> int:
        return len(self.parity)

    @property
    def degree(self) -> int:
        return sum(self.parity)

    def items(self):
        return zip(self.parity, self.slots)

    def to_phi(self) -> list[Phi]:
        return [phi(v) if p == 0 else phi(None, v) for p, v in self.items()]

    def replace(self, i: int, parity: int, slot: Vec) -> "MixedTuple":
        return MixedTuple(self.parity[:i] + (parity,) + self.parity[i + 1:],
                          self.slots[:i] + (slot,) + self.slots[i + 1:])


def koszul_sign(sigma: Sequence[int], parity: Sequence[int]) -> int:
    """Sign of the graded action of ``sigma`` on a tuple of the given parities.

    ``sigma`` is in one-line notation on 0-based positions
    (``sigma[i]`` is the image of ``i``).  Position ``i`` of the result holds
    the entry from ``sigma^{-1}(i)``; the sign collects ``|v||w|`` for every
    pair of entries whose relative order is inverted.
    """
    n = len(sigma)
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s] = i
    eps = 0
    for i in range(n):
        for j in range(i + 1, n):
            if inv[i] > inv[j]:
                eps += parity[inv[i]] * parity[inv[j]]
    return -1 if eps % 2 else 1


def permute_graded(sigma: Sequence[int], tup: MixedTuple) -> tuple[MixedTuple, int]:
    n = len(tup)
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{sigma!r} is not a permutation of size {n}")
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s] = i
    out = MixedTuple(tuple(tup.parity[inv[i]] for i in range(n)),
                     tuple(tup.slots[inv[i]] for i in range(n)))
    return out, koszul_sign(sigma, tup.parity)
