"""Double brackets on a finite-dimensional algebra and the (quasi-)Poisson tests.

Tensors in ``A^{⊗n}`` are sparse maps ``{(i1, ..., in): Fraction}`` over
basis index tuples.  The cyclic permutation ``σ`` sending 1 to 2 acts by
``σ(v1 ⊗ v2 ⊗ v3) = v3 ⊗ v1 ⊗ v2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import Algebra, Vec, add_into, basis_vec, mul, vec
from .report import CheckReport

Tensor = dict  # {tuple[int, ...]: Fraction}

__all__ = [
    "DoubleBracket",
    "eval_bracket",
    "check_db1",
    "check_db2",
    "triple_bracket",
    "e_derivation",
    "mu_e3_bracket",
    "e3_closed_form",
    "is_double_poisson",
    "is_quasi_poisson",
    "tensor_product",
    "flip",
    "cyclic_shift",
    "monogenic_bracket",
]


@dataclass
class DoubleBracket:
    """A double bracket given on basis pairs: ``table[(i, j)] = ⦃e_i, e_j⦄``."""

    alg: Algebra
    table: dict
    tau: Fraction = Fraction(0)

    def __post_init__(self):
        self.tau = Fraction(self.tau)
        clean = {}
        for key, t in self.table.items():
            t = vec(t)
            if t:
                clean[key] = t
        self.table = clean

    def on_basis(self, i: int, j: int) -> Tensor:
        return self.table.get((i, j), {})

    def with_tau(self, tau) -> "DoubleBracket":
        return DoubleBracket(self.alg, self.table, Fraction(tau))


# -- tensor helpers ----------------------------------------------------------

def tensor_product(*vectors: Vec) -> Tensor:
    out: Tensor = {}
    for combo in product(*(v.items() for v in vectors)):
        c = Fraction(1)
        for _, x in combo:
            c *= x
        if c:
            key = tuple(k for k, _ in combo)
            out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c}


def flip(t: Tensor) -> Tensor:
    return {(k[1], k[0]): c for k, c in t.items()}


def cyclic_shift(t: Tensor, power: int = 1) -> Tensor:
    """Apply ``σ^power`` with ``σ(v1 ⊗ ... ⊗ vn) = vn ⊗ v1 ⊗ ... ⊗ v(n-1)``."""
    out: Tensor = {}
    for k, c in t.items():
        n = len(k)
        p = power % n
        out[k[n - p:] + k[:n - p] if p else k] = c
    return out


def outer_left(alg: Algebra, x: Vec, t: Tensor) -> Tensor:
    """``x (u ⊗ ... ) = x u ⊗ ...``"""
    out: Tensor = {}
    for key, c in t.items():
        for i, xi in x.items():
            for k, ck in alg.product(i, key[0]).items():
                add_into(out, {(k,) + key[1:]: 1}, c * xi * ck)
    return out


def outer_right(alg: Algebra, t: Tensor, y: Vec) -> Tensor:
    """``( ... ⊗ v) y = ... ⊗ v y``"""
    out: Tensor = {}
    for key, c in t.items():
        for j, yj in y.items():
            for k, ck in alg.product(key[-1], j).items():
                add_into(out, {key[:-1] + (k,): 1}, c * yj * ck)
    return out


# -- evaluation and axioms ---------------------------------------------------

def eval_bracket(db: DoubleBracket, a: Vec, b: Vec) -> Tensor:
    """Bilinear extension of the table."""
    db.alg.check_index(a)
    db.alg.check_index(b)
    out: Tensor = {}
    for i, x in a.items():
        for j, y in b.items():
            add_into(out, db.on_basis(i, j), x * y)
    return out


def check_db1(db: DoubleBracket) -> CheckReport:
    """Skew-symmetry ``⦃e_i, e_j⦄ = -flip ⦃e_j, e_i⦄`` on all basis pairs."""
    report = CheckReport("db1")
    n = db.alg.dim
    for i, j in product(range(n), repeat=2):
        report.checked += 1
        if add_into(dict(db.on_basis(i, j)), flip(db.on_basis(j, i))):
            report.add((i, j))
    return report


def check_db2(db: DoubleBracket) -> CheckReport:
    """Leibniz rule in the second argument for the outer bimodule structure."""
    report = CheckReport("db2")
    alg = db.alg
    n = alg.dim
    for i, j, k in product(range(n), repeat=3):
        report.checked += 1
        lhs = eval_bracket(db, basis_vec(i), alg.product(j, k))
        rhs = outer_left(alg, basis_vec(j), db.on_basis(i, k))
        add_into(rhs, outer_right(alg, db.on_basis(i, j), basis_vec(k)))
        if lhs != rhs:
            report.add((i, j, k))
    return report


def _bracket_left(db: DoubleBracket, x: Vec, t: Tensor) -> Tensor:
    """``⦃x, u ⊗ v⦄_L = ⦃x, u⦄ ⊗ v``"""
    out: Tensor = {}
    for (u, v), c in t.items():
        for (p, q), d in eval_bracket(db, x, basis_vec(u)).items():
            key = (p, q, v)
            val = out.get(key, 0) + c * d
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def triple_bracket(db: DoubleBracket, c: Vec, b: Vec, a: Vec) -> Tensor:
    """⦃c, ⦃b, a⦄⦄_L + σ⦃b, ⦃a, c⦄⦄_L + σ²⦃a, ⦃c, b⦄⦄_L."""
    out = _bracket_left(db, c, eval_bracket(db, b, a))
    add_into(out, cyclic_shift(_bracket_left(db, b, eval_bracket(db, a, c)), 1))
    add_into(out, cyclic_shift(_bracket_left(db, a, eval_bracket(db, c, b)), 2))
    return out


def e_derivation(alg: Algebra, a: Vec) -> Tensor:
    """E(a) = a ⊗ 1 - 1 ⊗ a."""
    out = tensor_product(a, alg.unit)
    add_into(out, tensor_product(alg.unit, a), -1)
    return out


def _tilde_e3(alg: Algebra, a1: Vec, a2: Vec, a3: Vec) -> Tensor:
    # δ3'(a3)δ1''(a1) ⊗ δ1'(a1)δ2''(a2) ⊗ δ2'(a2)δ3''(a3) with every δ = E
    e1, e2, e3 = (e_derivation(alg, x) for x in (a1, a2, a3))
    out: Tensor = {}
    for (p1, q1), c1 in e1.items():
        for (p2, q2), c2 in e2.items():
            for (p3, q3), c3 in e3.items():
                c = c1 * c2 * c3
                first = alg.product(p3, q1)
                second = alg.product(p1, q2)
                third = alg.product(p2, q3)
                add_into(out, tensor_product(first, second, third), c)
    return out


def mu_e3_bracket(alg: Algebra, c: Vec, b: Vec, a: Vec) -> Tensor:
    """The triple bracket ⦃c, b, a⦄_{E³} from the cyclic-sum formula (n = 3)."""
    args = (c, b, a)
    out: Tensor = {}
    for i in range(3):
        # σ^{-i} on the arguments: σ^{-1}(v1 ⊗ v2 ⊗ v3) = v2 ⊗ v3 ⊗ v1
        rotated = args[i:] + args[:i]
        add_into(out, cyclic_shift(_tilde_e3(alg, *rotated), i))
    return out


def e3_closed_form(alg: Algebra, c: Vec, b: Vec, a: Vec) -> Tensor:
    """(1/12) ⦃c, b, a⦄_{E³} written out as eight tensors."""
    one = alg.unit
    ac, cb, ba = mul(alg, a, c), mul(alg, c, b), mul(alg, b, a)
    terms = [
        (1, (ac, b, one)), (-1, (ac, one, b)), (-1, (a, cb, one)), (1, (a, c, b)),
        (1, (c, one, ba)), (-1, (c, b, a)), (1, (one, cb, a)), (-1, (one, c, ba)),
    ]
    out: Tensor = {}
    for sign, vs in terms:
        add_into(out, tensor_product(*vs), Fraction(sign, 4))
    return out


def is_double_poisson(db: DoubleBracket) -> CheckReport:
    """Double Jacobi identity: the triple bracket vanishes on all basis triples."""
    report = CheckReport("double_poisson")
    n = db.alg.dim
    for i, j, k in product(range(n), repeat=3):
        report.checked += 1
        value = triple_bracket(db, basis_vec(i), basis_vec(j), basis_vec(k))
        if value:
            report.add(((i, j, k), value))
    return report


def is_quasi_poisson(db: DoubleBracket, tau=None) -> CheckReport:
    """Triple bracket equals ``tau * e3_closed_form`` on all basis triples."""
    tau = db.tau if tau is None else Fraction(tau)
    report = CheckReport("quasi_poisson")
    alg = db.alg
    n = alg.dim
    for i, j, k in product(range(n), repeat=3):
        report.checked += 1
        c, b, a = basis_vec(i), basis_vec(j), basis_vec(k)
        defect = triple_bracket(db, c, b, a)
        add_into(defect, e3_closed_form(alg, c, b, a), -tau)
        if defect:
            report.add(((i, j, k), defect))
    return report


def monogenic_bracket(alg: Algebra, value: Tensor, power_of) -> dict:
    """Extend ``⦃g, g⦄ = value`` to a basis table via Leibniz and skew-symmetry.

    ``power_of[p]`` is the basis index of ``g^p``; the powers of the
    generator ``g`` must form the basis.
    """
    def left_gen(q: int) -> Tensor:
        # ⦃g, g^q⦄ = sum_s g^s ⦃g, g⦄ g^(q-1-s)
        out: Tensor = {}
        for s in range(q):
            left = basis_vec(power_of[s])
            right = basis_vec(power_of[q - 1 - s])
            add_into(out, outer_right(alg, outer_left(alg, left, value), right))
        return out

    table = {}
    for p, ip in enumerate(power_of):
        # ⦃g^p, g⦄ = -flip ⦃g, g^p⦄
        pg = {k: -c for k, c in flip(left_gen(p)).items()}
        for q, iq in enumerate(power_of):
            out: Tensor = {}
            for s in range(q):
                left = basis_vec(power_of[s])
                right = basis_vec(power_of[q - 1 - s])
                add_into(out, outer_right(alg, outer_left(alg, left, pg), right))
            if out:
                table[(ip, iq)] = out
    return table
