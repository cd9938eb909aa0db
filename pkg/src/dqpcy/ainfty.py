"""The higher multiplications on ∂A = A ⊕ A^#[-1] built from a double bracket.

``m2`` is the square-zero extension product, ``m3`` is read off the double
bracket, and every even ``m_n`` (n >= 4) is defined through its pairing with
the natural form: a tuple of ``n + 1`` slots carrying two algebra elements
and ``n - 1`` functionals is rotated into the normal form
``<tf_1..tf_i, a, tg_1..tg_j, b>`` (``i < j``), the algebra elements are
absorbed into the neighbouring functionals, and the resulting all-functional
words are evaluated at the unit.  Odd ``m_n`` (n >= 5) and ``m_1`` vanish.

Elements of ∂A inside tuples are :class:`~dqpcy.algebra.MixedTuple` slots
(sparse vectors with a parity); results are ∂A vectors ``{(parity, i): c}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
import random

from .algebra import (Algebra, MixedTuple, Phi, Vec, add_into, basis_vec,
                      dual_action, evaluate, m2_phi, mul, natural_form, phi)
from .double_bracket import DoubleBracket, Tensor, eval_bracket, tensor_product
from .exact_arith import CCoeffTable
from .report import CheckReport

__all__ = [
    "AInfinityStructure",
    "CanonicalSplit",
    "canonicalize_cycle",
    "script_m",
    "ev",
    "m4_closed_form",
    "b_bar",
    "is_acceptable",
    "is_good",
    "rotate",
    "same_cycle",
]


# -- cyclic words ------------------------------------------------------------

def rotate(word: MixedTuple, r: int) -> MixedTuple:
    """``word[r:] + word[:r]``; rotations carry no Koszul sign on the words used here."""
    r %= max(len(word), 1)
    return MixedTuple(word.parity[r:] + word.parity[:r], word.slots[r:] + word.slots[:r])


def same_cycle(u: MixedTuple, v: MixedTuple) -> bool:
    if len(u) != len(v):
        return False
    return any(rotate(u, r) == v for r in range(len(u)))


@dataclass(frozen=True)
class CanonicalSplit:
    """``<f_block, a, g_block, b>`` obtained from a word by rotating ``rotation`` steps."""

    i: int
    j: int
    f_block: tuple
    a: Vec
    g_block: tuple
    b: Vec
    rotation: int

    def reassemble(self) -> MixedTuple:
        return MixedTuple((1,) * self.i + (0,) + (1,) * self.j + (0,),
                          self.f_block + (self.a,) + self.g_block + (self.b,))


def _split_positions(parity) -> tuple[int, int, int]:
    """Return (rotation, i, j) of the normal form for a parity word."""
    zeros = [k for k, p in enumerate(parity) if p == 0]
    if len(zeros) != 2:
        raise ValueError(f"expected exactly two algebra slots, got parity {tuple(parity)}")
    L = len(parity)
    if (L - 2) % 2 == 0:
        raise ValueError(f"the number of functionals must be odd, got parity {tuple(parity)}")
    p, q = zeros
    inside = q - p - 1
    outside = L - 2 - inside
    if inside > outside:
        # the long block sits between p and q; the short one ends just before p
        return (p - outside) % L, outside, inside
    return (q - inside) % L, inside, outside


def canonicalize_cycle(word: MixedTuple) -> CanonicalSplit:
    """Rotate a word with two algebra slots and an odd number of functionals into normal form."""
    r, i, j = _split_positions(word.parity)
    w = rotate(word, r)
    return CanonicalSplit(i, j, w.slots[:i], w.slots[i], w.slots[i + 1:i + 1 + j],
                          w.slots[i + 1 + j], r)


def ev(alg: Algebra, word) -> Fraction:
    """Evaluate an all-functional word of odd length at the unit: prod f_k(1)."""
    slots = word.slots if isinstance(word, MixedTuple) else tuple(word)
    if isinstance(word, MixedTuple) and any(word.parity):
        if not all(word.parity):
            raise ValueError("ev takes words made of functionals only")
    if len(slots) < 3 or len(slots) % 2 == 0:
        raise ValueError("ev takes words of odd length >= 3")
    out = Fraction(1)
    for f in slots:
        out *= evaluate(f, alg.unit)
        if not out:
            break
    return out


def script_m(alg: Algebra, split: CanonicalSplit, coeffs: CCoeffTable) -> list:
    """The combination of all-functional words attached to a normal-form word.

    Returns ``[(coefficient, (f_1, ..., f_k)), ...]`` with the algebra
    elements already absorbed into their neighbours.
    """
    i, j = split.i, split.j
    if (i + j) % 2 == 0 or i + j < 3:
        raise ValueError("script_m needs i + j odd and >= 3")
    if i == 0:
        return []
    one = alg.unit
    F, G, a, b = list(split.f_block), list(split.g_block), split.a, split.b

    def act(x, f, y):
        return dual_action(alg, x, f, y)

    if i == 1:
        f1 = F[0]
        words = [
            (1, [act(one, f1, a)] + G[:-1] + [act(one, G[-1], b)]),
            (1, [act(b, f1, one), act(a, G[0], one)] + G[1:]),
            (-1, [f1, act(a, G[0], one)] + G[1:-1] + [act(one, G[-1], b)]),
            (-1, [act(b, f1, a)] + G),
        ]
    else:
        words = [
            (1, F[:-1] + [act(one, F[-1], a)] + G[:-1] + [act(one, G[-1], b)]),
            (1, [act(b, F[0], one)] + F[1:] + [act(a, G[0], one)] + G[1:]),
            (-1, F + [act(a, G[0], one)] + G[1:-1] + [act(one, G[-1], b)]),
            (-1, [act(b, F[0], one)] + F[1:-1] + [act(one, F[-1], a)] + G),
        ]
    c = coeffs[i, j]
    return [(c * s, tuple(w)) for s, w in words] if c else []


# -- the structure -----------------------------------------------------------

def _is_active(n: int, tau) -> bool:
    """Arity of a possibly nonzero multiplication."""
    if n in (2, 3):
        return True
    return n >= 4 and n % 2 == 0 and bool(tau)


class AInfinityStructure:
    """The multiplications m_n on ∂A attached to a double bracket and tau.

    Evaluation is multilinear on :class:`MixedTuple` arguments; ``*_basis``
    variants take tuples of basis keys ``(parity, index)`` and are memoized.
    """

    def __init__(self, db: DoubleBracket, tau=None):
        self.db = db
        self.alg = db.alg
        self.tau = Fraction(db.tau if tau is None else tau)
        self.coeffs = CCoeffTable(self.tau)
        self._m_cache: dict = {}
        self._pair_cache: dict = {}
        self._unit_vals = [self.alg.unit.get(k, Fraction(0)) for k in range(self.alg.dim)]

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_m_cache"] = {}
        state["_pair_cache"] = {}
        return state

    @property
    def dim(self) -> int:
        return self.alg.dim

    def active_arities(self, up_to: int) -> list[int]:
        return [n for n in range(1, up_to + 1) if _is_active(n, self.tau)]

    # ---- general (multilinear) evaluation --------------------------------

    def pair(self, n: int, tup: MixedTuple) -> Fraction:
        """g(m_n(x_1, ..., x_n), x_{n+1}) for a tuple of length n + 1."""
        if len(tup) != n + 1:
            raise ValueError(f"pair for m_{n} needs {n + 1} slots, got {len(tup)}")
        if tup.degree != n - 1 or not _is_active(n, self.tau):
            return Fraction(0)
        if n >= 4:
            return self.pair_mn(n, tup)
        head = MixedTuple(tup.parity[:n], tup.slots[:n])
        last = tup.to_phi()[n]
        return natural_form(self.m(n, head), last)

    def pair_mn(self, n: int, tup: MixedTuple) -> Fraction:
        """Pairing of an even m_n (n >= 4): ev of the normal-form combination."""
        if n < 4 or n % 2:
            raise ValueError("pair_mn is defined for even n >= 4")
        if len(tup) != n + 1:
            raise ValueError(f"pair_mn needs {n + 1} slots, got {len(tup)}")
        if tup.degree != n - 1 or not self.tau:
            return Fraction(0)
        split = canonicalize_cycle(tup)
        if split.i == 0:
            return Fraction(0)
        return self._ev_script(split.i, split.j, split.f_block, split.a, split.g_block, split.b)

    def _ev_script(self, i, j, F, a, G, b) -> Fraction:
        """ev of script_m on a normal-form word, without building the words."""
        c = self.coeffs[i, j]
        if not c:
            return Fraction(0)
        alg, unit = self.alg, self.alg.unit

        def ones(block) -> Fraction:
            out = Fraction(1)
            for f in block:
                out *= evaluate(f, unit)
                if not out:
                    break
            return out

        fa_last = evaluate(F[-1], a)
        gb_last = evaluate(G[-1], b)
        ga_first = evaluate(G[0], a)
        fb_first = evaluate(F[0], b)
        if i == 1:
            t1 = fa_last * ones(G[:-1]) * gb_last if fa_last and gb_last else 0
            t2 = fb_first * ga_first * ones(G[1:]) if fb_first and ga_first else 0
            t3 = ones(F) * ga_first * ones(G[1:-1]) * gb_last if ga_first and gb_last else 0
            t4 = evaluate(F[0], mul(alg, a, b)) * ones(G)
        else:
            t1 = ones(F[:-1]) * fa_last * ones(G[:-1]) * gb_last if fa_last and gb_last else 0
            t2 = fb_first * ones(F[1:]) * ga_first * ones(G[1:]) if fb_first and ga_first else 0
            t3 = ones(F) * ga_first * ones(G[1:-1]) * gb_last if ga_first and gb_last else 0
            t4 = fb_first * ones(F[1:-1]) * fa_last * ones(G) if fb_first and fa_last else 0
        return c * (t1 + t2 - t3 - t4)

    def m(self, n: int, tup: MixedTuple) -> Phi:
        """m_n on n homogeneous slots, as a ∂A vector."""
        if len(tup) != n:
            raise ValueError(f"m_{n} needs {n} slots, got {len(tup)}")
        if not _is_active(n, self.tau):
            return {}
        if n == 2:
            x, y = tup.to_phi()
            return m2_phi(self.alg, x, y)
        if n == 3:
            return self._m3(tup)
        return self._mn_reconstruct(n, tup)

    def _m3(self, tup: MixedTuple) -> Phi:
        par = tup.parity
        if par == (0, 1, 0):
            b, g, a = tup.slots
            out: Vec = {}
            # m3(b, tg, a) = sum u g(v) over ⦃a, b⦄ = sum u ⊗ v
            for (u, v), c in eval_bracket(self.db, a, b).items():
                gv = g.get(v)
                if gv:
                    add_into(out, {u: c * gv})
            return phi(out)
        if par == (1, 0, 1):
            f, b, g = tup.slots
            out = {}
            for k in range(self.dim):
                val = Fraction(0)
                for (u, v), c in eval_bracket(self.db, basis_vec(k), b).items():
                    fu, gv = f.get(u), g.get(v)
                    if fu and gv:
                        val += c * fu * gv
                if val:
                    out[k] = val
            return phi(None, out)
        return {}

    def _mn_reconstruct(self, n: int, tup: MixedTuple) -> Phi:
        deg = tup.degree
        if deg == n - 2:
            out_parity, probe_parity = 0, 1
        elif deg == n - 1:
            out_parity, probe_parity = 1, 0
        else:
            return {}
        out: Phi = {}
        for k in range(self.dim):
            full = MixedTuple(tup.parity + (probe_parity,), tup.slots + (basis_vec(k),))
            val = self.pair_mn(n, full)
            if val:
                out[(out_parity, k)] = val
        return out

    # ---- memoized basis evaluation ---------------------------------------

    def m_basis(self, n: int, keys: tuple) -> Phi:
        cache_key = (n, keys)
        try:
            return self._m_cache[cache_key]
        except KeyError:
            pass
        if not _is_active(n, self.tau) or not self._degree_ok_m(n, keys):
            value = {}
        else:
            value = self.m(n, MixedTuple.basis(keys))
        self._m_cache[cache_key] = value
        return value

    @staticmethod
    def _degree_ok_m(n: int, keys) -> bool:
        d = sum(p for p, _ in keys)
        return d in (n - 2, n - 1)

    def pair_basis(self, n: int, keys: tuple) -> Fraction:
        cache_key = (n, keys)
        try:
            return self._pair_cache[cache_key]
        except KeyError:
            pass
        if sum(p for p, _ in keys) != n - 1 or not _is_active(n, self.tau):
            value = Fraction(0)
        elif n >= 4:
            value = self._pair_mn_basis(n, keys)
        else:
            out = self.m_basis(n, keys[:n])
            value = out.get((1 - keys[n][0], keys[n][1]), Fraction(0))
        self._pair_cache[cache_key] = value
        return value

    def _pair_mn_basis(self, n: int, keys: tuple) -> Fraction:
        """Index-level version of :meth:`pair_mn` for basis words."""
        r, i, j = _split_positions([p for p, _ in keys])
        if i == 0:
            return Fraction(0)
        w = [k for _, k in keys[r:] + keys[:r]]
        F, a, G, b = w[:i], w[i], w[i + 1:i + 1 + j], w[i + 1 + j]
        c = self.coeffs[i, j]
        unit = self._unit_vals
        alg = self.alg

        def ones(block):
            out = Fraction(1)
            for f in block:
                out *= unit[f]
                if not out:
                    break
            return out

        fa_last = F[-1] == a
        gb_last = G[-1] == b
        ga_first = G[0] == a
        fb_first = F[0] == b
        total = Fraction(0)
        if i == 1:
            if fa_last and gb_last:
                total += ones(G[:-1])
            if fb_first and ga_first:
                total += ones(G[1:])
            if ga_first and gb_last:
                total -= ones(F) * ones(G[1:-1])
            fab = alg.product(a, b).get(F[0])
            if fab:
                total -= fab * ones(G)
        else:
            if fa_last and gb_last:
                total += ones(F[:-1]) * ones(G[:-1])
            if fb_first and ga_first:
                total += ones(F[1:]) * ones(G[1:])
            if ga_first and gb_last:
                total -= ones(F) * ones(G[1:-1])
            if fb_first and fa_last:
                total -= ones(F[1:-1]) * ones(G)
        return c * total

    def mn(self, n: int, tup: MixedTuple) -> Phi:
        """Alias of :meth:`m` kept for the even higher multiplications."""
        return self.m(n, tup)

    def clear_cache(self) -> None:
        self._m_cache.clear()
        self._pair_cache.clear()


# -- closed-form oracles -----------------------------------------------------

def m4_closed_form(alg: Algebra, tau, pattern: str, x1: Vec, x2: Vec, x3: Vec, x4: Vec) -> Phi:
    """The three displayed closed forms of m_4 (values in A).

    ``pattern`` is one of ``"1010"`` (tf, b, tg, c), ``"0101"`` (a, tf, b, tg)
    and ``"0110"`` (a, tf, tg, c).
    """
    one = alg.unit
    k = Fraction(tau) / 12
    ev1 = lambda f: evaluate(f, one)  # noqa: E731
    if pattern == "1010":
        f, b, g, c = x1, x2, x3, x4
        terms = [(evaluate(f, b) * evaluate(g, c), one),
                 (ev1(f) * evaluate(g, b), c),
                 (-evaluate(f, b) * ev1(g), c),
                 (-ev1(f) * evaluate(g, mul(alg, c, b)), one)]
    elif pattern == "0101":
        a, f, b, g = x1, x2, x3, x4
        terms = [(evaluate(f, b) * ev1(g), a),
                 (evaluate(f, a) * evaluate(g, b), one),
                 (-ev1(f) * evaluate(g, b), a),
                 (-evaluate(f, mul(alg, b, a)) * ev1(g), one)]
    elif pattern == "0110":
        a, f, g, c = x1, x2, x3, x4
        terms = [(ev1(f) * evaluate(g, c), a),
                 (evaluate(f, a) * ev1(g), c),
                 (-evaluate(f, a) * evaluate(g, c), one),
                 (-ev1(f) * ev1(g), mul(alg, a, c))]
    else:
        raise ValueError(f"unknown m4 pattern {pattern!r}")
    out: Vec = {}
    for coeff, v in terms:
        add_into(out, v, k * coeff)
    return phi(out)


def b_bar(struct: AInfinityStructure, n: int, ell: int, a: Vec, b: Vec) -> Tensor:
    """The tensors b_j (in A^{⊗(n-1)}) representing m_n on (a, f.., b, f..).

    ``ell`` is the number of functionals between ``a`` and ``b``.
    """
    if n < 3 or not 0 <= ell <= n - 2:
        raise ValueError(f"need n >= 3 and 0 <= ell <= n - 2, got n={n}, ell={ell}")
    alg = struct.alg
    one = alg.unit
    if ell == 0:
        return {}
    if n == 3:
        return {k: -c for k, c in eval_bracket(struct.db, a, b).items()}
    if n % 2:
        return {}

    def t(*vs):
        return tensor_product(*vs)

    ones = lambda m: [one] * m  # noqa: E731
    out: Tensor = {}
    if ell == 1:
        c = struct.coeffs[1, n - 2]
        add_into(out, t(a, b, *ones(n - 3)), c)
        add_into(out, t(mul(alg, b, a), *ones(n - 2)), -c)
        add_into(out, t(b, *ones(n - 3), a), c)
        add_into(out, t(one, b, *ones(n - 4), a), -c)
    elif ell == n - 2:
        c = struct.coeffs[1, n - 2]
        add_into(out, t(a, *ones(n - 3), b), c)
        add_into(out, t(a, *ones(n - 4), b, one), -c)
        add_into(out, t(*ones(n - 3), b, a), c)
        add_into(out, t(*ones(n - 2), mul(alg, a, b)), -c)
    else:
        c = struct.coeffs[ell, n - ell - 1]
        # a ⊗ 1^(ell-2) ⊗ (1⊗b - b⊗1) ⊗ 1^(n-ell-2)
        add_into(out, t(a, *ones(ell - 2), one, b, *ones(n - ell - 2)), c)
        add_into(out, t(a, *ones(ell - 2), b, one, *ones(n - ell - 2)), -c)
        # - 1^(ell-1) ⊗ (1⊗b - b⊗1) ⊗ 1^(n-ell-3) ⊗ a
        add_into(out, t(*ones(ell - 1), one, b, *ones(n - ell - 3), a), -c)
        add_into(out, t(*ones(ell - 1), b, one, *ones(n - ell - 3), a), c)
    return out


# -- support conditions ------------------------------------------------------

def _basis_tuples(struct, parity, limit, rng):
    dim = struct.dim
    total = dim ** len(parity)
    if total <= limit:
        for idx in product(range(dim), repeat=len(parity)):
            yield tuple(zip(parity, idx))
    else:
        for _ in range(limit):
            yield tuple((p, rng.randrange(dim)) for p in parity)


def _alternating(parity) -> bool:
    return all(parity[k] != parity[k + 1] for k in range(len(parity) - 1))


def is_acceptable(struct: AInfinityStructure, n: int, limit: int = 20000, seed: int = 0) -> CheckReport:
    """m_n vanishes on patterns with two adjacent algebra slots, and on
    patterns with n - 1 functionals whose first or last slot is an algebra slot.

    For n = 2 only the parity bookkeeping of the product is checked: algebra
    times algebra lands in A, mixed products land in the dual, and two
    functionals multiply to zero.
    """
    report = CheckReport(f"acceptable(m{n})")
    rng = random.Random(seed)
    for parity in product((0, 1), repeat=n):
        if n == 2:
            for keys in _basis_tuples(struct, parity, limit, rng):
                report.checked += 1
                out = struct.m_basis(2, keys)
                expect = sum(parity)
                if any(p != expect for p, _ in out) or (expect == 2 and out):
                    report.add(keys)
            continue
        adjacent = any(parity[k] == parity[k + 1] == 0 for k in range(n - 1))
        edge = sum(parity) == n - 1 and parity[0] * parity[-1] == 0
        if not (adjacent or edge):
            continue
        for keys in _basis_tuples(struct, parity, limit, rng):
            report.checked += 1
            if struct.m_basis(n, keys):
                report.add(keys)
    return report


def is_good(struct: AInfinityStructure, n: int, limit: int = 20000, seed: int = 0) -> CheckReport:
    """For odd n: m_n vanishes off alternating patterns and maps B_{i1} ⊗ ... into B_{i1}."""
    if n % 2 == 0:
        raise ValueError("goodness is defined for odd n")
    report = CheckReport(f"good(m{n})")
    rng = random.Random(seed)
    for parity in product((0, 1), repeat=n):
        alternating = _alternating(parity)
        for keys in _basis_tuples(struct, parity, limit, rng):
            report.checked += 1
            out = struct.m_basis(n, keys)
            if not out:
                continue
            if not alternating or any(p != parity[0] for p, _ in out):
                report.add(keys)
    return report
