"""Stasheff identities, cyclicity and the pre-Calabi-Yau conditions.

SI(N) is evaluated in its paired form

    SI(N)(x_1, ..., x_{N+1}) = sum over r + s + t = N of
        (-1)^(r + s t + s (|x_1| + ... + |x_r|))
        g(m_{r+1+t}(x_1, ..., x_r, m_s(x_{r+1}, ...), ..., x_N), x_{N+1})

and only tuples with ``N - 2`` functionals can be nonzero.  Exhaustive runs
walk basis tuples through the memoized basis evaluators; sampled runs feed
random rational combinations through the multilinear ones.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
import multiprocessing

from .ainfty import AInfinityStructure, b_bar
from .algebra import MixedTuple, Phi
from .report import CheckReport

__all__ = [
    "SIReport",
    "si_gamma",
    "si_basis",
    "verify_si",
    "verify_cyclicity",
    "verify_cyclic_reduction",
    "verify_pcy",
    "parity_patterns",
    "random_tuple",
    "default_jobs",
    "EXHAUSTIVE_BUDGET",
]

EXHAUSTIVE_BUDGET = 10 ** 8


@dataclass
class SIReport:
    N: int
    mode: str
    tuples_checked: int = 0
    violations: list = field(default_factory=list)
    violation_count: int = 0
    elapsed: float = 0.0
    degree_spot_checks: int = 0
    max_witnesses: int = 20

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def add(self, tup, value) -> None:
        self.violation_count += 1
        if len(self.violations) < self.max_witnesses:
            self.violations.append((tup, value))


# -- evaluation --------------------------------------------------------------

def _sign(r: int, s: int, t: int, prefix_degree: int) -> int:
    return -1 if (r + s * t + s * prefix_degree) % 2 else 1


def si_basis(struct: AInfinityStructure, N: int, keys: tuple) -> Fraction:
    """SI(N) on a tuple of ``N + 1`` basis keys ``(parity, index)``."""
    if len(keys) != N + 1:
        raise ValueError(f"SI({N}) needs {N + 1} slots, got {len(keys)}")
    par = [p for p, _ in keys]
    prefix = [0]
    for p in par:
        prefix.append(prefix[-1] + p)
    if prefix[-1] != N - 2:
        return Fraction(0)
    tau = struct.tau
    total = Fraction(0)
    for s in range(1, N + 1):
        if not struct_active(s, tau):
            continue
        outer = N - s + 1
        if not struct_active(outer, tau):
            continue
        for r in range(N - s + 1):
            inner_deg = prefix[r + s] - prefix[r]
            if inner_deg not in (s - 2, s - 1):
                continue
            inner = struct.m_basis(s, keys[r:r + s])
            if not inner:
                continue
            t = N - s - r
            sign = _sign(r, s, t, prefix[r])
            head, tail = keys[:r], keys[r + s:]
            acc = Fraction(0)
            for key, c in inner.items():
                v = struct.pair_basis(outer, head + (key,) + tail)
                if v:
                    acc += c * v
            if acc:
                total += sign * acc
    return total


def struct_active(n: int, tau) -> bool:
    if n in (2, 3):
        return True
    return n >= 4 and n % 2 == 0 and bool(tau)


def si_gamma(struct: AInfinityStructure, N: int, tup: MixedTuple) -> Fraction:
    """SI(N) on a tuple of homogeneous (not necessarily basis) elements."""
    if len(tup) != N + 1:
        raise ValueError(f"SI({N}) needs {N + 1} slots, got {len(tup)}")
    par = tup.parity
    prefix = [0]
    for p in par:
        prefix.append(prefix[-1] + p)
    total = Fraction(0)
    for s in range(1, N + 1):
        outer = N - s + 1
        if not (struct_active(s, struct.tau) and struct_active(outer, struct.tau)):
            continue
        for r in range(N - s + 1):
            t = N - s - r
            inner = struct.m(s, MixedTuple(par[r:r + s], tup.slots[r:r + s]))
            if not inner:
                continue
            sign = _sign(r, s, t, prefix[r])
            for p in (0, 1):
                part = {k: c for (q, k), c in inner.items() if q == p}
                if not part:
                    continue
                outer_tup = MixedTuple(par[:r] + (p,) + par[r + s:],
                                       tup.slots[:r] + (part,) + tup.slots[r + s:])
                total += sign * struct.pair(outer, outer_tup)
    return total


# -- enumeration helpers -----------------------------------------------------

def parity_patterns(length: int, ones: int):
    """All parity words of the given length with exactly ``ones`` functionals."""
    if ones < 0 or ones > length:
        return
    for pos in combinations(range(length), ones):
        word = [0] * length
        for q in pos:
            word[q] = 1
        yield tuple(word)


def random_vector(rng: random.Random, dim: int) -> dict:
    while True:
        out = {}
        for k in range(dim):
            c = Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
            if c:
                out[k] = c
        if out:
            return out


def random_tuple(rng: random.Random, dim: int, parity) -> MixedTuple:
    return MixedTuple(tuple(parity), tuple(random_vector(rng, dim) for _ in parity))


def default_jobs() -> int:
    env = os.environ.get("DQP_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"DQP_JOBS must be a positive integer, got {env!r}") from None
    return os.cpu_count() or 1


# -- parallel plumbing -------------------------------------------------------

_WORKER_STRUCT: AInfinityStructure | None = None


def _init_worker(struct: AInfinityStructure) -> None:
    global _WORKER_STRUCT
    _WORKER_STRUCT = struct


def _si_chunk(args):
    N, pattern, first, max_witnesses = args
    struct = _WORKER_STRUCT
    dim = struct.dim
    checked = 0
    count = 0
    found = []
    for rest in product(range(dim), repeat=len(pattern) - 1):
        keys = tuple(zip(pattern, (first,) + rest))
        checked += 1
        v = si_basis(struct, N, keys)
        if v:
            count += 1
            if len(found) < max_witnesses:
                found.append((keys, v))
    return checked, count, found


def _run_chunks(struct, func, chunks, jobs):
    if jobs <= 1 or len(chunks) <= 1:
        _init_worker(struct)
        return [func(c) for c in chunks]
    ctx = multiprocessing.get_context("fork") if hasattr(os, "fork") else None
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx,
                             initializer=_init_worker, initargs=(struct,)) as pool:
        return list(pool.map(func, chunks, chunksize=1))


# -- SI ----------------------------------------------------------------------

def _exhaustive_cost(dim: int, N: int) -> int:
    patterns = sum(1 for _ in parity_patterns(N + 1, N - 2))
    return (2 * dim) ** (N + 1) * max(patterns, 1)


def verify_si(struct: AInfinityStructure, n_max: int, mode: str = "auto", samples: int = 1000,
              seed: int = 0, jobs: int = 1, n_min: int = 1, spot_checks: int = 20,
              budget: int = EXHAUSTIVE_BUDGET) -> list[SIReport]:
    """Check SI(N) for ``n_min <= N <= n_max``; one report per N.

    ``mode`` is ``"exhaustive"``, ``"sampled"`` or ``"auto"`` (exhaustive while
    ``(2 dim)^(N+1) * patterns`` stays within ``budget``).
    """
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    reports = []
    for N in range(n_min, n_max + 1):
        chosen = mode
        if mode == "auto":
            chosen = "exhaustive" if _exhaustive_cost(struct.dim, N) <= budget else "sampled"
        start = time.perf_counter()
        if chosen == "exhaustive":
            rep = _si_exhaustive(struct, N, jobs)
        else:
            rep = _si_sampled(struct, N, samples, seed)
        _degree_spot_check(struct, N, rep, spot_checks, seed)
        rep.elapsed = time.perf_counter() - start
        reports.append(rep)
    return reports


def _si_exhaustive(struct, N, jobs) -> SIReport:
    rep = SIReport(N, "exhaustive")
    if N < 2:
        return rep
    chunks = [(N, pat, first, rep.max_witnesses)
              for pat in parity_patterns(N + 1, N - 2)
              for first in range(struct.dim)]
    for checked, count, found in _run_chunks(struct, _si_chunk, chunks, jobs):
        rep.tuples_checked += checked
        rep.violation_count += count
        for keys, v in found:
            if len(rep.violations) < rep.max_witnesses:
                rep.violations.append((keys, v))
    return rep


def _si_sampled(struct, N, samples, seed) -> SIReport:
    rep = SIReport(N, "sampled")
    if N < 2:
        return rep
    rng = random.Random(f"si-{seed}-{N}")
    patterns = list(parity_patterns(N + 1, N - 2))
    for _ in range(samples):
        tup = random_tuple(rng, struct.dim, rng.choice(patterns))
        rep.tuples_checked += 1
        v = si_gamma(struct, N, tup)
        if v:
            rep.add(tup, v)
    return rep


def _degree_spot_check(struct, N, rep, count, seed) -> None:
    """A few basis tuples of the wrong degree must give zero."""
    rng = random.Random(f"deg-{seed}-{N}")
    for _ in range(count):
        ones = rng.choice([d for d in range(N + 2) if d != N - 2])
        pattern = rng.choice(list(parity_patterns(N + 1, ones)))
        keys = tuple((p, rng.randrange(struct.dim)) for p in pattern)
        rep.degree_spot_checks += 1
        v = si_gamma(struct, N, MixedTuple.basis(keys))
        if v:
            rep.add(keys, v)


# -- cyclicity and cyclic reduction ------------------------------------------

def _cyc_chunk(args):
    n, pattern = args
    struct = _WORKER_STRUCT
    report = CheckReport(f"cyclicity(m{n})")
    for idx in product(range(struct.dim), repeat=n + 1):
        keys = tuple(zip(pattern, idx))
        # keys = (a_1, ..., a_n, a_0)
        a0 = keys[-1]
        rest = keys[:-1]
        lhs = struct.pair_basis(n, keys)
        rotated = (a0,) + rest[:-1] + (rest[-1],)
        rhs = struct.pair_basis(n, rotated)
        sign = -1 if (n + a0[0] * sum(p for p, _ in rest)) % 2 else 1
        report.checked += 1
        if lhs != sign * rhs:
            report.add((keys, lhs, rhs))
    return report


def verify_cyclicity(struct: AInfinityStructure, n_max: int = 8, arities=None,
                     jobs: int = 1) -> CheckReport:
    """g(m_n(a_1..a_n), a_0) = (-1)^(n + |a_0| sum |a_i|) g(m_n(a_0..a_{n-1}), a_n).

    Only tuples with ``n - 1`` functionals are enumerated; elsewhere both
    sides vanish by degree.
    """
    if arities is None:
        arities = [n for n in range(2, n_max + 1) if struct_active(n, struct.tau)]
    chunks = [(n, pat) for n in arities for pat in parity_patterns(n + 1, n - 1)]
    report = CheckReport("cyclicity")
    for part in _run_chunks(struct, _cyc_chunk, chunks, jobs):
        report.merge(part)
    return report


def verify_cyclic_reduction(struct: AInfinityStructure, N: int, trials: int = 50,
                            seed: int = 0) -> CheckReport:
    """SI(N)(a_1, ..., a_N, a_0) = (-1)^(N + |a_0| sum |a_i|) SI(N)(a_0, ..., a_N) on random tuples."""
    report = CheckReport(f"cyclic_reduction(N={N})")
    rng = random.Random(f"cr-{seed}-{N}")
    for trial in range(trials):
        if trial % 5 == 4:
            ones = rng.randrange(N + 2)
        else:
            ones = N - 2
        pattern = rng.choice(list(parity_patterns(N + 1, ones)))
        tup = random_tuple(rng, struct.dim, pattern)
        # tup is (a_1, ..., a_N, a_0)
        a0_par = tup.parity[-1]
        rotated = MixedTuple((a0_par,) + tup.parity[:-1], (tup.slots[-1],) + tup.slots[:-1])
        lhs = si_gamma(struct, N, tup)
        rhs = si_gamma(struct, N, rotated)
        sign = -1 if (N + a0_par * sum(tup.parity[:-1])) % 2 else 1
        report.checked += 1
        if lhs != sign * rhs:
            report.add((tup, lhs, rhs))
    return report


# -- pre-Calabi-Yau ----------------------------------------------------------

def _m_with_unit(struct, n, keys, pos) -> Phi:
    """m_n with the unit of A in slot ``pos`` and basis keys elsewhere."""
    out: Phi = {}
    for k, c in struct.alg.unit.items():
        full = keys[:pos] + ((0, k),) + keys[pos:]
        for key, v in struct.m_basis(n, full).items():
            val = out.get(key, 0) + c * v
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def verify_pcy(struct: AInfinityStructure, n_max: int = 8, unit_n_max: int | None = None) -> dict:
    """The pre-Calabi-Yau checks; returns a dict of named :class:`CheckReport` objects.

    * ``pcy1``: m_n of algebra elements has no functional component.
    * ``pcy2``: the pairing of m_n on ``(a, f.., b, f..)`` equals the b_bar tensors paired with the functionals.
    * ``unit_pairing``: g(m_n(x_1..x_n), 1_A) = 0.
    * ``strict_unit``: 1_A is a two-sided unit for m_2 and m_n (n != 2) vanishes once an algebra slot is 1_A.
    """
    dim = struct.dim
    arities = [n for n in range(2, n_max + 1) if struct_active(n, struct.tau)]
    unit_n_max = n_max if unit_n_max is None else unit_n_max
    pcy1 = CheckReport("pcy1")
    for n in arities:
        for idx in product(range(dim), repeat=n):
            keys = tuple((0, i) for i in idx)
            pcy1.checked += 1
            out = struct.m_basis(n, keys)
            if any(p for p, _ in out):
                pcy1.add(keys)

    pcy2 = CheckReport("pcy2")
    for n in arities:
        if n < 3:
            continue
        for ell in range(n - 1):
            for a, b in product(range(dim), repeat=2):
                tensor = b_bar(struct, n, ell, {a: Fraction(1)}, {b: Fraction(1)})
                for fs in product(range(dim), repeat=n - 1):
                    keys = (((0, a),) + tuple((1, f) for f in fs[:ell]) + ((0, b),)
                            + tuple((1, f) for f in fs[ell:n - 2]) + ((1, fs[-1]),))
                    pcy2.checked += 1
                    lhs = tensor.get(fs, Fraction(0))
                    rhs = struct.pair_basis(n, keys)
                    if lhs != rhs:
                        pcy2.add((n, ell, keys, lhs, rhs))

    unit_pairing = CheckReport("unit_pairing")
    unit = struct.alg.unit
    for n in arities:
        for pattern in parity_patterns(n, n - 2):
            for idx in product(range(dim), repeat=n):
                keys = tuple(zip(pattern, idx))
                unit_pairing.checked += 1
                val = sum((c * struct.pair_basis(n, keys + ((0, k),)) for k, c in unit.items()),
                          Fraction(0))
                if val:
                    unit_pairing.add((keys, val))

    strict_unit = CheckReport("strict_unit")
    for p, i in product((0, 1), range(dim)):
        x = ((p, i),)
        strict_unit.checked += 1
        expect = {(p, i): Fraction(1)}
        if _m_with_unit(struct, 2, x, 0) != expect or _m_with_unit(struct, 2, x, 1) != expect:
            strict_unit.add(("m2", (p, i)))
    for n in arities:
        if n == 2 or n > unit_n_max:
            continue
        for ones in (n - 2, n - 1):
            for pattern in parity_patterns(n - 1, ones):
                for idx in product(range(dim), repeat=n - 1):
                    keys = tuple(zip(pattern, idx))
                    for pos in range(n):
                        strict_unit.checked += 1
                        if _m_with_unit(struct, n, keys, pos):
                            strict_unit.add((f"m{n}", keys, pos))
    return {"pcy1": pcy1, "pcy2": pcy2, "unit_pairing": unit_pairing, "strict_unit": strict_unit}
