"""Exhaustive and randomized scans of min <D^{-1}1, 1> over cube subsets.

Translation invariance lets every subset be represented with the origin
as base point, so the search space for (n, m) is the C(2^n - 1, m)
m-subsets of the nonzero patterns. For each affinely independent subset
the target value is computed exactly from two integer determinants:

    <D^{-1}1, 1> = 2 / <G^{-1}u, u> = -2 det(G) / det [[0, u^T], [u, G]]

and compared against the conjectured floor 2/n. Minima are tracked as
exact rationals with a (value, lexicographic-witness) tie-break, so
splitting the enumeration into contiguous index ranges across workers
cannot change the result: identical runs produce identical JSON, byte
for byte, whatever the worker count. Random probing is sequential by
design for the same reason.
"""

from __future__ import annotations

import json
import multiprocessing
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Optional

from . import cube
from .cube import PointSet
from .errors import BudgetExceededError, DomainError
from .ratlinalg import det_int

DEFAULT_BUDGET = 10_000_000

MODE_EXHAUSTIVE = "exhaustive"
MODE_RANDOM = "random"


def _validate_params(n: int, m: int) -> None:
    if not cube.MIN_DIM <= n <= cube.MAX_DIM:
        raise DomainError(f"dimension {n} outside [{cube.MIN_DIM}, {cube.MAX_DIM}]")
    if not 1 <= m <= (1 << n) - 1:
        raise DomainError(f"subset size {m} outside [1, {(1 << n) - 1}] for dimension {n}")


def enumerate_normalized(n: int, m: int) -> Iterator[PointSet]:
    """Every normalized set {0, x_1, ..., x_m} in H_n exactly once, in
    lexicographic bit-pattern order."""
    _validate_params(n, m)
    for tail in cube.all_subsets_with_base(n, m):
        yield PointSet.from_bits(n, (0,) + tail)


def _eval_tail(tail: tuple[int, ...], n: int) -> Optional[Fraction]:
    """Exact <D^{-1}1, 1> of {0} + tail, or None when the tail is
    linearly dependent (singular distance matrix)."""
    m = len(tail)
    if m > n or cube.rank_of_bits(tail, n) != m:
        return None
    g, u = cube.gram_rows(tail)
    bord = [[0] + u] + [[u[i]] + g[i] for i in range(m)]
    det_g = det_int(g)
    det_bord = det_int(bord)
    return Fraction(-2 * det_g, det_bord)


def _unrank_combo(total_values: int, m: int, rank: int) -> list[int]:
    """The rank-th (0-based) lex m-combination of {1..total_values}."""
    out = []
    x = 1
    for i in range(m):
        while True:
            c = comb(total_values - x, m - 1 - i)
            if rank < c:
                out.append(x)
                x += 1
                break
            rank -= c
            x += 1
    return out


def _next_combo(cur: list[int], total_values: int) -> bool:
    """Advance to the lex successor in place; False when exhausted."""
    m = len(cur)
    i = m - 1
    while i >= 0 and cur[i] == total_values - (m - 1 - i):
        i -= 1
    if i < 0:
        return False
    cur[i] += 1
    for j in range(i + 1, m):
        cur[j] = cur[j - 1] + 1
    return True


def _scan_range(task: tuple[int, int, int, int]):
    """Scan combination indices [start, stop); returns the partial
    reduction (examined, independent, best, violations)."""
    n, m, start, stop = task
    total_values = (1 << n) - 1
    floor = Fraction(2, n)
    cur = _unrank_combo(total_values, m, start)
    examined = 0
    independent = 0
    best: Optional[tuple[Fraction, tuple[int, ...]]] = None
    violations: list[tuple[tuple[int, ...], Fraction]] = []
    for _ in range(stop - start):
        tail = tuple(cur)
        examined += 1
        val = _eval_tail(tail, n)
        if val is not None:
            independent += 1
            if m == n:
                assert val == floor, f"full-dimensional set {tail} gave {val}, expected {floor}"
            if val < floor:
                violations.append((tail, val))
            if best is None or val < best[0]:
                best = (val, tail)
        if not _next_combo(cur, total_values):
            break
    return examined, independent, best, violations


def _merge_best(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if b[0] < a[0] or (b[0] == a[0] and b[1] < a[1]):
        return b
    return a


@dataclass(frozen=True)
class Violation:
    """A set whose value undercuts the conjectured floor 2/n."""

    points: PointSet
    value: Fraction

    def to_json_dict(self) -> dict:
        return {"points": self.points.to_strings(), "value": str(self.value)}


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one exhaustive or random scan.

    min_value / witness are None when no affinely independent set was
    seen; the violations list captures any counterexample instead of
    asserting the conjecture.
    """

    n: int
    m: int
    mode: str
    sets_examined: int
    independent_count: int
    min_value: Optional[Fraction]
    witness: Optional[PointSet]
    violations: tuple[Violation, ...]
    seed: Optional[int] = None

    def to_json_dict(self) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "mode": self.mode,
            "sets_examined": self.sets_examined,
            "independent_count": self.independent_count,
            "min_value": str(self.min_value) if self.min_value is not None else None,
            "witness": self.witness.to_strings() if self.witness is not None else None,
            "violations": [v.to_json_dict() for v in self.violations],
        }
        if self.mode == MODE_RANDOM:
            out["seed"] = self.seed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def _result_from_parts(n, m, mode, examined, independent, best, violations, seed=None):
    min_value = best[0] if best else None
    witness = PointSet.from_bits(n, (0,) + best[1]) if best else None
    vs = tuple(
        Violation(points=PointSet.from_bits(n, (0,) + tail), value=val) for tail, val in violations
    )
    return SearchResult(
        n=n,
        m=m,
        mode=mode,
        sets_examined=examined,
        independent_count=independent,
        min_value=min_value,
        witness=witness,
        violations=vs,
        seed=seed,
    )


def min_dinv_ones(
    n: int, m: int, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> SearchResult:
    """Exact minimum of <D^{-1}1, 1> over every affinely independent
    normalized (m+1)-point set in H_n.

    Refuses enumerations larger than `budget`. Work splits into
    contiguous combination-index ranges; the merge is an associative
    min-reduction with lexicographic tie-break, so the result does not
    depend on the worker count.
    """
    _validate_params(n, m)
    total = comb((1 << n) - 1, m)
    if total > budget:
        raise BudgetExceededError(
            f"enumeration of ({n}, {m}) needs {total} subsets, over budget {budget}",
            required=total,
        )
    workers = max(1, int(workers))
    if workers == 1 or total < 2 * workers:
        parts = [_scan_range((n, m, 0, total))]
    else:
        base, rem = divmod(total, workers)
        tasks = []
        start = 0
        for w in range(workers):
            size = base + (1 if w < rem else 0)
            if size:
                tasks.append((n, m, start, start + size))
            start += size
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_scan_range, tasks)
    examined = sum(p[0] for p in parts)
    independent = sum(p[1] for p in parts)
    best = None
    violations: list[tuple[tuple[int, ...], Fraction]] = []
    for p in parts:
        best = _merge_best(best, p[2])
        violations.extend(p[3])
    return _result_from_parts(n, m, MODE_EXHAUSTIVE, examined, independent, best, violations)


def random_probe(n: int, m: int, trials: int, seed: int) -> SearchResult:
    """Sample `trials` subsets uniformly (m distinct nonzero patterns by
    rejection), skip dependent ones, and track the exact minimum.

    Sampling is sequential and driven only by the seed, so a rerun with
    the same arguments reproduces the result exactly.
    """
    _validate_params(n, m)
    if trials < 0:
        raise DomainError(f"trials must be nonnegative, got {trials}")
    rng = random.Random(seed)
    floor = Fraction(2, n)
    examined = 0
    independent = 0
    best = None
    violations: list[tuple[tuple[int, ...], Fraction]] = []
    for _ in range(trials):
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(rng.randrange(1, 1 << n))
        tail = tuple(sorted(chosen))
        examined += 1
        val = _eval_tail(tail, n)
        if val is None:
            continue
        independent += 1
        if m == n:
            assert val == floor, f"full-dimensional set {tail} gave {val}, expected {floor}"
        if val < floor:
            violations.append((tail, val))
        best = _merge_best(best, (val, tail))
    return _result_from_parts(n, m, MODE_RANDOM, examined, independent, best, violations, seed=seed)
