"""Self-checking sweeps: every exact identity on every set in range.

The identity sweep walks normalized point sets (exhaustively for small
n, seeded-random samples for larger n) and recomputes each determinant
identity along two independent routes, comparing exactly. The tree
sweep walks all labeled trees up to a vertex cap via Prufer sequences
and checks the embedding, the determinant formula, and the closed-form
inverse. Failures are counted, never raised, so a report always comes
back; an all-green report is the acceptance gate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import cube, identities, trees
from .cube import PointSet
from .ratlinalg import RationalMatrix, det_int


@dataclass
class CheckCounter:
    name: str
    checked: int = 0
    failed: int = 0
    samples: list = field(default_factory=list)

    def add(self, ok: bool, describe=None) -> None:
        self.checked += 1
        if not ok:
            self.failed += 1
            if describe is not None and len(self.samples) < 5:
                self.samples.append(describe)


@dataclass
class SweepReport:
    label: str
    counters: dict[str, CheckCounter] = field(default_factory=dict)

    def counter(self, name: str) -> CheckCounter:
        if name not in self.counters:
            self.counters[name] = CheckCounter(name)
        return self.counters[name]

    @property
    def ok(self) -> bool:
        return all(c.failed == 0 for c in self.counters.values())

    def lines(self) -> list[str]:
        out = []
        for name in sorted(self.counters):
            c = self.counters[name]
            status = "PASS" if c.failed == 0 else "FAIL"
            line = f"{status} {self.label}/{name}: checked={c.checked} failures={c.failed}"
            if c.samples:
                line += f" first={c.samples[0]!r}"
            out.append(line)
        return out


_IDENTITY_CHECKS = (
    "det_via_bordered_gram",
    "bordered_distance_det",
    "affine_criterion",
    "dependent_kernel",
    "det_via_gram_quad",
    "gram_quad_two_routes",
    "dinv_ones_consistency",
    "full_dim_gram_quad",
    "full_dim_det",
)


def check_point_set(tail: tuple[int, ...], n: int, report: SweepReport) -> None:
    """Run every identity check on the normalized set {0} + tail."""
    m = len(tail)
    bits = (0,) + tail
    s = PointSet.from_bits(n, bits)
    det_direct = identities.det_distance_matrix(s)
    report.counter("det_via_bordered_gram").add(
        identities.det_via_bordered_gram(s) == det_direct, tail
    )
    try:
        bord_val = identities.bordered_distance_det(s)
        report.counter("bordered_distance_det").add(True)
    except AssertionError:
        bord_val = None
        report.counter("bordered_distance_det").add(False, tail)
    independent = cube.linear_independent(s)
    report.counter("affine_criterion").add((det_direct != 0) == independent, tail)
    if not independent:
        c_vec = [int(x) for x in identities.kernel_witness(s)]
        drows = cube.distance_rows(bits)
        live = [j for j, cj in enumerate(c_vec) if cj]
        annihilates = all(
            sum(row[j] * c_vec[j] for j in live) == 0 for row in drows
        )
        ok = (
            det_direct == 0
            and any(c_vec)
            and sum(c_vec) == 0
            and annihilates
        )
        report.counter("dependent_kernel").add(ok, tail)
        return
    gq = identities.gram_quad(s)
    g_rows, u = cube.gram_rows(tail)
    bord_g = [[0] + u] + [[u[i]] + g_rows[i] for i in range(m)]
    det_g = det_int(g_rows)
    det_bord_g = det_int(bord_g)
    report.counter("gram_quad_two_routes").add(
        det_g != 0 and gq == Fraction(-det_bord_g, det_g), tail
    )
    report.counter("det_via_gram_quad").add(
        det_direct != 0 and identities.det_via_gram_quad(s) == det_direct, tail
    )
    if bord_val is not None:
        dinv_direct = Fraction(-bord_val, det_direct)
        dinv_gram = 2 / gq
        report.counter("dinv_ones_consistency").add(
            dinv_direct == dinv_gram and dinv_gram > 0, tail
        )
    if m == n:
        report.counter("full_dim_gram_quad").add(gq == n, tail)
        report.counter("full_dim_det").add(
            det_direct == Fraction((-1) ** n * n * (1 << (n - 1)) * det_g), tail
        )


def identity_sweep_exhaustive(n: int) -> SweepReport:
    """Every normalized subset of H_n with the origin and m >= 1 more
    points: 2^(2^n - 1) - 1 sets."""
    report = SweepReport(label=f"identities-n{n}")
    for name in _IDENTITY_CHECKS:
        report.counter(name)
    top = (1 << n) - 1
    for m in range(1, top + 1):
        for tail in combinations(range(1, top + 1), m):
            check_point_set(tail, n, report)
    return report


def identity_sweep_random(n: int, samples: int, seed: int) -> SweepReport:
    """Seeded random subsets of H_n: size m uniform on [1, 2^n - 1],
    then m distinct nonzero patterns by rejection."""
    report = SweepReport(label=f"identities-n{n}-random")
    for name in _IDENTITY_CHECKS:
        report.counter(name)
    rng = random.Random(seed)
    top = (1 << n) - 1
    for _ in range(samples):
        m = rng.randint(1, top)
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(rng.randrange(1, 1 << n))
        check_point_set(tuple(sorted(chosen)), n, report)
    return report


_TREE_CHECKS = (
    "embedding_isometry",
    "tree_det_formula",
    "inverse_entries_product",
    "inverse_entry_sum",
    "embedded_affine_independent",
)


def check_tree(t: trees.UnweightedTree, report: SweepReport, deep: bool = False) -> None:
    """Embedding, determinant, and inverse-entry checks for one tree.

    `deep` additionally inverts the distance matrix by elimination and
    compares entrywise, and reruns the <D^{-1}1,1> value through the
    Gram route of the embedded point set.
    """
    n = t.n
    k = t.vertex_count
    drows = trees.tree_distance_rows(t)
    ebits = trees.embed_bits(t)
    iso = all(
        drows[i][j] == (ebits[i] ^ ebits[j]).bit_count() for i in range(k) for j in range(i)
    )
    report.counter("embedding_isometry").add(iso, t.edges)
    det_direct = det_int([row[:] for row in drows])
    report.counter("tree_det_formula").add(
        det_direct == (-1) ** n * n * (1 << (n - 1)), t.edges
    )
    minv = trees.scaled_inverse_rows(t)
    target = 2 * n
    prod_ok = True
    for i in range(k):
        mi = minv[i]
        for j in range(k):
            want = target if i == j else 0
            if sum(a * b for a, b in zip(mi, drows[j])) != want:
                prod_ok = False
                break
        if not prod_ok:
            break
    report.counter("inverse_entries_product").add(prod_ok, t.edges)
    report.counter("inverse_entry_sum").add(
        sum(sum(row) for row in minv) == 4, t.edges
    )
    report.counter("embedded_affine_independent").add(
        cube.rank_of_bits(tuple(ebits[1:]), n) == n, t.edges
    )
    if deep:
        inv = RationalMatrix.from_rows(drows).inverse()
        d_star = trees.graham_lovasz_inverse(t).d_star
        report.counter("inverse_entries_direct").add(inv == d_star, t.edges)
        embedded = PointSet.from_bits(n, ebits)
        report.counter("embedded_dinv_value").add(
            identities.dinv_ones(embedded) == Fraction(2, n), t.edges
        )


def tree_sweep(max_vertices: int = 8, deep_max_vertices: int = 6) -> SweepReport:
    """All labeled trees on 3..max_vertices vertices (k^(k-2) per size,
    via Prufer sequences); deep checks up to deep_max_vertices."""
    report = SweepReport(label="trees")
    for name in _TREE_CHECKS:
        report.counter(name)
    for k in range(trees.MIN_VERTICES, max_vertices + 1):
        deep = k <= deep_max_vertices
        for t in trees.enumerate_labeled_trees(k):
            check_tree(t, report, deep=deep)
    return report


def run_default_verification(
    n_cap: int = 4,
    tree_cap: int = 8,
    random_dims: tuple[int, ...] = (),
    random_samples: int = 10_000,
    seed: int = 2024,
) -> list[SweepReport]:
    """The verify subcommand's workload: exhaustive identity sweeps for
    2..n_cap, optional random sweeps, and the tree sweep."""
    reports = [identity_sweep_exhaustive(n) for n in range(2, n_cap + 1)]
    for n in random_dims:
        reports.append(identity_sweep_random(n, random_samples, seed))
    reports.append(tree_sweep(max_vertices=tree_cap))
    return reports
