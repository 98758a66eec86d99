"""Exact determinant and inverse identities for cube point sets.

For a normalized set {0, x_1, ..., x_m} with Gram matrix G = B B^T and
diagonal u, the distance matrix D satisfies

    det(D) = (-1)^(m-1) 2^(m-1) det [[0, u^T], [u, G]]
    det(D) = (-1)^m 2^(m-1) det(G) <G^{-1}u, u>      (independent tail)
    det [[0, 1^T], [1, D]] = (-1)^(m-1) 2^m det(G)
    <D^{-1}1, 1> = 2 / <G^{-1}u, u>                  (affinely independent)

and det(D) = 0 exactly when the tail is linearly dependent, in which
case a rational kernel vector of D can be written down from the
dependence. Each identity below is computed along one route; the test
sweeps recompute everything by direct elimination and compare exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional

from . import cube
from .cube import PointSet, normalize
from .errors import DependenceError, IndependenceError, SingularMatrixError
from .ratlinalg import RationalVector, det_int


def _require_normalized(s: PointSet) -> PointSet:
    if not s.normalized:
        raise ValueError("operation needs a normalized set; call normalize() first")
    return s


def _bordered_gram_rows(tail: tuple[int, ...]) -> list[list[int]]:
    g, u = cube.gram_rows(tail)
    return [[0] + u] + [[u[i]] + g[i] for i in range(len(tail))]


def _bordered_distance_rows(bits: tuple[int, ...]) -> list[list[int]]:
    d = cube.distance_rows(bits)
    return [[0] + [1] * len(bits)] + [[1] + row for row in d]


def det_distance_matrix(s: PointSet) -> Fraction:
    """det(D) by direct fraction-free elimination."""
    return Fraction(det_int(cube.distance_rows(s.bits())))


def det_via_bordered_gram(s: PointSet) -> Fraction:
    """det(D) from the bordered Gram matrix [[0, u^T], [u, G]].

    Exact for every set, dependent or not, since both sides vanish
    together.
    """
    _require_normalized(s)
    m = s.m
    val = det_int(_bordered_gram_rows(s.bits()[1:]))
    return Fraction((-1) ** (m - 1) * (1 << (m - 1)) * val)


def det_via_gram_quad(s: PointSet) -> Fraction:
    """det(D) as (-1)^m 2^(m-1) det(G) <G^{-1}u, u>.

    Needs a linearly independent tail; the quadratic form is evaluated
    through an exact linear solve, a different elimination route from
    `det_via_bordered_gram`.
    """
    _require_normalized(s)
    if not cube.linear_independent(s):
        raise DependenceError("tail points are linearly dependent; det(D) = 0 by the kernel route")
    m = s.m
    d = cube.derive(s)
    quad = d.G.quad_form_inv(d.u)
    return Fraction((-1) ** m * (1 << (m - 1))) * d.G.det() * quad


def gram_quad(s: PointSet) -> Fraction:
    """Exact <G^{-1}u, u> via a linear solve; positive by positive
    definiteness of G. Equals n whenever m = n."""
    _require_normalized(s)
    if not cube.linear_independent(s):
        raise DependenceError("Gram matrix is singular for a dependent tail")
    d = cube.derive(s)
    return d.G.quad_form_inv(d.u)


def kernel_witness(s: PointSet) -> RationalVector:
    """A nonzero rational vector c with D c = 0 and sum(c) = 0.

    Built from the first tail point that is a rational combination of
    its predecessors: the combination coefficients fill c_1..c_m (zero
    beyond the points involved) and c_0 = -(c_1 + ... + c_m). Entries
    are scaled to coprime integers with the first nonzero tail entry
    positive.
    """
    _require_normalized(s)
    tail = s.bits()[1:]
    n, m = s.n, s.m
    basis: list[tuple[list[Fraction], dict[int, Fraction]]] = []
    for j, b in enumerate(tail):
        vec = [Fraction((b >> k) & 1) for k in range(n)]
        combo = {j: Fraction(1)}
        for bvec, bcombo in basis:
            lead = next(i for i, e in enumerate(bvec) if e != 0)
            if vec[lead] != 0:
                f = vec[lead] / bvec[lead]
                vec = [a - f * c for a, c in zip(vec, bvec)]
                for idx, coef in bcombo.items():
                    combo[idx] = combo.get(idx, Fraction(0)) - f * coef
        if all(e == 0 for e in vec):
            c_tail = [combo.get(i, Fraction(0)) for i in range(m)]
            scale = lcm(*(c.denominator for c in c_tail))
            ints = [int(c * scale) for c in c_tail]
            g = gcd(*ints)
            ints = [v // g for v in ints]
            first = next(v for v in ints if v)
            if first < 0:
                ints = [-v for v in ints]
            return RationalVector.of([-sum(ints)] + ints)
        basis.append((vec, combo))
    raise IndependenceError("tail points are linearly independent; D has trivial kernel")


def bordered_distance_det(s: PointSet) -> Fraction:
    """det [[0, 1^T], [1, D]], computed both by direct elimination and
    as (-1)^(m-1) 2^m det(G); the two must coincide."""
    _require_normalized(s)
    m = s.m
    direct = det_int(_bordered_distance_rows(s.bits()))
    det_g = det_int(cube.gram_rows(s.bits()[1:])[0])
    formula = (-1) ** (m - 1) * (1 << m) * det_g
    assert direct == formula, f"bordered distance det {direct} != formula {formula}"
    return Fraction(direct)


def dinv_ones(s: PointSet) -> Fraction:
    """Exact <D^{-1}1, 1> = 2 / <G^{-1}u, u>, positive for every
    affinely independent set."""
    sn = normalize(s)
    if not cube.linear_independent(sn):
        raise SingularMatrixError(
            "distance matrix is singular for an affinely dependent set", det=Fraction(0)
        )
    return 2 / gram_quad(sn)


@dataclass(frozen=True)
class DetReport:
    """Bundle of the exact invariants of one point set.

    `gram_quad` is None when the Gram matrix is singular; `dinv_ones` is
    None when D is singular (both happen exactly when the set is
    affinely dependent). `vol_sq` is det(G), the squared volume of the
    parallelepiped spanned by the translated tail.
    """

    det_D: Fraction
    det_G: Fraction
    vol_sq: Fraction
    affinely_independent: bool
    gram_quad: Optional[Fraction]
    dinv_ones: Optional[Fraction]

    def to_json_dict(self) -> dict:
        out = {
            "det_D": str(self.det_D),
            "det_G": str(self.det_G),
            "vol_sq": str(self.vol_sq),
            "affinely_independent": self.affinely_independent,
        }
        if self.gram_quad is not None:
            out["gram_quad"] = str(self.gram_quad)
        if self.dinv_ones is not None:
            out["dinv_ones"] = str(self.dinv_ones)
        return out


def full_report(s: PointSet) -> DetReport:
    """Compute every invariant, normalizing internally; fields that
    require invertibility are absent (None) rather than zeroed."""
    sn = normalize(s)
    det_d = det_distance_matrix(sn)
    det_g = Fraction(det_int(cube.gram_rows(sn.bits()[1:])[0]))
    independent = cube.linear_independent(sn)
    gq = gram_quad(sn) if independent else None
    dio = 2 / gq if gq is not None else None
    return DetReport(
        det_D=det_d,
        det_G=det_g,
        vol_sq=det_g,
        affinely_independent=independent,
        gram_quad=gq,
        dinv_ones=dio,
    )
