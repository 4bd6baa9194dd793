"""Polyhedral subsets of Z^r: finite unions of finite intersections of
elementary sets ``u.z = a``, ``u.z > a`` and ``u.z = a (mod b)``.

Sets are kept symbolically and only ever queried by membership or counted
inside a finite box, so no quantifier elimination is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from .linalg_z import IntMatrix

Kind = Literal["eq", "gt", "mod"]


class DimensionError(ValueError):
    pass


def _dot(u: Sequence[int], z: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, z))


@dataclass(frozen=True)
class ElementarySet:
    kind: Kind
    normal: tuple[int, ...]
    constant: int
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("eq", "gt", "mod"):
            raise ValueError(f"unknown elementary kind {self.kind!r}")
        if self.kind == "mod" and self.modulus < 1:
            raise ValueError("congruences need a positive modulus")
        if self.kind != "mod" and self.modulus:
            raise ValueError("only congruences carry a modulus")

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def contains(self, z: Sequence[int]) -> bool:
        s = _dot(self.normal, z)
        if self.kind == "eq":
            return s == self.constant
        if self.kind == "gt":
            return s > self.constant
        return (s - self.constant) % self.modulus == 0

    def complement(self) -> list["ElementarySet"]:
        """Elementary sets whose union is the complement of this one."""
        neg = tuple(-x for x in self.normal)
        if self.kind == "eq":
            return [ElementarySet("gt", self.normal, self.constant),
                    ElementarySet("gt", neg, -self.constant)]
        if self.kind == "gt":
            return [ElementarySet("gt", neg, -self.constant - 1)]
        b = self.modulus
        return [ElementarySet("mod", self.normal, r, b)
                for r in range(b) if (r - self.constant) % b]


def equation(normal: Sequence[int], constant: int) -> ElementarySet:
    return ElementarySet("eq", tuple(normal), constant)


def greater(normal: Sequence[int], constant: int) -> ElementarySet:
    return ElementarySet("gt", tuple(normal), constant)


def at_least(normal: Sequence[int], constant: int) -> ElementarySet:
    """``u.z >= a``, encoded as ``u.z > a - 1``."""
    return ElementarySet("gt", tuple(normal), constant - 1)


def congruence(normal: Sequence[int], constant: int, modulus: int) -> ElementarySet:
    return ElementarySet("mod", tuple(normal), constant % modulus, modulus)


BasicSet = tuple[ElementarySet, ...]


@dataclass(frozen=True)
class PolyhedralSet:
    dimension: int
    disjuncts: tuple[BasicSet, ...]

    def __post_init__(self):
        for basic in self.disjuncts:
            for e in basic:
                if e.dimension != self.dimension:
                    raise DimensionError(f"elementary set of dimension {e.dimension} in Z^{self.dimension}")

    @classmethod
    def empty(cls, r: int) -> "PolyhedralSet":
        return cls(r, ())

    @classmethod
    def whole(cls, r: int) -> "PolyhedralSet":
        return cls(r, ((),))

    @classmethod
    def basic(cls, r: int, conditions: Sequence[ElementarySet]) -> "PolyhedralSet":
        return cls(r, (tuple(conditions),))

    def contains(self, z: Sequence[int]) -> bool:
        return member(self, z)

    def __or__(self, other):
        return combine("union", self, other)

    def __and__(self, other):
        return combine("intersection", self, other)

    def __invert__(self):
        return combine("complement", self)


def member(p: PolyhedralSet, z: Sequence[int]) -> bool:
    if len(z) != p.dimension:
        raise DimensionError(f"point of length {len(z)} tested against Z^{p.dimension}")
    return any(all(e.contains(z) for e in basic) for basic in p.disjuncts)


def _pad(e: ElementarySet, before: int, after: int) -> ElementarySet:
    return ElementarySet(e.kind, (0,) * before + e.normal + (0,) * after, e.constant, e.modulus)


def _dedupe(basic) -> BasicSet:
    return tuple(dict.fromkeys(basic))


def _contradicts(e: ElementarySet, f: ElementarySet) -> bool:
    """Cheap emptiness test for a pair of conditions on the same line."""
    neg = tuple(-x for x in f.normal)
    if e.kind == "mod" and f.kind == "mod":
        return e.normal == f.normal and e.modulus == f.modulus and e.constant != f.constant
    if e.kind == "mod" or f.kind == "mod":
        return False
    if e.normal == f.normal:
        a, b = e.constant, f.constant
        if e.kind == f.kind == "eq":
            return a != b
        if e.kind == "eq":
            return a <= b
        if f.kind == "eq":
            return b <= a
        return False
    if e.normal == neg:
        # u.z ~ a together with -u.z ~ b, i.e. u.z ~' -b
        a, b = e.constant, -f.constant
        if e.kind == f.kind == "eq":
            return a != b
        if e.kind == "eq":
            return a >= b
        if f.kind == "eq":
            return b <= a
        return b - a <= 1
    return False


def _simplify(basics) -> tuple[BasicSet, ...]:
    """Drop conjunctions with an obviously contradictory pair of conditions
    and conjunctions absorbed by a weaker one."""
    kept = []
    for basic in dict.fromkeys(basics):
        if any(_contradicts(e, f) for i, e in enumerate(basic) for f in basic[i + 1:]):
            continue
        kept.append(basic)
    sets = [frozenset(b) for b in kept]
    out = []
    for i, b in enumerate(kept):
        if any(sets[j] < sets[i] or (sets[j] == sets[i] and j < i) for j in range(len(kept))):
            continue
        out.append(b)
    return tuple(out)


def combine(kind: str, p: PolyhedralSet, q: PolyhedralSet | None = None) -> PolyhedralSet:
    """Union, intersection, complement or cartesian product of polyhedral sets."""
    if kind == "complement":
        # complement of a union of conjunctions: conjunction over disjuncts of
        # (union of complemented conditions), then distribute
        result = PolyhedralSet.whole(p.dimension)
        for basic in p.disjuncts:
            negated = PolyhedralSet(p.dimension, tuple((c,) for e in basic for c in e.complement()))
            result = combine("intersection", result, negated)
        return result
    if q is None:
        raise ValueError(f"{kind} needs two operands")
    if kind == "product":
        r, s = p.dimension, q.dimension
        return PolyhedralSet(r + s, tuple(
            tuple(_pad(e, 0, s) for e in bp) + tuple(_pad(e, r, 0) for e in bq)
            for bp in p.disjuncts for bq in q.disjuncts))
    if p.dimension != q.dimension:
        raise DimensionError(f"cannot {kind} Z^{p.dimension} with Z^{q.dimension}")
    if kind == "union":
        return PolyhedralSet(p.dimension, _simplify(p.disjuncts + q.disjuncts))
    if kind == "intersection":
        return PolyhedralSet(p.dimension, _simplify(
            _dedupe(bp + bq) for bp in p.disjuncts for bq in q.disjuncts))
    raise ValueError(f"unknown combination {kind!r}")


def affine_preimage(q: PolyhedralSet, m: IntMatrix, shift: Sequence[int]) -> PolyhedralSet:
    """``{p in Z^r : p M + shift in Q}`` for an r x s matrix M."""
    if m.cols != q.dimension or len(shift) != q.dimension:
        raise DimensionError("affine map does not land in the dimension of Q")

    def pull(e: ElementarySet) -> ElementarySet:
        # u.(pM + q) = (M u^T).p + u.q
        normal = tuple(_dot(m.row(i), e.normal) for i in range(m.rows))
        const = e.constant - _dot(e.normal, shift)
        if e.kind == "mod":
            return ElementarySet("mod", normal, const % e.modulus, e.modulus)
        return ElementarySet(e.kind, normal, const)

    return PolyhedralSet(m.rows, tuple(tuple(pull(e) for e in basic) for basic in q.disjuncts))


def orthant_signs(r: int) -> list[tuple[int, ...]]:
    """All sign vectors, non-negative orthant first."""
    return [tuple(-1 if bit else 1 for bit in bits) for bits in itertools.product((0, 1), repeat=r)]


def orthant(signs: Sequence[int]) -> PolyhedralSet:
    r = len(signs)
    return PolyhedralSet.basic(r, [
        at_least(tuple(s if i == j else 0 for j in range(r)), 0) for i, s in enumerate(signs)
    ])


def reflect(p: PolyhedralSet, signs: Sequence[int]) -> PolyhedralSet:
    """Image of P under the coordinate reflection z -> (s_i z_i)."""
    diag = IntMatrix.from_rows([[s if i == j else 0 for j in range(len(signs))]
                                for i, s in enumerate(signs)])
    return affine_preimage(p, diag, (0,) * len(signs))


def orthant_decompose(p: PolyhedralSet) -> list[tuple[PolyhedralSet, tuple[int, ...]]]:
    """Split P into disjoint pieces, one per closed orthant, boundary points
    going to the earliest orthant that contains them.

    The piece for orthant j is P minus the earlier pieces, intersected with
    orthant j; since the earlier pieces cover exactly P meet the earlier
    orthants, this equals P meet orthant j minus the earlier orthants.
    """
    pieces = []
    earlier = PolyhedralSet.empty(p.dimension)
    for signs in orthant_signs(p.dimension):
        q = orthant(signs)
        pieces.append((combine("intersection", combine("intersection", p, q), ~earlier), signs))
        earlier = earlier | q
    return pieces


def box_points(r: int, weights: Sequence[int], max_weight: int) -> Iterator[tuple[int, ...]]:
    """Integer points with sum |z_i| w_i <= max_weight, in lexicographic order."""
    if r == 0:
        yield ()
        return
    w = weights[0]
    lim = max_weight // w
    for x in range(-lim, lim + 1):
        for rest in box_points(r - 1, weights[1:], max_weight - abs(x) * w):
            yield (x,) + rest


def enumerate_by_weight(p: PolyhedralSet, weights: Sequence[int], max_weight: int) -> list[int]:
    """sigma_P(n) for n = 0..max_weight, weight of z being sum |z_i| w_i."""
    if len(weights) != p.dimension:
        raise DimensionError("one weight per coordinate required")
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive")
    counts = [0] * (max_weight + 1)
    for z in box_points(p.dimension, weights, max_weight):
        if member(p, z):
            counts[sum(abs(x) * w for x, w in zip(z, weights))] += 1
    return counts
