"""Virtually abelian groups given as Z^k-by-finite extensions.

An element is a pair ``(v, i)`` meaning ``v t_i`` with ``v`` in Z^k and
``t_i`` a coset representative.  The data of the extension is

* ``action[i]``: the matrix of ``w -> t_i w t_i^-1`` on row vectors,
* ``cocycle_indices[i][j] = s`` and ``cocycle_vectors[i][j] = z`` with
  ``t_i t_j = z t_s``.

Products follow ``(v, i)(w, j) = (v + w action[i] + z_ij, s_ij)``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg_z import IntMatrix, determinant, unimodular_inverse, vec_mat


class GroupSpecError(ValueError):
    """Base class for violated group-spec invariants."""


class ShapeError(GroupSpecError):
    pass


class IdentityCosetError(GroupSpecError):
    pass


class ActionNotInvertibleError(GroupSpecError):
    pass


class ActionCompatibilityError(GroupSpecError):
    pass


class CocycleError(GroupSpecError):
    pass


class MissingInverseError(GroupSpecError):
    pass


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class GroupElement:
    vector: tuple[int, ...]
    coset: int = 0

    def __repr__(self):
        return f"({', '.join(map(str, self.vector))}; {self.coset})"


@dataclass(frozen=True)
class GroupSpec:
    rank: int
    coset_count: int
    action: tuple[IntMatrix, ...]
    cocycle_vectors: tuple[tuple[tuple[int, ...], ...], ...]
    cocycle_indices: tuple[tuple[int, ...], ...]
    transversal_labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.transversal_labels:
            labels = ("e",) + tuple(f"t{i}" for i in range(1, self.coset_count))
            object.__setattr__(self, "transversal_labels", labels)

    @classmethod
    def free_abelian(cls, k: int) -> "GroupSpec":
        return cls(
            rank=k,
            coset_count=1,
            action=(IntMatrix.identity(k),),
            cocycle_vectors=(((0,) * k,),),
            cocycle_indices=((0,),),
        )

    @classmethod
    def infinite_dihedral(cls) -> "GroupSpec":
        """<a, t | t^2, t a t^-1 = a^-1> with Z = <a> and transversal {e, t}."""
        return cls(
            rank=1,
            coset_count=2,
            action=(IntMatrix.identity(1), IntMatrix.from_rows([[-1]])),
            cocycle_vectors=(((0,), (0,)), ((0,), (0,))),
            cocycle_indices=((0, 1), (1, 0)),
            transversal_labels=("e", "t"),
        )

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.rank, 0)

    def element(self, vector: Sequence[int], coset: int = 0) -> GroupElement:
        return GroupElement(tuple(vector), coset)

    def inverse_index(self, i: int) -> int:
        return self._inverse_indices[i]

    @property
    def _inverse_indices(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_inv_cache")
        if cached is None:
            cached = tuple(
                next(j for j in range(self.coset_count) if self.cocycle_indices[i][j] == 0)
                for i in range(self.coset_count)
            )
            object.__setattr__(self, "_inv_cache", cached)
        return cached

    def action_inverse(self, i: int) -> IntMatrix:
        cached = self.__dict__.get("_ainv_cache")
        if cached is None:
            cached = tuple(unimodular_inverse(m) for m in self.action)
            object.__setattr__(self, "_ainv_cache", cached)
        return cached[i]


def _add(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(u, v))


def validate_spec(spec: GroupSpec) -> None:
    """Raise the first violated invariant as a named GroupSpecError subclass."""
    k, d = spec.rank, spec.coset_count
    if d < 1 or k < 0:
        raise ShapeError("need rank >= 0 and at least one coset")
    if len(spec.action) != d or any(m.rows != k or m.cols != k for m in spec.action):
        raise ShapeError("action must be d matrices of size k x k")
    if len(spec.cocycle_indices) != d or any(len(r) != d for r in spec.cocycle_indices):
        raise ShapeError("cocycle_indices must be d x d")
    if len(spec.cocycle_vectors) != d or any(
        len(r) != d or any(len(z) != k for z in r) for r in spec.cocycle_vectors
    ):
        raise ShapeError("cocycle_vectors must be d x d x k")
    if len(spec.transversal_labels) != d:
        raise ShapeError("need one transversal label per coset")
    if any(not (0 <= s < d) for r in spec.cocycle_indices for s in r):
        raise ShapeError("cocycle index out of range")

    zero = (0,) * k
    if spec.action[0] != IntMatrix.identity(k):
        raise IdentityCosetError("action of the identity coset must be the identity matrix")
    for j in range(d):
        if spec.cocycle_indices[0][j] != j or spec.cocycle_indices[j][0] != j:
            raise IdentityCosetError(f"sigma(0,{j}) and sigma({j},0) must equal {j}")
        if spec.cocycle_vectors[0][j] != zero or spec.cocycle_vectors[j][0] != zero:
            raise IdentityCosetError(f"cocycle vectors z(0,{j}), z({j},0) must vanish")

    for i, m in enumerate(spec.action):
        if determinant(m) not in (1, -1):
            raise ActionNotInvertibleError(f"action matrix {i} has determinant {determinant(m)}")

    s, z, phi = spec.cocycle_indices, spec.cocycle_vectors, spec.action
    for i in range(d):
        for j in range(d):
            if phi[j] @ phi[i] != phi[s[i][j]]:
                raise ActionCompatibilityError(f"phi_{j} phi_{i} != phi_sigma({i},{j})")
    for i in range(d):
        for j in range(d):
            for l in range(d):
                if s[s[i][j]][l] != s[i][s[j][l]]:
                    raise CocycleError(f"coset product not associative at ({i},{j},{l})")
                lhs = _add(z[i][j], z[s[i][j]][l])
                rhs = _add(vec_mat(z[j][l], phi[i]), z[i][s[j][l]])
                if lhs != rhs:
                    raise CocycleError(f"cocycle condition fails at ({i},{j},{l})")
    for i in range(d):
        if 0 not in s[i]:
            raise MissingInverseError(f"coset {i} has no inverse")


def multiply(spec: GroupSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    i, j = g.coset, h.coset
    v = _add(_add(g.vector, vec_mat(h.vector, spec.action[i])), spec.cocycle_vectors[i][j])
    return GroupElement(v, spec.cocycle_indices[i][j])


def inverse(spec: GroupSpec, g: GroupElement) -> GroupElement:
    i = g.coset
    j = spec.inverse_index(i)
    w = vec_mat(_add(g.vector, spec.cocycle_vectors[i][j]), spec.action_inverse(i))
    return GroupElement(tuple(-x for x in w), j)


def product(spec: GroupSpec, elements: Iterable[GroupElement]) -> GroupElement:
    out = spec.identity()
    for g in elements:
        out = multiply(spec, out, g)
    return out


@dataclass(frozen=True)
class WeightedGeneratingSet:
    """Generators with positive integer weights; inverses are added on construction."""

    generators: tuple[GroupElement, ...]
    weights: tuple[int, ...]
    names: tuple[str, ...] = field(default=())

    @classmethod
    def build(cls, spec: GroupSpec, generators: Sequence[GroupElement],
              weights: Sequence[int] | None = None,
              names: Sequence[str] | None = None) -> "WeightedGeneratingSet":
        weights = list(weights) if weights is not None else [1] * len(generators)
        names = list(names) if names is not None else [f"s{i}" for i in range(len(generators))]
        if len(weights) != len(generators) or len(names) != len(generators):
            raise ValueError("generators, weights and names must have equal length")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be positive integers")
        gens, ws, ns = list(generators), list(weights), list(names)
        for g, w, name in zip(generators, weights, names):
            gi = inverse(spec, g)
            if gi not in gens:
                gens.append(gi)
                ws.append(w)
                ns.append(name + "^-1")
        return cls(tuple(gens), tuple(ws), tuple(ns))


def evaluate_word(spec: GroupSpec, gens: WeightedGeneratingSet,
                  word: Sequence[tuple[int, int]]) -> GroupElement:
    """Evaluate a word given as (generator index, exponent sign) pairs."""
    out = spec.identity()
    for idx, sign in word:
        if not 0 <= idx < len(gens.generators):
            raise IndexError(f"generator index {idx} out of range")
        g = gens.generators[idx]
        out = multiply(spec, out, g if sign > 0 else inverse(spec, g))
    return out


def ball(spec: GroupSpec, gens: WeightedGeneratingSet, radius: int,
         max_elements: int = 2_000_000) -> dict[GroupElement, int]:
    """Geodesic weights of all elements of weight at most ``radius``.

    Dijkstra from the identity; ties are broken by the element ordering so the
    returned dict (insertion ordered by weight, then element) is deterministic.
    """
    dist: dict[GroupElement, int] = {}
    heap = [(0, spec.identity())]
    best = {spec.identity(): 0}
    steps = list(zip(gens.generators, gens.weights))
    while heap:
        d, g = heapq.heappop(heap)
        if g in dist:
            continue
        dist[g] = d
        if len(dist) > max_elements:
            raise ResourceLimitError(f"ball exceeds {max_elements} elements")
        for s, w in steps:
            nd = d + w
            if nd > radius:
                continue
            h = multiply(spec, g, s)
            if h not in dist and nd < best.get(h, radius + 1):
                best[h] = nd
                heapq.heappush(heap, (nd, h))
    return dist
