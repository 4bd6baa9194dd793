"""Systems of equations over a virtually abelian group and their reduction
to integer linear systems.

A group equation ``w = 1`` is a sequence of variable occurrences and
constants.  Substituting ``X_i = Y_i u_i`` with ``u_i`` a fixed coset
representative and ``Y_i`` a formal element of Z^k, the word evaluates to
``(sum_i Y_i B_i + C, coset)``; it can only be trivial when the coset is the
identity coset, and then ``sum_i Y_i B_i + C = 0`` is a twisted equation.
Flattening the Z^k-valued equations gives a scalar system ``X B = c``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .group import GroupElement, GroupSpec, WeightedGeneratingSet, ball, inverse, multiply
from .linalg_z import IntMatrix, vec_mat


@dataclass(frozen=True)
class VarOcc:
    index: int  # 1-based
    exponent: int = 1

    def __post_init__(self):
        if self.exponent not in (1, -1):
            raise ValueError("variable exponents must be +1 or -1")


Item = Union[VarOcc, GroupElement]


@dataclass(frozen=True)
class GroupEquationSystem:
    num_vars: int
    equations: tuple[tuple[Item, ...], ...]

    def __post_init__(self):
        for eq in self.equations:
            if not eq:
                raise ValueError("empty equation")
            for it in eq:
                if isinstance(it, VarOcc) and not 1 <= it.index <= self.num_vars:
                    raise ValueError(f"variable X{it.index} outside 1..{self.num_vars}")


@dataclass(frozen=True)
class TwistedEquation:
    """``sum_i Y_i coefficients[i] + constant = 0`` over Z^k."""

    coefficients: tuple[IntMatrix, ...]
    constant: tuple[int, ...]


@dataclass(frozen=True)
class TwistedSystem:
    rank: int
    num_vars: int
    equations: tuple[TwistedEquation, ...]


@dataclass(frozen=True)
class LinearSystem:
    """``X B = c`` with X a row vector; only the first ``num_vars`` entries of
    X are real variables, the rest pad B to a square matrix and have zero rows."""

    num_vars: int
    matrix: IntMatrix
    constant: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.matrix.rows

    def satisfied_by(self, x: Sequence[int]) -> bool:
        full = tuple(x) + (0,) * (self.size - len(x))
        return vec_mat(full, self.matrix) == self.constant


@dataclass(frozen=True)
class CosetDecomposition:
    rank: int
    num_vars: int
    pieces: dict  # coset tuple -> (TwistedSystem, LinearSystem), sorted by tuple


# symbolic evaluation ------------------------------------------------------

def _madd(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return IntMatrix(a.rows, a.cols, tuple(x + y for x, y in zip(a.entries, b.entries)))


def _mneg(a: IntMatrix) -> IntMatrix:
    return IntMatrix(a.rows, a.cols, tuple(-x for x in a.entries))


class _Symbolic:
    """``sum_i Y_i coeffs[i] + const`` times the coset representative t_coset."""

    __slots__ = ("coeffs", "const", "coset")

    def __init__(self, coeffs: dict, const: tuple, coset: int):
        self.coeffs, self.const, self.coset = coeffs, const, coset

    def times(self, spec: GroupSpec, other: "_Symbolic") -> "_Symbolic":
        phi = spec.action[self.coset]
        coeffs = dict(self.coeffs)
        for i, m in other.coeffs.items():
            mm = m @ phi
            coeffs[i] = _madd(coeffs[i], mm) if i in coeffs else mm
        const = tuple(a + b + z for a, b, z in zip(
            self.const, vec_mat(other.const, phi), spec.cocycle_vectors[self.coset][other.coset]))
        return _Symbolic(coeffs, const, spec.cocycle_indices[self.coset][other.coset])


def _occurrence(spec: GroupSpec, occ: VarOcc, coset: int) -> _Symbolic:
    k = spec.rank
    if occ.exponent == 1:
        return _Symbolic({occ.index: IntMatrix.identity(k)}, (0,) * k, coset)
    # (Y t_u)^-1 = -(Y + z_{u,j}) phi_u^-1 t_j
    j = spec.inverse_index(coset)
    ainv = spec.action_inverse(coset)
    const = tuple(-x for x in vec_mat(spec.cocycle_vectors[coset][j], ainv))
    return _Symbolic({occ.index: _mneg(ainv)}, const, j)


def evaluate_symbolic(spec: GroupSpec, equation: Sequence[Item], cosets: Sequence[int]) -> _Symbolic:
    k = spec.rank
    acc = _Symbolic({}, (0,) * k, 0)
    for it in equation:
        if isinstance(it, VarOcc):
            term = _occurrence(spec, it, cosets[it.index - 1])
        else:
            term = _Symbolic({}, it.vector, it.coset)
        acc = acc.times(spec, term)
    return acc


def reduce_to_twisted(system: GroupEquationSystem, spec: GroupSpec) -> CosetDecomposition:
    """Split the solution set by the coset of each variable."""
    k, n = spec.rank, system.num_vars
    zero = IntMatrix.zeros(k, k)
    pieces = {}
    for cosets in itertools.product(range(spec.coset_count), repeat=n):
        twisted = []
        for eq in system.equations:
            sym = evaluate_symbolic(spec, eq, cosets)
            if sym.coset != 0:
                break
            twisted.append(TwistedEquation(
                tuple(sym.coeffs.get(i, zero) for i in range(1, n + 1)), sym.const))
        else:
            tw = TwistedSystem(k, n, tuple(twisted))
            pieces[cosets] = (tw, twisted_to_linear(tw))
    return CosetDecomposition(k, n, pieces)


def twisted_to_linear(tw: TwistedSystem) -> LinearSystem:
    """Flatten Z^k-valued equations into scalar ones over the kn coordinates.

    Coordinate ``j`` of variable ``i`` is scalar variable ``i*k + j``; each
    twisted equation contributes k columns of B.
    """
    k, n = tw.rank, tw.num_vars
    m = k * n
    columns, rhs = [], []
    for eq in tw.equations:
        for l in range(k):
            columns.append([eq.coefficients[i][j, l] for i in range(n) for j in range(k)])
            rhs.append(-eq.constant[l])
    size = max(m, len(columns), 1)
    while len(columns) < size:
        columns.append([0] * m)
        rhs.append(0)
    rows = [[columns[c][r] if r < m else 0 for c in range(size)] for r in range(size)]
    return LinearSystem(m, IntMatrix.from_rows(rows, size), tuple(rhs))


# oracles ------------------------------------------------------------------

def brute_force_solutions(lin: LinearSystem, box: int) -> list[tuple[int, ...]]:
    """All real-variable vectors with entries in [-box, box] solving X B = c.

    Padding variables have zero rows, so they are pinned to 0 here.
    """
    return [x for x in itertools.product(range(-box, box + 1), repeat=lin.num_vars)
            if lin.satisfied_by(x)]


def is_solution(spec: GroupSpec, system: GroupEquationSystem, xs: Sequence[GroupElement]) -> bool:
    ident = spec.identity()
    for eq in system.equations:
        acc = ident
        for it in eq:
            if isinstance(it, VarOcc):
                g = xs[it.index - 1]
                it = g if it.exponent == 1 else inverse(spec, g)
            acc = multiply(spec, acc, it)
        if acc != ident:
            return False
    return True


def brute_force_group_solutions(system: GroupEquationSystem, spec: GroupSpec,
                                gens: WeightedGeneratingSet, radius: int) -> list[tuple[GroupElement, ...]]:
    """Solutions with every coordinate in the ball of the given weight."""
    elements = sorted(ball(spec, gens, radius))
    return [xs for xs in itertools.product(elements, repeat=system.num_vars)
            if is_solution(spec, system, xs)]


def lift(rank: int, cosets: Sequence[int], x: Sequence[int]) -> tuple[GroupElement, ...]:
    """Scalar solution of a coset piece back to a tuple of group elements."""
    return tuple(GroupElement(tuple(x[i * rank:(i + 1) * rank]), u) for i, u in enumerate(cosets))


def decomposition_solutions(dec: CosetDecomposition, box: int) -> list[tuple[GroupElement, ...]]:
    out = []
    for cosets, (_, lin) in dec.pieces.items():
        out.extend(lift(dec.rank, cosets, x) for x in brute_force_solutions(lin, box))
    return sorted(out)


# weight-bounded enumeration -----------------------------------------------

def enumerate_solutions(dec: CosetDecomposition, weighted: dict[GroupElement, int],
                        max_weight: int) -> Iterator[tuple[tuple[GroupElement, ...], tuple[int, ...]]]:
    """Solution tuples whose coordinate weights sum to at most ``max_weight``.

    ``weighted`` maps candidate elements to their weights (typically a ball).
    Yields ``(tuple, per-coordinate weights)``.  Each piece is first brought to
    row-monotone form so equations can be checked as soon as their variables
    are assigned, and fully pinned coordinates are looked up directly.
    """
    from .linalg_z import row_monotone_decompose, unimodular_inverse

    k, n = dec.rank, dec.num_vars
    by_coset: dict[int, list] = {}
    by_key: dict[tuple, int] = dict()
    for g, w in sorted(weighted.items(), key=lambda gw: (gw[1], gw[0])):
        if w <= max_weight:
            by_coset.setdefault(g.coset, []).append((g, w))
            by_key[(g.vector, g.coset)] = w

    for cosets, (_, lin) in dec.pieces.items():
        d = row_monotone_decompose(lin.matrix)
        cmat = d.monotone
        target = vec_mat(lin.constant, unimodular_inverse(d.unimodular))
        size = cmat.rows
        if any(target[j] != 0 and all(cmat[i, j] == 0 for i in range(size)) for j in range(size)):
            continue

        def pinned(i: int, x: list[int]):
            """Solve group i's coordinates when every diagonal entry is non-zero."""
            vals = []
            for j in range(i * k, (i + 1) * k):
                if cmat[j, j] == 0:
                    return None
                rest = target[j] - sum(x[l] * cmat[l, j] for l in range(j)) - \
                    sum(vals[l - i * k] * cmat[l, j] for l in range(i * k, j))
                if rest % cmat[j, j]:
                    return ()
                vals.append(rest // cmat[j, j])
            return tuple(vals)

        def consistent(x: list[int], upto: int) -> bool:
            for j in range(upto - k, upto):
                if sum(x[l] * cmat[l, j] for l in range(j + 1)) != target[j]:
                    return False
            return True

        def rec(i: int, x: list[int], chosen: list, weights: list, used: int):
            if i == n:
                # columns past the real variables involve only real variables
                for j in range(k * n, size):
                    if sum(x[l] * cmat[l, j] for l in range(k * n)) != target[j]:
                        return
                yield tuple(chosen), tuple(weights)
                return
            fixed = pinned(i, x)
            if fixed == ():
                return
            if fixed is not None:
                w = by_key.get((fixed, cosets[i]))
                cands = [] if w is None or used + w > max_weight else [(GroupElement(fixed, cosets[i]), w)]
            else:
                cands = by_coset.get(cosets[i], [])
            for g, w in cands:
                if used + w > max_weight:
                    break
                x2 = x + list(g.vector)
                if consistent(x2, (i + 1) * k):
                    yield from rec(i + 1, x2, chosen + [g], weights + [w], used + w)

        yield from rec(0, [], [], [], 0)
