"""The solution-language construction for linear systems over Z, the matching
multi-tape automaton, and normal-form printing of solution tuples."""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Sequence

from ..group import GroupElement, GroupSpec
from ..linalg_z import IntMatrix, MatrixShapeError, row_monotone_decompose, \
    unimodular_inverse, vec_mat
from .core import IDENTITY, Control, Edt0lSystem, Endomorphism, Word

HASH = "#"
ERASE = "erase"


# alphabets and normal forms -------------------------------------------------

def coordinate_letters(k: int) -> list[tuple[str, str]]:
    """(generator, inverse) letter pairs for the k coordinates of Z^k."""
    if k == 1:
        return [("a", "A")]
    return [(f"a{i}", f"A{i}") for i in range(1, k + 1)]


def nonterminal(j: int) -> str:
    return f"⊥{j}"


def vector_word(v: Sequence[int]) -> Word:
    letters = coordinate_letters(len(v))
    out: list[str] = []
    for (pos, neg), x in zip(letters, v):
        out.extend([pos if x > 0 else neg] * abs(x))
    return tuple(out)


def element_word(spec: GroupSpec, g: GroupElement) -> Word:
    """Normal form ``a_1^v1 ... a_k^vk t_i``; the identity coset prints empty."""
    w = vector_word(g.vector)
    if g.coset:
        w += (spec.transversal_labels[g.coset],)
    return w


def tuple_word(blocks: Sequence[Word], sep: str = HASH) -> Word:
    out: list[str] = []
    for i, b in enumerate(blocks):
        if i:
            out.append(sep)
        out.extend(b)
    return tuple(out)


def solution_word(spec: GroupSpec, xs: Sequence[GroupElement]) -> Word:
    return tuple_word([element_word(spec, g) for g in xs])


def vector_solution_word(x: Sequence[int], k: int) -> Word:
    """A solution of the flattened system, one #-separated block per variable."""
    n = len(x) // k if k else 0
    return tuple_word([vector_word(x[i * k:(i + 1) * k]) for i in range(n)])


# bounds --------------------------------------------------------------------

@dataclass(frozen=True)
class StateBounds:
    bounds: tuple[int, ...]

    def admits(self, x: Sequence[int]) -> bool:
        return all(abs(v) <= b for v, b in zip(x, self.bounds))


def compute_bounds(c: IntMatrix, target: Sequence[int]) -> StateBounds:
    """Per-coordinate bounds on partial sums when walking to ``target`` along
    rows of the row-monotone matrix ``c``.

    ``K_1 = |b_1|`` and ``K_j = max_l |c_lj| + |b_j| + ceil(K_{j-1} / m)`` with
    ``m`` the least non-zero absolute entry of column j-1.  An all-zero column
    contributes ``K_{j-1}`` instead.
    """
    n = c.rows
    if n == 0:
        return StateBounds(())
    ks = [abs(target[0])]
    for j in range(1, n):
        prev = [abs(v) for v in c.col(j - 1) if v]
        carry = -(-ks[-1] // min(prev)) if prev else ks[-1]
        ks.append(max(abs(v) for v in c.col(j)) + abs(target[j]) + carry)
    return StateBounds(tuple(ks))


def _sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def bound_reordering(c: IntMatrix, x: Sequence[int]) -> list[tuple[int, int]]:
    """Order the signed unit vectors summing to ``x`` so every partial sum of
    their images under ``c`` stays within ``compute_bounds``.

    Vectors are grouped by the first column in which their row of ``c`` is
    non-zero and merged in column order; after each element already placed, a
    pending vector is inserted while it pushes that column's running sum
    back towards zero.  When every diagonal entry is non-zero this is the
    column-by-column balancing of the bound argument.
    """
    n = c.rows
    groups: dict[int | None, list[list[int]]] = defaultdict(list)
    for j in range(n):
        if x[j]:
            lead = next((col for col in range(j, n) if c[j, col]), None)
            groups[lead].append([j, _sgn(x[j]), abs(x[j])])
    seq = [(j, s) for j, s, m in groups.get(None, []) for _ in range(m)]
    for col in range(n):
        if col in groups:
            seq = _merge(seq, groups[col], col, c)
    return seq


def _merge(seq, pending, col, c):
    def pick(y):
        live = [g for g in pending if g[2]]
        if not live:
            return None
        if y == 0:
            return live[0]
        return next((g for g in live if _sgn(g[1] * c[g[0], col]) == -_sgn(y)), None)

    out, y = [], 0

    def take(g):
        nonlocal y
        out.append((g[0], g[1]))
        y += g[1] * c[g[0], col]
        g[2] -= 1

    for e in seq:
        out.append(e)
        y += e[1] * c[e[0], col]
        while (g := pick(y)) is not None:
            take(g)
    while any(g[2] for g in pending):
        take(pick(y) or next(g for g in pending if g[2]))
    return out


def partial_sums_within(c: IntMatrix, order: Sequence[tuple[int, int]], bounds: StateBounds) -> bool:
    y = [0] * c.cols
    for j, s in order:
        for col in range(c.cols):
            y[col] += s * c[j, col]
        if not bounds.admits(y):
            return False
    return True


# the solution system -------------------------------------------------------

@dataclass(frozen=True)
class _Component:
    sector: tuple[int, ...]
    start: tuple[int, ...]
    target: tuple[int, ...]
    edges: tuple[tuple[tuple[int, ...], int, tuple[int, ...]], ...]  # (x, j, x')


def _prepare(lin, k: int, n: int):
    b = lin.matrix
    if not b.is_square:
        raise MatrixShapeError("solution systems need a square linear system")
    m = k * n
    if lin.num_vars != m:
        raise ValueError(f"linear system has {lin.num_vars} variables, expected k*n = {m}")
    dec = row_monotone_decompose(b)
    c = dec.monotone
    target = vec_mat(lin.constant, unimodular_inverse(dec.unimodular))
    return c, tuple(target), m


def _components(c: IntMatrix, target: tuple[int, ...], m: int) -> list[_Component]:
    size = c.rows
    bounds = compute_bounds(c, target)
    if not bounds.admits(target):
        return []
    zero = (0,) * size
    rows = [c.row(j) for j in range(m)]
    out = []
    for sector in itertools.product((1, -1), repeat=m):
        steps = [tuple(s * v for v in rows[j]) for j, s in enumerate(sector)]
        edges = []
        seen = {zero}
        todo = deque([zero])
        while todo:
            x = todo.popleft()
            for j, step in enumerate(steps):
                y = tuple(p + q for p, q in zip(x, step))
                if not bounds.admits(y):
                    continue
                edges.append((x, j, y))
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        if target not in seen:
            continue
        pred = defaultdict(set)
        for x, _, y in edges:
            pred[y].add(x)
        alive = {target}
        todo = deque([target])
        while todo:
            y = todo.popleft()
            for x in pred[y]:
                if x not in alive:
                    alive.add(x)
                    todo.append(x)
        edges = [e for e in edges if e[0] in alive and e[2] in alive]
        out.append(_Component(sector, zero, target, tuple(edges)))
    return out


def _state(sector, x) -> str:
    return "".join("+" if s > 0 else "-" for s in sector) + ":" + ",".join(map(str, x))


def _step_label(j: int, s: int) -> str:
    return f"phi{j + 1}{'+' if s > 0 else '-'}"


def build_solution_system(lin, k: int, n: int) -> Edt0lSystem:
    """EDT0L system whose language is the set of #-joined normal-form words of
    the solutions of ``X B = c``.

    The system walks, for each sign pattern of the unknowns, through states
    ``x`` (partial sums of rows of the row-monotone factor of B) bounded by
    ``compute_bounds``; the step for unknown j appends one generator letter of
    sign ``s_j`` behind the nonterminal of j.  Reaching the transformed target
    allows one final edge that erases all nonterminals.
    """
    c, target, m = _prepare(lin, k, n)
    letters = coordinate_letters(k) if k else []
    nts = [nonterminal(j + 1) for j in range(m)]
    terminals = frozenset([HASH] + [x for pair in letters for x in pair])
    endos: dict[str, Endomorphism] = {
        IDENTITY: Endomorphism({}),
        ERASE: Endomorphism({t: () for t in nts}),
    }
    for j in range(m):
        pos, neg = letters[j % k]
        endos[_step_label(j, 1)] = Endomorphism({nts[j]: (pos, nts[j])})
        endos[_step_label(j, -1)] = Endomorphism({nts[j]: (neg, nts[j])})

    start, final = "start", "accept"
    states, edges = [start, final], []
    for comp in _components(c, target, m):
        names = {}
        for x, _, y in comp.edges:
            for z in (x, y):
                if z not in names:
                    names[z] = _state(comp.sector, z)
                    states.append(names[z])
        if comp.start not in names:  # target is the origin and nothing moves
            names[comp.start] = _state(comp.sector, comp.start)
            states.append(names[comp.start])
        edges.append((start, IDENTITY, names[comp.start]))
        edges.extend((names[x], _step_label(j, comp.sector[j]), names[y]) for x, j, y in comp.edges)
        edges.append((names[comp.target], ERASE, final))

    start_word = tuple_word([tuple(nts[i * k:(i + 1) * k]) for i in range(n)])
    return Edt0lSystem(terminals, terminals | frozenset(nts), start_word, endos,
                       Control(tuple(states), start, frozenset([final]), tuple(edges)))


# multi-tape automaton ------------------------------------------------------

@dataclass(frozen=True)
class MultiTapeAutomaton:
    tapes: int
    states: tuple[str, ...]
    start: str
    accepts: frozenset[str]
    edges: tuple[tuple[str, tuple[Word, ...], str], ...]

    def accepts_tuple(self, words: Sequence[Sequence[str]]) -> bool:
        words = [tuple(w) for w in words]
        if len(words) != self.tapes:
            raise ValueError(f"expected {self.tapes} words")
        succ = defaultdict(list)
        for s, lab, d in self.edges:
            succ[s].append((lab, d))
        first = (self.start, (0,) * self.tapes)
        seen, todo = {first}, [first]
        while todo:
            q, pos = todo.pop()
            if q in self.accepts and all(p == len(w) for p, w in zip(pos, words)):
                return True
            for lab, d in succ[q]:
                new = []
                for p, w, piece in zip(pos, words, lab):
                    if w[p:p + len(piece)] != piece:
                        break
                    new.append(p + len(piece))
                else:
                    cfg = (d, tuple(new))
                    if cfg not in seen:
                        seen.add(cfg)
                        todo.append(cfg)
        return False


def build_tuple_automaton(lin, k: int, n: int) -> MultiTapeAutomaton:
    """Same state graph as the solution system's control, with the step for
    unknown j writing one letter on tape ``j // k`` (variable ceil((j+1)/k))."""
    c, target, m = _prepare(lin, k, n)
    letters = coordinate_letters(k) if k else []
    blank = ((),) * n

    def label(j, s):
        lab = list(blank)
        lab[j // k] = (letters[j % k][0 if s > 0 else 1],)
        return tuple(lab)

    start, final = "start", "accept"
    states, edges = [start, final], []
    seen = set()
    for comp in _components(c, target, m):
        for x, j, y in comp.edges:
            edges.append((_state(comp.sector, x), label(j, comp.sector[j]), _state(comp.sector, y)))
            seen.update((_state(comp.sector, x), _state(comp.sector, y)))
        for z in (comp.start, comp.target):
            seen.add(_state(comp.sector, z))
        edges.append((start, blank, _state(comp.sector, comp.start)))
        edges.append((_state(comp.sector, comp.target), blank, final))
    states.extend(sorted(seen))
    return MultiTapeAutomaton(n, tuple(states), start, frozenset([final]), tuple(edges))


def group_tuple_automaton(dec, spec: GroupSpec) -> MultiTapeAutomaton:
    """Union over coset tuples of the per-piece automata, each finishing by
    writing the transversal letters on their tapes."""
    n = dec.num_vars
    states, edges = ["start", "accept"], []
    for idx, (cosets, (_, lin)) in enumerate(dec.pieces.items()):
        sub = build_tuple_automaton(lin, dec.rank, n)
        tag = f"{idx}/"
        states.extend(tag + s for s in sub.states)
        edges.extend((tag + s, lab, tag + d) for s, lab, d in sub.edges)
        edges.append(("start", ((),) * n, tag + sub.start))
        tail = tuple((spec.transversal_labels[u],) if u else () for u in cosets)
        edges.extend((tag + a, tail, "accept") for a in sub.accepts)
    return MultiTapeAutomaton(n, tuple(states), "start", frozenset(["accept"]), tuple(edges))
