"""EDT0L systems whose rational control is an explicit finite automaton.

Letters are strings and words are tuples of letters.  An edge of the control
automaton carries the id of an entry in the system's endomorphism table; a
path applies its endomorphisms left to right to the start word, and the
system accepts the resulting word if the path ends in an accept state and
the word lies over the terminal alphabet.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Word = tuple[str, ...]


class Edt0lError(ValueError):
    pass


@dataclass(frozen=True)
class Endomorphism:
    """Free monoid endomorphism; letters missing from ``images`` are fixed."""

    images: Mapping[str, Word] = field(default_factory=dict)

    def image(self, letter: str) -> Word:
        return self.images.get(letter, (letter,))

    def apply(self, word: Sequence[str]) -> Word:
        out: list[str] = []
        for c in word:
            out.extend(self.images.get(c, (c,)))
        return tuple(out)

    def image_options(self, letter: str, viable: Callable[[str], bool] | None = None) -> list[Word]:
        return [self.image(letter)]

    def assignments(self, letters: Iterable[str], viable=None) -> Iterator[dict[str, Word]]:
        yield {c: self.image(c) for c in letters}

    def images_of(self, word: Word, viable: Callable[[str], bool] | None = None) -> Iterator[Word]:
        yield self.apply(word)

    def min_cost(self, letter: str, cost: Callable[[str], int]) -> int:
        return sum(cost(d) for d in self.image(letter))

    def letters(self) -> set[str]:
        out = set(self.images)
        for w in self.images.values():
            out.update(w)
        return out

    def fixes(self, letter: str) -> bool:
        return self.image(letter) == (letter,)

    def rename(self, f: Callable[[str], str]) -> "Endomorphism":
        return Endomorphism({f(c): tuple(f(d) for d in w) for c, w in self.images.items()})


@dataclass(frozen=True)
class TripleSplit:
    """The family of endomorphisms over state-annotated letters ``[p, c, q]``
    obtained from ``base``: a letter ``[p, c, q]`` with ``c base = d_1 ... d_m``
    maps to ``[p, d_1, p_1] ... [p_{m-1}, d_m, q]`` for any choice of the
    intermediate states, independently per annotated letter.

    ``base`` may itself be a family; all annotated copies of one underlying
    letter then share the underlying image.  The family is expanded lazily
    against the letters that actually occur in a word.  A letter whose image
    is empty survives only when ``p == q`` and otherwise becomes the dead
    letter, which nothing rewrites.
    """

    base: "Endomorphism | TripleSplit"
    states: tuple[str, ...]
    triples: Mapping[str, tuple[str, str, str]]
    dead: str

    @property
    def _names(self) -> dict:
        cached = self.__dict__.get("_names_cache")
        if cached is None:
            cached = {v: k for k, v in self.triples.items()}
            object.__setattr__(self, "_names_cache", cached)
        return cached

    def _chains(self, p: str, img: Word, q: str, viable) -> list[Word]:
        if not img:
            return [()] if p == q else [(self.dead,)]
        names = self._names
        out: list[Word] = []

        def dfs(pos: int, state: str, acc: list[str]):
            last = pos == len(img) - 1
            for nxt in ((q,) if last else self.states):
                name = names[(state, img[pos], nxt)]
                if viable is not None and not viable(name):
                    continue
                acc.append(name)
                if last:
                    out.append(tuple(acc))
                else:
                    dfs(pos + 1, nxt, acc)
                acc.pop()

        dfs(0, p, [])
        return out

    def image_options(self, letter: str, viable: Callable[[str], bool] | None = None) -> list[Word]:
        t = self.triples.get(letter)
        if t is None:
            return [(letter,)]
        p, c, q = t
        out: dict[Word, None] = {}
        for img in self.base.image_options(c):
            out.update(dict.fromkeys(self._chains(p, img, q, viable)))
        return list(out)

    def assignments(self, letters: Iterable[str], viable=None) -> Iterator[dict[str, Word]]:
        letters = list(letters)
        annotated = [x for x in letters if x in self.triples]
        fixed = {x: (x,) for x in letters if x not in self.triples}
        under = list(dict.fromkeys(self.triples[x][1] for x in annotated))
        for base_pick in self.base.assignments(under):
            choices = []
            for x in annotated:
                p, c, q = self.triples[x]
                opts = self._chains(p, base_pick[c], q, viable)
                if not opts:
                    break
                choices.append(opts)
            else:
                for pick in itertools.product(*choices):
                    out = dict(fixed)
                    out.update(zip(annotated, pick))
                    yield out

    def images_of(self, word: Word, viable: Callable[[str], bool] | None = None) -> Iterator[Word]:
        distinct = list(dict.fromkeys(word))
        seen = set()
        for table in self.assignments(distinct, viable):
            out: list[str] = []
            for c in word:
                out.extend(table[c])
            w = tuple(out)
            if w not in seen:
                seen.add(w)
                yield w

    def min_cost(self, letter: str, cost: Callable[[str], int]) -> int:
        t = self.triples.get(letter)
        if t is None:
            return cost(letter)
        p, c, q = t
        names = self._names
        best_total = 1 << 62
        for img in self.base.image_options(c):
            if not img:
                best_total = min(best_total, 0 if p == q else cost(self.dead))
                continue
            # min-plus shortest path through the chain of intermediate states
            best = {p: 0}
            for pos, d in enumerate(img):
                targets = (q,) if pos == len(img) - 1 else self.states
                nxt: dict[str, int] = {}
                for s, v in best.items():
                    for t2 in targets:
                        cand = v + cost(names[(s, d, t2)])
                        if cand < nxt.get(t2, 1 << 62):
                            nxt[t2] = cand
                best = nxt
            best_total = min(best_total, best.get(q, 1 << 62))
        return best_total

    def letters(self) -> set[str]:
        return set(self.triples) | {self.dead}

    def fixes(self, letter: str) -> bool:
        t = self.triples.get(letter)
        return t is None or all(img == (t[1],) for img in self.base.image_options(t[1]))

    def rename(self, f: Callable[[str], str]) -> "TripleSplit":
        # the underlying letters belong to the base's alphabet and keep their
        # names; only the annotated letters and the dead letter are visible
        return TripleSplit(self.base, self.states,
                           {f(k): v for k, v in self.triples.items()}, f(self.dead))


Edge = tuple[str, str, str]


@dataclass(frozen=True)
class Control:
    states: tuple[str, ...]
    start: str
    accepts: frozenset[str]
    edges: tuple[Edge, ...]

    def successors(self) -> dict[str, list[tuple[str, str]]]:
        out: dict[str, list[tuple[str, str]]] = defaultdict(list)
        for src, lab, dst in self.edges:
            out[src].append((lab, dst))
        return out

    def trim(self) -> "Control":
        """Drop states that are unreachable or cannot reach an accept state."""
        succ: dict[str, set[str]] = defaultdict(set)
        pred: dict[str, set[str]] = defaultdict(set)
        for s, _, d in self.edges:
            succ[s].add(d)
            pred[d].add(s)
        fwd = _closure([self.start], succ)
        bwd = _closure(self.accepts, pred)
        keep = fwd & bwd
        if self.start not in keep:
            return Control((self.start,), self.start, frozenset(), ())
        return Control(
            tuple(s for s in self.states if s in keep), self.start,
            frozenset(self.accepts & keep),
            tuple(e for e in self.edges if e[0] in keep and e[2] in keep))


def _closure(seeds: Iterable[str], adj: Mapping[str, set[str]]) -> set[str]:
    seen = set(seeds)
    todo = list(seen)
    while todo:
        s = todo.pop()
        for t in adj.get(s, ()):
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


@dataclass(frozen=True)
class Edt0lSystem:
    terminals: frozenset[str]
    extended: frozenset[str]
    start: Word
    endomorphisms: Mapping[str, Endomorphism | TripleSplit]
    control: Control

    def validate(self) -> None:
        if not self.terminals <= self.extended:
            raise Edt0lError("terminal alphabet must be contained in the extended alphabet")
        if not set(self.start) <= self.extended:
            raise Edt0lError("start word uses letters outside the extended alphabet")
        states = set(self.control.states)
        if self.control.start not in states or not self.control.accepts <= states:
            raise Edt0lError("start/accept states missing from the control")
        for src, lab, dst in self.control.edges:
            if lab not in self.endomorphisms:
                raise Edt0lError(f"edge label {lab!r} has no endomorphism")
            if src not in states or dst not in states:
                raise Edt0lError(f"edge {src}->{dst} leaves the state set")
        for name, e in self.endomorphisms.items():
            if not e.letters() <= self.extended:
                raise Edt0lError(f"endomorphism {name!r} uses letters outside the extended alphabet")

    def fixes_terminals(self) -> bool:
        used = {lab for _, lab, _ in self.control.edges}
        return all(self.endomorphisms[lab].fixes(a) for lab in used for a in self.terminals)


IDENTITY = "id"


def identity_endomorphism() -> Endomorphism:
    return Endomorphism({})


def empty_system(terminals: Iterable[str] = ()) -> Edt0lSystem:
    t = frozenset(terminals)
    return Edt0lSystem(t, t, (), {}, Control(("q0",), "q0", frozenset(), ()))


# enumeration --------------------------------------------------------------

def lower_bounds(h: Edt0lSystem, cap: int) -> dict[str, dict[str, int]]:
    """For each control state q and letter c, a lower bound (saturating at
    ``cap``) on the length of what c can still become on an accepting path
    from q.  Summing over a word bounds the length of any accepted
    descendant, since one path serves all letters at once.
    """
    letters = set(h.extended) | set(h.start)
    for e in h.endomorphisms.values():
        letters |= e.letters()
    term = h.terminals
    lb = {q: {c: (1 if (q in h.control.accepts and c in term) else cap) for c in letters}
          for q in h.control.states}
    pred: dict[str, list[tuple[str, str]]] = defaultdict(list)
    for src, lab, dst in h.control.edges:
        pred[dst].append((src, lab))
    work = deque(h.control.states)
    queued = set(work)
    while work:
        q2 = work.popleft()
        queued.discard(q2)
        row2 = lb[q2]
        cost = lambda d: row2.get(d, cap)
        for q, lab in pred[q2]:
            e = h.endomorphisms[lab]
            row = lb[q]
            changed = False
            for c in letters:
                v = e.min_cost(c, cost)
                if v < row[c]:
                    row[c] = v
                    changed = True
            if changed and q not in queued:
                work.append(q)
                queued.add(q)
    return lb


@dataclass(frozen=True)
class Enumeration:
    words: list[Word]
    complete: bool  # False when the step cap cut the search short


def enumerate_language(h: Edt0lSystem, max_len: int, max_steps: int = 10_000) -> Enumeration:
    """Words of the language of length at most ``max_len`` reachable along
    control paths of at most ``max_steps`` edges.

    The search is over (state, sentential form) pairs, pruned by
    ``lower_bounds``; ``complete`` is True when the search ran dry before the
    step cap, in which case the result is exactly the language up to
    ``max_len``.
    """
    cap = max_len + 1
    lb = lower_bounds(h, cap)
    succ = h.control.successors()
    accepts, term = h.control.accepts, h.terminals

    def cost(q: str, w: Word) -> int:
        row = lb[q]
        total = 0
        for c in w:
            total += row.get(c, cap)
            if total >= cap:
                return cap
        return total

    found: set[Word] = set()
    start = (h.control.start, tuple(h.start))
    frontier = [start] if cost(*start) < cap else []
    seen = set(frontier)
    steps = 0
    while frontier:
        for q, w in frontier:
            if q in accepts and len(w) <= max_len and all(c in term for c in w):
                found.add(w)
        if steps == max_steps:
            break
        steps += 1
        nxt = []
        for q, w in frontier:
            for lab, q2 in succ.get(q, ()):
                row2 = lb[q2]
                viable = lambda c, row2=row2: row2.get(c, cap) < cap
                for w2 in h.endomorphisms[lab].images_of(w, viable):
                    pair = (q2, w2)
                    if pair not in seen and cost(q2, w2) < cap:
                        seen.add(pair)
                        nxt.append(pair)
        frontier = nxt
    return Enumeration(sorted(found, key=lambda w: (len(w), w)), not frontier)


# printing -----------------------------------------------------------------

def format_word(word: Sequence[str]) -> str:
    """Compact printing: runs become powers, an upper-case letter is the
    inverse of its lower-case twin (``A`` prints as ``a^-1``); the empty
    word prints as ``ε``."""
    if not word:
        return "ε"
    parts = []
    for letter, run in itertools.groupby(word):
        n = len(list(run))
        if letter[:1].isupper() and letter[:1].isalpha():
            base, n = letter[0].lower() + letter[1:], -n
        else:
            base = letter
        if n == 1:
            parts.append(base)
        else:
            parts.append(f"{base}^{n}")
    return "".join(parts)


def to_dot(h: Edt0lSystem, name: str = "control") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point];']
    ids = {s: f"s{i}" for i, s in enumerate(h.control.states)}
    for s in h.control.states:
        shape = "doublecircle" if s in h.control.accepts else "circle"
        lines.append(f'  {ids[s]} [label="{_esc(s)}", shape={shape}];')
    lines.append(f"  __start -> {ids[h.control.start]};")
    for src, lab, dst in h.control.edges:
        lines.append(f'  {ids[src]} -> {ids[dst]} [label="{_esc(lab)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')
