"""Closure of EDT0L languages under union, concatenation, Kleene star,
homomorphic images and intersection with regular languages, together with
the terminal-fixing and hash-separation normal forms.

Every construction returns a new system; nonterminal letters, states and
endomorphism ids of the inputs are renamed where they would clash.
Terminal letters are never renamed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import IDENTITY, Control, Edt0lSystem, Endomorphism, TripleSplit, Word, empty_system

HASH = "#"


@dataclass(frozen=True)
class FiniteAutomaton:
    """Nondeterministic finite automaton over single letters."""

    states: tuple[str, ...]
    start: str
    accepts: frozenset[str]
    transitions: frozenset[tuple[str, str, str]]

    def accepts_word(self, word: Sequence[str]) -> bool:
        current = {self.start}
        for a in word:
            current = {q for p, b, q in self.transitions if p in current and b == a}
            if not current:
                return False
        return bool(current & self.accepts)

    def single_accept_parts(self) -> list["FiniteAutomaton"]:
        return [FiniteAutomaton(self.states, self.start, frozenset([f]), self.transitions)
                for f in sorted(self.accepts)]


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def _all_letters(h: Edt0lSystem) -> set[str]:
    out = set(h.extended) | set(h.start)
    for e in h.endomorphisms.values():
        out |= e.letters()
    return out


def _relabel(h: Edt0lSystem, mapping: Mapping[str, str], tag: str) -> Edt0lSystem:
    f = lambda c: mapping.get(c, c)
    endos = {tag + k: e.rename(f) for k, e in h.endomorphisms.items()}
    ctrl = h.control
    control = Control(
        tuple(tag + s for s in ctrl.states), tag + ctrl.start,
        frozenset(tag + s for s in ctrl.accepts),
        tuple((tag + s, tag + lab, tag + d) for s, lab, d in ctrl.edges))
    return Edt0lSystem(h.terminals, frozenset(f(c) for c in h.extended),
                       tuple(f(c) for c in h.start), endos, control)


def _separate(systems: Sequence[Edt0lSystem], reserved: Iterable[str] = ()) -> tuple[list[Edt0lSystem], set[str]]:
    """Rename nonterminals so that no system's nonterminal occurs in any other
    system or in ``reserved``; returns the systems and every letter in use."""
    taken = set(reserved)
    for h in systems:
        taken |= h.terminals
    out = []
    for i, h in enumerate(systems):
        others = set()
        for j, g in enumerate(systems):
            if j != i:
                others |= _all_letters(g)
        mapping = {}
        for c in sorted(_all_letters(h) - h.terminals):
            if c in taken or c in others:
                mapping[c] = _fresh(c, taken | others)
            else:
                mapping[c] = c
            taken.add(mapping[c])
        out.append(_relabel(h, mapping, f"{i}/"))
    return out, taken


# terminal fixing -----------------------------------------------------------

def fix_terminals(h: Edt0lSystem) -> Edt0lSystem:
    """Equivalent system whose endomorphisms all fix the terminal letters.

    Terminals are replaced by barred stand-ins throughout: each endomorphism
    maps every non-terminal letter c to the barred image of c and every bar
    of a to the barred image of a.  One final edge unbars.  A system that
    already fixes its terminals is returned unchanged.
    """
    if h.fixes_terminals():
        return h
    if any(not isinstance(e, Endomorphism) for e in h.endomorphisms.values()):
        raise ValueError("terminal fixing needs plain endomorphisms")
    taken = _all_letters(h)
    bar = {a: _fresh(a + "̄", taken) for a in sorted(h.terminals)}
    barred = lambda w: tuple(bar.get(c, c) for c in w)
    endos: dict[str, Endomorphism] = {}
    for name, e in h.endomorphisms.items():
        images = {}
        for c in _all_letters(h) - h.terminals:
            img = barred(e.image(c))
            if img != (c,):
                images[c] = img
        for a, b in bar.items():
            img = barred(e.image(a))
            if img != (b,):
                images[b] = img
        endos[name] = Endomorphism(images)
    taken_ids = set(endos)
    theta = _fresh("unbar", taken_ids)
    endos[theta] = Endomorphism({b: (a,) for a, b in bar.items()})
    final = _fresh("fixed", set(h.control.states))
    ctrl = h.control
    control = Control(ctrl.states + (final,), ctrl.start, frozenset([final]),
                      ctrl.edges + tuple((q, theta, final) for q in sorted(ctrl.accepts)))
    return Edt0lSystem(h.terminals, h.extended | frozenset(bar.values()), barred(h.start), endos, control)


# closure operations --------------------------------------------------------

def union(*systems: Edt0lSystem) -> Edt0lSystem:
    """A fresh start letter chooses, on the first edge, whose start word to use."""
    if not systems:
        return empty_system()
    parts, taken = _separate(systems)
    top = _fresh("⊥", taken)
    endos: dict = {}
    states, edges, accepts = ["start"], [], set()
    for i, h in enumerate(parts):
        init = f"init{i}"
        endos[init] = Endomorphism({top: h.start})
        endos.update(h.endomorphisms)
        states.extend(h.control.states)
        edges.append(("start", init, h.control.start))
        edges.extend(h.control.edges)
        accepts |= h.control.accepts
    terminals = frozenset().union(*(h.terminals for h in parts))
    extended = frozenset().union(*(h.extended for h in parts)) | {top}
    return Edt0lSystem(terminals, extended, (top,), endos,
                       Control(tuple(states), "start", frozenset(accepts), tuple(edges)))


def concat(left: Edt0lSystem, right: Edt0lSystem) -> Edt0lSystem:
    """Run the left control on the left copy, then the right control on the
    right copy; both sides fix terminals so neither disturbs the other."""
    (l, r), _ = _separate([fix_terminals(left), fix_terminals(right)])
    endos = dict(l.endomorphisms)
    endos.update(r.endomorphisms)
    endos[IDENTITY] = Endomorphism({})
    edges = l.control.edges + r.control.edges + tuple(
        (q, IDENTITY, r.control.start) for q in sorted(l.control.accepts))
    control = Control(l.control.states + r.control.states, l.control.start, r.control.accepts, edges)
    return Edt0lSystem(l.terminals | r.terminals, l.extended | r.extended,
                       l.start + r.start, endos, control)


def star(h: Edt0lSystem) -> Edt0lSystem:
    """Start word ``S``; each round rewrites ``S -> w S``, runs the control on
    the new copy and, on acceptance, seals leftover nonterminals into a dead
    letter.  Erasing ``S`` ends the word."""
    (g,), taken = _separate([fix_terminals(h)])
    top = _fresh("S", taken)
    dead = _fresh("Z", taken)
    nts = sorted(g.extended - g.terminals)
    endos = dict(g.endomorphisms)
    endos["push"] = Endomorphism({top: g.start + (top,)})
    endos["seal"] = Endomorphism({c: (dead,) for c in nts})
    endos["stop"] = Endomorphism({top: ()})
    states = ("hub", "done") + g.control.states
    edges = g.control.edges + (("hub", "push", g.control.start), ("hub", "stop", "done")) + tuple(
        (q, "seal", "hub") for q in sorted(g.control.accepts))
    return Edt0lSystem(g.terminals, g.extended | {top, dead}, (top,), endos,
                       Control(states, "hub", frozenset(["done"]), edges))


def hom_image(h: Edt0lSystem, hom: Mapping[str, Word]) -> Edt0lSystem:
    """Image under a monoid homomorphism of the terminal alphabet; terminals
    missing from ``hom`` map to themselves."""
    targets = set()
    for a in h.terminals:
        targets.update(hom.get(a, (a,)))
    (g,), _ = _separate([fix_terminals(h)], reserved=targets)
    endos = dict(g.endomorphisms)
    endos["hom"] = Endomorphism({a: tuple(hom[a]) for a in g.terminals if a in hom})
    edges = g.control.edges + tuple((q, "hom", "image") for q in sorted(g.control.accepts))
    control = Control(g.control.states + ("image",), g.control.start, frozenset(["image"]), edges)
    return Edt0lSystem(frozenset(targets), g.extended | frozenset(targets), g.start, endos, control)


def intersect_regular(h: Edt0lSystem, automaton: FiniteAutomaton) -> Edt0lSystem:
    """Intersection with the language of a finite automaton.

    Letters are annotated as ``[p, c, q]``, read as "c will derive a word
    taking the automaton from p to q"; every endomorphism becomes the family
    of its annotated versions.  A final step maps ``[p, a, q]`` to ``a`` when
    ``a`` is a transition from p to q and to a dead letter otherwise.
    Automata with several accept states are split into a union.
    """
    if len(automaton.accepts) != 1:
        return union(*(intersect_regular(h, part) for part in automaton.single_accept_parts()))
    (g,), taken = _separate([fix_terminals(h)])
    (final,) = automaton.accepts
    states = tuple(automaton.states)
    top = _fresh("⊥", taken)
    dead = _fresh("Z", taken)
    alphabet = sorted(_all_letters(g) | {top})
    triples = {}
    for c in alphabet:
        for p, q in itertools.product(states, repeat=2):
            triples[_fresh(f"[{p},{c},{q}]", taken)] = (p, c, q)

    def family(base):
        return TripleSplit(base, states, triples, dead)

    endos = {name: family(e) for name, e in g.endomorphisms.items()}
    endos["init"] = family(Endomorphism({top: g.start}))
    delta = automaton.transitions
    endos["read"] = Endomorphism({
        name: ((c,) if (p, c, q) in delta and c in g.terminals else (dead,))
        for name, (p, c, q) in triples.items() if c in g.terminals})
    start_letter = next(n for n, t in triples.items() if t == (automaton.start, top, final))
    ctrl = g.control
    control = Control(
        ("begin",) + ctrl.states + ("read",), "begin", frozenset(["read"]),
        (("begin", "init", ctrl.start),) + ctrl.edges
        + tuple((q, "read", "read") for q in sorted(ctrl.accepts)))
    return Edt0lSystem(g.terminals, g.terminals | frozenset(triples) | {dead},
                       (start_letter,), endos, control)


def closure_combine(kind: str, *args) -> Edt0lSystem:
    if kind == "union":
        return union(*args)
    if kind == "concat":
        return concat(*args)
    if kind == "star":
        return star(*args)
    if kind == "hom_image":
        return hom_image(*args)
    if kind == "intersect_regular":
        return intersect_regular(*args)
    raise ValueError(f"unknown closure operation {kind!r}")


# hash separation -----------------------------------------------------------

def hash_letters(n: int) -> list[str]:
    return [f"{HASH}{i}" for i in range(1, n + 1)]


def block_filter(body: Iterable[str], n: int) -> FiniteAutomaton:
    """Automaton for ``v_1 #1 v_2 #2 ... v_n #n`` with the v_i over ``body``."""
    body = sorted(body)
    marks = hash_letters(n)
    states = tuple(str(i) for i in range(n + 1))
    delta = {(str(i), a, str(i)) for i in range(n + 1) for a in body}
    delta |= {(str(i - 1), marks[i - 1], str(i)) for i in range(1, n + 1)}
    return FiniteAutomaton(states, "0", frozenset([str(n)]), frozenset(delta))


def separate_hashes(h: Edt0lSystem, n: int, hash_letter: str = HASH) -> Edt0lSystem:
    """From a language of words ``w_1 # ... # w_n`` to ``w_1 #1 w_2 #2 ... w_n #n``.

    A trailing hash is appended to the start word; each hash an endomorphism
    writes may become any of ``#1 .. #n`` (one edge per choice), and the
    result is cut down by ``block_filter`` so only the correctly numbered
    words survive.
    """
    if n < 1:
        raise ValueError("need at least one block")
    if any(not isinstance(e, Endomorphism) or not e.fixes(hash_letter) for e in h.endomorphisms.values()):
        raise ValueError("every endomorphism must fix the hash letter")
    marks = hash_letters(n)
    (g,), taken = _separate([h], reserved=marks)
    top = _fresh("⊥", taken)

    def variants(e: Endomorphism) -> list[Endomorphism]:
        slots = [(c, i) for c, w in sorted(e.images.items()) for i, d in enumerate(w) if d == hash_letter]
        out = []
        for pick in itertools.product(marks, repeat=len(slots)):
            images = {c: list(w) for c, w in e.images.items()}
            for (c, i), mark in zip(slots, pick):
                images[c][i] = mark
            out.append(Endomorphism({c: tuple(w) for c, w in images.items()}))
        return out

    endos: dict[str, Endomorphism] = {}
    edges = []
    table = dict(g.endomorphisms)
    table["init"] = Endomorphism({top: g.start + (hash_letter,)})
    by_name = {}
    for name, e in table.items():
        by_name[name] = []
        for i, v in enumerate(variants(e)):
            vid = f"{name}~{i}"
            endos[vid] = v
            by_name[name].append(vid)
    ctrl = g.control
    for s, lab, d in ctrl.edges:
        edges.extend((s, vid, d) for vid in by_name[lab])
    edges.extend(("begin", vid, ctrl.start) for vid in by_name["init"])
    body = g.terminals - {hash_letter}
    terminals = frozenset(body) | frozenset(marks)
    split = Edt0lSystem(terminals, (g.extended - {hash_letter}) | terminals | {top}, (top,), endos,
                        Control(("begin",) + ctrl.states, "begin", ctrl.accepts, tuple(edges)))
    return intersect_regular(split, block_filter(body, n))
