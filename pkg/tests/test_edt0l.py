import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DINF, DINF_SYSTEMS, SHIFTED, Z1, dinf_gens, el
from vaeq.edt0l import (Control, Edt0lSystem, Endomorphism, FiniteAutomaton, assemble_group_solution_language,
                        block_filter, bound_reordering, build_solution_system, build_tuple_automaton,
                        closure_combine, compute_bounds, enumerate_language, fix_terminals, format_word,
                        group_tuple_automaton, partial_sums_within, separate_hashes, solution_word, to_dot,
                        vector_solution_word)
from vaeq.edt0l.core import Edt0lError
from vaeq.equations import (LinearSystem, TwistedEquation, TwistedSystem, brute_force_group_solutions,
                            brute_force_solutions, reduce_to_twisted, twisted_to_linear)
from vaeq.linalg_z import IntMatrix, MatrixShapeError, vec_mat


def words(h, max_len, steps=200):
    res = enumerate_language(h, max_len, steps)
    assert res.complete
    return set(res.words)


def w(text):
    return tuple(text)


def finite(*ws, terminals="ab#"):
    """System with start letter S and one edge per word."""
    endos = {f"w{i}": Endomorphism({"S": tuple(x)}) for i, x in enumerate(ws)}
    edges = tuple(("0", f"w{i}", "1") for i in range(len(ws)))
    return Edt0lSystem(frozenset(terminals), frozenset(terminals) | {"S"}, ("S",), endos,
                       Control(("0", "1"), "0", frozenset(["1"]), edges))


def power_system(letter="a"):
    """{letter^n : n >= 1}"""
    return Edt0lSystem(frozenset(letter), frozenset([letter, "T"]), ("T",),
                       {"grow": Endomorphism({"T": (letter, "T")}), "stop": Endomorphism({"T": (letter,)})},
                       Control(("p", "q"), "p", frozenset("q"), (("p", "grow", "p"), ("p", "stop", "q"))))


# enumeration ---------------------------------------------------------------

def test_enumerate_trivial_cases():
    ab = Edt0lSystem(frozenset("ab"), frozenset("ab"), w("ab"), {}, Control(("q",), "q", frozenset("q"), ()))
    assert words(ab, 5) == {w("ab")}
    dead = Edt0lSystem(frozenset("ab"), frozenset("ab"), w("ab"), {}, Control(("q", "r"), "q", frozenset("r"), ()))
    assert words(dead, 5) == set()


def test_enumerate_reports_step_cap():
    res = enumerate_language(power_system(), 30, max_steps=3)
    assert not res.complete
    assert set(res.words) == {w("a"), w("aa"), w("aaa")}


def test_enumerate_with_erasing_is_exact():
    # T -> a a T a ... then erase: lengths grow by 3, yet pruning stays sound
    h = Edt0lSystem(frozenset("a"), frozenset("aT"), ("T",),
                    {"g": Endomorphism({"T": ("a", "a", "T", "a")}), "e": Endomorphism({"T": ()})},
                    Control(("p", "q"), "p", frozenset("q"), (("p", "g", "p"), ("p", "e", "q"))))
    assert words(h, 10) == {("a",) * n for n in (0, 3, 6, 9)}


def test_validate_catches_bad_labels():
    h = Edt0lSystem(frozenset("a"), frozenset("a"), w("a"), {}, Control(("q",), "q", frozenset("q"),
                                                                      (("q", "missing", "q"),)))
    with pytest.raises(Edt0lError):
        h.validate()


def test_format_word():
    assert format_word(w("a#aa#AA")) == "a#a^2#a^-2"
    assert format_word(()) == "ε"
    assert format_word(("a1", "A2", "A2", "t")) == "a1a2^-2t"


# bounds ----------------------------------------------------------------------

def test_compute_bounds_examples():
    assert compute_bounds(IntMatrix.from_rows([[3]]), (5,)).bounds == (5,)
    for b1, b2 in [(0, 0), (2, -3), (-4, 1)]:
        k = compute_bounds(IntMatrix.from_rows([[1, 1], [0, 1]]), (b1, b2)).bounds
        assert k == (abs(b1), 1 + abs(b2) + abs(b1))
    assert compute_bounds(IntMatrix.zeros(3, 3), (0, 0, 0)).bounds == (0, 0, 0)
    # all-zero column: the quotient term falls back to K_{j-1}
    assert compute_bounds(IntMatrix.from_rows([[0, 2], [0, 1]]), (0, 4)).bounds == (0, 2 + 4 + 0)


def row_monotone(rng, n, density):
    rows = []
    for i in range(n):
        s = rng.choice((1, -1))
        rows.append([0] * i + [s * rng.randint(0, 3) if rng.random() < density else 0 for _ in range(i, n)])
    return IntMatrix.from_rows(rows)


def check_reordering_bounds(c, b, box):
    k = compute_bounds(c, b)
    for x in itertools.product(range(-box, box + 1), repeat=c.rows):
        if vec_mat(x, c) == tuple(b):
            order = bound_reordering(c, x)
            assert sorted(order) == sorted((j, 1 if x[j] > 0 else -1) for j in range(c.rows)
                                           for _ in range(abs(x[j])))
            assert partial_sums_within(c, order, k), (c, b, x)


@pytest.mark.parametrize("density", [0.3, 0.6, 1.0])
def test_reordering_bounds_random(density):
    rng = random.Random(int(density * 10))
    for _ in range(60):
        n = rng.randint(1, 3)
        check_reordering_bounds(row_monotone(rng, n, density), [rng.randint(-3, 3) for _ in range(n)], 5)


def test_reordering_bounds_zero_diagonal_cases():
    for rows, b in [([[0, 0, 1], [0, 0, -3], [0, 0, 2]], (0, 0, 2)),
                    ([[0, 0, 3], [0, 0, 2], [0, 0, 1]], (0, 0, 0))]:
        check_reordering_bounds(IntMatrix.from_rows(rows), b, 6)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_reordering_bounds_property(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    check_reordering_bounds(row_monotone(rng, n, rng.random()), [rng.randint(-3, 3) for _ in range(n)], 4)


# the solution system -------------------------------------------------------

def test_shifted_language(example_lin):
    h = build_solution_system(example_lin, 1, 3)
    h.validate()
    got = {format_word(x) for x in words(h, 9)}
    assert got == {"a#^2", "a#a#a", "a#a^-1#a^-1", "a#a^2#a^2", "a#a^-2#a^-2", "a#a^3#a^3", "a#a^-3#a^-3"}
    assert ("a", "#", "#") in words(h, 5) and w("a#a#a") in words(h, 5)


def test_xyz_language(xyz_lin):
    h = build_solution_system(xyz_lin, 1, 3)
    assert words(h, 11) == {vector_solution_word((m, m, m), 1) for m in range(-3, 4)}


def test_unsatisfiable_language():
    lin = twisted_to_linear(TwistedSystem(1, 1, (TwistedEquation((IntMatrix.from_rows([[2]]),), (-1,)),)))
    assert words(build_solution_system(lin, 1, 1), 10) == set()


def test_rejects_non_square():
    lin = LinearSystem(2, IntMatrix.from_rows([[1, 0, 1], [0, 1, 1]]), (0, 0, 0))
    with pytest.raises(MatrixShapeError):
        build_solution_system(lin, 1, 2)


def random_linear(rng, n, eqs, k=1):
    tw = TwistedSystem(k, n, tuple(
        TwistedEquation(tuple(IntMatrix.from_rows([[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)])
                              for _ in range(n)), tuple(rng.randint(-2, 2) for _ in range(k)))
        for _ in range(eqs)))
    return twisted_to_linear(tw)


@pytest.mark.parametrize("seed", range(12))
def test_language_equals_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    lin = random_linear(rng, n, rng.randint(1, 2))
    max_len = 7
    expected = {vector_solution_word(x, 1) for x in brute_force_solutions(lin, max_len)}
    expected = {x for x in expected if len(x) <= max_len}
    assert words(build_solution_system(lin, 1, n), max_len, 400) == expected


@pytest.mark.parametrize("seed", range(4))
def test_rank_two_language(seed):
    rng = random.Random(100 + seed)
    lin = random_linear(rng, 1, 1, k=2)
    max_len = 6
    expected = {vector_solution_word(x, 2) for x in brute_force_solutions(lin, max_len)}
    assert words(build_solution_system(lin, 2, 1), max_len, 400) == {x for x in expected if len(x) <= max_len}


def test_tuple_automaton(example_lin):
    a = build_tuple_automaton(example_lin, 1, 3)
    assert a.accepts_tuple([w("a"), w("aa"), w("aa")])
    assert a.accepts_tuple([w("a"), (), ()])
    assert not a.accepts_tuple([w("aa"), (), ()])
    assert not a.accepts_tuple([w("a"), w("a"), w("A")])


def test_tuple_automaton_agrees_with_language(xyz_lin):
    h = build_solution_system(xyz_lin, 1, 3)
    lang = words(h, 9)
    a = build_tuple_automaton(xyz_lin, 1, 3)
    for xs in itertools.product(range(-3, 4), repeat=3):
        blocks = [tuple("a" if v > 0 else "A" for _ in range(abs(v))) for v in xs]
        joined = vector_solution_word(xs, 1)
        if len(joined) <= 9:
            assert a.accepts_tuple(blocks) == (joined in lang)


# closure ---------------------------------------------------------------------

def test_union_concat_star():
    a, b = finite("a"), finite("b")
    assert words(closure_combine("union", a, b), 4) == {w("a"), w("b")}
    assert words(closure_combine("concat", a, b), 4) == {w("ab")}
    assert words(closure_combine("star", a), 5) == {("a",) * n for n in range(6)}


def test_hom_and_intersection():
    p = power_system()
    assert words(closure_combine("hom_image", p, {"a": w("ab")}), 6) == {w("ab"), w("abab"), w("ababab")}
    even = FiniteAutomaton(("0", "1"), "0", frozenset("0"), frozenset({("0", "a", "1"), ("1", "a", "0")}))
    assert words(closure_combine("intersect_regular", p, even), 8) == {("a",) * n for n in (2, 4, 6, 8)}


def test_intersect_xyz_with_regular(xyz_lin):
    h = build_solution_system(xyz_lin, 1, 3)
    # a a* (# a*)^2: positive exponents only
    states = ("s", "p1", "h1", "h2")
    delta = {("s", "a", "p1"), ("p1", "a", "p1"), ("p1", "#", "h1"), ("h1", "a", "h1"), ("h1", "#", "h2"),
             ("h2", "a", "h2")}
    reg = FiniteAutomaton(states, "s", frozenset(["h2"]), frozenset(delta))
    got = words(closure_combine("intersect_regular", h, reg), 11, 400)
    assert got == {vector_solution_word((m, m, m), 1) for m in range(1, 4)}


def test_intersection_with_multiple_accepts():
    p = power_system()
    fa = FiniteAutomaton(("0", "1", "2"), "0", frozenset(["1", "2"]),
                         frozenset({("0", "a", "1"), ("1", "a", "2"), ("2", "a", "2")}))
    assert words(closure_combine("intersect_regular", p, fa), 5) == {("a",) * n for n in range(1, 6)}


def test_nested_intersections():
    p = power_system()
    even = FiniteAutomaton(("0", "1"), "0", frozenset("0"), frozenset({("0", "a", "1"), ("1", "a", "0")}))
    three = FiniteAutomaton(("0", "1", "2"), "0", frozenset("0"),
                            frozenset({("0", "a", "1"), ("1", "a", "2"), ("2", "a", "0")}))
    h = closure_combine("intersect_regular", closure_combine("intersect_regular", p, even), three)
    assert words(h, 13, 400) == {("a",) * 6, ("a",) * 12}


def test_renaming_avoids_clashes():
    # nonterminal S of the left system is a terminal of the right one
    left = finite("a")
    right = Edt0lSystem(frozenset("S"), frozenset("S"), ("S",), {}, Control(("q",), "q", frozenset("q"), ()))
    assert words(closure_combine("union", left, right), 3) == {w("a"), ("S",)}
    assert words(closure_combine("concat", left, right), 3) == {("a", "S")}


def test_unknown_closure_kind():
    with pytest.raises(ValueError):
        closure_combine("difference", finite("a"), finite("b"))


def test_fix_terminals():
    doubling = Edt0lSystem(frozenset("a"), frozenset("a"), w("a"), {"d": Endomorphism({"a": w("aa")})},
                           Control(("q",), "q", frozenset("q"), (("q", "d", "q"),)))
    fixed = fix_terminals(doubling)
    assert fixed.fixes_terminals()
    assert words(fixed, 16) == words(doubling, 16) == {("a",) * n for n in (1, 2, 4, 8, 16)}
    already = power_system()
    assert fix_terminals(already) is already


def test_fix_terminals_shifted(example_lin):
    h = build_solution_system(example_lin, 1, 3)
    assert words(fix_terminals(h), 11) == words(h, 11)


# hash separation -------------------------------------------------------------

def test_separate_single_word():
    assert words(separate_hashes(finite("a#a"), 2), 6) == {("a", "#1", "a", "#2")}


def test_separate_shifted(example_lin):
    sep = separate_hashes(build_solution_system(example_lin, 1, 3), 3)
    expected = {("a", "#1") + ("a",) * y + ("#2",) + ("a",) * y + ("#3",) for y in range(0, 4)}
    expected |= {("a", "#1") + ("A",) * y + ("#2",) + ("A",) * y + ("#3",) for y in range(1, 4)}
    assert words(sep, 10, 400) == expected


def test_separate_empty():
    assert words(separate_hashes(finite(), 3), 6) == set()


def test_separate_requires_fixed_hash():
    h = Edt0lSystem(frozenset("a#"), frozenset("a#"), w("#"), {"x": Endomorphism({"#": w("a")})},
                    Control(("q",), "q", frozenset("q"), (("q", "x", "q"),)))
    with pytest.raises(ValueError):
        separate_hashes(h, 2)


def test_block_filter():
    f = block_filter("a", 2)
    assert f.accepts_word(("a", "#1", "#2")) and not f.accepts_word(("#2", "#1"))


# group level -----------------------------------------------------------------

def test_assemble_trivial_extension(example_lin):
    dec = reduce_to_twisted(SHIFTED, Z1)
    assert words(assemble_group_solution_language(dec, Z1), 9) == words(build_solution_system(example_lin, 1, 3), 9)


@pytest.mark.parametrize("name", sorted(DINF_SYSTEMS))
def test_assemble_dihedral(name):
    system = DINF_SYSTEMS[name]
    h = assemble_group_solution_language(reduce_to_twisted(system, DINF), DINF)
    gens = dinf_gens(1)
    oracle = {solution_word(DINF, xs) for xs in brute_force_group_solutions(system, DINF, gens, 8)}
    assert words(h, 8) == {x for x in oracle if len(x) <= 8}


def test_assemble_two_variable_dihedral():
    from vaeq.equations import GroupEquationSystem, VarOcc as X
    system = GroupEquationSystem(2, ((X(1), X(2), X(1), X(2)),))  # (XY)^2 = 1
    h = assemble_group_solution_language(reduce_to_twisted(system, DINF), DINF)
    oracle = {solution_word(DINF, xs) for xs in brute_force_group_solutions(system, DINF, dinf_gens(1), 6)}
    assert words(h, 6, 400) == {x for x in oracle if len(x) <= 6}


def test_assemble_unsatisfiable():
    from vaeq.equations import GroupEquationSystem, VarOcc as X
    system = GroupEquationSystem(1, ((X(1), X(1), el([0], 1)),))  # X^2 = t has no solution
    h = assemble_group_solution_language(reduce_to_twisted(system, DINF), DINF)
    assert words(h, 8) == set()


def test_group_tuple_automaton():
    dec = reduce_to_twisted(DINF_SYSTEMS["square"], DINF)
    a = group_tuple_automaton(dec, DINF)
    assert a.accepts_tuple([()]) and a.accepts_tuple([("A", "A", "t")])
    assert not a.accepts_tuple([("a",)])


def test_dot_export(example_lin):
    dot = to_dot(build_solution_system(example_lin, 1, 3))
    assert dot.startswith("digraph") and "doublecircle" in dot and dot.rstrip().endswith("}")
