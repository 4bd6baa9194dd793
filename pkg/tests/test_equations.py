import itertools
import random

import pytest

from conftest import DINF, DINF_SYSTEMS, SHIFTED, Z1, dinf_gens, el, z_gens
from oracles import row_times
from vaeq.equations import (GroupEquationSystem, TwistedEquation, TwistedSystem, VarOcc as X,
                            brute_force_group_solutions, brute_force_solutions, decomposition_solutions,
                            enumerate_solutions, is_solution, lift, reduce_to_twisted, twisted_to_linear)
from vaeq.group import GroupSpec, ball, multiply
from vaeq.linalg_z import IntMatrix


def test_single_constant_equation():
    # X = g, i.e. X g^-1 = 1
    for spec, v in ((Z1, (4,)), (DINF, (-2,)), (GroupSpec.free_abelian(2), (1, -3))):
        sys_ = GroupEquationSystem(1, ((X(1), el([-x for x in v])),))
        dec = reduce_to_twisted(sys_, spec)
        assert list(dec.pieces) == [(0,)]
        (tw, lin), = dec.pieces.values()
        assert tw.equations[0].coefficients == (IntMatrix.identity(spec.rank),)
        assert brute_force_solutions(lin, 4) == [v]


def test_dihedral_square_pieces():
    dec = reduce_to_twisted(DINF_SYSTEMS["square"], DINF)
    assert set(dec.pieces) == {(0,), (1,)}
    assert dec.pieces[(0,)][1].matrix.to_rows() == [[2]]
    assert dec.pieces[(1,)][1].matrix.to_rows() == [[0]]


def test_shifted_linear_system(example_lin):
    assert example_lin.matrix.to_rows() == [[1, 0, 0], [-1, -1, 0], [1, 1, 0]]
    assert example_lin.constant == (1, 0, 0)
    assert brute_force_solutions(example_lin, 3) == [(1, y, y) for y in range(-3, 4)]


def test_twisted_to_linear_rank_two():
    phi = IntMatrix.from_rows([[1, 2], [3, 4]])
    lin = twisted_to_linear(TwistedSystem(2, 1, (TwistedEquation((phi,), (5, 6)),)))
    # Y1 phi + C = 0 gives y11 + 3 y12 = -5 and 2 y11 + 4 y12 = -6
    assert lin.matrix.to_rows() == [[1, 2], [3, 4]]
    assert lin.constant == (-5, -6)
    assert lin.satisfied_by((1, -2))


def test_brute_force_examples(xyz_lin):
    inconsistent = twisted_to_linear(TwistedSystem(1, 1, (TwistedEquation((IntMatrix.zeros(1, 1),), (-1,)),)))
    assert brute_force_solutions(inconsistent, 5) == []
    assert brute_force_solutions(xyz_lin, 2) == [(m, m, m) for m in range(-2, 3)]


def test_brute_force_group_examples():
    trivial = GroupEquationSystem(1, ((X(1),),))
    assert brute_force_group_solutions(trivial, DINF, dinf_gens(1), 4) == [(DINF.identity(),)]
    sols = brute_force_group_solutions(DINF_SYSTEMS["square"], DINF, dinf_gens(1), 3)
    assert set(sols) == {(DINF.identity(),)} | {(el([y], 1),) for y in range(-2, 3)}
    ex = brute_force_group_solutions(SHIFTED, Z1, z_gens(1), 5)
    assert set(ex) == {(el([1]), el([y]), el([y])) for y in range(-5, 6)}


@pytest.mark.parametrize("name", sorted(DINF_SYSTEMS))
def test_virtual_reduction_matches_ball(name):
    system = DINF_SYSTEMS[name]
    gens = dinf_gens(1)
    b = ball(DINF, gens, 8)
    oracle = set(brute_force_group_solutions(system, DINF, gens, 8))
    dec = reduce_to_twisted(system, DINF)
    mapped = {xs for xs in decomposition_solutions(dec, 9) if all(g in b for g in xs)}
    assert mapped == oracle


def test_constant_before_first_variable():
    # g X = 1 in D_inf has the unique solution g^-1
    g = el([2], 1)
    sys_ = GroupEquationSystem(1, ((g, X(1)),))
    sols = decomposition_solutions(reduce_to_twisted(sys_, DINF), 5)
    assert sols == [(el([2], 1),)]
    assert multiply(DINF, g, sols[0][0]) == DINF.identity()


def test_variable_free_equation():
    always = GroupEquationSystem(1, ((X(1), X(1, -1)), (el([0]),)))
    never = GroupEquationSystem(1, ((X(1), X(1, -1)), (el([1]),)))
    assert reduce_to_twisted(always, Z1).pieces
    assert decomposition_solutions(reduce_to_twisted(never, Z1), 3) == []


def test_twisted_solutions_equal_flattened():
    # solve the twisted system directly on a box and compare
    rot = IntMatrix.from_rows([[0, 1], [-1, 0]])
    tw = TwistedSystem(2, 2, (TwistedEquation((IntMatrix.identity(2), rot), (1, -1)),))
    lin = twisted_to_linear(tw)
    direct = []
    for y1 in itertools.product(range(-3, 4), repeat=2):
        for y2 in itertools.product(range(-3, 4), repeat=2):
            a, b = row_times(y1, IntMatrix.identity(2).to_rows()), row_times(y2, rot.to_rows())
            if all(x + y + c == 0 for x, y, c in zip(a, b, (1, -1))):
                direct.append(y1 + y2)
    assert brute_force_solutions(lin, 3) == sorted(direct)


def test_padding_keeps_solutions():
    # one equation in three unknowns pads to 3x3
    tw = TwistedSystem(1, 3, (TwistedEquation(tuple(IntMatrix.from_rows([[v]]) for v in (1, 2, -1)), (0,)),))
    lin = twisted_to_linear(tw)
    assert lin.size == 3
    for x in itertools.product(range(-2, 3), repeat=3):
        assert lin.satisfied_by(x) == (x[0] + 2 * x[1] - x[2] == 0)


def random_dinf_system(rng):
    n = rng.randint(1, 2)
    eqs = []
    for _ in range(rng.randint(1, 2)):
        eq = []
        for _ in range(rng.randint(1, 4)):
            if rng.random() < 0.6:
                eq.append(X(rng.randint(1, n), rng.choice((1, -1))))
            else:
                eq.append(el([rng.randint(-2, 2)], rng.randint(0, 1)))
        eqs.append(tuple(eq))
    return GroupEquationSystem(n, tuple(eqs))


def test_random_dihedral_systems_against_ball():
    rng = random.Random(5)
    gens = dinf_gens(1)
    for _ in range(25):
        system = random_dinf_system(rng)
        radius = 5
        b = ball(DINF, gens, radius)
        oracle = set(brute_force_group_solutions(system, DINF, gens, radius))
        dec = reduce_to_twisted(system, DINF)
        assert {xs for xs in decomposition_solutions(dec, radius + 1) if all(g in b for g in xs)} == oracle
        found = {xs for xs, _ in enumerate_solutions(dec, b, radius * system.num_vars)}
        assert found == oracle
        assert all(is_solution(DINF, system, xs) for xs in found)


def test_enumerate_solutions_weights():
    dec = reduce_to_twisted(SHIFTED, Z1)
    b = ball(Z1, z_gens(1), 7)
    sols = list(enumerate_solutions(dec, b, 7))
    assert sorted(ws for _, ws in sols) == sorted([(1, abs(y), abs(y)) for y in range(-3, 4)])


def test_lift():
    assert lift(2, (1, 0), (1, 2, 3, 4)) == (el([1, 2], 1), el([3, 4], 0))


def test_rejects_bad_variable_index():
    with pytest.raises(ValueError):
        GroupEquationSystem(1, ((X(2),),))
    with pytest.raises(ValueError):
        X(1, 2)
