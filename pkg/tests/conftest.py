import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vaeq.equations import GroupEquationSystem, VarOcc as X, reduce_to_twisted  # noqa: E402
from vaeq.group import GroupElement, GroupSpec, WeightedGeneratingSet  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"


def el(v, coset=0):
    return GroupElement(tuple(v), coset)


Z1 = GroupSpec.free_abelian(1)
DINF = GroupSpec.infinite_dihedral()

SHIFTED = GroupEquationSystem(3, ((X(1), X(2, -1), X(3), el([-1])), (X(2, -1), X(3))))
XYZ = GroupEquationSystem(3, ((X(1), X(2, -1)), (X(2), X(3, -1))))
DINF_SYSTEMS = {
    "square": GroupEquationSystem(1, ((X(1), X(1)),)),
    "centralizer": GroupEquationSystem(1, ((X(1), el([1]), X(1, -1), el([-1])),)),
    "square_commute": GroupEquationSystem(1, ((X(1), X(1)), (el([0], 1), X(1), el([0], 1), X(1, -1)))),
}


def z_gens(*steps):
    return WeightedGeneratingSet.build(Z1, [el([s]) for s in steps])


def dinf_gens(*steps):
    return WeightedGeneratingSet.build(DINF, [el([s]) for s in steps] + [el([0], 1)])


@pytest.fixture
def example_lin():
    (_, lin), = reduce_to_twisted(SHIFTED, Z1).pieces.values()
    return lin


@pytest.fixture
def xyz_lin():
    (_, lin), = reduce_to_twisted(XYZ, Z1).pieces.values()
    return lin


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
