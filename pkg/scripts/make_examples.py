"""Regenerate the group and equation-system files under data/."""

from pathlib import Path

from vaeq import serialize as io
from vaeq.equations import GroupEquationSystem, VarOcc as X
from vaeq.group import GroupElement, GroupSpec, WeightedGeneratingSet

OUT = Path(__file__).resolve().parent.parent / "data"


def el(v, coset=0):
    return GroupElement(tuple(v), coset)


def main():
    OUT.mkdir(exist_ok=True)
    z, dinf = GroupSpec.free_abelian(1), GroupSpec.infinite_dihedral()
    docs = {
        "z.json": io.group_to_doc(z, WeightedGeneratingSet.build(z, [el([1])], names=["a"])),
        "z_23.json": io.group_to_doc(z, WeightedGeneratingSet.build(z, [el([2]), el([3])], names=["a2", "a3"])),
        "dinf.json": io.group_to_doc(dinf, WeightedGeneratingSet.build(dinf, [el([1]), el([0], 1)],
                                                                       names=["a", "t"])),
        "dinf_23.json": io.group_to_doc(dinf, WeightedGeneratingSet.build(
            dinf, [el([2]), el([3]), el([0], 1)], names=["a2", "a3", "t"])),
        # X - Y + Z = 1, -Y + Z = 0 written multiplicatively
        "shifted.json": io.system_to_doc(GroupEquationSystem(3, (
            (X(1), X(2, -1), X(3), el([-1])), (X(2, -1), X(3))))),
        "xyz.json": io.system_to_doc(GroupEquationSystem(3, ((X(1), X(2, -1)), (X(2), X(3, -1))))),
        "dinf_square.json": io.system_to_doc(GroupEquationSystem(1, ((X(1), X(1)),))),
        "dinf_centralizer.json": io.system_to_doc(GroupEquationSystem(1, (
            (X(1), el([1]), X(1, -1), el([-1])),))),
        "dinf_square_commute.json": io.system_to_doc(GroupEquationSystem(1, (
            (X(1), X(1)), (el([0], 1), X(1), el([0], 1), X(1, -1))))),
    }
    for name, doc in docs.items():
        (OUT / name).write_text(io.dumps(doc), encoding="utf-8")
        print("wrote", OUT / name)


if __name__ == "__main__":
    main()
