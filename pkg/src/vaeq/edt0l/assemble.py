"""The solution language of a system over a virtually abelian group, as a
union over coset tuples of relabelled solution languages over Z^k."""

from __future__ import annotations

from ..group import GroupSpec
from .closure import HASH, hash_letters, hom_image, separate_hashes, union
from .construct import build_solution_system, coordinate_letters
from .core import Edt0lSystem, empty_system


def transversal_hom(spec: GroupSpec, cosets) -> dict:
    """``#i -> t_i #`` for i < n and ``#n -> t_n``, identity coset printing empty."""
    n = len(cosets)
    marks = hash_letters(n)
    out = {}
    for i, (mark, u) in enumerate(zip(marks, cosets)):
        t = (spec.transversal_labels[u],) if u else ()
        out[mark] = t + ((HASH,) if i < n - 1 else ())
    return out


def assemble_group_solution_language(dec, spec: GroupSpec) -> Edt0lSystem:
    """Words ``h_1 t_1 # ... # h_n t_n`` in normal form, one per solution."""
    k, n = dec.rank, dec.num_vars
    terminals = [HASH] + [x for pair in (coordinate_letters(k) if k else []) for x in pair]
    terminals += list(spec.transversal_labels[1:])
    if not dec.pieces:
        return empty_system(terminals)
    if spec.coset_count == 1:
        # with a single coset the separators are plain hashes already
        (_, lin), = dec.pieces.values()
        return build_solution_system(lin, k, n)
    parts = []
    for cosets, (_, lin) in dec.pieces.items():
        h = separate_hashes(build_solution_system(lin, k, n), n)
        parts.append(hom_image(h, transversal_hom(spec, cosets)))
    return union(*parts)
