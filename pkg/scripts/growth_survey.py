"""Growth series of the sample systems under several weightings.

Prints one line per (system, weighting) with the fit status and the fitted
rational function; ``--json`` writes the full reports instead.
"""

import argparse
from dataclasses import dataclass

from vaeq import serialize as io
from vaeq.edt0l import assemble_group_solution_language
from vaeq.equations import GroupEquationSystem, VarOcc as X, reduce_to_twisted
from vaeq.group import GroupElement, GroupSpec, WeightedGeneratingSet
from vaeq.growth import format_rational, language_growth, relative_growth


@dataclass
class SurveyConfig:
    n: int = 40
    fit: int = 25
    max_steps: int = 1_000_000
    json: bool = False


def el(v, coset=0):
    return GroupElement(tuple(v), coset)


Z, DINF = GroupSpec.free_abelian(1), GroupSpec.infinite_dihedral()

SYSTEMS = {
    "x-y+z=1, -y+z=0": (GroupEquationSystem(3, ((X(1), X(2, -1), X(3), el([-1])), (X(2, -1), X(3)))), Z),
    "x=y=z": (GroupEquationSystem(3, ((X(1), X(2, -1)), (X(2), X(3, -1)))), Z),
    "dinf x^2=1": (GroupEquationSystem(1, ((X(1), X(1)),)), DINF),
    "dinf xax^-1=a": (GroupEquationSystem(1, ((X(1), el([1]), X(1, -1), el([-1])),)), DINF),
    "dinf x^2=1, txt=x": (GroupEquationSystem(1, ((X(1), X(1)), (el([0], 1), X(1), el([0], 1), X(1, -1)))), DINF),
}


def weightings(spec):
    extra = [el([0], 1)] if spec.coset_count > 1 else []
    return {
        "unit": WeightedGeneratingSet.build(spec, [el([1])] + extra),
        "{2,3}": WeightedGeneratingSet.build(spec, [el([2]), el([3])] + extra),
        "a:2 a^2:3": WeightedGeneratingSet.build(spec, [el([1]), el([2])] + extra, weights=[2, 3] + [1] * len(extra)),
    }


def main(cfg: SurveyConfig) -> None:
    verify = cfg.n + 1 - cfg.fit
    docs = []
    for name, (system, spec) in SYSTEMS.items():
        dec = reduce_to_twisted(system, spec)
        reports = {"language": language_growth(assemble_group_solution_language(dec, spec), cfg.n,
                                               max_steps=cfg.max_steps, fit=cfg.fit, verify=verify)}
        for label, gens in weightings(spec).items():
            reports[label] = relative_growth(dec, spec, gens, cfg.n, fit=cfg.fit, verify=verify)
        for label, r in reports.items():
            if cfg.json:
                docs.append({"system": name, "weighting": label, "report": io.growth_to_doc(r)})
            else:
                print(f"{name:22s} {label:10s} {r.status:24s} {format_rational(r.numerator, r.denominator)}")
    if cfg.json:
        print(io.dumps({"schema": "vaeq.survey/1", "entries": docs}), end="")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--fit", type=int, default=25)
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    main(SurveyConfig(n=a.n, fit=a.fit, json=a.json))
