"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 unreadable or malformed input,
4 violated group or system invariant, 5 enumeration cap hit, 6 resource
guard tripped.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import serialize as io
from .edt0l import assemble_group_solution_language, closure_combine, enumerate_language, format_word, to_dot
from .edt0l.core import Edt0lError
from .equations import enumerate_solutions, reduce_to_twisted
from .group import GroupSpecError, ResourceLimitError, ball, validate_spec
from .growth import format_rational, language_growth, multivariate_growth, relative_growth
from .linalg_z import MatrixShapeError

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_CAP, EXIT_RESOURCE = 0, 3, 4, 5, 6

COMMANDS = ("validate", "reduce", "solve", "build-edt0l", "enumerate", "growth", "mgrowth", "closure")


@dataclass
class RunConfig:
    command: str
    group: Path | None = None
    system: Path | None = None
    inputs: list[Path] = field(default_factory=list)
    op: str | None = None
    hom: str | None = None
    mode: str = "language"
    max_weight: int = 10
    max_len: int = 12
    max_steps: int = 10_000
    box: int = 6
    fit: int | None = None
    out: Path | None = None
    format: str = "text"

    def check(self) -> None:
        for name in ("max_weight", "max_len", "max_steps", "box"):
            if getattr(self, name) < 0:
                raise ValueError(f"--{name.replace('_', '-')} must be non-negative")
        if self.command == "closure" and self.op is None:
            raise ValueError("closure needs --op")
        needs_group = self.command != "closure"
        if needs_group and self.group is None:
            raise ValueError(f"{self.command} needs --group")
        if self.command not in ("validate", "closure") and self.system is None:
            raise ValueError(f"{self.command} needs --system")
        for p in [self.group, self.system, *self.inputs]:
            if p is not None and not Path(p).exists():
                raise FileNotFoundError(f"no such file: {p}")


class CapSaturated(Exception):
    def __init__(self, text: str):
        super().__init__("enumeration cap reached")
        self.text = text


def _load(cfg: RunConfig):
    spec, gens = io.group_from_doc(io.read(cfg.group, io.GROUP))
    validate_spec(spec)
    system = io.system_from_doc(io.read(cfg.system, io.SYSTEM)) if cfg.system else None
    if system is not None:
        for eq in system.equations:
            for it in eq:
                if hasattr(it, "coset") and (len(it.vector) != spec.rank or not 0 <= it.coset < spec.coset_count):
                    raise GroupSpecError(f"constant {io.format_element(it)} does not belong to the group")
    return spec, gens, system


def _cmd_validate(cfg):
    spec, gens, _ = _load(cfg)
    if cfg.format == "structured":
        return io.dumps({"schema": "vaeq.validation/1", "valid": True, "rank": spec.rank,
                         "coset_count": spec.coset_count})
    return f"valid: rank {spec.rank}, {spec.coset_count} coset(s), {len(gens.generators)} generator(s)\n"


def _cmd_reduce(cfg):
    spec, _, system = _load(cfg)
    dec = reduce_to_twisted(system, spec)
    if cfg.format == "structured":
        return io.dumps(io.decomposition_to_doc(dec))
    lines = []
    for cosets, (_, lin) in dec.pieces.items():
        labels = " ".join(spec.transversal_labels[u] for u in cosets)
        lines.append(f"cosets ({labels}):")
        for r in lin.matrix.to_rows():
            lines.append("  " + " ".join(f"{v:3d}" for v in r))
        lines.append("  c = " + " ".join(map(str, lin.constant)))
    if not dec.pieces:
        lines.append("no coset tuple admits solutions")
    return "\n".join(lines) + "\n"


def _cmd_solve(cfg):
    spec, gens, system = _load(cfg)
    dec = reduce_to_twisted(system, spec)
    sols = sorted(enumerate_solutions(dec, ball(spec, gens, cfg.max_weight), cfg.max_weight),
                  key=lambda s: (sum(s[1]), s[0]))
    if cfg.format == "structured":
        return io.dumps({"schema": "vaeq.solutions/1", "max_weight": cfg.max_weight, "solutions": [
            {"tuple": [io.format_element(g) for g in xs], "weights": list(ws)} for xs, ws in sols]})
    return "".join(f"{' '.join(io.format_element(g) for g in xs)}  weight {sum(ws)}\n" for xs, ws in sols)


def _build(cfg):
    spec, gens, system = _load(cfg)
    return spec, gens, system, assemble_group_solution_language(reduce_to_twisted(system, spec), spec)


def _cmd_build(cfg):
    *_, h = _build(cfg)
    if cfg.format == "dot":
        return to_dot(h)
    if cfg.format == "structured":
        return io.dumps(io.edt0l_to_doc(h))
    return (f"terminals: {' '.join(sorted(h.terminals))}\n"
            f"start word: {' '.join(h.start)}\n"
            f"control: {len(h.control.states)} states, {len(h.control.edges)} edges, "
            f"{len(h.endomorphisms)} endomorphisms\n")


def _cmd_enumerate(cfg):
    *_, h = _build(cfg)
    res = enumerate_language(h, cfg.max_len, cfg.max_steps)
    if cfg.format == "structured":
        text = io.dumps({"schema": "vaeq.words/1", "max_len": cfg.max_len, "complete": res.complete,
                         "words": [list(w) for w in res.words]})
    else:
        text = "".join(format_word(w) + "\n" for w in res.words)
    if not res.complete:
        raise CapSaturated(text)
    return text


def _cmd_growth(cfg):
    spec, gens, system, h = _build(cfg)
    fit = cfg.fit
    verify = None if fit is None else cfg.max_weight + 1 - fit
    if cfg.mode == "language":
        report = language_growth(h, cfg.max_weight, max_steps=cfg.max_steps, fit=fit, verify=verify)
    else:
        report = relative_growth(reduce_to_twisted(system, spec), spec, gens, cfg.max_weight, fit=fit, verify=verify)
    if cfg.format == "structured":
        text = io.dumps(io.growth_to_doc(report))
    else:
        text = (f"status: {report.status}\n"
                f"coefficients: {' '.join(map(str, report.coefficients))}\n"
                f"order: {report.order}\n"
                f"series: {format_rational(report.numerator, report.denominator)}\n")
    if report.status == "cap-saturated":
        raise CapSaturated(text)
    return text


def _cmd_mgrowth(cfg):
    spec, gens, system = _load(cfg)
    table = multivariate_growth(reduce_to_twisted(system, spec), spec, gens, cfg.max_weight)
    if cfg.format == "structured":
        return io.dumps(io.mgrowth_to_doc(table))
    lines = [f"{' '.join(map(str, w))}: {c}" for w, c in table.counts.items()]
    return "\n".join(lines + [f"# {table.note}"]) + "\n"


def _parse_hom(text: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        src, _, dst = part.partition("=")
        out[src.strip()] = tuple(dst.split())
    return out


def _cmd_closure(cfg):
    op = cfg.op
    docs = [io.read(p) for p in cfg.inputs]
    if op in ("union", "concat"):
        if len(docs) != 2:
            raise ValueError(f"{op} takes two stored systems")
        h = closure_combine(op, *(io.edt0l_from_doc(d) for d in docs))
    elif op in ("star", "hom_image"):
        if len(docs) != 1:
            raise ValueError(f"{op} takes one stored system")
        base = io.edt0l_from_doc(docs[0])
        h = closure_combine(op, base) if op == "star" else closure_combine(op, base, _parse_hom(cfg.hom or ""))
    elif op == "intersect_regular":
        if len(docs) != 2:
            raise ValueError("intersect_regular takes a stored system and a stored automaton")
        h = closure_combine(op, io.edt0l_from_doc(docs[0]), io.automaton_from_doc(docs[1]))
    else:
        raise ValueError(f"unknown closure operation {op!r}")
    if cfg.format == "dot":
        return to_dot(h)
    if cfg.format == "structured":
        return io.dumps(io.edt0l_to_doc(h))
    res = enumerate_language(h, cfg.max_len, cfg.max_steps)
    text = "".join(format_word(w) + "\n" for w in res.words)
    if not res.complete:
        raise CapSaturated(text)
    return text


HANDLERS = {
    "validate": _cmd_validate, "reduce": _cmd_reduce, "solve": _cmd_solve, "build-edt0l": _cmd_build,
    "enumerate": _cmd_enumerate, "growth": _cmd_growth, "mgrowth": _cmd_mgrowth, "closure": _cmd_closure,
}


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is not None:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    try:
        cfg.check()
        text = HANDLERS[cfg.command](cfg)
    except CapSaturated as exc:
        _emit(cfg, exc.text)
        print("error: enumeration cap reached; output is incomplete", file=sys.stderr)
        return EXIT_CAP
    except (GroupSpecError, MatrixShapeError, Edt0lError) as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ResourceLimitError, MemoryError, RecursionError) as exc:
        print(f"error: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (io.SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _emit(cfg, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vaeq", description="Equations in virtually abelian groups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", type=Path, help="stored systems/automata for `closure`")
    p.add_argument("--group", type=Path)
    p.add_argument("--system", type=Path)
    p.add_argument("--op", choices=("union", "concat", "star", "hom_image", "intersect_regular"))
    p.add_argument("--hom", help="letter images for hom_image, e.g. 'a=b b,#=#'")
    p.add_argument("--mode", choices=("language", "relative"), default="language",
                   help="growth of the solution language or relative to the generating set")
    p.add_argument("--max-weight", type=int, default=10)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--box", type=int, default=6)
    p.add_argument("--fit", type=int, help="number of coefficients used for fitting")
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=("text", "structured", "dot"), default="text")
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(ns.command, ns.group, ns.system, list(ns.inputs), ns.op, ns.hom, ns.mode,
                    ns.max_weight, ns.max_len, ns.max_steps, ns.box, ns.fit, ns.out, ns.format)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
