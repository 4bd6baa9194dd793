"""Weighted growth of solution sets and solution languages.

Rationality is checked empirically: the shortest linear recurrence of an
initial window of coefficients is found exactly (Berlekamp-Massey over the
rationals) and must then predict the held-out coefficients.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .edt0l.core import Edt0lSystem, enumerate_language
from .equations import CosetDecomposition, enumerate_solutions
from .group import GroupSpec, WeightedGeneratingSet, ball
from .polyhedral import ElementarySet, PolyhedralSet

VERIFIED = "verified"
NO_RECURRENCE = "no-recurrence-at-order"
CAP_SATURATED = "cap-saturated"


@dataclass(frozen=True)
class GrowthReport:
    coefficients: tuple[int, ...]
    order: int
    recurrence: tuple[Fraction, ...]  # s_n = sum_i recurrence[i] * s_{n-1-i}
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    fit_window: tuple[int, int]
    verify_window: tuple[int, int]
    status: str
    mismatches: tuple[int, ...] = ()
    note: str = ""

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def series(self, length: int) -> list[Fraction]:
        """Expand numerator / denominator as a power series."""
        return series_expand(self.numerator, self.denominator, length)


def berlekamp_massey(seq: Sequence[Fraction]) -> list[Fraction]:
    """Connection polynomial ``1 + c_1 x + ... + c_L x^L`` (as a coefficient
    list, possibly with trailing zeros, length L+1) of the shortest linear
    recurrence generating ``seq``."""
    c, b = [Fraction(1)], [Fraction(1)]
    length, shift, last = 0, 1, Fraction(1)
    for n, s in enumerate(seq):
        d = s + sum(c[i] * seq[n - i] for i in range(1, length + 1))
        if d == 0:
            shift += 1
            continue
        coef = d / last
        t = list(c)
        c = c + [Fraction(0)] * max(0, len(b) + shift - len(c))
        for i, v in enumerate(b):
            c[i + shift] -= coef * v
        if 2 * length <= n:
            length, b, last, shift = n + 1 - length, t, d, 1
        else:
            shift += 1
    c = c + [Fraction(0)] * max(0, length + 1 - len(c))
    return c[:length + 1]


def _integral(poly: Sequence[Fraction]) -> list[int]:
    den = 1
    for v in poly:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in poly]


def _trim(poly: list) -> list:
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def series_expand(num: Sequence[int], den: Sequence[int], length: int) -> list[Fraction]:
    out: list[Fraction] = []
    for n in range(length):
        v = Fraction(num[n]) if n < len(num) else Fraction(0)
        for i in range(1, min(n, len(den) - 1) + 1):
            v -= den[i] * out[n - i]
        out.append(v / den[0])
    return out


def fit_rational(coeffs: Sequence[int], fit: int | None = None, verify: int | None = None,
                 saturated: bool = False) -> GrowthReport:
    """Fit the shortest recurrence on ``coeffs[:fit]`` and verify it on the
    next ``verify`` coefficients (default: 60% fit, the rest verify)."""
    coeffs = tuple(int(v) for v in coeffs)
    total = len(coeffs)
    if fit is None:
        fit = max(1, -(-total * 3 // 5)) if total else 0
    if verify is None:
        verify = total - fit
    if fit + verify > total:
        raise ValueError("fit and verify windows exceed the available coefficients")
    seq = [Fraction(v) for v in coeffs[:fit + verify]]
    conn = berlekamp_massey(seq[:fit])
    order = len(conn) - 1
    mismatches = tuple(
        n for n in range(order, fit + verify)
        if seq[n] + sum(conn[i] * seq[n - i] for i in range(1, order + 1)) != 0)
    num = [sum((conn[i] * seq[d - i] for i in range(min(d, order) + 1)), Fraction(0))
           for d in range(min(order, fit))]
    den_f = list(conn)
    scale = _integral(num + den_f)
    g = math.gcd(*scale) or 1
    scale = [v // g for v in scale]
    numerator = _trim(scale[:len(num)] or [0])
    denominator = _trim(scale[len(num):])
    if 2 * order > fit:
        status, note = NO_RECURRENCE, f"shortest recurrence has order {order} > fit/2"
    elif mismatches:
        status, note = NO_RECURRENCE, "recurrence fails on the verification window"
    else:
        status, note = VERIFIED, ""
    if saturated:
        status, note = CAP_SATURATED, "coefficient enumeration hit its cap"
    return GrowthReport(coeffs[:fit + verify], order, tuple(-v for v in conn[1:]),
                        tuple(numerator), tuple(denominator), (0, fit - 1),
                        (fit, fit + verify - 1), status, mismatches, note)


def same_rational(report: GrowthReport, num: Sequence[int], den: Sequence[int]) -> bool:
    """Equality of rational functions by cross-multiplication."""
    lhs = _poly_mul(report.numerator, den)
    rhs = _poly_mul(num, report.denominator)
    return _trim(list(lhs)) == _trim(list(rhs))


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def format_rational(num: Sequence[int], den: Sequence[int]) -> str:
    return f"({_format_poly(num)}) / ({_format_poly(den)})"


def _format_poly(p: Sequence[int]) -> str:
    terms = []
    for i, a in enumerate(p):
        if a == 0:
            continue
        mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        coef = str(a) if (abs(a) != 1 or i == 0) else ("-" if a < 0 else "")
        terms.append(coef + mono)
    return " + ".join(terms).replace("+ -", "- ") or "0"


# counting ------------------------------------------------------------------

def _counts(weights: Iterable[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for w in weights:
        if w <= n:
            out[w] += 1
    return out


def language_counts(source, n: int, letter_weights: Mapping[str, int] | None = None,
                    max_steps: int = 10_000) -> tuple[list[int], bool]:
    """sigma(0..n) of a language given as an EDT0L system or a word list.
    Returns the counts and whether the enumeration was cut short."""
    saturated = False
    if isinstance(source, Edt0lSystem):
        # every letter weighs at least 1, so length n bounds weight n
        res = enumerate_language(source, n, max_steps)
        words, saturated = res.words, not res.complete
    else:
        words = list(source)
    weight = (lambda w: len(w)) if letter_weights is None else \
        (lambda w: sum(letter_weights.get(c, 1) for c in w))
    return _counts(map(weight, words), n), saturated


def language_growth(source, n: int, letter_weights: Mapping[str, int] | None = None,
                    max_steps: int = 10_000, fit: int | None = None, verify: int | None = None) -> GrowthReport:
    counts, saturated = language_counts(source, n, letter_weights, max_steps)
    return fit_rational(counts, fit, verify, saturated)


def solution_weights(solutions, spec: GroupSpec, gens: WeightedGeneratingSet,
                     n: int) -> list[tuple[int, ...]]:
    """Per-coordinate geodesic weights of every solution of total weight <= n.

    ``solutions`` is a CosetDecomposition or an iterable of tuples.
    """
    weights = ball(spec, gens, n)
    if isinstance(solutions, CosetDecomposition):
        return [w for _, w in enumerate_solutions(solutions, weights, n)]
    out = []
    for xs in solutions:
        ws = tuple(weights.get(g) for g in xs)
        if None not in ws and sum(ws) <= n:
            out.append(ws)
    return out


def relative_counts(solutions, spec: GroupSpec, gens: WeightedGeneratingSet, n: int) -> list[int]:
    return _counts((sum(w) for w in solution_weights(solutions, spec, gens, n)), n)


def relative_growth(solutions, spec: GroupSpec, gens: WeightedGeneratingSet, n: int,
                    fit: int | None = None, verify: int | None = None) -> GrowthReport:
    return fit_rational(relative_counts(solutions, spec, gens, n), fit, verify)


@dataclass(frozen=True)
class MultivariateTable:
    cap: int
    counts: dict = field(default_factory=dict)  # weight tuple -> count, zero entries omitted
    note: str = "holonomy of the multivariate series is not certified"

    def __getitem__(self, key: tuple[int, ...]) -> int:
        return self.counts.get(tuple(key), 0)


def multivariate_growth(solutions, spec: GroupSpec, gens: WeightedGeneratingSet, cap: int) -> MultivariateTable:
    return MultivariateTable(cap, dict(sorted(Counter(solution_weights(solutions, spec, gens, cap)).items())))


def specialize(table: MultivariateTable) -> list[int]:
    """Set every variable equal: sigma(n) is the sum over tuples of total weight n."""
    out = [0] * (table.cap + 1)
    for ws, c in table.counts.items():
        if sum(ws) <= table.cap:
            out[sum(ws)] += c
    return out


def cosetwise_polyhedral_witness(dec: CosetDecomposition) -> dict[tuple[int, ...], PolyhedralSet]:
    """Per coset tuple, the set of flattened solutions as a conjunction of
    linear equations, one per column of the linear system."""
    out = {}
    for cosets, (_, lin) in dec.pieces.items():
        m = lin.num_vars
        conds = []
        for j in range(lin.matrix.cols):
            normal = tuple(lin.matrix[i, j] for i in range(m))
            if any(normal) or lin.constant[j]:
                conds.append(ElementarySet("eq", normal, lin.constant[j]))
        out[cosets] = PolyhedralSet.basic(m, conds)
    return out
