"""Wall-clock cost of building and enumerating solution languages.

For X_1 = X_2 = ... = X_n in Z the language is {a^m # ... # a^m}; the number
of sign sectors grows like 2^n, which is what this measures.
"""

import argparse
import time

from vaeq.edt0l import assemble_group_solution_language, enumerate_language
from vaeq.equations import GroupEquationSystem, VarOcc as X, reduce_to_twisted
from vaeq.group import GroupSpec


def chain_system(n):
    return GroupEquationSystem(n, tuple((X(i), X(i + 1, -1)) for i in range(1, n)))


def main(max_vars, max_len):
    z = GroupSpec.free_abelian(1)
    print(f"{'n':>3} {'states':>7} {'build s':>8} {'words':>6} {'enum s':>8}")
    for n in range(1, max_vars + 1):
        t0 = time.perf_counter()
        h = assemble_group_solution_language(reduce_to_twisted(chain_system(n), z), z)
        t1 = time.perf_counter()
        res = enumerate_language(h, max_len, 1_000_000)
        t2 = time.perf_counter()
        print(f"{n:3d} {len(h.control.states):7d} {t1 - t0:8.3f} {len(res.words):6d} {t2 - t1:8.3f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-vars", type=int, default=5)
    p.add_argument("--max-len", type=int, default=20)
    a = p.parse_args()
    main(a.max_vars, a.max_len)
