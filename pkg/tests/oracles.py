"""Independent reference computations used only by the tests."""

import itertools


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def matmul(a, b):
    return [[sum(a[i][l] * b[l][j] for l in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def row_times(v, m):
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0])))


def word_weights_z(steps, max_len):
    """Shortest word length of each integer reachable with at most max_len
    steps from ``steps`` (exhaustive search over words)."""
    best = {0: 0}
    for length in range(1, max_len + 1):
        for word in itertools.product(steps, repeat=length):
            s = sum(word)
            best.setdefault(s, length)
    return best
