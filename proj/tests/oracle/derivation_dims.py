"""Independent reference for the frozen Der(N) dimensions used in the C++ tests.

Builds the Leibniz system directly from matrix products (no structure-constant
tables, no shared code with the library) and row-reduces it with Python
integers / Fractions.  Run: python3 derivation_dims.py
"""
from fractions import Fraction
from itertools import product
import sys


def basis(sizes):
    off = [0]
    for s in sizes:
        off.append(off[-1] + s)
    out = []
    t = len(sizes)
    for i in range(t):
        for j in range(i + 1, t):
            for p in range(sizes[i]):
                for q in range(sizes[j]):
                    out.append((off[i] + p, off[j] + q))
    return out, off[-1]


def bracket_units(a, b):
    """[E_a, E_b] as dict position -> coefficient."""
    res = {}
    if a[1] == b[0]:
        res[(a[0], b[1])] = res.get((a[0], b[1]), 0) + 1
    if b[1] == a[0]:
        res[(b[0], a[1])] = res.get((b[0], a[1]), 0) - 1
    return {k: v for k, v in res.items() if v}


def rank(rows, ncols, p):
    norm = (lambda x: x % p) if p else (lambda x: x)
    inv = (lambda x: pow(x, p - 2, p)) if p else (lambda x: 1 / x)
    piv = {}
    for r in rows:
        r = [norm(Fraction(x) if not p else x) for x in r]
        for c in sorted(piv):
            if r[c]:
                f = r[c]
                r = [norm(x - f * y) for x, y in zip(r, piv[c])]
        lead = next((c for c in range(ncols) if r[c]), None)
        if lead is None:
            continue
        iv = inv(r[lead])
        piv[lead] = [norm(x * iv) for x in r]
    return len(piv)


def der_dim(sizes, p):
    B, n = basis(sizes)
    d = len(B)
    idx = {b: k for k, b in enumerate(B)}
    rows = []
    for u, v in product(range(d), repeat=2):
        # unknown F[a][b]: coefficient of e_a in f(e_b), column a*d+b
        for a in range(d):
            row = [0] * (d * d)
            for pos, c in bracket_units(B[u], B[v]).items():
                row[a * d + idx[pos]] += c
            for b in range(d):
                for pos, c in bracket_units(B[b], B[v]).items():
                    if idx[pos] == a:
                        row[b * d + u] -= c
                for pos, c in bracket_units(B[u], B[b]).items():
                    if idx[pos] == a:
                        row[b * d + v] -= c
            if any(row):
                rows.append(row)
    return d * d - rank(rows, d * d, p)


if __name__ == "__main__":
    cases = [(1, 1), (1, 1, 1), (1, 1, 1, 1), (2, 1, 1), (1, 2, 1, 1), (1, 1, 2, 1),
             (2, 2), (1, 1, 1, 1, 1), (1, 2, 2, 1)]
    for sizes in cases:
        dims = {p: der_dim(sizes, p) for p in (2, 3, 5, 0)}
        print(sizes, dims)
        sys.stdout.flush()
