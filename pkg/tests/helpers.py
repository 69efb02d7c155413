"""Shared test utilities: a degree-bounded linear-algebra membership oracle."""

import itertools
from fractions import Fraction


def monomials_up_to(n, d):
    for total in range(d + 1):
        for c in itertools.combinations_with_replacement(range(n), total):
            e = [0] * n
            for i in c:
                e[i] += 1
            yield tuple(e)


def solvable(columns, target):
    """Is `target` a Q-linear combination of `columns` (dicts keyed by
    monomial)?  Plain Gaussian elimination over Fraction."""
    rows = sorted({m for c in columns for m in c} | set(target))
    index = {m: i for i, m in enumerate(rows)}
    A = [[Fraction(0)] * (len(columns) + 1) for _ in rows]
    for j, c in enumerate(columns):
        for m, v in c.items():
            A[index[m]][j] = Fraction(v)
    for m, v in target.items():
        A[index[m]][-1] = Fraction(v)
    r = 0
    for col in range(len(columns)):
        piv = next((i for i in range(r, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][col]
        A[r] = [x / p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    return all(any(row[:-1]) or not row[-1] for row in A)


def member_by_linear_algebra(f, gens, degree):
    """f in <gens> with a certificate sum(a_i g_i) with deg(a_i g_i) <= degree."""
    ring = f.ring
    cols = []
    for g in gens:
        if not g:
            continue
        for m in monomials_up_to(ring.nvars, degree - g.degree()):
            cols.append(dict(g.mul_term(m, 1).terms))
    if not f:
        return True
    return solvable(cols, dict(f.terms))
