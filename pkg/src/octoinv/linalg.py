"""Exact dense linear algebra over Fraction or ModP entries.

Matrices are tuples of row tuples.  Elimination is fraction-free (rows are
combined by cross-multiplication, never divided) with the pivot taken as the
first nonzero entry in basis order, so outputs are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


class SingularMatrixError(ArithmeticError):
    pass


def identity(n: int, one, zero):
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), start=row[0] * 0) for col in cols) for row in a)


def mat_vec(a, v):
    return tuple(sum((x * y for x, y in zip(row, v)), start=v[0] * 0) for row in a)


def transpose(a):
    return tuple(zip(*a))


def echelon(rows):
    """Fraction-free row echelon form.  Returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                pv = pr[c]
                rows[i] = [pv * x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows) -> int:
    return len(echelon(rows)[1])


def primitive(vec):
    # clear denominators and common factors for readable rational vectors
    if not all(isinstance(x, (int, Fraction)) for x in vec):
        return tuple(vec)
    den = lcm(*(Fraction(x).denominator for x in vec))
    ints = [int(Fraction(x) * den) for x in vec]
    g = gcd(*ints)
    if g == 0:
        return tuple(vec)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def kernel(matrix, one, zero):
    """Basis of {v : matrix v = 0}, one vector per free column in index order."""
    ncols = len(matrix[0])
    rows, pivots = echelon(matrix)
    out = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(rows, pivots):
            # row[pc] * x_pc + row[free] * 1 = 0 (other free vars are zero)
            v[pc] = -row[free] / row[pc]
        out.append(primitive(v))
    return out


def solve_in_span(basis, target):
    """Coefficients c with sum c_i basis_i = target, or None if target is not in the span."""
    n = len(basis)
    if n == 0:
        return None if any(target) else []
    # augmented system: columns are basis vectors
    aug = [list(col) + [t] for col, t in zip(zip(*basis), target)]
    rows, pivots = echelon(aug)
    if n in pivots:
        return None
    zero = target[0] * 0
    coeffs = [zero] * n
    for row, pc in zip(rows, pivots):
        coeffs[pc] = row[n] / row[pc]
    return coeffs


def in_span(basis, target) -> bool:
    return solve_in_span(basis, target) is not None


def inverse(matrix, one, zero):
    n = len(matrix)
    aug = [list(row) + list(irow) for row, irow in zip(matrix, identity(n, one, zero))]
    rows, pivots = echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(x / row[i] for x in row[n:]) for i, row in enumerate(rows))


def gram_kernel(gram, vectors, one, zero):
    """Vectors of the ambient space orthogonal (under ``gram``) to every vector given."""
    constraints = [mat_vec(gram, v) for v in vectors]
    if not constraints:
        return list(identity(len(gram), one, zero))
    return kernel(tuple(constraints), one, zero)
