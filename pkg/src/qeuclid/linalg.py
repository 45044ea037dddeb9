"""Dense linear algebra over an exact field (``Scalar`` or ``Fraction`` entries)."""
from __future__ import annotations


def zeros(n, m, field):
    return [[field.zero] * m for _ in range(n)]


def eye(n, field):
    out = zeros(n, n, field)
    for i in range(n):
        out[i][i] = field.one
    return out


def matmul(a, b, field):
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m, field)
    for i in range(n):
        row = a[i]
        acc = out[i]
        for t in range(k):
            x = row[t]
            if not x:
                continue
            brow = b[t]
            for j in range(m):
                y = brow[j]
                if y:
                    acc[j] = acc[j] + x * y
    return out


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a):
    return [[c * x for x in row] for row in a]


def kron(a, b, field):
    n, m = len(a), len(a[0])
    p, r = len(b), len(b[0])
    out = zeros(n * p, m * r, field)
    for i in range(n):
        for j in range(m):
            x = a[i][j]
            if not x:
                continue
            for k in range(p):
                for l in range(r):
                    y = b[k][l]
                    if y:
                        out[i * p + k][j * r + l] = x * y
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def first_nonzero(a):
    """(i, j, value) of the first nonzero entry, or None."""
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x:
                return i, j, x
    return None


def rref(rows, field, column_order=None):
    """Reduced row-echelon form; returns (nonzero rows, pivot columns).

    ``column_order`` lists columns in the order they are tried as pivots.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivots = []
    r = 0
    for c in order:
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field) -> int:
    return len(rref(rows, field)[1])


def inverse(a, field):
    n = len(a)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, field, column_order=range(n))
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def nullspace(rows, field, ncols):
    """Basis of {v : rows . v = 0}."""
    red, piv = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis
