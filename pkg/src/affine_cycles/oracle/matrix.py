"""Dense matrices over F_p as tuples of row tuples."""

from __future__ import annotations

from .field import Poly

Matrix = tuple[tuple[int, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a)


def mat_add_scalar(a: Matrix, c: int, p: int) -> Matrix:
    return tuple(tuple((x + c) % p if i == j else x for j, x in enumerate(row)) for i, row in enumerate(a))


def rank(a: Matrix, p: int) -> int:
    rows = [list(r) for r in a]
    n_cols = len(rows[0]) if rows else 0
    r = 0
    for col in range(n_cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        prow = [x * inv % p for x in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return r


def nullity(a: Matrix, p: int) -> int:
    return len(a[0]) - rank(a, p)


def is_invertible(a: Matrix, p: int) -> bool:
    return rank(a, p) == len(a)


def inverse(a: Matrix, p: int) -> Matrix:
    n = len(a)
    rows = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = pow(rows[col][col], p - 2, p)
        rows[col] = [x * inv % p for x in rows[col]]
        for i in range(n):
            if i != col and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[col])]
    return tuple(tuple(r[n:]) for r in rows)


def poly_at(f: Poly, a: Matrix, p: int) -> Matrix:
    """f(a) by Horner's rule."""
    n = len(a)
    out = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for c in reversed(f):
        out = mat_add_scalar(mat_mul(out, a, p), c, p)
    return out


def charpoly(a: Matrix, p: int) -> Poly:
    """det(zI - a) by Berkowitz's division-free algorithm, ascending coefficients."""
    n = len(a)
    # vect holds the char poly of the leading principal submatrix, descending
    vect = [1]
    for r in range(n):
        if r == 0:
            vect = [1, (-a[0][0]) % p]
            continue
        R = [a[r][j] for j in range(r)]
        C = [a[i][r] for i in range(r)]
        A = [row[:r] for row in a[:r]]
        ar = a[r][r]
        # Toeplitz column: 1, -a_rr, -R C, -R A C, ...
        col = [1, (-ar) % p]
        v = C[:]
        for _ in range(r):
            col.append((-sum(x * y for x, y in zip(R, v))) % p)
            v = [sum(A[i][j] * v[j] for j in range(r)) % p for i in range(r)]
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(min(i, r) + 1):
                if i - j < len(col):
                    s += col[i - j] * vect[j]
            new.append(s % p)
        vect = new
    return tuple(reversed(vect))
