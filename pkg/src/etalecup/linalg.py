"""Smith normal form over Z with unimodular transforms.

Matrices are plain lists of lists of Python ints; sizes in this package are
tiny (a few dozen rows at most) so clarity wins over asymptotics.
"""

from __future__ import annotations

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


def vecmat(v: list[int], m: Matrix) -> list[int]:
    cols = len(m[0]) if m else 0
    return [sum(v[k] * m[k][j] for k in range(len(m))) for j in range(cols)]


def smith_normal_form(a: Matrix, ncols: int | None = None) -> tuple[list[int], Matrix, Matrix, Matrix]:
    """Return (diag, P, Q, Qinv) with P @ a @ Q diagonal.

    ``diag`` lists the min(rows, cols) diagonal entries, nonnegative, each
    dividing the next (zeros last).  ``ncols`` is needed when ``a`` has no rows.
    """
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    m = [list(r) for r in a]
    p = identity(rows)
    q = identity(cols)
    qinv = identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in q:
            r[i], r[j] = r[j], r[i]
        qinv[i], qinv[j] = qinv[j], qinv[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        if k:
            m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]
            p[dst] = [x + k * y for x, y in zip(p[dst], p[src])]

    def add_col(dst, src, k):
        # col_dst += k * col_src; inverse acts on rows of qinv
        if k:
            for r in m:
                r[dst] += k * r[src]
            for r in q:
                r[dst] += k * r[src]
            qinv[src] = [x - k * y for x, y in zip(qinv[src], qinv[dst])]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        p[i] = [-x for x in p[i]]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    dirty = dirty or m[i][t] != 0
            for j in range(t + 1, cols):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    dirty = dirty or m[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % m[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if m[t][t] < 0:
            negate_row(t)
    diag = [m[i][i] for i in range(min(rows, cols))]
    return diag, p, q, qinv


def hermite_normal_form(a: Matrix) -> Matrix:
    """Row-style HNF (upper triangular, positive pivots, reduced above) of the row lattice."""
    m = [list(r) for r in a if any(r)]
    if not m:
        return []
    cols = len(m[0])
    row = 0
    for c in range(cols):
        live = [r for r in m[row:] if r[c]]
        if not live:
            continue
        while True:
            nz = [i for i in range(row, len(m)) if m[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(m[i][c]))
            m[row], m[k] = m[k], m[row]
            done = True
            for i in range(row + 1, len(m)):
                if m[i][c]:
                    f = m[i][c] // m[row][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[row])]
                    done = done and m[i][c] == 0
            if done:
                break
        if m[row][c] < 0:
            m[row] = [-x for x in m[row]]
        for i in range(row):
            f = m[i][c] // m[row][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        row += 1
        if row == len(m):
            break
    return m[:row]


def solve_mod(rows: Matrix, target: list[int], modulus: int) -> list[int] | None:
    """Some x with x @ rows = target (mod modulus), or None."""
    k = len(rows)
    cols = len(target)
    # lattice: rows plus modulus * identity; solve via SNF of the stacked system
    big = [list(r) for r in rows] + [[modulus * int(i == j) for j in range(cols)] for i in range(cols)]
    diag, p, q, _ = smith_normal_form(big, ncols=cols)
    tq = vecmat(target, q)
    y = []
    for i in range(cols):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if tq[i]:
                return None
            y.append(0)
        elif tq[i] % d:
            return None
        else:
            y.append(tq[i] // d)
    y += [0] * (len(big) - cols)
    x = vecmat(y, p)
    return [v % modulus for v in x[:k]]
