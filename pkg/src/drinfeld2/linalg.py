"""Small dense linear algebra over a coefficient engine.

Matrices are lists of row lists of engine indices.  Sizes here are tiny
(tens of rows), so plain Gaussian elimination is the right tool; what
matters is that it is exact and deterministic.
"""

from __future__ import annotations


def mat_mul(e, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            x = a[i][k]
            if x == 0:
                continue
            for j in range(cols):
                if b[k][j]:
                    out[i][j] = e.add(out[i][j], e.mul(x, b[k][j]))
    return out


def mat_sub(e, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    return [[e.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _eliminate(e, rows: list[list[int]], ncols: int) -> list[int]:
    """In-place reduced row echelon form on the first ``ncols`` columns.

    Columns beyond ``ncols`` are carried along (augmented right-hand
    sides).  Returns the list of pivot columns.
    """
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = e.inv(rows[r][col])
        rows[r] = [e.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [e.sub(x, e.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve_many(
    e, a: list[list[int]], bs: list[list[int]]
) -> tuple[list[list[int] | None], int]:
    """Solve a*x = b for several right-hand sides at once.

    Returns one solution per right-hand side (``None`` when inconsistent)
    together with the kernel dimension of ``a``.  When the kernel is
    nonzero the returned solutions are not unique; callers decide whether
    that is an error.
    """
    ncols = len(a[0]) if a else 0
    rows = [list(ra) + [b[i] for b in bs] for i, ra in enumerate(a)]
    pivots = _eliminate(e, rows, ncols)
    kernel_dim = ncols - len(pivots)
    rank = len(pivots)
    solutions: list[list[int] | None] = []
    for k in range(len(bs)):
        col = ncols + k
        if any(rows[i][col] != 0 for i in range(rank, len(rows))):
            solutions.append(None)
            continue
        x = [0] * ncols
        for i, pc in enumerate(pivots):
            x[pc] = rows[i][col]
        solutions.append(x)
    return solutions, kernel_dim


def nullspace(e, a: list[list[int]], ncols: int) -> list[list[int]]:
    """Deterministic basis of the kernel of ``a`` (free-variable vectors)."""
    rows = [list(r) for r in a]
    pivots = _eliminate(e, rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = e.neg(rows[i][fc])
        basis.append(v)
    return basis


def in_span(e, basis: list[list[int]], v: list[int]) -> bool:
    """Membership of ``v`` in the row span of ``basis``."""
    if not basis:
        return all(x == 0 for x in v)
    ncols = len(v)
    rows = [list(r) for r in basis]
    _eliminate(e, rows, ncols)
    work = list(v)
    for row in rows:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None or work[lead] == 0:
            continue
        factor = work[lead]
        work = [e.sub(x, e.mul(factor, y)) for x, y in zip(work, row)]
    return all(x == 0 for x in work)
