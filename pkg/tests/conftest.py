"""Shared fixtures, most importantly the module grid used by acceptance tests.

The grid covers q in {3, 5} and n = m * deg P <= 3.  For q = 3 with deg P
= 1 every monic linear P is included; for the other (q, d) cells the
lexicographically first monic irreducible represents its degree (the
census is invariant under translating P, and the work budget rules out
sweeping every representative).  Points whose sweep exceeds the budget are
skipped and listed, matching how the grid command treats over-budget rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import pytest

from drinfeld2.census import iter_modules, sweep_work
from drinfeld2.fields import make_ctx
from drinfeld2.modules import CharPoly, DrinfeldModule, char_poly
from drinfeld2.polys import APoly, irreducibles_of_degree

GRID_QS = (3, 5)
GRID_MAX_N = 3
GRID_SWEEP_CAP = 8000  # per-point module budget; drops q=5, n=3


@dataclass
class GridModule:
    ctx: object
    P: APoly
    m: int
    module: DrinfeldModule
    cp: CharPoly


def grid_points():
    """Deterministic list of (ctx, P, m) cells within the work budget."""
    points = []
    skipped = []
    for p in GRID_QS:
        base = make_ctx(p, 1)
        for d in range(1, GRID_MAX_N + 1):
            irreducibles = list(irreducibles_of_degree(base, d))
            for m in range(1, GRID_MAX_N // d + 1):
                n = m * d
                reps = irreducibles if (p == 3 and d == 1) else irreducibles[:1]
                for P in reps:
                    if sweep_work(p, n) > GRID_SWEEP_CAP:
                        skipped.append((p, str(P), m))
                        continue
                    points.append((make_ctx(p, 1, n), P, m))
    return points, skipped


@pytest.fixture(scope="session")
def module_grid() -> list[GridModule]:
    """Every module over every in-budget grid point, with its characteristic data."""
    out = []
    points, skipped = grid_points()
    for ctx, P, m in points:
        for mod in iter_modules(ctx, P, m):
            out.append(GridModule(ctx, P, m, mod, char_poly(mod)))
    if skipped:
        print(f"\n[grid] skipped over-budget points: {skipped}")
    print(f"[grid] {len(out)} modules over {len(points)} points")
    return out
