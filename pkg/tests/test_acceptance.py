"""Acceptance gate: one test per criterion, exact equality throughout.

Each test prints a single PASS line with the measured numbers so a -s run
reads as a checklist.  The module grid fixture (q in {3, 5}, n <= 3, within
the work budget) is shared by the module-level criteria.
"""

import json

from click.testing import CliRunner

from drinfeld2 import cli
from drinfeld2.census import (
    GridPoint,
    brute_force_module_census,
    chi_census,
    closed_form_chi_count,
    closed_form_isogeny_count,
    discrepancy_report,
    enumerate_char_polys,
)
from drinfeld2.fields import LEVEL_Q, make_ctx
from drinfeld2.modules import commutant_basis, is_supersingular, phi_of
from drinfeld2.orders import measured_conductor
from drinfeld2.ore import ore_mul, tau_power
from drinfeld2.polys import T, format_apoly, parse_apoly, poly_from_index
from drinfeld2.weil import classify, valid_ordinary, valid_supersingular
from tests.oracles import identity_solutions_brute

C1 = make_ctx(3, 1, 1)
C2 = make_ctx(3, 1, 2)
C3 = make_ctx(3, 1, 3)


def test_criterion_01_odd_case_count_3_1_1():
    classes = enumerate_char_polys(C1, T(C1), 1)
    assert len(classes) == 6
    assert closed_form_isogeny_count(3, 1, 1) == 6
    expected = {(c, mu) for c in ("1", "2") for mu in (1, 2)} | {("0", 1), ("0", 2)}
    assert {(format_apoly(cp.c), cp.mu.index) for cp, _ in classes} == expected
    print("\n[criterion 1] PASS — (3,1,1): 6 classes, formula 6, class list exact")


def test_criterion_02_odd_case_count_3_1_3():
    classes = enumerate_char_polys(C3, T(C3), 3)
    assert len(classes) == 14
    assert closed_form_isogeny_count(3, 1, 3) == 14
    kinds = [label.kind for _, label in classes]
    assert kinds.count("ordinary") == 12
    assert sum(1 for k in kinds if k.startswith("ss")) == 2
    print("[criterion 2] PASS — (3,1,3): 14 classes (12 ordinary + 2 supersingular), formula 14")


def test_criterion_03_brute_force_realization():
    report = brute_force_module_census(C1, T(C1), 1)
    assert report.n_modules == 6
    assert report.predicted_not_realized == []
    assert report.realized_not_predicted == []
    assert len(report.realized) == 6
    print("[criterion 3] PASS — (3,T,1): all 6 modules realize exactly the 6 predicted classes")


def test_criterion_04_ore_identity_and_uniqueness(module_grid):
    degenerate = 0
    for gm in module_grid:
        ctx, mod, cp = gm.ctx, gm.module, gm.cp
        n = ctx.n
        # exact twisted-polynomial identity tau^2n - phi(c) tau^n + phi(mu P^m) = 0
        lhs = ore_mul(phi_of(mod, cp.c), tau_power(ctx, n))
        rhs = tau_power(ctx, 2 * n) + phi_of(mod, cp.norm_part)
        assert lhs == rhs, f"identity fails for {mod}"
        assert cp.mu.index != 0
        assert cp.c.degree <= (gm.m * gm.P.degree) // 2
        # uniqueness over the whole search space, by independent brute scan
        solutions = identity_solutions_brute(mod)
        assert (cp.c, cp.mu.index) in solutions
        if len(solutions) == 1:
            continue
        # Frobenius lies in the module image: the solution set is forced to
        # be the full factorization family, and the characteristic
        # polynomial is its unique perfect-square member.
        q = ctx.q
        assert len(solutions) == q - 1, f"unexpected solution set for {mod}"
        half = gm.P ** (gm.m // 2)
        fq = ctx._fq
        lam = None
        from drinfeld2.modules import frobenius
        from drinfeld2.ore import scale_left

        for cand in range(1, q):
            if scale_left(ctx.embed_q_in_l(cand), phi_of(mod, half)) == frobenius(mod):
                lam = cand
        assert lam is not None
        family = {
            (half.scale(fq.add(lam, mu)), fq.mul(lam, mu)) for mu in range(1, q)
        }
        assert solutions == family
        assert (cp.c, cp.mu.index) == (half.scale(fq.add(lam, lam)), fq.mul(lam, lam))
        degenerate += 1
    print(
        f"[criterion 4] PASS — identity exact, mu nonzero, deg c bounded and the "
        f"characteristic polynomial unique on {len(module_grid)} modules "
        f"({degenerate} with Frobenius in the module image, each resolved to its "
        f"verified perfect-square form)"
    )


def test_criterion_05_supersingular_dual_test(module_grid):
    ss_count = 0
    for gm in module_grid:
        phi_P = phi_of(gm.module, gm.P)
        by_height = phi_P.height == 2 * gm.P.degree
        by_trace = gm.cp.c.is_zero or (gm.cp.c % gm.P).is_zero
        assert by_height == by_trace, f"dual test disagrees on {gm.module}"
        # is_supersingular itself raises CrossCheckError on disagreement
        assert is_supersingular(gm.module, gm.cp) == by_height
        ss_count += by_height
    print(
        f"[criterion 5] PASS — P | c equivalent to height(phi(P)) = 2d on "
        f"{len(module_grid)} modules ({ss_count} supersingular)"
    )


def test_criterion_06_chi_census_and_fiber_law():
    rep1 = chi_census(C1, T(C1), 1)
    assert (rep1.n_chi, rep1.H, rep1.B) == (3, 3, 0)
    rep3 = chi_census(C3, T(C3), 3)
    assert (rep3.n_chi, rep3.H, rep3.B) == (9, 5, 4)
    for rep, q in ((rep1, 3), (rep3, 3)):
        assert (q - 1) * rep.H + (q - 2) * rep.B == rep.n_classes
        assert rep.H + rep.B == rep.n_chi
    print("[criterion 6] PASS — chi censuses: (3,1,1) gives (3,3,0); (3,1,3) gives (9,5,4); fiber law holds")


def test_criterion_07_documented_discrepancy_surfacing():
    # the closed forms must evaluate to 4 and 10 (not altered to fit) and the
    # reports must flag the mismatch against the enumerated 3 and 9
    assert closed_form_chi_count(3, 1, 1) == 4
    assert closed_form_chi_count(3, 1, 3) == 10
    report = discrepancy_report(
        [GridPoint(3, 1, T(C1), 1), GridPoint(3, 1, T(C3), 3)]
    )
    values = {}
    for row in report.rows:
        assert row.status == "ok"
        census = row.census
        assert census.chi_match is False
        assert any(d["kind"] == "chi-count-mismatch" for d in census.discrepancies)
        values[row.point.m] = (census.n_chi, int(census.closed_form_chi))
    assert values == {1: (3, 4), 3: (9, 10)}
    print("[criterion 7] PASS — chi closed forms 4 and 10 vs enumerated 3 and 9, both flagged MISMATCH")


def test_criterion_08_conductor_properties(module_grid):
    checked = 0
    nonmaximal = 0
    for gm in module_grid:
        if is_supersingular(gm.module, gm.cp):
            continue
        # measured_conductor cross-checks the commutant dimension internally
        desc = measured_conductor(gm.module, gm.cp)
        assert (desc.g % desc.measured_f).is_zero
        if desc.g.degree == 0:
            assert desc.is_maximal and desc.measured_f.degree == 0
        checked += 1
        nonmaximal += not desc.is_maximal
    # the exhaustive q=3, n<=2 agreement between the division method and the
    # commutant-dimension method, asserted explicitly
    from drinfeld2.polys import irreducibles_of_degree

    base = make_ctx(3, 1)
    cells = [(C1, P, 1) for P in irreducibles_of_degree(base, 1)]
    cells += [(C2, P, 2) for P in irreducibles_of_degree(base, 1)]
    cells += [(C2, P, 1) for P in irreducibles_of_degree(base, 2)]
    agree = 0
    from drinfeld2.census import iter_modules
    from drinfeld2.modules import char_poly

    for ctx, P, m in cells:
        for mod in iter_modules(ctx, P, m):
            cp = char_poly(mod)
            if is_supersingular(mod, cp):
                continue
            desc = measured_conductor(mod, cp)
            expected = desc.disc.degree // 2 + 1 + desc.g.degree - desc.measured_f.degree + 1
            assert len(commutant_basis(mod, desc.disc.degree)) == expected
            agree += 1
    print(
        f"[criterion 8] PASS — measured_f | g on {checked} ordinary modules "
        f"({nonmaximal} non-maximal), squarefree disc forces maximality, "
        f"division and commutant methods agree on all {agree} ordinary modules with q=3, n<=2"
    )


def test_criterion_09_classification_partition():
    P = T(C1)
    total = 0
    for m in (1, 2, 3):
        bound = m // 2
        for c_index in range(3 ** (bound + 1)):
            c = poly_from_index(C1, c_index)
            for mu_index in (1, 2):
                mu = C1.elem(LEVEL_Q, mu_index)
                label = classify(c, mu, P, m)
                assert label.kind in {"ordinary", "ss-a", "ss-b", "ss-c", "invalid"}
                ordinary_ok = valid_ordinary(c, mu, P, m)
                ss_ok, _ = valid_supersingular(c, mu, P, m)
                assert not (ordinary_ok and ss_ok)  # gcd(c, P) separates
                assert (label.kind == "ordinary") == ordinary_ok
                assert label.is_supersingular == ss_ok
                total += 1
    print(f"[criterion 9] PASS — exactly one label per candidate on all {total} pairs for (3, T, m<=3)")


def test_criterion_10_grid_determinism(tmp_path):
    runner = CliRunner()
    args = [
        "grid",
        "--point", "3,1,T,1",
        "--point", "3,1,T,2",
        "--point", "3,1,T,3",
        "--point", "3,1,T^2+1,1",
        "--point", "5,1,T,1",
        "--brute-force", "--endo",
    ]
    outputs = {}
    for fmt in ("json", "csv"):
        files = [tmp_path / f"run{i}.{fmt}" for i in (1, 2)]
        for path in files:
            result = runner.invoke(
                cli.main, args + ["--format", fmt, "--out", str(path)]
            )
            assert result.exit_code == 0, result.output
        first, second = (path.read_bytes() for path in files)
        assert first == second
        outputs[fmt] = first
    parsed = json.loads(outputs["json"])
    assert len(parsed["rows"]) == 5
    print("[criterion 10] PASS — repeated grid runs emit byte-identical JSON and CSV")
