"""Endomorphism orders: discriminants, square parts, measured conductors."""

import pytest

from drinfeld2.census import iter_modules
from drinfeld2.fields import LEVEL_L, LEVEL_Q, make_ctx
from drinfeld2.modules import CharPoly, char_poly, commutant_basis, is_supersingular, make_module
from drinfeld2.orders import (
    discriminant,
    measured_conductor,
    order_bound,
    order_lattice,
)
from drinfeld2.polys import T, format_apoly, irreducibles_of_degree, parse_apoly
from drinfeld2.weil import is_imaginary

C1 = make_ctx(3, 1, 1)
C2 = make_ctx(3, 1, 2)
C3 = make_ctx(3, 1, 3)


def cp_of(ctx, c_text, mu, P, m):
    return CharPoly(parse_apoly(ctx, c_text), ctx.elem(LEVEL_Q, mu), P, m)


def test_discriminant_examples():
    assert format_apoly(discriminant(cp_of(C1, "2", 2, T(C1), 1))) == "T+1"
    assert format_apoly(discriminant(cp_of(C1, "0", 1, T(C1), 1))) == "2*T"
    # perfect-square class: zero discriminant
    assert discriminant(cp_of(C2, "2*T", 1, T(C2), 2)).is_zero


def test_order_bound_examples():
    g, om = order_bound(cp_of(C1, "2", 2, T(C1), 1))
    assert (format_apoly(g), format_apoly(om)) == ("1", "T+1")
    g, om = order_bound(cp_of(C1, "0", 1, T(C1), 1))
    assert (format_apoly(g), format_apoly(om)) == ("1", "2*T")
    with pytest.raises(ValueError, match="degenerate"):
        order_bound(cp_of(C2, "2*T", 1, T(C2), 2))


def test_square_part_does_not_change_imaginary_class():
    seen = 0
    for mod in iter_modules(C3, T(C3), 3):
        cp = char_poly(mod)
        if is_supersingular(mod, cp):
            continue
        disc = discriminant(cp)
        g, om = order_bound(cp)
        assert g * g * om == disc
        assert is_imaginary(om) == is_imaginary(disc)
        seen += 1
    assert seen > 0


def test_order_lattice():
    one = parse_apoly(C1, "1")
    assert [f for f, _ in order_lattice(one)] == [one]
    g = parse_apoly(C1, "T^2+T")  # T(T+1), squarefree product
    lattice = order_lattice(g)
    assert [format_apoly(f) for f, _ in lattice] == ["1", "T", "T+1", "T^2+T"]
    assert lattice[0][1] == "A[sqrt(omega)] (maximal)"


def test_measured_conductor_squarefree_is_maximal():
    mod = make_module(C1, T(C1), 1, 0, C1.elem(LEVEL_L, 1), C1.elem(LEVEL_L, 1))
    desc = measured_conductor(mod)
    assert format_apoly(desc.g) == "1"
    assert desc.is_maximal
    assert format_apoly(desc.measured_f) == "1"


def test_measured_conductor_rejects_supersingular():
    mod = make_module(C1, T(C1), 1, 0, C1.elem(LEVEL_L, 0), C1.elem(LEVEL_L, 1))
    with pytest.raises(ValueError, match="supersingular"):
        measured_conductor(mod)


def test_nontrivial_conductors_occur_and_divide_g():
    # at (3, T, 3) the constant-trace ordinary classes have disc = (unit) * (T+a)^3,
    # so g has degree 1 and both conductors 1 and g are realized
    seen_f = set()
    for mod in iter_modules(C3, T(C3), 3):
        cp = char_poly(mod)
        if is_supersingular(mod, cp) or cp.c.degree != 0:
            continue
        desc = measured_conductor(mod, cp)
        assert desc.g.degree == 1
        assert (desc.g % desc.measured_f).is_zero
        seen_f.add(format_apoly(desc.measured_f))
    assert "1" in seen_f
    assert any(f != "1" for f in seen_f), "some non-maximal endomorphism ring occurs"


def test_division_and_commutant_methods_agree_exhaustively_n_le_2():
    # every ordinary module over q = 3 with n <= 2, all P of each degree;
    # measured_conductor raises CrossCheckError internally on any mismatch
    checked = 0
    base = make_ctx(3, 1)
    cells = []
    for P in irreducibles_of_degree(base, 1):
        cells.append((C1, P, 1))
        cells.append((C2, P, 2))
    for P in irreducibles_of_degree(base, 2):
        cells.append((C2, P, 1))
    for ctx, P, m in cells:
        for mod in iter_modules(ctx, P, m):
            cp = char_poly(mod)
            if is_supersingular(mod, cp):
                continue
            desc = measured_conductor(mod, cp)
            expected_dim = (
                desc.disc.degree // 2 + 1 + desc.g.degree - desc.measured_f.degree + 1
            )
            assert len(commutant_basis(mod, desc.disc.degree)) == expected_dim
            checked += 1
    assert checked == 396  # all ordinary modules over q=3, n <= 2


def test_quadratic_P_nonmaximal_case():
    # at (3, T^2+1, 1) the class c = T+1, mu = 2 has disc = 2*(T+2)^2,
    # g = T+2: both possible conductors must be realized across the sweep
    P = parse_apoly(C2, "T^2+1")
    target_c = parse_apoly(C2, "T+1")
    seen = set()
    for mod in iter_modules(C2, P, 1):
        cp = char_poly(mod)
        if cp.c == target_c and cp.mu.index == 2:
            desc = measured_conductor(mod, cp)
            assert format_apoly(desc.g) == "T+2"
            assert format_apoly(desc.omega) == "2"
            seen.add(format_apoly(desc.measured_f))
    assert seen == {"1", "T+2"}
