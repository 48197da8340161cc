"""Endomorphism-order analysis for ordinary modules.

For an ordinary module the endomorphism ring sits between A[F] and the
maximal order A[sqrt(omega)], where the discriminant of the Frobenius
quadratic factors exactly as disc = g^2 * omega with omega squarefree.
The actual conductor f divides g and is measured exactly: f is the
smallest monic divisor of g such that phi(g/f) right-divides 2*tau^n -
phi(c) in L{tau} (that quotient is the image of (g/f)*sqrt(omega), which
lies in the endomorphism ring precisely when f does divide the true
conductor).  Because A is central in the commutant the side of the
division is immaterial.

Every measurement is cross-checked against the dimension of the
endomorphism ring cut at tau-degree deg(disc): for an imaginary
discriminant no valuation cancellation can occur, so that dimension is
floor(deg disc / 2) + deg g - deg f + 2 exactly.  The two methods see the
same conductor degree or a CrossCheckError is raised.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CrossCheckError
from .modules import (
    CharPoly,
    DrinfeldModule,
    char_poly,
    commutant_basis,
    frobenius,
    is_supersingular,
    phi_of,
)
from .ore import right_divmod, scale_left
from .polys import APoly, monic_divisors, square_part


@dataclass(frozen=True)
class OrderDescription:
    """disc = g^2 * omega, measured conductor f | g, maximality flag."""

    disc: APoly
    g: APoly
    omega: APoly
    measured_f: APoly
    is_maximal: bool


def discriminant(cp: CharPoly) -> APoly:
    """c^2 - 4*mu*P^m in A."""
    fq = cp.c.ctx._fq
    four_mu = fq.mul(fq.from_int(4), cp.mu.index)
    return cp.c * cp.c - (cp.P**cp.m).scale(four_mu)


def order_bound(cp: CharPoly) -> tuple[APoly, APoly]:
    """Square part of the discriminant: the largest possible conductor.

    The degenerate perfect-square class has discriminant zero and is
    excluded; its endomorphism ring is not an order in a quadratic field.
    """
    disc = discriminant(cp)
    if disc.is_zero:
        raise ValueError("zero discriminant: degenerate perfect-square class")
    return square_part(disc)


def order_lattice(g: APoly) -> list[tuple[APoly, str]]:
    """All candidate orders A + f*A[sqrt(omega)] for monic divisors f of g."""
    out = []
    for f in monic_divisors(g):
        text = f"A + ({f})*A[sqrt(omega)]" if f.degree else "A[sqrt(omega)] (maximal)"
        out.append((f, text))
    return out


def _expected_commutant_dim(disc_deg: int, g_deg: int, f_deg: int) -> int:
    # A-part contributes floor(N/2)+1 elements of tau-degree <= N = disc_deg;
    # the sqrt(omega)-part starts at tau-degree 2*f_deg + omega_deg and
    # contributes one F_q dimension per step of two.
    return disc_deg // 2 + 1 + (g_deg - f_deg + 1)


def conductor_degree_from_commutant(mod: DrinfeldModule, desc: OrderDescription) -> int:
    """Infer deg f from the endomorphism dimension at tau-degree deg(disc)."""
    dim = len(commutant_basis(mod, max(desc.disc.degree, 0)))
    f_deg = desc.disc.degree // 2 + 1 + desc.g.degree + 1 - dim
    return f_deg


def measured_conductor(mod: DrinfeldModule, cp: CharPoly | None = None) -> OrderDescription:
    """Exact conductor of the endomorphism ring of an ordinary module.

    Tries monic divisors f of g in (degree, index) order and keeps the
    first one for which phi(g/f) divides 2*tau^n - phi(c) exactly; f = g
    always succeeds, so the search terminates.  The division-based answer
    must agree with the commutant-dimension method.
    """
    if cp is None:
        cp = char_poly(mod)
    if is_supersingular(mod, cp):
        raise ValueError("supersingular module: conductor analysis does not apply")
    disc = discriminant(cp)
    g, omega = order_bound(cp)
    ctx = mod.ctx
    # the image of g*sqrt(omega): 2F - phi(c)
    element = scale_left(ctx.embed_q_in_l(ctx._fq.from_int(2)), frobenius(mod)) - phi_of(
        mod, cp.c
    )
    measured = None
    if g.degree == 0:
        measured = g  # squarefree discriminant: A[F] is already maximal
    else:
        for f in monic_divisors(g):
            h = g // f
            if h.degree == 0:
                measured = f  # dividing by phi(1) is vacuous
                break
            _, rem = right_divmod(element, phi_of(mod, h))
            if rem.is_zero:
                measured = f
                break
    assert measured is not None
    desc = OrderDescription(
        disc=disc,
        g=g,
        omega=omega,
        measured_f=measured,
        is_maximal=measured.degree == 0,
    )
    inferred = conductor_degree_from_commutant(mod, desc)
    if inferred != measured.degree:
        raise CrossCheckError(
            f"conductor methods disagree on {mod}: division says degree "
            f"{measured.degree}, commutant dimension says {inferred}"
        )
    return desc
