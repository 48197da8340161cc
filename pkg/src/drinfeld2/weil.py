"""Validity predicates for candidate Frobenius quadratics X^2 - c*X + mu*P^m.

The authoritative test at the infinite place is :func:`is_imaginary`,
computed directly from the valuation of F_q((1/T)): a nonzero Delta is a
non-square there iff its degree is odd or its leading coefficient is a
non-square in F_q.  The coarser trace conditions are derived forms and are
exercised as cross-checks in the test suite, not trusted here.

Supersingular candidates (P | c) are constrained much harder than the
imaginary test alone suggests: the trace is forced to be c0 * P^(m/2) for
m even (and 0 for m odd), and for m even the scaled quadratic
X^2 - c0*X + mu decides everything: a double root is the perfect-square
class, an irreducible one is admissible only when deg P is odd (otherwise
the constant-field extension splits the place above P), and a split one is
never admissible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import LEVEL_Q, FieldElem
from .polys import APoly, gcd_monic

ORDINARY = "ordinary"
SS_A = "ss-a"
SS_B = "ss-b"
SS_C = "ss-c"
INVALID = "invalid"


@dataclass(frozen=True)
class ClassLabel:
    """Classification outcome; exactly one kind per candidate."""

    kind: str
    reason: str

    @property
    def is_valid(self) -> bool:
        return self.kind != INVALID

    @property
    def is_supersingular(self) -> bool:
        return self.kind in (SS_A, SS_B, SS_C)


def is_imaginary(delta: APoly) -> bool:
    """True iff delta is not a square in F_q((1/T)) (q odd).

    Zero is a square.  Square factors never change the answer, so this is
    well defined on discriminants up to isogeny normalizations.
    """
    if delta.is_zero:
        return False
    if delta.degree % 2 == 1:
        return True
    return not delta.ctx.q_is_square(delta.leading)


def _check_mu(mu: FieldElem):
    if mu.level != LEVEL_Q or mu.index == 0:
        raise ValueError("mu must be a nonzero F_q element")


def discriminant_poly(c: APoly, mu: FieldElem, P: APoly, m: int) -> APoly:
    fq = c.ctx._fq
    return c * c - (P**m).scale(fq.mul(fq.from_int(4), mu.index))


def valid_ordinary(c: APoly, mu: FieldElem, P: APoly, m: int) -> bool:
    """Trace coprime to P, degree within the half-bound, imaginary discriminant."""
    _check_mu(mu)
    bound = (m * P.degree) // 2
    if c.degree > bound:
        return False
    if gcd_monic(c, P).degree != 0:
        return False
    return is_imaginary(discriminant_poly(c, mu, P, m))


def valid_supersingular(
    c: APoly, mu: FieldElem, P: APoly, m: int
) -> tuple[bool, str | None]:
    """Supersingular validity together with its case label.

    Cases: (a) trace zero, any m, with imaginary discriminant; (b) m even,
    deg P odd, trace c0*P^(m/2) with X^2 - c0*X + mu irreducible over F_q;
    (c) m even, the perfect square (X - c0/2 * P^(m/2))^2.  P divides the
    trace in every accepted case.
    """
    _check_mu(mu)
    fq = c.ctx._fq
    bound = (m * P.degree) // 2
    if c.degree > bound:
        return False, None
    if m % 2 == 1:
        if not c.is_zero:
            return False, None
        if is_imaginary(discriminant_poly(c, mu, P, m)):
            return True, SS_A
        return False, None
    # m even: the trace must be an F_q multiple of P^(m/2)
    half = P ** (m // 2)
    quot, rem = divmod(c, half)
    if not rem.is_zero or quot.degree > 0:
        return False, None
    c0 = quot.constant
    disc0 = fq.sub(fq.mul(c0, c0), fq.mul(fq.from_int(4), mu.index))
    if disc0 == 0:
        return True, SS_C
    if P.degree % 2 == 1 and not c.ctx.q_is_square(disc0):
        return True, SS_A if c0 == 0 else SS_B
    return False, None


def classify(c: APoly, mu: FieldElem, P: APoly, m: int) -> ClassLabel:
    """Exactly one of ordinary / ss-a / ss-b / ss-c / invalid.

    Ordinary and supersingular are separated by gcd(c, P), so the two
    predicates can never both accept.
    """
    _check_mu(mu)
    bound = (m * P.degree) // 2
    if c.degree > bound:
        return ClassLabel(INVALID, "degree-bound")
    coprime = gcd_monic(c, P).degree == 0
    if coprime:
        if valid_ordinary(c, mu, P, m):
            return ClassLabel(ORDINARY, "coprime-imaginary")
        return ClassLabel(INVALID, "not-imaginary")
    ok, case = valid_supersingular(c, mu, P, m)
    if ok:
        reasons = {
            SS_A: "zero-scaled-trace-imaginary",
            SS_B: "scaled-quadratic-irreducible",
            SS_C: "perfect-square",
        }
        return ClassLabel(case, reasons[case])
    return ClassLabel(INVALID, "supersingular-shape-rejected")


def quadratic_is_irreducible_over_Fq(ctx, c0: int, mu: int) -> bool:
    """Whether X^2 - c0*X + mu has no root in F_q (q odd), by discriminant."""
    fq = ctx._fq
    disc = fq.sub(fq.mul(c0, c0), fq.mul(fq.from_int(4), mu))
    return disc != 0 and not ctx.q_is_square(disc)
