"""Rank-2 Drinfeld modules over L = F_{q^n}.

A module is pinned by the image of T: a degree-2 twisted polynomial
``gamma(T) + a2*tau + a3*tau^2`` with a3 nonzero, where gamma(T) is a root
in L of the monic irreducible P generating the kernel of the structure map
(so n = m * deg P).

The centerpiece is :func:`char_poly`: the Frobenius F = tau^n satisfies a
unique quadratic X^2 - c*X + mu*P^m over A, recovered exactly by F_q-linear
solving of the twisted-polynomial identity.  When F itself lies in the
image of A (which happens for some supersingular modules with m even) every
mu in F_q* admits a companion c; the characteristic polynomial is then the
perfect square pinned by the linear relation, and the full solution family
is verified before it is resolved.  Anything else is a hard error.

Module text form:
``p,s ; P=<poly> ; m=<int> ; root=<int> ; a2=<index> ; a3=<index>``.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass

from . import linalg
from .errors import CrossCheckError, ScaleGuardError
from .fields import LEVEL_L, LEVEL_Q, FieldCtx, FieldElem, embedding, make_ctx
from .ore import (
    OrePoly,
    from_scalar,
    ore_mul,
    ore_zero,
    right_divmod,
    scale_left,
    shift,
    tau_power,
)
from .polys import (
    APoly,
    format_apoly,
    is_irreducible,
    one,
    parse_apoly,
    poly_index,
)

DEFAULT_MAX_TORSION_POINTS = 1 << 16
DEFAULT_MAX_COMMUTANT_UNKNOWNS = 600


@dataclass(frozen=True)
class DrinfeldModule:
    """Rank-2 module determined by (gamma(T), a2, a3) over a fixed tower."""

    ctx: FieldCtx
    P: APoly
    m: int
    root_index: int
    gamma_T: FieldElem
    a2: FieldElem
    a3: FieldElem

    @property
    def d(self) -> int:
        return self.P.degree

    def phi_T(self) -> OrePoly:
        return OrePoly(
            self.ctx, (self.gamma_T.index, self.a2.index, self.a3.index)
        )

    def __str__(self):
        return format_module(self)


@dataclass(frozen=True)
class CharPoly:
    """The characteristic polynomial X^2 - c*X + mu*P^m of Frobenius."""

    c: APoly
    mu: FieldElem
    P: APoly
    m: int

    def __post_init__(self):
        if self.mu.level != LEVEL_Q or self.mu.index == 0:
            raise ValueError("mu must be a nonzero F_q element")
        bound = (self.m * self.P.degree) // 2
        if self.c.degree > bound:
            raise ValueError(f"deg c = {self.c.degree} exceeds bound {bound}")

    @property
    def norm_part(self) -> APoly:
        """The constant term mu*P^m as an explicit polynomial."""
        return (self.P**self.m).scale(self.mu.index)

    def value_at_one(self) -> APoly:
        """The quadratic evaluated at X = 1, i.e. 1 - c + mu*P^m."""
        return one(self.c.ctx) - self.c + self.norm_part

    def sort_key(self):
        return (poly_index(self.c), self.mu.index)

    def __str__(self):
        return render_char_poly(self)


def render_char_poly(cp: CharPoly) -> str:
    c_text = format_apoly(cp.c)
    norm_text = format_apoly(cp.norm_part)
    if cp.c.is_zero:
        return f"X^2 + ({norm_text})"
    return f"X^2 - ({c_text})*X + ({norm_text})"


@functools.lru_cache(maxsize=None)
def roots_in_L(ctx: FieldCtx, f: APoly) -> tuple[FieldElem, ...]:
    """Roots of an F_q polynomial in L, in deterministic index order."""
    fl = ctx._fl
    coeffs = [ctx.embed_q_in_l(c) for c in f.coeffs]
    out = []
    for x in range(ctx.order):
        acc = 0
        for c in reversed(coeffs):
            acc = fl.add(fl.mul(acc, x), c)
        if acc == 0:
            out.append(ctx.elem(LEVEL_L, x))
    return tuple(out)


def make_module(
    ctx: FieldCtx,
    P: APoly,
    m: int,
    root_index: int,
    a2: FieldElem,
    a3: FieldElem,
) -> DrinfeldModule:
    """Validated constructor; gamma(T) is the root_index-th root of P in L."""
    if not P.is_monic or not is_irreducible(P):
        raise ValueError("P must be monic irreducible")
    if m < 1 or m * P.degree != ctx.n:
        raise ValueError(
            f"need n = m*deg P, got n={ctx.n}, m={m}, deg P={P.degree}"
        )
    for name, elem in (("a2", a2), ("a3", a3)):
        if elem.level != LEVEL_L or elem.ctx != ctx:
            raise ValueError(f"{name} must be an L-level element of the context")
    if a3.index == 0:
        raise ValueError("a3 must be nonzero (rank exactly 2)")
    roots = roots_in_L(ctx, P)
    if not 0 <= root_index < len(roots):
        raise ValueError(f"root_index {root_index} out of range (P has {len(roots)} roots)")
    gamma_T = roots[root_index]
    return DrinfeldModule(ctx, P, m, root_index, gamma_T, a2, a3)


def phi_of(mod: DrinfeldModule, a: APoly) -> OrePoly:
    """Image of a under the module map, by Horner in phi(T)."""
    ctx = mod.ctx
    phi_T = mod.phi_T()
    if a.is_zero:
        return ore_zero(ctx)
    result = from_scalar(ctx, ctx.embed_q_in_l(a.coeffs[-1]))
    for k in range(a.degree - 1, -1, -1):
        result = ore_mul(result, phi_T)
        if a.coeffs[k]:
            result = result + from_scalar(ctx, ctx.embed_q_in_l(a.coeffs[k]))
    return result


def frobenius(mod: DrinfeldModule) -> OrePoly:
    """tau^n, the Frobenius of L; central in L{tau}."""
    return tau_power(mod.ctx, mod.ctx.n)


def gamma_of(mod: DrinfeldModule, a: APoly) -> FieldElem:
    """The structure map A -> L (evaluation at gamma(T))."""
    ctx = mod.ctx
    fl = ctx._fl
    acc = 0
    for c in reversed(a.coeffs):
        acc = fl.add(fl.mul(acc, mod.gamma_T.index), ctx.embed_q_in_l(c))
    return ctx.elem(LEVEL_L, acc)


def _coords_of_ore(ctx: FieldCtx, u: OrePoly, n_coeffs: int) -> list[int]:
    """Flatten the first n_coeffs twisted coefficients into F_q coordinates."""
    assert u.tau_degree < n_coeffs  # truncation would corrupt the linear system
    fl = ctx._fl
    out = []
    for k in range(n_coeffs):
        c = u.coeffs[k] if k <= u.tau_degree else 0
        out.extend(fl.digits(c))
    return out


def _identity_solutions(mod: DrinfeldModule) -> list[tuple[APoly, int]]:
    """All (c, mu) with tau^2n - phi(c)*tau^n + phi(mu*P^m) = 0, deg c bounded.

    For each of the q-1 candidate units mu this solves the F_q-linear
    system in the coefficients of c given by equating twisted-polynomial
    coefficients, then verifies each solution against the exact identity.
    """
    ctx = mod.ctx
    q, n = ctx.q, ctx.n
    bound = (mod.m * mod.d) // 2
    n_coeffs = 2 * n + 1

    # phi(T^j)*tau^n for each unknown coefficient of c; right multiplication
    # by tau^n is a plain shift.
    phi_pow = from_scalar(ctx, 1)
    phi_T = mod.phi_T()
    columns = []
    for j in range(bound + 1):
        if j:
            phi_pow = ore_mul(phi_pow, phi_T)
        columns.append(_coords_of_ore(ctx, shift(phi_pow, n), n_coeffs))

    phi_Pm = phi_of(mod, mod.P**mod.m)
    t_vec = _coords_of_ore(ctx, tau_power(ctx, 2 * n), n_coeffs)
    v_vec = _coords_of_ore(ctx, phi_Pm, n_coeffs)

    fq = ctx._fq
    nrows = n_coeffs * n
    a_mat = [[columns[j][r] for j in range(bound + 1)] for r in range(nrows)]
    bs = []
    for mu in range(1, q):
        bs.append([fq.add(t_vec[r], fq.mul(mu, v_vec[r])) for r in range(nrows)])
    solutions, kernel_dim = linalg.solve_many(fq, a_mat, bs)
    if kernel_dim != 0:
        raise CrossCheckError(
            "the coefficient system of the Frobenius quadratic is singular"
        )

    out = []
    tau_2n = tau_power(ctx, 2 * n)
    for mu, sol in zip(range(1, q), solutions):
        if sol is None:
            continue
        c = APoly(ctx.base, tuple(sol))
        lhs = ore_mul(phi_of(mod, c), tau_power(ctx, n))
        rhs = tau_2n + scale_left(ctx.embed_q_in_l(mu), phi_Pm)
        if lhs == rhs:
            out.append((c, mu))
        else:  # pragma: no cover - the solver and the identity must agree
            raise CrossCheckError("linear solve produced a non-solution")
    return out


def _degenerate_family(mod: DrinfeldModule):
    """Detect F = phi(lambda*P^(m/2)) and return (lambda, half) if so."""
    if mod.m % 2 != 0:
        return None
    ctx = mod.ctx
    half = mod.P ** (mod.m // 2)
    phi_half = phi_of(mod, half)
    F = frobenius(mod)
    hits = []
    for lam in range(1, ctx.q):
        if scale_left(ctx.embed_q_in_l(lam), phi_half) == F:
            hits.append(lam)
    if not hits:
        return None
    if len(hits) > 1:  # pragma: no cover - the module map is injective
        raise CrossCheckError("multiple linear relations for Frobenius")
    return hits[0], half


def char_poly(mod: DrinfeldModule) -> CharPoly:
    """The unique characteristic polynomial of Frobenius.

    Normally exactly one (c, mu) satisfies the defining identity and that
    is the answer.  When Frobenius equals phi(lambda*P^(m/2)) the identity
    has one solution per unit mu (the products (X - lambda*P^(m/2)) *
    (X - mu'*P^(m/2)) all annihilate F); the characteristic polynomial is
    the perfect square among them, and the whole family is checked against
    that prediction before resolving.  Any other shape of the solution set
    is a hard error, never silently resolved.
    """
    ctx = mod.ctx
    q = ctx.q
    fq = ctx._fq
    solutions = _identity_solutions(mod)
    if len(solutions) == 1:
        c, mu = solutions[0]
        return CharPoly(c, ctx.elem(LEVEL_Q, mu), mod.P, mod.m)
    if len(solutions) == q - 1:
        degenerate = _degenerate_family(mod)
        if degenerate is not None:
            lam, half = degenerate
            expected = set()
            for mu_prime in range(1, q):
                c = half.scale(fq.add(lam, mu_prime))
                expected.add((c, fq.mul(lam, mu_prime)))
            if expected == set(solutions):
                c = half.scale(fq.add(lam, lam))
                mu = fq.mul(lam, lam)
                return CharPoly(c, ctx.elem(LEVEL_Q, mu), mod.P, mod.m)
    raise CrossCheckError(
        f"Frobenius quadratic has {len(solutions)} admissible solutions "
        f"with no degenerate structure for module {format_module(mod)}"
    )


def is_supersingular(mod: DrinfeldModule, cp: CharPoly | None = None) -> bool:
    """Trivial P-torsion, decided two independent ways.

    The height of phi(P) equals 2*deg P exactly for supersingular modules;
    this must agree with P dividing the Frobenius trace.  A disagreement is
    a bug, surfaced as :class:`CrossCheckError`.
    """
    phi_P = phi_of(mod, mod.P)
    two_d = 2 * mod.d
    if phi_P.tau_degree != two_d:  # pragma: no cover - rank is exactly 2
        raise CrossCheckError("phi(P) has wrong tau-degree")
    height = phi_P.height
    if height not in (mod.d, two_d):  # pragma: no cover - heights are d or 2d
        raise CrossCheckError(f"phi(P) has unexpected height {height}")
    by_height = height == two_d
    if cp is None:
        cp = char_poly(mod)
    by_trace = cp.c.is_zero or (cp.c % mod.P).is_zero
    if by_height != by_trace:
        raise CrossCheckError(
            f"supersingularity tests disagree on {format_module(mod)}: "
            f"height says {by_height}, P | c says {by_trace}"
        )
    return by_height


def torsion_kernel(
    mod: DrinfeldModule,
    a: APoly,
    ext_k: int = 1,
    max_points: int = DEFAULT_MAX_TORSION_POINTS,
) -> frozenset[FieldElem]:
    """All roots of the additive polynomial phi(a) in F_{q^(n*ext_k)}.

    Exhaustive evaluation over one explicit finite layer of the algebraic
    closure; the result is an A-submodule of that layer.
    """
    ctx = mod.ctx
    if ext_k < 1:
        raise ValueError("ext_k must be positive")
    big = make_ctx(ctx.p, ctx.s, ctx.n * ext_k, max_order=max_points)
    u = phi_of(mod, a)
    if u.is_zero:
        raise ValueError("phi(a) = 0 only for a = 0; torsion of 0 is everything")
    emb = embedding(ctx, big)
    coeffs = [emb[c] for c in u.coeffs]
    fl = big._fl
    out = []
    for x in range(big.order):
        acc = 0
        power = x
        for c in coeffs:
            if c:
                acc = fl.add(acc, fl.mul(c, power))
            power = big.l_frob(power)
        if acc == 0:
            out.append(big.elem(LEVEL_L, x))
    return frozenset(out)


def commutant_basis(
    mod: DrinfeldModule,
    max_tau_deg: int,
    max_unknowns: int = DEFAULT_MAX_COMMUTANT_UNKNOWNS,
) -> list[OrePoly]:
    """F_q-basis of {u : tau-deg u <= max_tau_deg, u*phi(T) = phi(T)*u}.

    Commuting with phi(T) is enough: the constants of A commute
    automatically, so this is the endomorphism ring cut at a tau-degree.
    The commutation constraint is F_q-linear in the coefficients of u once
    each L coefficient is split into its F_q coordinates.
    """
    ctx = mod.ctx
    n = ctx.n
    if max_tau_deg < 0:
        raise ValueError("max_tau_deg must be nonnegative")
    n_unknowns = (max_tau_deg + 1) * n
    if n_unknowns > max_unknowns:
        raise ScaleGuardError(
            f"commutant solve with {n_unknowns} unknowns exceeds guard {max_unknowns}"
        )
    fq = ctx._fq
    fl = ctx._fl
    a1, a2, a3 = mod.gamma_T.index, mod.a2.index, mod.a3.index

    frob1 = ctx.l_frob_matrix(1)
    frob2 = ctx.l_frob_matrix(2)

    def mult(a):
        return ctx.l_mult_matrix(a)

    # coefficient of tau^k in u*phi(T) - phi(T)*u:
    #   u_k*(a1^(q^k) - a1) + [u_(k-1)*a2^(q^(k-1)) - a2*u_(k-1)^q]
    #   + [u_(k-2)*a3^(q^(k-2)) - a3*u_(k-2)^(q^2)]
    rows: list[list[int]] = []
    zero_block = [[0] * n for _ in range(n)]
    for k in range(max_tau_deg + 3):
        blocks = []
        for i in range(max_tau_deg + 1):
            if i == k:
                block = mult(fl.sub(ctx.l_frob(a1, k), a1))
            elif i == k - 1:
                block = linalg.mat_sub(
                    fq,
                    mult(ctx.l_frob(a2, k - 1)),
                    linalg.mat_mul(fq, mult(a2), frob1),
                )
            elif i == k - 2:
                block = linalg.mat_sub(
                    fq,
                    mult(ctx.l_frob(a3, k - 2)),
                    linalg.mat_mul(fq, mult(a3), frob2),
                )
            else:
                block = zero_block
            blocks.append(block)
        for r in range(n):
            rows.append([blocks[i][r][c] for i in range(max_tau_deg + 1) for c in range(n)])

    basis_vectors = linalg.nullspace(fq, rows, n_unknowns)
    out = []
    for vec in basis_vectors:
        coeffs = tuple(
            fl.from_digits(vec[i * n : (i + 1) * n]) for i in range(max_tau_deg + 1)
        )
        out.append(OrePoly(ctx, coeffs))
    out.sort(key=lambda u: (u.tau_degree, u.coeffs))
    return out


# --- text form ------------------------------------------------------------
_MODULE_RE = re.compile(
    r"^\s*(\d+)\s*,\s*(\d+)\s*;\s*P=([^;]+);\s*m=(\d+)\s*;\s*root=(\d+)\s*;"
    r"\s*a2=(\d+)\s*;\s*a3=(\d+)\s*$"
)


def format_module(mod: DrinfeldModule) -> str:
    return (
        f"{mod.ctx.p},{mod.ctx.s} ; P={format_apoly(mod.P)} ; m={mod.m} ; "
        f"root={mod.root_index} ; a2={mod.a2.index} ; a3={mod.a3.index}"
    )


def parse_module(text: str, *, max_order: int | None = None) -> DrinfeldModule:
    match = _MODULE_RE.match(text)
    if not match:
        raise ValueError(f"bad module text {text!r}")
    p, s = int(match.group(1)), int(match.group(2))
    base = make_ctx(p, s)
    P = parse_apoly(base, match.group(3).strip())
    m = int(match.group(4))
    ctx = make_ctx(p, s, m * P.degree, max_order=max_order)
    return make_module(
        ctx,
        P,
        m,
        int(match.group(5)),
        ctx.elem(LEVEL_L, int(match.group(6))),
        ctx.elem(LEVEL_L, int(match.group(7))),
    )
