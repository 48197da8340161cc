"""The polynomial ring A = F_q[T].

Carries arithmetic, gcd, irreducibility, square-part extraction, monic
canonicalization and deterministic enumeration.  :class:`APoly` values are
immutable and always bound to the base context ``make_ctx(p, s, 1)``, so
polynomials over the same F_q compare equal regardless of which tower they
were created for.

Text grammar (ASCII): a sum of terms ``k*T^e`` with ``k`` an element index,
e.g. ``T^2+2*T+1``; the compact coefficient-list form ``[1,2,1]`` (constant
term first) is also accepted.  Emission always uses the term form with
exponents descending.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import _polyarith as pa
from .errors import PolyParseError
from .fields import FieldCtx


@dataclass(frozen=True)
class APoly:
    """Element of A = F_q[T]; coefficients constant-first, no trailing zeros.

    The zero polynomial is the empty coefficient tuple and reports degree
    -1 (the distinguished marker for degree minus infinity).
    """

    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ctx", self.ctx.base)
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        if any(not 0 <= c < self.ctx.q for c in cs):
            raise ValueError("coefficient index out of range")
        object.__setattr__(self, "coeffs", tuple(cs))

    # --- structure ------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _e(self):
        return self.ctx._fq

    def _wrap(self, cs: list[int]) -> "APoly":
        return APoly(self.ctx, tuple(cs))

    def _check(self, other: "APoly"):
        if not isinstance(other, APoly):
            raise TypeError(f"expected APoly, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError("polynomials over different base fields")

    # --- ring operations --------------------------------------------------
    def __add__(self, other):
        self._check(other)
        return self._wrap(pa.add(self._e(), list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return self._wrap(pa.sub(self._e(), list(self.coeffs), list(other.coeffs)))

    def __neg__(self):
        return self._wrap(pa.neg(self._e(), list(self.coeffs)))

    def __mul__(self, other):
        self._check(other)
        return self._wrap(pa.mul(self._e(), list(self.coeffs), list(other.coeffs)))

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = one(self.ctx)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other):
        self._check(other)
        q, r = pa.divmod_(self._e(), list(self.coeffs), list(other.coeffs))
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scale(self, k: int) -> "APoly":
        """Multiply by the F_q element with index ``k``."""
        return self._wrap(pa.scale(self._e(), k, list(self.coeffs)))

    def evaluate(self, x: int) -> int:
        """Horner evaluation at an F_q element index."""
        return pa.eval_at(self._e(), list(self.coeffs), x)

    def monic(self) -> "APoly":
        return monic_gen(self)

    def __str__(self):
        return format_apoly(self)


# --- constructors ----------------------------------------------------------
def zero(ctx: FieldCtx) -> APoly:
    return APoly(ctx, ())


def one(ctx: FieldCtx) -> APoly:
    return APoly(ctx, (1,))


def const(ctx: FieldCtx, k: int) -> APoly:
    """Constant polynomial from a plain integer (reduced into F_p < F_q)."""
    return APoly(ctx, (ctx._fq.from_int(k),))


def T(ctx: FieldCtx) -> APoly:
    return APoly(ctx, (0, 1))


def poly_from_index(ctx: FieldCtx, index: int) -> APoly:
    """Inverse of :func:`poly_index`: base-q digits become coefficients."""
    q = ctx.q
    cs = []
    while index:
        index, digit = divmod(index, q)
        cs.append(digit)
    return APoly(ctx, tuple(cs))


def poly_index(f: APoly) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * f.ctx.q + c
    return acc


def sort_key(f: APoly) -> tuple[int, int]:
    """Canonical (degree, index) ordering used everywhere reports are emitted."""
    return (f.degree, poly_index(f))


# --- ring-level operations ------------------------------------------------
def poly_arith(kind: str, f: APoly, g: APoly) -> APoly:
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    raise ValueError(f"unknown operation {kind!r}")


def poly_divmod(f: APoly, g: APoly) -> tuple[APoly, APoly]:
    return divmod(f, g)


def gcd_monic(f: APoly, g: APoly) -> APoly:
    if f.is_zero and g.is_zero:
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    f._check(g)
    return f._wrap(pa.gcd_monic(f._e(), list(f.coeffs), list(g.coeffs)))


def is_irreducible(f: APoly) -> bool:
    if f.degree < 1:
        raise ValueError("irreducibility is undefined for constants")
    return pa.is_irreducible(f._e(), list(f.coeffs))


def monic_gen(f: APoly) -> APoly:
    """The unique monic associate; canonical generator of the ideal (f)."""
    if f.is_zero:
        raise ZeroDivisionError("the zero ideal has no monic generator")
    return f._wrap(pa.monic(f._e(), list(f.coeffs)))


def _derivative(f: APoly) -> APoly:
    return f._wrap(pa.derivative(f._e(), list(f.coeffs)))


def _pth_root(f: APoly) -> APoly:
    """Exact p-th root of a polynomial all of whose exponents are p-multiples."""
    p = f.ctx.p
    e = f._e()
    # x -> x^p permutes F_q; its inverse is x -> x^(p^(s-1))
    root_exp = p ** (f.ctx.s - 1)
    cs = []
    for i in range(0, len(f.coeffs), p):
        cs.append(e.pow(f.coeffs[i], root_exp))
        if any(f.coeffs[i + j] for j in range(1, min(p, len(f.coeffs) - i))):
            raise ValueError("polynomial is not a p-th power")
    return f._wrap(cs)


def _squarefree_decomposition(f: APoly) -> list[tuple[APoly, int]]:
    """Write monic ``f`` as a product of powers of squarefree parts.

    Returns pairs (factor, multiplicity) with the factors pairwise coprime,
    squarefree and monic.  Characteristic p needs care: the derivative kills
    p-th powers entirely, so the part of f whose multiplicities are
    divisible by p survives in gcd(f, f') and is handled by recursing on its
    p-th root.
    """
    assert f.is_monic
    if f.degree == 0:
        return []
    p = f.ctx.p
    df = _derivative(f)
    if df.is_zero:
        inner = _squarefree_decomposition(_pth_root(f))
        return [(g, p * i) for g, i in inner]
    c = gcd_monic(f, df)
    w = f // c
    out = []
    i = 1
    while w.degree > 0:
        y = gcd_monic(w, c)
        factor = w // y
        if factor.degree > 0:
            out.append((factor, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        # leftover multiplicities all divisible by p
        inner = _squarefree_decomposition(_pth_root(c))
        out.extend((g, p * j) for g, j in inner)
    out.sort(key=lambda pair: (pair[1], sort_key(pair[0])))
    return out


def square_part(f: APoly) -> tuple[APoly, APoly]:
    """Largest monic g with g^2 | f, and the exact cofactor.

    Returns (g, omega) with f = g^2 * omega precisely; omega is squarefree
    up to the unit it absorbs.
    """
    if f.is_zero:
        raise ZeroDivisionError("square part of the zero polynomial is undefined")
    g = one(f.ctx)
    for factor, mult in _squarefree_decomposition(monic_gen(f)):
        if mult >= 2:
            g = g * factor ** (mult // 2)
    omega = f // (g * g)
    assert (g * g * omega) == f
    return g, omega


def enumerate_polys(ctx: FieldCtx, max_deg: int, constraint=None):
    """All polynomials of degree <= max_deg in index order, filtered.

    The stream is deterministic and restartable; consumers may partition
    the index range freely.
    """
    if max_deg < 0:
        raise ValueError("max_deg must be nonnegative")
    for index in range(ctx.q ** (max_deg + 1)):
        f = poly_from_index(ctx, index)
        if constraint is None or constraint(f):
            yield f


def monic_polys_of_degree(ctx: FieldCtx, d: int):
    """Monic polynomials of degree exactly d, in index order."""
    for lower in range(ctx.q**d):
        yield poly_from_index(ctx, ctx.q**d + lower)


def monic_divisors(f: APoly) -> list[APoly]:
    """Monic divisors of a nonzero f, by trial division, in (degree, index) order."""
    if f.is_zero:
        raise ZeroDivisionError("divisors of zero are not enumerable")
    out = []
    for d in range(f.degree + 1):
        for g in monic_polys_of_degree(f.ctx, d):
            if (f % g).is_zero:
                out.append(g)
    return out


# --- text form ---------------------------------------------------------------
_TERM_RE = re.compile(r"^(?:(\d+)\*)?T(?:\^(\d+))?$|^(\d+)$")


def format_apoly(f: APoly) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for e in range(f.degree, -1, -1):
        k = f.coeffs[e]
        if k == 0:
            continue
        if e == 0:
            parts.append(str(k))
        elif e == 1:
            parts.append("T" if k == 1 else f"{k}*T")
        else:
            parts.append(f"T^{e}" if k == 1 else f"{k}*T^{e}")
    return "+".join(parts)


def parse_apoly(ctx: FieldCtx, text: str) -> APoly:
    """Parse the term grammar or the compact ``[...]`` coefficient list."""
    ctx = ctx.base
    stripped = text.strip()
    if stripped.startswith("["):
        if not stripped.endswith("]"):
            raise PolyParseError("unterminated coefficient list", len(text) - 1)
        body = stripped[1:-1].strip()
        if not body:
            return zero(ctx)
        cs = []
        for piece in body.split(","):
            piece = piece.strip()
            if not piece.isdigit():
                raise PolyParseError(f"bad coefficient {piece!r}", text.find(piece))
            value = int(piece)
            if value >= ctx.q:
                raise PolyParseError(
                    f"element index {value} out of range for q={ctx.q}",
                    text.find(piece),
                )
            cs.append(value)
        return APoly(ctx, tuple(cs))

    e = ctx._fq
    acc: dict[int, int] = {}
    pos = 0
    for raw in text.split("+"):
        term = raw.strip()
        start = pos + (len(raw) - len(raw.lstrip()))
        pos += len(raw) + 1
        if not term:
            raise PolyParseError("empty term", start)
        match = _TERM_RE.match(term)
        if not match:
            raise PolyParseError(f"bad term {term!r}", start)
        coeff_s, exp_s, const_s = match.groups()
        if const_s is not None:
            k, exp = int(const_s), 0
        else:
            k = int(coeff_s) if coeff_s is not None else 1
            exp = int(exp_s) if exp_s is not None else 1
        if k >= ctx.q:
            raise PolyParseError(
                f"element index {k} out of range for q={ctx.q}", start
            )
        acc[exp] = e.add(acc.get(exp, 0), k)
    cs = [0] * (max(acc) + 1)
    for exp, k in acc.items():
        cs[exp] = k
    return APoly(ctx, tuple(cs))


def irreducibles_of_degree(ctx: FieldCtx, d: int):
    """Monic irreducibles of degree d in index order (deterministic)."""
    for f in monic_polys_of_degree(ctx, d):
        if is_irreducible(f):
            yield f
