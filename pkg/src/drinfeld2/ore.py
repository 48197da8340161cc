"""The twisted polynomial ring L{tau} with tau*x = x^q*tau.

Elements act on field extensions as F_q-linear (additive) maps
x -> sum a_i x^(q^i).  Division is one-sided; the convention here is right
division (divisor on the right), which is the side the conductor
measurement uses.

Text form: ``a0 + a1*t + a2*t^2`` with coefficients given as L element
indices and ``t`` standing for tau.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import PolyParseError
from .fields import LEVEL_L, FieldCtx, FieldElem, embedding


@dataclass(frozen=True)
class OrePoly:
    """Twisted polynomial; coefficients are L element indices, tau^0 first."""

    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        if any(not 0 <= c < self.ctx.order for c in cs):
            raise ValueError("coefficient index out of range")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def tau_degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def height(self) -> int:
        """Index of the lowest nonzero coefficient; kernel size is q^(deg - height)."""
        if self.is_zero:
            raise ValueError("height of the zero element is undefined")
        return next(i for i, c in enumerate(self.coeffs) if c != 0)

    def coeff_elems(self) -> tuple[FieldElem, ...]:
        return tuple(self.ctx.elem(LEVEL_L, c) for c in self.coeffs)

    def _check(self, other: "OrePoly"):
        if not isinstance(other, OrePoly):
            raise TypeError(f"expected OrePoly, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError("twisted polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        fl = self.ctx._fl
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = fl.add(out[i], c)
        return OrePoly(self.ctx, tuple(out))

    def __sub__(self, other):
        self._check(other)
        fl = self.ctx._fl
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = fl.sub(out[i], c)
        return OrePoly(self.ctx, tuple(out))

    def __neg__(self):
        fl = self.ctx._fl
        return OrePoly(self.ctx, tuple(fl.neg(c) for c in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        return ore_mul(self, other)

    def __str__(self):
        return format_ore(self)


def ore_zero(ctx: FieldCtx) -> OrePoly:
    return OrePoly(ctx, ())


def ore_one(ctx: FieldCtx) -> OrePoly:
    return OrePoly(ctx, (1,))


def from_scalar(ctx: FieldCtx, index: int) -> OrePoly:
    return OrePoly(ctx, (index,))


def tau_power(ctx: FieldCtx, k: int) -> OrePoly:
    if k < 0:
        raise ValueError("tau powers are nonnegative")
    return OrePoly(ctx, (0,) * k + (1,))


def scale_left(index: int, u: OrePoly) -> OrePoly:
    """Left multiplication by a constant: scales every coefficient."""
    fl = u.ctx._fl
    return OrePoly(u.ctx, tuple(fl.mul(index, c) for c in u.coeffs))


def ore_arith(kind: str, u: OrePoly, v: OrePoly) -> OrePoly:
    if kind == "add":
        return u + v
    if kind == "sub":
        return u - v
    raise ValueError(f"unknown operation {kind!r}")


def ore_mul(u: OrePoly, v: OrePoly) -> OrePoly:
    """Product under tau*x = x^q*tau; tau-degrees and heights add."""
    u._check(v)
    ctx = u.ctx
    if u.is_zero or v.is_zero:
        return ore_zero(ctx)
    fl = ctx._fl
    out = [0] * (len(u.coeffs) + len(v.coeffs) - 1)
    for i, a in enumerate(u.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(v.coeffs):
            if b:
                out[i + j] = fl.add(out[i + j], fl.mul(a, ctx.l_frob(b, i)))
    return OrePoly(ctx, tuple(out))


def ore_pow(u: OrePoly, exponent: int) -> OrePoly:
    if exponent < 0:
        raise ValueError("negative powers are not twisted polynomials")
    result = ore_one(u.ctx)
    base = u
    while exponent:
        if exponent & 1:
            result = ore_mul(result, base)
        base = ore_mul(base, base)
        exponent >>= 1
    return result


def shift(u: OrePoly, k: int) -> OrePoly:
    """Right multiplication by tau^k (coefficients shift without twisting)."""
    if u.is_zero:
        return u
    return OrePoly(u.ctx, (0,) * k + u.coeffs)


def right_divmod(u: OrePoly, v: OrePoly) -> tuple[OrePoly, OrePoly]:
    """Quotient and remainder with the divisor on the right: u = quot*v + rem."""
    u._check(v)
    if v.is_zero:
        raise ZeroDivisionError("right division by zero")
    ctx = u.ctx
    fl = ctx._fl
    dv = v.tau_degree
    rem = list(u.coeffs)
    quot = [0] * max(0, len(u.coeffs) - dv)
    while rem and len(rem) - 1 >= dv:
        k = len(rem) - 1 - dv
        # leading term of q_k tau^k * v is q_k * lead(v)^(q^k) tau^(deg rem)
        coef = fl.mul(rem[-1], fl.inv(ctx.l_frob(v.coeffs[-1], k)))
        quot[k] = coef
        for j, b in enumerate(v.coeffs):
            if b:
                rem[k + j] = fl.sub(rem[k + j], fl.mul(coef, ctx.l_frob(b, k)))
        while rem and rem[-1] == 0:
            rem.pop()
    return OrePoly(ctx, tuple(quot)), OrePoly(ctx, tuple(rem))


def additive_eval(u: OrePoly, x: FieldElem) -> FieldElem:
    """Evaluate the additive map of u at x.

    ``x`` may live in the coefficient field itself or in any declared
    extension of it (a context with the same (p, s) whose degree is a
    multiple of the coefficient field's).
    """
    if x.level != LEVEL_L:
        raise ValueError("evaluation points are L-level elements")
    big = x.ctx
    if big == u.ctx:
        emb = None
    else:
        emb = embedding(u.ctx, big)  # raises ValueError when incompatible
    fl = big._fl
    acc = 0
    power = x.index
    for i, c in enumerate(u.coeffs):
        if c:
            ce = c if emb is None else emb[c]
            acc = fl.add(acc, fl.mul(ce, power))
        power = big.l_frob(power)
    return big.elem(LEVEL_L, acc)


# --- text form ----------------------------------------------------------------
_ORE_TERM_RE = re.compile(r"^(?:(\d+)\*)?t(?:\^(\d+))?$|^(\d+)$")


def format_ore(u: OrePoly) -> str:
    if u.is_zero:
        return "0"
    parts = []
    for e, k in enumerate(u.coeffs):
        if k == 0:
            continue
        if e == 0:
            parts.append(str(k))
        elif e == 1:
            parts.append("t" if k == 1 else f"{k}*t")
        else:
            parts.append(f"t^{e}" if k == 1 else f"{k}*t^{e}")
    return " + ".join(parts)


def parse_ore(ctx: FieldCtx, text: str) -> OrePoly:
    acc: dict[int, int] = {}
    fl = ctx._fl
    pos = 0
    for raw in text.split("+"):
        term = raw.strip()
        start = pos + (len(raw) - len(raw.lstrip()))
        pos += len(raw) + 1
        if not term:
            raise PolyParseError("empty term", start)
        match = _ORE_TERM_RE.match(term)
        if not match:
            raise PolyParseError(f"bad term {term!r}", start)
        coeff_s, exp_s, const_s = match.groups()
        if const_s is not None:
            k, exp = int(const_s), 0
        else:
            k = int(coeff_s) if coeff_s is not None else 1
            exp = int(exp_s) if exp_s is not None else 1
        if k >= ctx.order:
            raise PolyParseError(f"element index {k} out of range", start)
        acc[exp] = fl.add(acc.get(exp, 0), k)
    cs = [0] * (max(acc) + 1)
    for exp, k in acc.items():
        cs[exp] = k
    return OrePoly(ctx, tuple(cs))
