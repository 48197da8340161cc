"""Exact arithmetic in the tower F_p < F_q < L = F_{q^n}.

A :class:`FieldCtx` fixes the whole tower; a :class:`FieldElem` is an
immutable element of one level of it.  Both defining moduli are the
lexicographically first monic irreducible of the required degree
(coefficients compared from the constant term upward), so a context is
reconstructible from the triple (p, s, n) alone and serialized element
indices mean the same thing across runs and machines.

Element indices: the coordinates of an element with respect to the power
basis of its level are the digits of its index, the constant coordinate
being least significant (base p at the F_q level, base q at the L level).
This makes the index map a bijection with [0, q^n), and addition
digit-wise.

Elements at the F_q level are always bound to the base context
``make_ctx(p, s, 1)`` so that coefficients of polynomials agree no matter
which tower they were first created in.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import _polyarith as pa
from .errors import ScaleGuardError

DEFAULT_MAX_FIELD_ORDER = 1 << 20

LEVEL_Q = "q"
LEVEL_L = "L"


class _PrimeArith:
    """F_p on integer representatives 0..p-1."""

    __slots__ = ("p", "size")

    def __init__(self, p: int):
        self.p = p
        self.size = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, k):
        return k % self.p

    @property
    def char(self):
        return self.p


class _ExtArith:
    """Extension of a base arithmetic by a monic irreducible modulus.

    Elements are integer indices whose base-``base.size`` digits are the
    coordinates in the power basis, constant digit least significant.
    Multiplication goes through discrete exp/log tables built once per
    instance; addition stays digit-wise so it needs no table.
    """

    __slots__ = ("base", "modulus", "deg", "size", "_digits", "_exp", "_log")

    def __init__(self, base, modulus: list[int]):
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.base = base
        self.modulus = tuple(modulus)
        self.deg = len(modulus) - 1
        self.size = base.size ** self.deg
        self._digits = [self._decode(i) for i in range(self.size)]
        self._exp = None
        self._log = None

    # --- index <-> digit encoding -------------------------------------
    def _decode(self, i: int) -> tuple[int, ...]:
        b = self.base.size
        return tuple((i // b**k) % b for k in range(self.deg))

    def _encode(self, digits) -> int:
        acc = 0
        for d in reversed(digits):
            acc = acc * self.base.size + d
        return acc

    def digits(self, i: int) -> tuple[int, ...]:
        return self._digits[i]

    def from_digits(self, digits) -> int:
        return self._encode(digits)

    # --- raw polynomial arithmetic (used to bootstrap the tables) -----
    def _raw_mul(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        conv = [0] * (2 * self.deg - 1) if self.deg > 1 else [0]
        e = self.base
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    conv[i + j] = e.add(conv[i + j], e.mul(x, y))
        for k in range(len(conv) - 1, self.deg - 1, -1):
            c = conv[k]
            if c == 0:
                continue
            conv[k] = 0
            for i in range(self.deg):
                if self.modulus[i]:
                    conv[k - self.deg + i] = e.sub(
                        conv[k - self.deg + i], e.mul(c, self.modulus[i])
                    )
        return self._encode(conv[: self.deg])

    def _raw_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return result

    def _ensure_tables(self):
        if self._exp is not None:
            return
        m = self.size - 1
        gen = None
        for g in range(2, self.size):
            if all(self._raw_pow(g, m // f) != 1 for f in pa._prime_factors(m)):
                gen = g
                break
        if gen is None:  # pragma: no cover - multiplicative group is cyclic
            raise AssertionError("no multiplicative generator found")
        exp = [1] * m
        log = [-1] * self.size
        log[1] = 0
        acc = 1
        for k in range(1, m):
            acc = self._raw_mul(acc, gen)
            exp[k] = acc
            log[acc] = k
        self._exp = exp
        self._log = log

    # --- field operations ---------------------------------------------
    def add(self, a: int, b: int) -> int:
        e = self.base
        da, db = self._digits[a], self._digits[b]
        return self._encode([e.add(x, y) for x, y in zip(da, db)])

    def sub(self, a: int, b: int) -> int:
        e = self.base
        da, db = self._digits[a], self._digits[b]
        return self._encode([e.sub(x, y) for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        e = self.base
        return self._encode([e.neg(x) for x in self._digits[a]])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        self._ensure_tables()
        m = self.size - 1
        t = self._log[a] + self._log[b]
        if t >= m:
            t -= m
        return self._exp[t]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero")
        self._ensure_tables()
        m = self.size - 1
        return self._exp[(m - self._log[a]) % m]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("division by zero")
            return 0
        self._ensure_tables()
        return self._exp[(self._log[a] * e) % (self.size - 1)]

    def from_int(self, k: int) -> int:
        return self.base.from_int(k)

    @property
    def char(self):
        return self.base.char


class FieldCtx:
    """The tower F_p < F_q = F_{p^s} < L = F_{q^n} with deterministic moduli.

    Use :func:`make_ctx` instead of constructing directly; contexts are
    cached so equal parameters always give the identical object.
    """

    def __init__(self, p: int, s: int, n: int):
        self.p = p
        self.s = s
        self.n = n
        self.q = p**s
        self.order = self.q**n
        prime = _PrimeArith(p)
        self.modulus_q = tuple(pa.first_irreducible(prime, s))
        self._fq = _ExtArith(prime, list(self.modulus_q))
        self.modulus_L = tuple(pa.first_irreducible(self._fq, n))
        self._fl = _ExtArith(self._fq, list(self.modulus_L))

    # contexts with equal parameters are interchangeable by construction
    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.s, self.n) == (other.p, other.s, other.n)
        )

    def __hash__(self):
        return hash((self.p, self.s, self.n))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, s={self.s}, n={self.n})"

    @property
    def text(self) -> str:
        return f"{self.p},{self.s},{self.n}"

    @property
    def base(self) -> "FieldCtx":
        """The (p, s, 1) context that coefficient-level values bind to."""
        if self.n == 1:
            return self
        return make_ctx(self.p, self.s, 1)

    # --- element constructors ------------------------------------------
    def elem(self, level: str, index: int) -> "FieldElem":
        size = self.q if level == LEVEL_Q else self.order
        if level not in (LEVEL_Q, LEVEL_L):
            raise ValueError(f"unknown level {level!r}")
        if not 0 <= index < size:
            raise ValueError(f"index {index} out of range for level {level}")
        if level == LEVEL_Q:
            return FieldElem(self.base, LEVEL_Q, index)
        return FieldElem(self, LEVEL_L, index)

    def from_coords(self, level: str, coords) -> "FieldElem":
        arith = self._fq if level == LEVEL_Q else self._fl
        coords = tuple(coords)
        if len(coords) != arith.deg:
            raise ValueError(f"expected {arith.deg} coordinates, got {len(coords)}")
        return self.elem(level, arith.from_digits(coords))

    def coords_of(self, x: "FieldElem") -> tuple[int, ...]:
        arith = self._fq if x.level == LEVEL_Q else self._fl
        return arith.digits(x.index)

    # --- index-level helpers used by the rest of the package -----------
    def l_frob(self, i: int, times: int = 1) -> int:
        """q-power Frobenius on the L level, iterated ``times``."""
        if i == 0:
            return 0
        return self._fl.pow(i, pow(self.q, times, self.order - 1))

    def q_is_square(self, i: int) -> bool:
        if i == 0:
            return True
        return self._fq.pow(i, (self.q - 1) // 2) == 1

    def embed_q_in_l(self, i: int) -> int:
        """F_q included in L as the constant coordinate."""
        return i

    def l_norm_to_q(self, i: int) -> int:
        acc = 1
        y = i
        for _ in range(self.n):
            acc = self._fl.mul(acc, y)
            y = self.l_frob(y)
        digits = self._fl.digits(acc)
        if any(digits[1:]):  # pragma: no cover - norm lands in F_q by theory
            raise AssertionError("norm left the base field")
        return digits[0]

    def l_mult_matrix(self, a: int) -> list[list[int]]:
        """Matrix over F_q of x -> a*x on L, columns indexed by basis powers."""
        n = self.n
        cols = []
        for j in range(n):
            basis = self._fl.from_digits([0] * j + [1] + [0] * (n - 1 - j))
            cols.append(self._fl.digits(self._fl.mul(a, basis)))
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def l_frob_matrix(self, times: int = 1) -> list[list[int]]:
        """Matrix over F_q of the iterated q-power Frobenius on L."""
        n = self.n
        cols = []
        for j in range(n):
            basis = self._fl.from_digits([0] * j + [1] + [0] * (n - 1 - j))
            cols.append(self._fl.digits(self.l_frob(basis, times)))
        return [[cols[j][i] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class FieldElem:
    """Immutable element of one level of a :class:`FieldCtx`."""

    ctx: FieldCtx
    level: str
    index: int

    @property
    def coords(self) -> tuple[int, ...]:
        return self.ctx.coords_of(self)

    def _arith(self):
        return self.ctx._fq if self.level == LEVEL_Q else self.ctx._fl

    def _check_compat(self, other: "FieldElem"):
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if self.ctx != other.ctx or self.level != other.level:
            raise ValueError("level mismatch")

    def __add__(self, other):
        self._check_compat(other)
        return FieldElem(self.ctx, self.level, self._arith().add(self.index, other.index))

    def __sub__(self, other):
        self._check_compat(other)
        return FieldElem(self.ctx, self.level, self._arith().sub(self.index, other.index))

    def __mul__(self, other):
        self._check_compat(other)
        return FieldElem(self.ctx, self.level, self._arith().mul(self.index, other.index))

    def __truediv__(self, other):
        self._check_compat(other)
        a = self._arith()
        return FieldElem(self.ctx, self.level, a.mul(self.index, a.inv(other.index)))

    def __neg__(self):
        return FieldElem(self.ctx, self.level, self._arith().neg(self.index))

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return f"<{self.level}:{self.index} over {self.ctx.text}>"


@functools.lru_cache(maxsize=None)
def _build_ctx(p: int, s: int, n: int) -> FieldCtx:
    return FieldCtx(p, s, n)


def make_ctx(p: int, s: int = 1, n: int = 1, *, max_order: int | None = None) -> FieldCtx:
    """Deterministic context for the tower F_p < F_{p^s} < F_{p^(s*n)}.

    Same (p, s, n) always yields bit-identical moduli.  The order guard is
    soft: it exists because everything downstream enumerates fields
    exhaustively.
    """
    if p == 2:
        raise ValueError("characteristic 2 unsupported")
    if p < 2 or any(p % f == 0 for f in range(2, int(p**0.5) + 1)):
        raise ValueError(f"p must be an odd prime, got {p}")
    if s < 1 or n < 1:
        raise ValueError("s and n must be positive")
    limit = DEFAULT_MAX_FIELD_ORDER if max_order is None else max_order
    if p**(s * n) > limit:
        raise ScaleGuardError(
            f"field order {p**(s * n)} exceeds the guard {limit}"
        )
    return _build_ctx(p, s, n)


def arith(kind: str, a: FieldElem, b: FieldElem) -> FieldElem:
    """Dispatch add/sub/mul/div on same-level elements."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def frobenius_q(x: FieldElem) -> FieldElem:
    """The q-power Frobenius x -> x^q on the L level."""
    if x.level != LEVEL_L:
        raise ValueError("frobenius_q acts on L-level elements")
    return FieldElem(x.ctx, LEVEL_L, x.ctx.l_frob(x.index))


def is_square_in_Fq(x: FieldElem) -> bool:
    """Euler criterion at the F_q level; zero counts as a square."""
    if x.level != LEVEL_Q:
        raise ValueError("is_square_in_Fq acts on q-level elements")
    return x.ctx.q_is_square(x.index)


def norm_to_Fq(x: FieldElem) -> FieldElem:
    """Product of the n conjugates of x; lands in F_q."""
    if x.level != LEVEL_L:
        raise ValueError("norm_to_Fq acts on L-level elements")
    return x.ctx.elem(LEVEL_Q, x.ctx.l_norm_to_q(x.index))


@functools.lru_cache(maxsize=None)
def embedding(src: FieldCtx, dst: FieldCtx) -> tuple[int, ...]:
    """Index map of the canonical embedding F_{q^n} -> F_{q^(n*k)}.

    The image of the source generator is the first root (in index order) of
    the source modulus inside the destination field, which pins the
    embedding deterministically.
    """
    if src is dst or src == dst:
        return tuple(range(src.order))
    if (src.p, src.s) != (dst.p, dst.s) or dst.n % src.n != 0:
        raise ValueError(f"no embedding of {src.text} into {dst.text}")
    fl = dst._fl
    coeffs = [dst.embed_q_in_l(c) for c in src.modulus_L]
    rho = None
    for x in range(dst.order):
        acc = 0
        for c in reversed(coeffs):
            acc = fl.add(fl.mul(acc, x), c)
        if acc == 0:
            rho = x
            break
    if rho is None:  # pragma: no cover - the modulus splits in dst
        raise AssertionError("modulus has no root in the extension")
    out = []
    for e in range(src.order):
        acc = 0
        for c in reversed(src._fl.digits(e)):
            acc = fl.add(fl.mul(acc, rho), dst.embed_q_in_l(c))
        out.append(acc)
    return tuple(out)


def embed_elem(x: FieldElem, dst: FieldCtx) -> FieldElem:
    if x.level == LEVEL_Q:
        return dst.elem(LEVEL_L, dst.embed_q_in_l(x.index))
    return dst.elem(LEVEL_L, embedding(x.ctx, dst)[x.index])
