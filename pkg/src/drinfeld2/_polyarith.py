"""Dense univariate polynomial helpers over a pluggable coefficient engine.

Polynomials are plain lists of engine indices, constant term first, with no
trailing zeros; ``[]`` is the zero polynomial.  An engine provides
``add/sub/neg/mul/inv/pow/from_int`` on integer indices plus a ``size``
attribute.  The same helpers back both the public F_q[T] layer and the
construction of the field towers themselves, so nothing here may depend on
higher layers.
"""

from __future__ import annotations


def trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def deg(cs: list[int]) -> int:
    """Degree with the convention deg 0 = -1."""
    return len(cs) - 1


def add(e, a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = e.add(out[i], c)
    return trim(out)


def sub(e, a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = e.sub(out[i], c)
    return trim(out)


def neg(e, a: list[int]) -> list[int]:
    return [e.neg(c) for c in a]


def scale(e, k: int, a: list[int]) -> list[int]:
    if k == 0:
        return []
    return trim([e.mul(k, c) for c in a])


def mul(e, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = e.add(out[i + j], e.mul(x, y))
    return trim(out)


def divmod_(e, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = deg(b)
    inv_lead = e.inv(b[-1])
    q = [0] * max(0, len(a) - db)
    while deg(r) >= db:
        k = deg(r) - db
        coef = e.mul(r[-1], inv_lead)
        q[k] = coef
        for i, c in enumerate(b):
            r[k + i] = e.sub(r[k + i], e.mul(coef, c))
        trim(r)
    return trim(q), r


def mod(e, a: list[int], b: list[int]) -> list[int]:
    return divmod_(e, a, b)[1]


def monic(e, a: list[int]) -> list[int]:
    if not a:
        raise ZeroDivisionError("zero polynomial has no monic associate")
    if a[-1] == 1:
        return list(a)
    return scale(e, e.inv(a[-1]), a)


def gcd_monic(e, a: list[int], b: list[int]) -> list[int]:
    if not a and not b:
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    while b:
        a, b = b, mod(e, a, b)
    return monic(e, a)


def eval_at(e, a: list[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = e.add(e.mul(acc, x), c)
    return acc


def pow_mod(e, a: list[int], exponent: int, modulus: list[int]) -> list[int]:
    result = [1]
    base = mod(e, a, modulus)
    while exponent:
        if exponent & 1:
            result = mod(e, mul(e, result, base), modulus)
        base = mod(e, mul(e, base, base), modulus)
        exponent >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(e, f: list[int]) -> bool:
    """Deterministic irreducibility test over the engine's field.

    Uses the Frobenius-power criterion: f of degree k is irreducible iff
    x^(Q^k) = x mod f and gcd(x^(Q^(k/r)) - x, f) = 1 for every prime r | k,
    where Q is the field size.
    """
    k = deg(f)
    if k <= 0:
        raise ValueError("irreducibility is undefined for constants")
    if k == 1:
        return True
    Q = e.size
    x = [0, 1]
    checkpoints = {k // r for r in _prime_factors(k)}
    h = x
    powers = {}
    for j in range(1, k + 1):
        h = pow_mod(e, h, Q, f)
        if j in checkpoints:
            powers[j] = h
    if trim(list(h)) != x:
        return False
    for j, hj in powers.items():
        if deg(gcd_monic(e, sub(e, hj, x), f)) != 0:
            return False
    return True


def first_irreducible(e, degree: int) -> list[int]:
    """Lexicographically first monic irreducible of the given degree.

    Candidates are compared coefficient by coefficient from the constant
    term upward, under the index order 0 < 1 < ... of the base field.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    from itertools import product

    for lower in product(range(e.size), repeat=degree):
        candidate = list(lower) + [1]
        if is_irreducible(e, candidate):
            return candidate
    raise AssertionError("no irreducible polynomial found")  # unreachable


def derivative(e, a: list[int]) -> list[int]:
    out = []
    for i in range(1, len(a)):
        out.append(e.mul(e.from_int(i), a[i]))
    return trim(out)
