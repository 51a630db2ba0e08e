"""Prime fields and monic polynomials over them (ascending coefficient tuples)."""

from __future__ import annotations

import functools
import itertools

Poly = tuple[int, ...]

MAX_SIEVE = 10**6


class OracleError(ValueError):
    pass


class CapExceeded(OracleError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def require_prime(p: int):
    if not is_prime(p):
        raise OracleError(f"the oracle works over prime fields only, got q={p}")


def trim(a: list[int]) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def poly_divmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i] * inv % p
        if c:
            quot[i - db] = c
            for j, y in enumerate(b):
                r[i - db + j] = (r[i - db + j] - c * y) % p
    return trim(quot), trim(r[:db])


def poly_pow(a: Poly, e: int, p: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = poly_mul(out, a, p)
    return out


def monic_polys(p: int, d: int):
    """All monic polynomials of degree d, in lexicographic order of coefficients."""
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


@functools.lru_cache(maxsize=None)
def irreducible_polys(p: int, d: int) -> tuple[Poly, ...]:
    """Monic irreducibles of degree d, sieved against lower-degree irreducibles."""
    require_prime(p)
    if d < 1:
        raise OracleError("degree must be positive")
    if p**d > MAX_SIEVE:
        raise CapExceeded(f"q^d = {p**d} exceeds the sieve bound {MAX_SIEVE}")
    divisors = [f for e in range(1, d // 2 + 1) for f in irreducible_polys(p, e)]
    out = []
    for f in monic_polys(p, d):
        if all(poly_divmod(f, g, p)[1] for g in divisors):
            out.append(f)
    return tuple(out)


def linear_root(f: Poly, p: int) -> int:
    """a for f = z - a."""
    return (-f[0]) % p


def poly_str(f: Poly) -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mon if c == 1 else f"{c}{mon}")
    return " + ".join(terms) or "0"
