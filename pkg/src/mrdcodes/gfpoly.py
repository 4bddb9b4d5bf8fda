"""Polynomial arithmetic over prime fields F_p, and Conway polynomials.

Polynomials are tuples of coefficients (c0, c1, ..., cd) with ints in
[0, p) and no trailing zeros; the zero polynomial is the empty tuple.
Everything here targets tiny inputs (p in {2, 3}, degree <= 12), so the
implementations favour clarity over asymptotics.
"""

from __future__ import annotations

from functools import lru_cache

Poly = tuple[int, ...]


def trim(c: list[int]) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(f: Poly) -> int:
    """Degree, with deg(0) = -1."""
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out)


def neg(f: Poly, p: int) -> Poly:
    return tuple((-c) % p for c in f)


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, neg(g, p), p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def scale(f: Poly, a: int, p: int) -> Poly:
    a %= p
    if a == 0:
        return ()
    return tuple((a * c) % p for c in f)


def divmod_poly(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    """Quotient and remainder of f by g (g nonzero)."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 1)
    ginv = pow(g[-1], p - 2, p)
    while len(r) >= len(g) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(g):
            break
        shift = len(r) - len(g)
        c = (r[-1] * ginv) % p
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = (r[shift + i] - c * b) % p
    return trim(q), trim(r)


def mod(f: Poly, g: Poly, p: int) -> Poly:
    return divmod_poly(f, g, p)[1]


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    while g:
        f, g = g, mod(f, g, p)
    if f:
        f = scale(f, pow(f[-1], p - 2, p), p)
    return f


def mulmod(f: Poly, g: Poly, m: Poly, p: int) -> Poly:
    return mod(mul(f, g, p), m, p)


def powmod(f: Poly, k: int, m: Poly, p: int) -> Poly:
    out: Poly = (1,)
    f = mod(f, m, p)
    while k:
        if k & 1:
            out = mulmod(out, f, m, p)
        f = mulmod(f, f, m, p)
        k >>= 1
    return out


def eval_at_poly(f: Poly, y: Poly, m: Poly, p: int) -> Poly:
    """f(y) mod m, by Horner's rule."""
    out: Poly = ()
    for c in reversed(f):
        out = mulmod(out, y, m, p)
        out = add(out, (c,) if c else (), p)
    return out


X: Poly = (0, 1)


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin irreducibility test."""
    n = deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    if powmod(X, p ** n, f, p) != mod(X, f, p):
        return False
    for r in prime_factors(n):
        h = sub(powmod(X, p ** (n // r), f, p), X, p)
        if deg(gcd(h, f, p)) != 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division (n small)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive(f: Poly, p: int) -> bool:
    """Irreducible f with x a generator of the multiplicative group."""
    if not f or f[0] == 0 or not is_irreducible(f, p):
        return False
    n = deg(f)
    order = p ** n - 1
    for r in prime_factors(order):
        if powmod(X, order // r, f, p) == (1,):
            return False
    return True


@lru_cache(maxsize=None)
def irreducibles(p: int, d: int) -> tuple[Poly, ...]:
    """All monic irreducible polynomials of degree d over F_p."""
    out = []
    for idx in range(p ** d):
        coeffs = []
        t = idx
        for _ in range(d):
            coeffs.append(t % p)
            t //= p
        f = tuple(coeffs) + (1,)
        if is_irreducible(f, p):
            out.append(f)
    return tuple(out)


def factor(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Factor into monic irreducibles with multiplicities (trial division)."""
    out: list[tuple[Poly, int]] = []
    lead = f[-1]
    if lead != 1:
        f = scale(f, pow(lead, p - 2, p), p)
    d = 1
    while deg(f) > 0:
        if 2 * d > deg(f):
            out.append((f, 1))
            break
        hit = False
        for g in irreducibles(p, d):
            e = 0
            while True:
                q, r = divmod_poly(f, g, p)
                if r:
                    break
                f, e = q, e + 1
            if e:
                out.append((g, e))
                hit = True
            if deg(f) < d:
                break
        if not hit:
            d += 1
    return sorted(out)


def _conway_key(f: Poly, p: int) -> tuple[int, ...]:
    # Standard ordering: compare ((-1)^(n-i) a_i mod p) from the top
    # coefficient down.
    n = deg(f)
    return tuple(((-1) ** (n - i) * f[i]) % p for i in range(n - 1, -1, -1))


@lru_cache(maxsize=None)
def conway_polynomial(p: int, n: int) -> Poly:
    """Conway polynomial C_{p,n}, computed from the defining minimality.

    The result is the minimal primitive monic polynomial of degree n
    (in the standard signed lexicographic ordering) whose root has norm
    compatibility with C_{p,k} for every proper divisor k of n.
    """
    divisors = [k for k in range(1, n) if n % k == 0]
    subs = [(conway_polynomial(p, k), (p ** n - 1) // (p ** k - 1)) for k in divisors]
    best: Poly | None = None
    best_key: tuple[int, ...] | None = None
    for idx in range(p ** n):
        coeffs = []
        t = idx
        for _ in range(n):
            coeffs.append(t % p)
            t //= p
        f = tuple(coeffs) + (1,)
        key = _conway_key(f, p)
        if best_key is not None and key >= best_key:
            continue
        if not is_primitive(f, p):
            continue
        ok = True
        for g, t_pow in subs:
            y = powmod(X, t_pow, f, p)
            if eval_at_poly(g, y, f, p):
                ok = False
                break
        if ok:
            best, best_key = f, key
    assert best is not None
    return best
