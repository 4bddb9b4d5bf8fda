"""Finite fields F_q and towers F_q <= F_{q^n}, with fixed Conway bases.

Field elements are plain ints in [0, p^m): the base-p digits of the
int are the coefficients of the element written in the power basis of
the Conway polynomial.  All catalogs and emitted matrices depend on
this representation being bit-for-bit reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gfpoly


class GFExt:
    """The field F_{p^m} with Conway-polynomial representation.

    Multiplication and inverses go through exp/log tables (p^m <= 3^12
    in scope, so the tables are small).
    """

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.order = p ** m
        self.modulus = gfpoly.conway_polynomial(p, m)
        self._weights = [p ** i for i in range(m)]
        # exp/log tables; x (the int p, or 1 when m == 1) is primitive.
        gen_poly: gfpoly.Poly = (0, 1) if m > 1 else (gfpoly.mod((0, 1), self.modulus, p))
        self._exp = [0] * (2 * self.order)
        self._log = [0] * self.order
        acc: gfpoly.Poly = (1,)
        for i in range(self.order - 1):
            v = self._poly_to_int(acc)
            self._exp[i] = v
            self._exp[i + self.order - 1] = v
            self._log[v] = i
            acc = gfpoly.mulmod(acc, gen_poly, self.modulus, p)
        if self._poly_to_int(acc) != 1:
            raise AssertionError("generator order mismatch")

    def _poly_to_int(self, f: gfpoly.Poly) -> int:
        return sum(c * w for c, w in zip(f, self._weights))

    def int_to_poly(self, a: int) -> gfpoly.Poly:
        digits = []
        for _ in range(self.m):
            digits.append(a % self.p)
            a //= self.p
        return gfpoly.trim(digits)

    @property
    def generator(self) -> int:
        return self._exp[1]

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        out = 0
        for w in self._weights:
            out += ((a // w + b // w) % self.p) * w
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        out = 0
        for w in self._weights:
            out += ((-(a // w)) % self.p) * w
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[self.order - 1 - self._log[a]]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k <= 0:
                raise ZeroDivisionError("0 ** nonpositive")
            return 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def elements(self) -> range:
        return range(self.order)

    def scalar_mul_digit(self, a: int, c: int) -> int:
        """a times the prime-field scalar c."""
        out = 0
        for _ in range(c % self.p):
            out = self.add(out, a)
        return out


@lru_cache(maxsize=None)
def get_field(p: int, m: int) -> GFExt:
    return GFExt(p, m)


@dataclass(frozen=True)
class FieldCtx:
    """Ambient field data: F_q = F_{p^e} and the extension F_{q^n}.

    In paper scope p in {2, 3} and e = 1, but the tower is kept general
    (e * n <= 12).
    """

    p: int
    e: int
    n: int

    def __post_init__(self):
        if self.p not in (2, 3):
            raise ValueError(f"unsupported characteristic {self.p}")
        if self.e < 1 or self.n < 1 or self.e * self.n > 12:
            raise ValueError("field tower out of supported range")

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def Fq(self) -> GFExt:
        return get_field(self.p, self.e)

    @property
    def Fqn(self) -> GFExt:
        return get_field(self.p, self.e * self.n)

    # -- tower structure (cached per ctx via module cache) --------------

    def _tower(self):
        return _tower_data(self.p, self.e, self.n)

    def embed(self, a: int) -> int:
        """Embed an element of F_q into F_{q^n}."""
        return self._tower().embed[a]

    def coords(self, z: int) -> tuple[int, ...]:
        """Coordinates of z in the F_q-basis (1, g, g^2, ..., g^(n-1)).

        g is the Conway generator of F_{q^n}.
        """
        return self._tower().coords(z)

    def from_coords(self, cs) -> int:
        """Inverse of coords."""
        t = self._tower()
        big = self.Fqn
        out = 0
        for i, c in enumerate(cs):
            out = big.add(out, big.mul(self.embed(c), t.basis[i]))
        return out

    def field_norm(self, a: int) -> int:
        """Norm from F_{q^n} down to F_q, as an element of F_q."""
        big = self.Fqn
        t = (big.order - 1) // (self.Fq.order - 1)
        v = big.pow(a, t) if a else 0
        return self._tower().unembed[v] if a else 0

    def norm_to_prime(self, a: int) -> int:
        """Norm from F_{q^n} all the way down to F_p."""
        big = self.Fqn
        t = (big.order - 1) // (self.p - 1)
        if a == 0:
            return 0
        v = big.pow(a, t)
        # v lies in the prime field: its int value is the scalar itself.
        if v >= self.p:
            raise AssertionError("norm not in prime field")
        return v

    def frobenius(self, a: int, s: int) -> int:
        """a ** (q ** s), the s-th power of the q-Frobenius."""
        big = self.Fqn
        return big.pow(a, pow(self.q, s % self.n, big.order - 1)) if a else 0


class _Tower:
    def __init__(self, p: int, e: int, n: int):
        small = get_field(p, e)
        big = get_field(p, e * n)
        self.small, self.big = small, big
        if e == 1:
            self.embed = list(range(p))
        else:
            t = (big.order - 1) // (small.order - 1)
            gb = big.pow(big.generator, t)
            self.embed = [0] * small.order
            acc = 1
            gs = small.generator
            es = 1
            for _ in range(small.order - 1):
                self.embed[es] = acc
                es = small.mul(es, gs)
                acc = big.mul(acc, gb)
            self.embed[1] = 1
        self.unembed = {v: a for a, v in enumerate(self.embed)}
        g = big.generator
        self.basis = [big.pow(g, i) if i else 1 for i in range(n)]
        # F_p-matrix whose columns are basis[i] * embed(w_j) for the
        # F_p-basis w_j of F_q; invert once for coordinate extraction.
        cols = []
        for i in range(n):
            for j in range(e):
                wj = p ** j
                cols.append(big.mul(self.basis[i], self.embed[wj]))
        dim = e * n
        M = np.zeros((dim, dim), dtype=np.int64)
        for c, v in enumerate(cols):
            for r in range(dim):
                M[r, c] = (v // (p ** r)) % p
        self._inv = _inv_mod_p(M, p)
        self._p, self._e, self._n = p, e, n

    def coords(self, z: int) -> tuple[int, ...]:
        p, e, n = self._p, self._e, self._n
        dim = e * n
        vec = np.array([(z // (p ** r)) % p for r in range(dim)], dtype=np.int64)
        sol = (self._inv @ vec) % p
        out = []
        for i in range(n):
            c = 0
            for j in range(e):
                c += int(sol[i * e + j]) * (p ** j)
            out.append(c)
        return tuple(out)


@lru_cache(maxsize=None)
def _tower_data(p: int, e: int, n: int) -> _Tower:
    return _Tower(p, e, n)


def _inv_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a small integer matrix mod p by Gauss-Jordan."""
    n = M.shape[0]
    A = np.concatenate([M % p, np.eye(n, dtype=np.int64)], axis=1)
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if A[i, c] % p:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix not invertible mod p")
        A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        for i in range(n):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
    return A[:, n:]


@dataclass(frozen=True)
class FieldElement:
    """An element of F_{q^n} (or F_q, when n parts are unused) with context."""

    ctx: FieldCtx
    val: int
    in_extension: bool = True

    def _field(self) -> GFExt:
        return self.ctx.Fqn if self.in_extension else self.ctx.Fq

    def _check(self, other: "FieldElement"):
        if other.ctx != self.ctx or other.in_extension != self.in_extension:
            raise ValueError("field context mismatch")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx, self._field().add(self.val, other.val), self.in_extension)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx, self._field().mul(self.val, other.val), self.in_extension)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.ctx, self._field().neg(self.val), self.in_extension)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self._field().inv(self.val), self.in_extension)


def field_norm(a: FieldElement) -> FieldElement:
    """Norm map N: F_{q^n} -> F_q."""
    if not a.in_extension:
        raise ValueError("norm expects an element of the extension field")
    return FieldElement(a.ctx, a.ctx.field_norm(a.val), in_extension=False)


def norm_to_prime(a: FieldElement) -> int:
    """Norm map down to the prime field, returned as an int in [0, p)."""
    if not a.in_extension:
        raise ValueError("norm expects an element of the extension field")
    return a.ctx.norm_to_prime(a.val)


def frobenius(a: FieldElement, s: int) -> FieldElement:
    """The map a -> a^(q^s)."""
    if not a.in_extension:
        raise ValueError("frobenius expects an element of the extension field")
    return FieldElement(a.ctx, a.ctx.frobenius(a.val, s), in_extension=True)
