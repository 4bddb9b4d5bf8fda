"""Known additive MRD families: Delsarte-Gabidulin, twisted Gabidulin,
Trombetti-Zhou, field spread sets, and presemifield plumbing.

All constructions express codewords as matrices of F_q-linear maps on
F_{q^n} in the fixed Conway power basis, so emitted matrices are
reproducible verbatim across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gf import FieldCtx, get_field
from .matrix import MatrixGF, linear_map_to_matrix
from .codes import AdditiveCode


@dataclass(frozen=True)
class LinearizedPoly:
    """x -> sum c_i x^(q^(s*i)) with coefficients c_i in F_{q^n}."""

    ctx: FieldCtx
    coeffs: tuple[int, ...]
    s: int = 1

    def __post_init__(self):
        from math import gcd
        if gcd(self.s, self.ctx.n) != 1:
            raise ValueError("twist stride must be coprime to n")
        if len(self.coeffs) > self.ctx.n:
            raise ValueError("too many coefficients")

    def evaluate(self, x: int) -> int:
        big = self.ctx.Fqn
        out = 0
        for i, c in enumerate(self.coeffs):
            if c:
                out = big.add(out, big.mul(c, self.ctx.frobenius(x, self.s * i)))
        return out

    def to_matrix(self) -> MatrixGF:
        return linear_map_to_matrix(self.ctx, self.coeffs, self.s)

    def __add__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        if other.ctx != self.ctx or other.s != self.s:
            raise ValueError("context/stride mismatch")
        big = self.ctx.Fqn
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return LinearizedPoly(self.ctx, tuple(big.add(x, y) for x, y in zip(a, b)), self.s)


def identity_map(ctx: FieldCtx) -> LinearizedPoly:
    return LinearizedPoly(ctx, (1,))


def zero_map(ctx: FieldCtx) -> LinearizedPoly:
    return LinearizedPoly(ctx, ())


@dataclass(frozen=True)
class Presemifield:
    """A presemifield given by its spread set {x -> x o y}.

    The multiplication labeling fixes y = sum y_j e_j (F_p coordinates)
    to the right-multiplication matrix sum y_j B_j over the canonical
    basis B_j of the spread-set code, with x o y = x @ R_y (row vectors).
    """

    name: str
    q: int
    n: int
    code: AdditiveCode
    provenance: str = ""

    def __post_init__(self):
        C = self.code
        if C.m != C.n or C.m != self.n or C.q != self.q:
            raise ValueError("spread set shape mismatch")
        if C.dim != self.n * C.e:
            raise ValueError("spread set must have dimension n*e over F_p")
        if C.minimum_distance() != self.n:
            raise ValueError("spread set contains a singular nonzero element")

    @property
    def order(self) -> int:
        return self.q ** self.n

    def right_mult_matrix(self, y) -> MatrixGF:
        """R_y for y given as F_p coordinates of length n*e."""
        M = MatrixGF.zero(self.q, self.n, self.n)
        for c, B in zip(y, self.code.basis):
            for _ in range(c % self.code.p):
                M = M + B
        return M

    def multiply(self, x, y) -> tuple[int, ...]:
        """x o y for x a row vector over F_q, y in F_p coordinates."""
        R = self.right_mult_matrix(y)
        return (MatrixGF.from_rows(self.q, [x]) @ R).rows[0]

    def is_commutative(self) -> bool:
        n, e = self.n, self.code.e
        units = [tuple(1 if i == j else 0 for j in range(n * e)) for i in range(n * e)]
        for i, x in enumerate(units):
            for y in units[i + 1:]:
                xf = _coords_to_vec(self, x)
                yf = _coords_to_vec(self, y)
                if self.multiply(xf, y) != self.multiply(yf, x):
                    return False
        return True


def _coords_to_vec(S: Presemifield, coords) -> tuple[int, ...]:
    """F_p coordinate vector -> F_q row vector (identity for e = 1)."""
    p, e = S.code.p, S.code.e
    if e == 1:
        return tuple(coords)
    out = []
    for i in range(S.n):
        a = 0
        for j in reversed(range(e)):
            a = a * p + coords[i * e + j]
        out.append(a)
    return tuple(out)


def semifield_dual(S: Presemifield) -> Presemifield:
    """The presemifield with multiplication x * y := y o x."""
    n, q = S.n, S.q
    e = S.code.e
    units = [tuple(1 if i == j else 0 for j in range(n * e)) for i in range(n * e)]
    basis = []
    for x in units:
        xv = _coords_to_vec(S, x)
        # row i of L_x is x o e_i, with e_i running over the F_q-units
        rows = []
        for i in range(n):
            ei = tuple(1 if j == i * e else 0 for j in range(n * e))
            rows.append(S.multiply(xv, ei))
        basis.append(MatrixGF.from_rows(q, rows))
    code = AdditiveCode.from_basis(basis)
    return Presemifield(S.name + "^d", q, n, code, S.provenance)


def semifield_transpose(S: Presemifield) -> Presemifield:
    """Spread set mapped through matrix transposition."""
    code = AdditiveCode.from_basis([B.transpose() for B in S.code.basis])
    return Presemifield(S.name + "^t", S.q, S.n, code, S.provenance)


def field_spread_set(q: int, n: int) -> Presemifield:
    """C(F_{q^n}): the matrices of x -> ax in the Conway power basis."""
    p = 2 if q % 2 == 0 else 3
    e = 0
    t = q
    while t > 1:
        t //= p
        e += 1
    ctx = FieldCtx(p, e, n)
    big = ctx.Fqn
    basis = []
    for i in range(n * e):
        # F_p-basis of F_{q^n}: p-basis of F_q spread over the power basis
        gi = ctx.from_coords([p ** (i % e) if j == i // e else 0 for j in range(n)])
        basis.append(linear_map_to_matrix(ctx, [gi]))
    code = AdditiveCode.from_basis(basis)
    return Presemifield(f"F_{q ** n}", q, n, code, "field")


def h_k_code(ctx: FieldCtx, k: int, phi1: LinearizedPoly, phi2: LinearizedPoly,
             s: int = 1) -> AdditiveCode:
    """The code {x -> phi1(a)x + sum_{i<k} f_i x^(sigma^i) + phi2(a)x^(sigma^k)}.

    sigma = q^s.  a and the f_i range over F_{q^n}; the F_p-dimension is
    e*n*k whenever a -> (phi1(a), phi2(a)) is injective.
    """
    n, p, e = ctx.n, ctx.p, ctx.e
    if not 1 <= k <= n - 1:
        raise ValueError("need 1 <= k <= n-1")
    if math.gcd(s, n * e) != 1:
        raise ValueError("stride s must be coprime to n*e (sigma must "
                         "generate the Galois group)")
    if not any(phi1.coeffs) and not any(phi2.coeffs):
        raise ValueError("phi1 and phi2 cannot both be zero")
    basis = []
    pbasis = [ctx.from_coords([p ** (i % e) if j == i // e else 0 for j in range(n)])
              for i in range(n * e)]
    for a in pbasis:
        coeffs = [0] * (k + 1)
        coeffs[0] = phi1.evaluate(a)
        coeffs[k] = phi2.evaluate(a)
        basis.append(linear_map_to_matrix(ctx, coeffs, s))
    for i in range(1, k):
        for b in pbasis:
            coeffs = [0] * (i + 1)
            coeffs[i] = b
            basis.append(linear_map_to_matrix(ctx, coeffs, s))
    C = AdditiveCode.from_basis(basis)
    if C.dim != e * n * k:
        raise ValueError(f"degenerate parameters: dimension {C.dim} != {e * n * k}")
    return C


def check_norm_condition(ctx: FieldCtx, k: int, phi1: LinearizedPoly,
                         phi2: LinearizedPoly) -> tuple[bool, int | None]:
    """Exhaustive check of N(phi1(a)) != (-1)^(nk) N(phi2(a)) for a != 0."""
    Fq = ctx.Fq
    sign = 1 if (ctx.n * k) % 2 == 0 or ctx.p == 2 else Fq.neg(1)
    for a in range(1, ctx.Fqn.order):
        n1 = ctx.field_norm(phi1.evaluate(a))
        n2 = ctx.field_norm(phi2.evaluate(a))
        if n1 == Fq.mul(sign, n2):
            return False, a
    return True, None


def delsarte_gabidulin(q: int, n: int, k: int, s: int = 1) -> AdditiveCode:
    """DG code: phi1 = id, phi2 = 0; always MRD with d = n-k+1."""
    ctx = _ctx_for(q, n)
    return h_k_code(ctx, k, identity_map(ctx), zero_map(ctx), s)


def twisted_gabidulin(q: int, n: int, k: int, s: int = 1, eta: int = 0,
                      h: int = 0) -> AdditiveCode:
    """TG code: phi1 = id, phi2(a) = eta * a^(p^h); requires N_p(eta) != (-1)^(nk)."""
    ctx = _ctx_for(q, n)
    if eta == 0:
        return delsarte_gabidulin(q, n, k, s)
    phi1 = identity_map(ctx)
    phi2 = _eta_phh(ctx, eta, h)
    ok, witness = check_norm_condition(ctx, k, phi1, phi2)
    if not ok:
        raise ValueError(f"norm condition violated at a={witness}")
    return h_k_code(ctx, k, phi1, phi2, s)


def _eta_phh(ctx: FieldCtx, eta: int, h: int) -> LinearizedPoly:
    """The additive map a -> eta * a^(p^h) as a q-linearized poly (e = 1)."""
    if ctx.e != 1:
        raise NotImplementedError("p^h twists implemented for prime q only")
    if h % (ctx.e * ctx.n) == 0:
        return LinearizedPoly(ctx, (eta,))
    coeffs = [0] * ctx.n
    coeffs[h % ctx.n] = eta
    # with e = 1, sigma = q = p, so a^(p^h) = frobenius power h
    return LinearizedPoly(ctx, tuple(coeffs))


def trombetti_zhou(q: int, n: int, k: int, s: int = 1, eta: int | None = None) -> AdditiveCode:
    """TZ code: phi1(a) = a_0, phi2(a) = eta*a_1 for a = a_0 + a_1*w over
    the index-2 subfield; requires n even, q odd, N(eta) a nonsquare."""
    if q % 2 == 0:
        raise ValueError("Trombetti-Zhou requires odd q (no nonsquares in F_2)")
    if n % 2:
        raise ValueError("Trombetti-Zhou requires n even")
    ctx = _ctx_for(q, n)
    if eta is None:
        eta = next(a for a in range(1, ctx.Fqn.order)
                   if not _is_square(ctx.Fq, ctx.field_norm(a)))
    nq = ctx.field_norm(eta)
    if nq == 0 or _is_square(ctx.Fq, nq):
        raise ValueError("N(eta) must be a nonsquare of F_q")
    phi0, phi1w = _subfield_projections(ctx)
    big = ctx.Fqn
    phi2 = LinearizedPoly(ctx, tuple(big.mul(eta, c) for c in phi1w.coeffs), phi1w.s)
    ok, witness = check_norm_condition(ctx, k, phi0, phi2)
    if not ok:
        raise ValueError(f"norm condition violated at a={witness}")
    return h_k_code(ctx, k, phi0, phi2, s)


def _is_square(F, a: int) -> bool:
    if a == 0:
        return True
    return F.pow(a, (F.order - 1) // 2) == 1


def _subfield_projections(ctx: FieldCtx) -> tuple[LinearizedPoly, LinearizedPoly]:
    """Additive maps a -> a_0 and a -> a_1 for a = a_0 + a_1*w, with
    a_0, a_1 in the index-2 subfield F_{q^(n/2)} and w the Conway
    generator of F_{q^n}.

    Both are q-linearized: a_1 = (a^Q - a)/(w^Q - w) with Q = q^(n/2),
    and a_0 = a - a_1*w.
    """
    big = ctx.Fqn
    n = ctx.n
    h = n // 2
    w = big.generator
    denom = big.sub(ctx.frobenius(w, h), w)
    dinv = big.inv(denom)
    # a_1 = dinv*(a^(q^h)) - dinv*a
    c1 = [0] * n
    c1[0] = big.neg(dinv)
    c1[h] = dinv
    phi_a1 = LinearizedPoly(ctx, tuple(c1))
    # a_0 = a - w*a_1
    c0 = [0] * n
    c0[0] = big.sub(1, big.mul(w, c1[0]))
    c0[h] = big.neg(big.mul(w, c1[h]))
    phi_a0 = LinearizedPoly(ctx, tuple(c0))
    return phi_a0, phi_a1


def presemifield_from_multiplication(q: int, n: int, mult, name: str = "custom",
                                     provenance: str = "user") -> Presemifield:
    """Build a Presemifield from x o y given as a callable on F_q row
    vectors (tuples of length n), validating absence of zero divisors."""
    units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    basis = []
    for y in units:
        rows = [tuple(mult(x, y)) for x in units]
        basis.append(MatrixGF.from_rows(q, rows))
    code = AdditiveCode.from_basis(basis)
    if code.dim != n * code.e:
        raise ValueError("multiplication has zero divisors (degenerate spread set)")
    S = Presemifield(name, q, n, code, provenance)
    # consistency: the table must be biadditive, i.e. agree with x @ R_y
    from itertools import product
    for x in product(range(q), repeat=n):
        for y in units:
            R = MatrixGF.from_rows(q, [tuple(mult(u, y)) for u in units])
            got = (MatrixGF.from_rows(q, [x]) @ R).rows[0]
            if tuple(mult(x, y)) != tuple(got):
                raise ValueError("multiplication is not additive in x")
    return S


def _ctx_for(q: int, n: int) -> FieldCtx:
    p = 2 if q % 2 == 0 else 3
    e = 0
    t = q
    while t > 1:
        t //= p
        e += 1
    if p ** e != q:
        raise ValueError(f"unsupported field order {q}")
    return FieldCtx(p, e, n)
