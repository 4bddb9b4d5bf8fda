"""Matrices and subspaces over F_q (q in {2, 3, 4, 8, 9}), exact arithmetic.

Matrices are immutable values.  Entries are ints in [0, q) using the
same base-p digit encoding as gf.GFExt, so for prime q an entry is just
the scalar itself.  Vectors are tuples of entries.

Row-vector convention: a linear map f on F_{q^n} is stored so that
coords(f(x)) = coords(x) @ M, i.e. row i of M holds the coordinates of
the image of the i-th basis vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

from .gf import GFExt, FieldCtx, get_field


def _field_of(q: int) -> GFExt:
    for p in (2, 3):
        e = 0
        t = q
        while t % p == 0:
            t //= p
            e += 1
        if t == 1:
            return get_field(p, e)
    raise ValueError(f"unsupported field order {q}")


@dataclass(frozen=True)
class MatrixGF:
    """An m x n matrix over F_q; rows is a tuple of row tuples."""

    q: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix must have at least one row and column")
        n = len(self.rows[0])
        if any(len(r) != n for r in self.rows):
            raise ValueError("ragged rows")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def field(self) -> GFExt:
        return _field_of(self.q)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(q: int, m: int, n: int) -> "MatrixGF":
        return MatrixGF(q, tuple((0,) * n for _ in range(m)))

    @staticmethod
    def identity(q: int, n: int) -> "MatrixGF":
        return MatrixGF(q, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def from_rows(q: int, rows) -> "MatrixGF":
        return MatrixGF(q, tuple(tuple(int(x) for x in r) for r in rows))

    @staticmethod
    def from_flat(q: int, m: int, n: int, flat) -> "MatrixGF":
        flat = list(flat)
        if len(flat) != m * n:
            raise ValueError("flat length mismatch")
        return MatrixGF(q, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(m)))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        F = self.field
        return MatrixGF(self.q, tuple(tuple(F.add(a, b) for a, b in zip(r, s))
                                      for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "MatrixGF":
        F = self.field
        return MatrixGF(self.q, tuple(tuple(F.neg(a) for a in r) for r in self.rows))

    def __sub__(self, other: "MatrixGF") -> "MatrixGF":
        return self + (-other)

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        if self.n != other.m or self.q != other.q:
            raise ValueError("shape/field mismatch")
        F = self.field
        ot = other.transpose().rows
        out = []
        for r in self.rows:
            out.append(tuple(reduce(F.add, (F.mul(a, b) for a, b in zip(r, c)), 0) for c in ot))
        return MatrixGF(self.q, tuple(out))

    def scale(self, c: int) -> "MatrixGF":
        F = self.field
        return MatrixGF(self.q, tuple(tuple(F.mul(c, a) for a in r) for r in self.rows))

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.q, tuple(zip(*self.rows)))

    def flat(self) -> tuple[int, ...]:
        return tuple(a for r in self.rows for a in r)

    def index(self) -> int:
        """Row-major radix-q integer encoding (first entry most significant)."""
        out = 0
        for a in self.flat():
            out = out * self.q + a
        return out

    @staticmethod
    def from_index(q: int, m: int, n: int, idx: int) -> "MatrixGF":
        digits = []
        for _ in range(m * n):
            digits.append(idx % q)
            idx //= q
        return MatrixGF.from_flat(q, m, n, reversed(digits))

    def is_zero(self) -> bool:
        return not any(self.flat())

    # -- row reduction ----------------------------------------------------

    def rref(self) -> tuple["MatrixGF", tuple[int, ...]]:
        """Reduced row-echelon form and pivot columns."""
        rows, pivots = rref_rows(list(self.rows), self.field)
        while len(rows) < self.m:
            rows.append((0,) * self.n)
        return MatrixGF(self.q, tuple(rows)), tuple(pivots)

    def rank(self) -> int:
        return len(rref_rows(list(self.rows), self.field)[1])

    def kernel(self) -> "Subspace":
        """Right kernel {v : Mv = 0}, as a subspace of F_q^n."""
        return kernel_of_rows(self.rows, self.field)

    def left_kernel(self) -> "Subspace":
        """{x : xM = 0}, a subspace of F_q^m."""
        return kernel_of_rows(self.transpose().rows, self.field)

    def is_invertible(self) -> bool:
        return self.m == self.n and self.rank() == self.n

    def inverse(self) -> "MatrixGF":
        F = self.field
        n = self.n
        if self.m != n:
            raise ValueError("not square")
        aug = [tuple(r) + tuple(1 if i == j else 0 for j in range(n))
               for i, r in enumerate(self.rows)]
        red, piv = rref_rows(aug, F)
        if list(piv) != list(range(n)):
            raise ValueError("matrix not invertible")
        return MatrixGF(self.q, tuple(r[n:] for r in red))

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        return "\n".join("".join(str(a) for a in r) for r in self.rows)

    @staticmethod
    def from_text(q: int, block: str) -> "MatrixGF":
        rows = []
        for line in block.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            row = tuple(int(ch) for ch in line)
            if any(a >= q for a in row):
                raise ValueError(f"digit out of range for q={q}: {line!r}")
            rows.append(row)
        if not rows:
            raise ValueError("empty matrix block")
        return MatrixGF(q, tuple(rows))


def parse_matrices(q: int, text: str) -> list[MatrixGF]:
    """Parse blank-line-separated matrices in the text format."""
    blocks = [b for b in text.split("\n\n") if b.strip()]
    return [MatrixGF.from_text(q, b) for b in blocks]


def format_matrices(mats) -> str:
    return "\n\n".join(M.to_text() for M in mats) + "\n"


# -- vector-level elimination (shared by matrices, subspaces, codes) -------


def rref_rows(rows, F: GFExt) -> tuple[list[tuple[int, ...]], list[int]]:
    """RREF of a list of vectors over F; returns nonzero rows and pivots."""
    rows = [tuple(r) for r in rows]
    n = len(rows[0]) if rows else 0
    out: list[list[int]] = []
    pivots: list[int] = []
    for r in rows:
        v = list(r)
        for p, row in zip(pivots, out):
            if v[p]:
                c = v[p]
                for j in range(p, n):
                    if row[j]:
                        v[j] = F.sub(v[j], F.mul(c, row[j]))
        piv = next((j for j in range(n) if v[j]), None)
        if piv is None:
            continue
        c = F.inv(v[piv])
        v = [F.mul(c, a) for a in v]
        # eliminate the new pivot from earlier rows, keep sorted by pivot
        for row in out:
            if row[piv]:
                c = row[piv]
                for j in range(piv, n):
                    if v[j]:
                        row[j] = F.sub(row[j], F.mul(c, v[j]))
        pos = next((i for i, p in enumerate(pivots) if p > piv), len(pivots))
        pivots.insert(pos, piv)
        out.insert(pos, v)
    return [tuple(r) for r in out], pivots


def kernel_of_rows(rows, F: GFExt) -> "Subspace":
    """Right kernel of the matrix with the given rows."""
    n = len(rows[0])
    red, pivots = rref_rows(list(rows), F)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, p in zip(red, pivots):
            v[p] = F.neg(row[f])
        basis.append(tuple(v))
    return Subspace.from_vectors(F, n, basis)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^N given by an RREF basis with increasing pivots."""

    q: int
    ambient: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> GFExt:
        return _field_of(self.q)

    @staticmethod
    def from_vectors(F: GFExt, ambient: int, vectors) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            return Subspace(F.order, ambient, (), ())
        if any(len(v) != ambient for v in vectors):
            raise ValueError("ambient dimension mismatch")
        red, piv = rref_rows(vectors, F)
        return Subspace(F.order, ambient, tuple(red), tuple(piv))

    @staticmethod
    def zero(q: int, ambient: int) -> "Subspace":
        return Subspace(q, ambient, (), ())

    @staticmethod
    def full(q: int, ambient: int) -> "Subspace":
        eye = tuple(tuple(1 if i == j else 0 for j in range(ambient)) for i in range(ambient))
        return Subspace(q, ambient, eye, tuple(range(ambient)))

    def contains(self, v) -> bool:
        F = self.field
        v = list(v)
        for p, row in zip(self.pivots, self.basis):
            if v[p]:
                c = v[p]
                for j in range(p, self.ambient):
                    if row[j]:
                        v[j] = F.sub(v[j], F.mul(c, row[j]))
        return not any(v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via kernel of the stacked-basis relation matrix."""
        F = self.field
        if not self.basis or not other.basis:
            return Subspace.zero(self.q, self.ambient)
        # Solve x*B1 - y*B2 = 0: kernel of the (dim1+dim2) x ambient stack.
        stack = [tuple(r) for r in self.basis]
        stack += [tuple(F.neg(a) for a in r) for r in other.basis]
        ker = kernel_of_rows(list(zip(*stack)), F)  # right kernel of stack^T
        vecs = []
        for w in ker.basis:
            v = [0] * self.ambient
            for c, row in zip(w[: self.dim], self.basis):
                if c:
                    for j in range(self.ambient):
                        v[j] = F.add(v[j], F.mul(c, row[j]))
            vecs.append(tuple(v))
        return Subspace.from_vectors(F, self.ambient, vecs)

    def sum_with(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(self.field, self.ambient, list(self.basis) + list(other.basis))

    def vectors(self):
        """Iterate all q^dim vectors of the subspace, zero first."""
        F = self.field
        q = self.q
        d = self.dim
        for idx in range(q ** d):
            v = [0] * self.ambient
            t = idx
            for row in self.basis:
                c = t % q
                t //= q
                if c:
                    for j in range(self.ambient):
                        v[j] = F.add(v[j], F.mul(c, row[j]))
            yield tuple(v)


def gaussian_binomial(m: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of F_q^m."""
    if d < 0 or d > m:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def solve_right(M: MatrixGF, target) -> tuple[int, ...] | None:
    """One solution v of Mv = target, or None."""
    F = M.field
    aug = [tuple(r) + (t,) for r, t in zip(M.rows, target)]
    red, piv = rref_rows(aug, F)
    if M.n in piv:
        return None
    v = [0] * M.n
    for row, p in zip(red, piv):
        v[p] = row[-1]
    return tuple(v)


# -- linearized polynomials as matrices -------------------------------------


def linear_map_to_matrix(ctx: FieldCtx, coeffs, s: int = 1, basis=None) -> MatrixGF:
    """Matrix (row convention) of x -> sum c_i x^(q^(s*i)) in an F_q-basis.

    coeffs are elements of F_{q^n} as ints; basis defaults to the Conway
    power basis (1, g, ..., g^(n-1)).
    """
    big = ctx.Fqn
    n = ctx.n
    if len(coeffs) > n:
        raise ValueError("too many coefficients")
    if basis is None:
        basis = [big.pow(big.generator, i) if i else 1 for i in range(n)]
    change = None
    if list(basis) != [big.pow(big.generator, i) if i else 1 for i in range(n)]:
        cols = [ctx.coords(b) for b in basis]
        B = MatrixGF.from_rows(ctx.q, cols)
        if not B.is_invertible():
            raise ValueError("basis not linearly independent")
        change = (B, B.inverse())

    def apply(x: int) -> int:
        out = 0
        for i, c in enumerate(coeffs):
            if c:
                out = big.add(out, big.mul(c, ctx.frobenius(x, (s * i) % n)))
        return out

    rows = [ctx.coords(apply(b)) for b in basis]
    M = MatrixGF.from_rows(ctx.q, rows)
    if change is not None:
        # rows above are coords in the power basis; convert to the given one
        M = M @ change[1]
    return M


@lru_cache(maxsize=None)
def all_subspaces(q: int, ambient: int, dim: int) -> tuple[Subspace, ...]:
    """All dim-dimensional subspaces of F_q^ambient (small cases only)."""
    from itertools import combinations, product

    if gaussian_binomial(ambient, dim, q) > 500000:
        raise ValueError("subspace enumeration too large")
    if dim == 0:
        return (Subspace.zero(q, ambient),)
    out = []
    # every subspace has a unique RREF basis: pick pivot columns, then fill
    # the entries right of each pivot in non-pivot columns freely.
    for pivots in combinations(range(ambient), dim):
        free = [(i, j) for i in range(dim) for j in range(ambient)
                if j > pivots[i] and j not in pivots]
        for vals in product(range(q), repeat=len(free)):
            rows = [[0] * ambient for _ in range(dim)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            out.append(Subspace(q, ambient, tuple(tuple(r) for r in rows), tuple(pivots)))
    return tuple(out)


def _int_to_vec(q: int, n: int, idx: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(idx % q)
        idx //= q
    return tuple(out)
