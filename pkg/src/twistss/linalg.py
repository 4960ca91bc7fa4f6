"""Exact rational linear algebra: echelon forms, kernels, images, quotients.

Everything is computed over Q with `fractions.Fraction`, so equality tests
are exact and every routine is deterministic.  Reduced row-echelon form is
the canonical representative of a row space: two generating sets of the same
subspace always produce identical bases.  Particular solutions zero their
free variables.

Matrices act on column vectors: a `Mat` with shape (rows, cols) is a linear
map Q^cols -> Q^rows.  Vectors are plain tuples of Fractions.  All values
are immutable once built, so everything here is safe to share across
threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vec = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(entries: Iterable) -> Vec:
    """Coerce an iterable of numbers into an exact coordinate vector."""
    return tuple(Fraction(x) for x in entries)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u: Vec, v: Vec) -> Vec:
    assert len(u) == len(v)
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    assert len(u) == len(v)
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in u)


def vec_is_zero(u: Vec) -> bool:
    return all(a == 0 for a in u)


def vec_concat(parts: Sequence[Vec]) -> Vec:
    out = []
    for p in parts:
        out.extend(p)
    return tuple(out)


class Mat:
    """Dense matrix over Q.  Immutable after construction."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows_of_entries: Iterable[Iterable], cols: Optional[int] = None):
        data = tuple(vec(r) for r in rows_of_entries)
        self.rows = len(data)
        if data:
            self.cols = len(data[0])
            if any(len(r) != self.cols for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != self.cols:
                raise ValueError("explicit column count disagrees with rows")
        else:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.cols = cols
        self.data = data

    @staticmethod
    def zeros(rows: int, cols: int) -> "Mat":
        return Mat([zero_vec(cols) for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([unit_vec(n, i) for i in range(n)], cols=n)

    @staticmethod
    def from_cols(columns: Sequence[Vec], rows: Optional[int] = None) -> "Mat":
        if columns:
            rows = len(columns[0])
        if rows is None:
            raise ValueError("empty column list needs an explicit row count")
        return Mat([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    def row(self, i: int) -> Vec:
        return self.data[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.data)

    def apply(self, v: Vec) -> Vec:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError(f"dimension mismatch: {self.rows}x{self.cols} on vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(r, v)), ZERO) for r in self.data)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        ot = other.transpose()
        return Mat(
            [[sum((a * b for a, b in zip(r, c)), ZERO) for c in ot.data] for r in self.data],
            cols=other.cols,
        )

    def transpose(self) -> "Mat":
        return Mat([self.col(j) for j in range(self.cols)], cols=self.rows)

    def augment(self, other: "Mat") -> "Mat":
        """Stack side by side: [self | other]."""
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Mat([self.data[i] + other.data[i] for i in range(self.rows)], cols=self.cols + other.cols)

    def stack(self, other: "Mat") -> "Mat":
        """Stack on top of each other."""
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return Mat(self.data + other.data, cols=self.cols)

    def scaled(self, c) -> "Mat":
        return Mat([vec_scale(c, r) for r in self.data], cols=self.cols)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat([vec_add(a, b) for a, b in zip(self.data, other.data)], cols=self.cols)

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self.data)

    def rank(self) -> int:
        return len(rref(self)[1])

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.cols == other.cols and self.data == other.data

    def __hash__(self):
        return hash((self.cols, self.data))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols})"


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row-echelon form and the pivot columns, fully canonical."""
    a = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        if pv != 1:
            a[r] = [x / pv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Mat(a, cols=ncols), tuple(pivots)


class SubspaceBasis:
    """A subspace of Q^n held by its reduced-echelon basis.

    The basis rows are the nonzero rows of the RREF of any generating set,
    so equal subspaces compare equal structurally.
    """

    __slots__ = ("ambient_dim", "rows", "pivots")

    def __init__(self, ambient_dim: int, rows: tuple[Vec, ...], pivots: tuple[int, ...]):
        self.ambient_dim = ambient_dim
        self.rows = rows
        self.pivots = pivots

    @staticmethod
    def span(ambient_dim: int, vectors: Iterable[Vec]) -> "SubspaceBasis":
        vs = [vec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise ValueError("vector length disagrees with ambient dimension")
        if not vs:
            return SubspaceBasis(ambient_dim, (), ())
        r, piv = rref(Mat(vs, cols=ambient_dim))
        return SubspaceBasis(ambient_dim, r.data[: len(piv)], piv)

    @staticmethod
    def zero(ambient_dim: int) -> "SubspaceBasis":
        return SubspaceBasis(ambient_dim, (), ())

    @staticmethod
    def full(ambient_dim: int) -> "SubspaceBasis":
        return SubspaceBasis(
            ambient_dim,
            tuple(unit_vec(ambient_dim, i) for i in range(ambient_dim)),
            tuple(range(ambient_dim)),
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        """Residual of v after eliminating every pivot; zero iff v is a member."""
        if len(v) != self.ambient_dim:
            raise ValueError("vector length disagrees with ambient dimension")
        v = vec(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                v = vec_sub(v, vec_scale(v[p], row))
        return v

    def contains(self, v: Vec) -> bool:
        return vec_is_zero(self.reduce(v))

    def contains_space(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coords(self, v: Vec) -> Optional[Vec]:
        """Coefficients of v in the echelon basis, or None if not a member."""
        c = tuple(v[p] for p in self.pivots)
        if vec_is_zero(self.reduce(v)):
            return c
        return None

    def sum_with(self, other: "SubspaceBasis") -> "SubspaceBasis":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return SubspaceBasis.span(self.ambient_dim, self.rows + other.rows)

    def basis_matrix(self) -> Mat:
        """Basis vectors as columns (ambient_dim x dim)."""
        return Mat.from_cols(list(self.rows), rows=self.ambient_dim)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubspaceBasis)
            and self.ambient_dim == other.ambient_dim
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return f"SubspaceBasis(dim {self.dim} in Q^{self.ambient_dim})"


def kernel(m: Mat) -> SubspaceBasis:
    """Null space of m, canonicalized."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r.data[i][f]
        basis.append(tuple(v))
    return SubspaceBasis.span(m.cols, basis)


def image(m: Mat) -> SubspaceBasis:
    """Column span of m, canonicalized."""
    return SubspaceBasis.span(m.rows, [m.col(j) for j in range(m.cols)])


def solve_particular(m: Mat, b: Vec) -> Optional[Vec]:
    """The solution of m x = b whose free variables are all zero.

    Returns None when b is outside the image.  The zero-free-variable
    convention makes the result unique and deterministic.
    """
    b = vec(b)
    if len(b) != m.rows:
        raise ValueError("right-hand side length disagrees with row count")
    aug = m.augment(Mat.from_cols([b], rows=m.rows))
    r, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for i, p in enumerate(pivots):
        x[p] = r.data[i][m.cols]
    return tuple(x)


def preimage(m: Mat, w: SubspaceBasis) -> SubspaceBasis:
    """The subspace {v : m v lies in w}, canonicalized.

    Computed as the domain projection of the kernel of [m | -W] where the
    columns of W span w.
    """
    if w.ambient_dim != m.rows:
        raise ValueError("subspace does not live in the codomain")
    if w.dim == 0:
        return kernel(m)
    neg = w.basis_matrix().scaled(-1)
    k = kernel(m.augment(neg))
    return SubspaceBasis.span(m.cols, [r[: m.cols] for r in k.rows])


class QuotientSpace:
    """A quotient Z/B of nested subspaces with canonical coset representatives.

    The representatives are the echelon basis vectors of Z whose pivot
    columns are not pivots of B; they form a complement of B inside Z, so
    project(lift(c)) == c for every class c and project(v) == 0 exactly when
    v lies in B.
    """

    __slots__ = ("ambient", "sub", "coset_reps")

    def __init__(self, ambient: SubspaceBasis, sub: SubspaceBasis):
        if ambient.ambient_dim != sub.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if not ambient.contains_space(sub):
            raise ValueError("denominator is not contained in numerator")
        self.ambient = ambient
        self.sub = sub
        subpiv = set(sub.pivots)
        self.coset_reps = tuple(
            row for row, p in zip(ambient.rows, ambient.pivots) if p not in subpiv
        )

    @property
    def dim(self) -> int:
        return self.ambient.dim - self.sub.dim

    @property
    def ambient_dim(self) -> int:
        return self.ambient.ambient_dim

    def is_zero_class(self, v: Vec) -> bool:
        return self.sub.contains(v)

    def project(self, v: Vec) -> Vec:
        """Class coordinates of a member of the numerator space."""
        cols = list(self.coset_reps) + list(self.sub.rows)
        if not cols:
            if not vec_is_zero(vec(v)):
                raise ValueError("vector not in the subspace being quotiented")
            return ()
        sol = solve_particular(Mat.from_cols(cols, rows=self.ambient_dim), v)
        if sol is None:
            raise ValueError("vector not in the subspace being quotiented")
        return sol[: len(self.coset_reps)]

    def lift(self, coords: Vec) -> Vec:
        if len(coords) != self.dim:
            raise ValueError("class coordinate length mismatch")
        out = zero_vec(self.ambient_dim)
        for c, rep in zip(coords, self.coset_reps):
            if c != 0:
                out = vec_add(out, vec_scale(c, rep))
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuotientSpace)
            and self.ambient == other.ambient
            and self.sub == other.sub
        )

    def __hash__(self):
        return hash((self.ambient, self.sub))

    def __repr__(self):
        return f"QuotientSpace(dim {self.dim} = {self.ambient.dim}-{self.sub.dim} in Q^{self.ambient_dim})"


def span_in_quotient(q: QuotientSpace, vectors: Iterable[Vec]) -> SubspaceBasis:
    """Span of the classes of the given numerator vectors, in class coordinates."""
    return SubspaceBasis.span(q.dim, [q.project(v) for v in vectors])
