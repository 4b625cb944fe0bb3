"""Exact rational linear algebra.

Vectors are sparse ``dict[int, mpq]`` maps with no stored zeros.  Subspaces
are kept in a canonical reduced echelon form whose pivot is the *last*
nonzero coordinate of each basis vector, so two subspaces are equal exactly
when their representations are equal.  The last-pivot convention is chosen
because the kernel of a matrix in ordinary (leading-pivot) reduced form comes
out in this shape with no further work.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

DENSE_THRESHOLD = 0.25

Vector = dict


class DimensionError(ValueError):
    """Raised when ambient dimensions of operands do not match."""


def to_mpq(x) -> mpq:
    if isinstance(x, str):
        return mpq(Fraction(x))
    return mpq(x)


def to_fraction(x) -> Fraction:
    x = mpq(x)
    return Fraction(int(x.numerator), int(x.denominator))


def fstr(x) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` when integral)."""
    x = to_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def clean(vec: Mapping) -> Vector:
    return {k: mpq(v) for k, v in vec.items() if v}


def axpy(y: Vector, a, x: Mapping) -> None:
    """In place ``y += a * x``."""
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def scale(a, x: Mapping) -> Vector:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def combine(terms: Iterable[tuple]) -> Vector:
    """Sum of ``coef * vec`` over ``(coef, vec)`` pairs."""
    out: Vector = {}
    for a, x in terms:
        if a:
            axpy(out, a, x)
    return out


# ---------------------------------------------------------------------------
# Incremental sparse elimination


class Echelon:
    """Incrementally maintained fully reduced echelon basis.

    ``trailing=True`` pivots on the largest column of each vector (the
    canonical subspace form); ``trailing=False`` pivots on the smallest.
    """

    def __init__(self, trailing: bool = True):
        self.trailing = trailing
        self.rows: dict[int, Vector] = {}
        self._where: dict[int, set] = defaultdict(set)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping) -> Vector:
        v = dict(vec)
        rows = self.rows
        for p in [c for c in v if c in rows]:
            a = v.get(p)
            if a:
                axpy(v, -a, rows[p])
        return v

    def add(self, vec: Mapping) -> int | None:
        """Insert ``vec``; return its new pivot or ``None`` if dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        p = max(r) if self.trailing else min(r)
        inv = 1 / r[p]
        if inv != 1:
            r = {k: inv * v for k, v in r.items()}
        where = self._where
        for q in list(where.get(p, ())):
            row = self.rows[q]
            a = row[p]
            for k, v in r.items():
                nv = row.get(k, 0) - a * v
                if nv:
                    if k not in row:
                        where[k].add(q)
                    row[k] = nv
                else:
                    if k in row:
                        del row[k]
                        where[k].discard(q)
        for k in r:
            where[k].add(p)
        self.rows[p] = r
        return p

    def extend(self, vecs: Iterable[Mapping]) -> None:
        for v in vecs:
            self.add(v)

    def rows_containing(self, col: int) -> set:
        return self._where.get(col, set())


# ---------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True, eq=False)
class RationalMatrix:
    """Sparse rational matrix stored as ``{row: {col: value}}``."""

    nrows: int
    ncols: int
    data: Mapping[int, Mapping[int, mpq]] = field(default_factory=dict)

    def __post_init__(self):
        for r, row in self.data.items():
            if not 0 <= r < self.nrows:
                raise IndexError(f"row {r} out of range")
            for c, v in row.items():
                if not 0 <= c < self.ncols:
                    raise IndexError(f"column {c} out of range")
                if not v:
                    raise ValueError("stored zero entry")

    @classmethod
    def from_rows(cls, nrows: int, ncols: int, rows: Mapping[int, Mapping]) -> "RationalMatrix":
        data = {}
        for r, row in rows.items():
            row = clean(row)
            if row:
                data[r] = row
        return cls(nrows, ncols, data)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping]) -> "RationalMatrix":
        data: dict[int, dict] = defaultdict(dict)
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    data[r][c] = mpq(v)
        return cls(nrows, len(columns), dict(data))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls.from_rows(
            nrows, ncols, {i: {j: to_mpq(x) for j, x in enumerate(row)} for i, row in enumerate(rows)}
        )

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {i: {i: mpq(1)} for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(nrows, ncols, {})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, rc: tuple[int, int]) -> mpq:
        r, c = rc
        return self.data.get(r, {}).get(c, mpq(0))

    def nnz(self) -> int:
        return sum(len(row) for row in self.data.values())

    def density(self) -> float:
        size = self.nrows * self.ncols
        return self.nnz() / size if size else 0.0

    def is_zero(self) -> bool:
        return not self.data

    @cached_property
    def columns(self) -> dict[int, dict]:
        cols: dict[int, dict] = defaultdict(dict)
        for r, row in self.data.items():
            for c, v in row.items():
                cols[c][r] = v
        return dict(cols)

    def column(self, c: int) -> Vector:
        return dict(self.columns.get(c, {}))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.ncols, self.nrows, {c: dict(col) for c, col in self.columns.items()})

    def apply(self, vec: Mapping) -> Vector:
        """Matrix times a sparse column vector."""
        cols = self.columns
        out: Vector = {}
        for c, a in vec.items():
            col = cols.get(c)
            if col and a:
                axpy(out, a, col)
        return out

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        data = {}
        for r, row in self.data.items():
            acc: Vector = {}
            for k, a in row.items():
                orow = other.data.get(k)
                if orow:
                    axpy(acc, a, orow)
            if acc:
                data[r] = acc
        return RationalMatrix(self.nrows, other.ncols, data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and {r: dict(v) for r, v in self.data.items()} == {
            r: dict(v) for r, v in other.data.items()
        }

    __hash__ = None  # type: ignore[assignment]

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for r, row in self.data.items():
            for c, v in row.items():
                out[r][c] = to_fraction(v)
        return out

    def dump(self) -> list[list[str]]:
        """Dense ``"p/q"`` string array, for reports and debugging."""
        return [[fstr(x) for x in row] for row in self.to_dense()]

    def dumps(self) -> str:
        return json.dumps(self.dump())


# ---------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim in canonical (last-pivot, reduced) form.

    Build instances with :func:`span`; the constructor trusts its input.
    """

    ambient_dim: int
    basis: tuple = ()  # tuple of sorted ((col, value), ...) tuples, ordered by pivot

    @cached_property
    def vectors(self) -> list[Vector]:
        return [dict(v) for v in self.basis]

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(v[-1][0] for v in self.basis)

    @cached_property
    def _pivot_index(self) -> dict:
        return {p: i for i, p in enumerate(self.pivots)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    @cached_property
    def _echelon(self) -> Echelon:
        e = Echelon(trailing=True)
        for p, v in zip(self.pivots, self.vectors):
            e.rows[p] = dict(v)
            for k in v:
                e._where[k].add(p)
        return e

    def coordinates(self, vec: Mapping, check: bool = True) -> Vector:
        """Coordinates of ``vec`` in this basis (read off at the pivots)."""
        where = self._pivot_index
        coords = {where[c]: v for c, v in vec.items() if v and c in where}
        if check:
            resid = dict(vec)
            for i, a in coords.items():
                axpy(resid, -a, self.vectors[i])
            if resid:
                raise ValueError("vector is not in the subspace")
        return coords

    def contains(self, vec: Mapping) -> bool:
        return not self._echelon.reduce(vec)

    def contains_space(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(self.contains(v) for v in other.vectors)

    def reduce(self, vec: Mapping) -> Vector:
        """Canonical representative of ``vec`` modulo this subspace."""
        return self._echelon.reduce(vec)

    def combination(self, coords: Mapping) -> Vector:
        out: Vector = {}
        for i, a in coords.items():
            axpy(out, a, self.vectors[i])
        return out

    def as_matrix(self) -> RationalMatrix:
        """Basis vectors as the columns of a matrix."""
        return RationalMatrix.from_columns(self.ambient_dim, self.vectors)


def _freeze(vec: Mapping) -> tuple:
    return tuple(sorted(vec.items()))


def _from_echelon(ambient_dim: int, e: Echelon) -> Subspace:
    return Subspace(ambient_dim, tuple(_freeze(e.rows[p]) for p in sorted(e.rows)))


def _check_vec(ambient_dim: int, v: Mapping) -> None:
    for k in v:
        if not 0 <= k < ambient_dim:
            raise DimensionError(f"coordinate {k} outside ambient dimension {ambient_dim}")


def span(ambient_dim: int, vecs: Iterable[Mapping]) -> Subspace:
    e = Echelon(trailing=True)
    for v in vecs:
        v = clean(v)
        _check_vec(ambient_dim, v)
        e.add(v)
    return _from_echelon(ambient_dim, e)


def zero_space(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, ())


def full_space(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, tuple(((i, mpq(1)),) for i in range(ambient_dim)))


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}")


# ---------------------------------------------------------------------------
# Rank, kernel, image


def _rows_of(m) -> tuple[int, int, list[Vector]]:
    if isinstance(m, RationalMatrix):
        return m.nrows, m.ncols, [dict(r) for r in m.data.values()]
    rm = RationalMatrix.from_dense(m)
    return rm.nrows, rm.ncols, [dict(r) for r in rm.data.values()]


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination over the integers.

    Each row is first scaled by the lcm of its denominators.
    """
    mat = []
    for row in rows:
        fr = [to_fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // _gcd(den, x.denominator)
        mat.append([int(x * den) for x in fr])
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, nrows):
            a = mat[r][col]
            row_r, row_p = mat[r], mat[rank]
            for c in range(col, ncols):
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
        prev = p
        rank += 1
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rank(m, dense_threshold: float = DENSE_THRESHOLD) -> int:
    """Rank of a matrix (``RationalMatrix`` or dense nested sequence).

    Matrices at or above ``dense_threshold`` density go through Bareiss
    elimination; sparser ones through sparse rational elimination.
    """
    if not isinstance(m, RationalMatrix):
        m = RationalMatrix.from_dense(m)
    if m.nrows == 0 or m.ncols == 0 or m.is_zero():
        return 0
    if m.density() >= dense_threshold and m.nrows * m.ncols <= 250_000:
        return bareiss_rank(m.to_dense())
    e = Echelon(trailing=True)
    for row in m.data.values():
        e.add(row)
    return len(e)


def kernel(m) -> Subspace:
    """Right kernel ``{x : m x = 0}`` as a canonical subspace of Q^ncols."""
    _, ncols, rows = _rows_of(m)
    e = Echelon(trailing=False)
    for row in rows:
        e.add(row)
    # each kernel vector has its free column as last nonzero entry
    vecs = []
    for f in range(ncols):
        if f in e.rows:
            continue
        v = {f: mpq(1)}
        for p in e.rows_containing(f):
            v[p] = -e.rows[p][f]
        vecs.append(_freeze(v))
    return Subspace(ncols, tuple(vecs))


def image(m) -> Subspace:
    """Column space of ``m`` as a canonical subspace of Q^nrows."""
    if not isinstance(m, RationalMatrix):
        m = RationalMatrix.from_dense(m)
    return span(m.nrows, m.columns.values())


def image_of(m: RationalMatrix, u: Subspace) -> Subspace:
    """Image ``m(u)`` of a subspace."""
    if m.ncols != u.ambient_dim:
        raise DimensionError("matrix and subspace dimensions differ")
    return span(m.nrows, (m.apply(v) for v in u.vectors))


def annihilator(u: Subspace) -> Subspace:
    """``{x : <v, x> = 0 for all v in u}`` under the standard pairing."""
    return kernel(RationalMatrix.from_rows(len(u), u.ambient_dim, dict(enumerate(u.vectors))))


# ---------------------------------------------------------------------------
# Subspace lattice


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    e = Echelon(trailing=True)
    for p, vec in zip(u.pivots, u.vectors):
        e.rows[p] = dict(vec)
        for k in vec:
            e._where[k].add(p)
    e.extend(v.vectors)
    return _from_echelon(u.ambient_dim, e)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection by the Zassenhaus construction."""
    _check_ambient(u, v)
    n = u.ambient_dim
    if not u.dim or not v.dim:
        return zero_space(n)
    # left block sits at columns n..2n-1 so trailing pivots prefer it
    e = Echelon(trailing=True)
    for vec in u.vectors:
        row = {k + n: a for k, a in vec.items()}
        row.update(vec)
        e.add(row)
    for vec in v.vectors:
        e.add({k + n: a for k, a in vec.items()})
    inter = [row for p, row in e.rows.items() if p < n]
    return span(n, inter)


def preimage(m: RationalMatrix, w: Subspace) -> Subspace:
    """``{x : m x in w}``."""
    if m.nrows != w.ambient_dim:
        raise DimensionError("matrix rows and subspace ambient dimension differ")
    ann = annihilator(w)
    rows = {}
    for i, a in enumerate(ann.vectors):
        acc: Vector = {}
        for r, coef in a.items():
            row = m.data.get(r)
            if row:
                axpy(acc, coef, row)
        if acc:
            rows[i] = acc
    return kernel(RationalMatrix.from_rows(len(ann), m.ncols, rows))


def quotient_dim(u: Subspace, v: Subspace) -> int:
    _check_ambient(u, v)
    if not u.contains_space(v):
        raise ValueError("second subspace is not contained in the first")
    return u.dim - v.dim


@dataclass(frozen=True)
class Quotient:
    """``numerator / denominator`` with an echelon complement basis.

    ``reps`` are reduced modulo the denominator, so the class of any vector
    in the numerator is read off at ``reps.pivots``.
    """

    numerator: Subspace
    denominator: Subspace
    reps: Subspace

    @property
    def dim(self) -> int:
        return self.reps.dim

    @property
    def representatives(self) -> list[Vector]:
        return self.reps.vectors

    def class_of(self, vec: Mapping) -> Vector:
        """Coordinates of the class of ``vec`` (which must lie in the numerator)."""
        r = self.denominator.reduce(vec)
        return self.reps.coordinates(r)


def quotient(numerator: Subspace, denominator: Subspace) -> Quotient:
    _check_ambient(numerator, denominator)
    if not numerator.contains_space(denominator):
        raise ValueError("denominator is not contained in the numerator")
    residues = (denominator.reduce(v) for v in numerator.vectors)
    return Quotient(numerator, denominator, span(numerator.ambient_dim, residues))


# ---------------------------------------------------------------------------
# Naive dense route (kept for cross-checking)


def naive_rank(rows: Sequence[Sequence]) -> int:
    """Textbook Gaussian elimination over ``Fraction``."""
    m = [[Fraction(x) if not isinstance(x, Fraction) else x for x in row] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                for k in range(c, ncols):
                    m[i][k] -= f * m[r][k]
        r += 1
        if r == nrows:
            break
    return r
