"""Lie superalgebras, even subalgebras and modules given by structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from gmpy2 import mpq

from .linalg import RationalMatrix, Subspace, axpy, clean, kernel, span, to_fraction

DEFAULT_SIZE_CAP = 6

# Parities are plain ints in {0, 1}; addition is mod 2.
EVEN, ODD = 0, 1


def parity_sum(*ps: int) -> int:
    return sum(ps) % 2


def _frac(x) -> Fraction:
    return Fraction(x) if isinstance(x, str) else to_fraction(x)


class SchemaError(ValueError):
    """Input data is malformed (as opposed to violating an axiom)."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    indices: tuple[int, ...]
    detail: str = ""

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "indices": list(self.indices), "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        # truthy when there is something to report
        return bool(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


@dataclass(frozen=True)
class BasisVector:
    name: str
    parity: int


@dataclass(frozen=True, eq=False)
class LieSuperalgebra:
    """A finite-dimensional Lie superalgebra over Q.

    ``brackets`` maps pairs ``(i, j)`` with ``i <= j`` to coefficient maps
    ``{k: c}``; ``[x_j, x_i]`` is recovered by super anticommutativity.
    """

    basis: tuple[BasisVector, ...]
    brackets: Mapping[tuple[int, int], Mapping[int, Fraction]]
    classical: bool = False
    name: str = ""
    cartan: tuple[int, ...] | None = None

    def __post_init__(self):
        table = {}
        for (i, j), coeffs in self.brackets.items():
            table[(i, j)] = {int(k): _frac(v) for k, v in coeffs.items() if v}
        object.__setattr__(self, "brackets", table)
        object.__setattr__(self, "_table", {
            key: {k: mpq(v) for k, v in c.items()} for key, c in table.items()
        })

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def parities(self) -> tuple[int, ...]:
        return tuple(b.parity for b in self.basis)

    @property
    def even_indices(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.basis) if b.parity == EVEN)

    @property
    def odd_indices(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.basis) if b.parity == ODD)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(b.name for b in self.basis)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def bracket(self, i: int, j: int) -> dict:
        """``[x_i, x_j]`` as ``{k: mpq}``."""
        if i <= j:
            try:
                return dict(self._table[(i, j)])
            except KeyError:
                raise SchemaError(f"bracket table has no entry for pair ({i}, {j})") from None
        sign = -1 if self.basis[i].parity * self.basis[j].parity == 0 else 1
        return {k: sign * v for k, v in self.bracket(j, i).items()}

    def bracket_vectors(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                if a and b:
                    axpy(out, mpq(a) * mpq(b), self.bracket(i, j))
        return out

    def ad(self, i: int) -> RationalMatrix:
        """Matrix of ``ad x_i`` in the algebra basis."""
        cols = [self.bracket(i, j) for j in range(self.dim)]
        return RationalMatrix.from_columns(self.dim, cols)


def validate_superalgebra(alg: LieSuperalgebra) -> ValidationReport:
    """Check grading, super anticommutativity and super Jacobi on basis elements.

    Raises :class:`SchemaError` on a malformed table.
    """
    n = alg.dim
    if n == 0:
        raise SchemaError("basis is empty")
    for b in alg.basis:
        if b.parity not in (0, 1):
            raise SchemaError(f"basis vector {b.name!r} has parity {b.parity!r}")
    for (i, j), coeffs in alg.brackets.items():
        if not (0 <= i <= j < n):
            raise SchemaError(f"bracket key ({i}, {j}) invalid; need 0 <= i <= j < {n}")
        for k in coeffs:
            if not 0 <= k < n:
                raise SchemaError(f"bracket ({i}, {j}) references basis index {k}")
    missing = [(i, j) for i in range(n) for j in range(i, n) if (i, j) not in alg.brackets]
    if missing:
        raise SchemaError(f"bracket table has no entry for pair {missing[0]}")

    par = alg.parities
    out = []
    for i in range(n):
        for j in range(i, n):
            want = (par[i] + par[j]) % 2
            for k in alg.bracket(i, j):
                if par[k] != want:
                    out.append(Violation("grading", (i, j, k)))
    for i in range(n):
        for j in range(n):
            s = -1 if par[i] * par[j] == 0 else 1
            lhs = alg.bracket(i, j)
            axpy(lhs, -s, alg.bracket(j, i))  # [x,y] + (-1)^{xy}[y,x] with s = -(-1)^{xy}
            if lhs:
                out.append(Violation("anticommutativity", (i, j)))
    for i, j, k in itertools.product(range(n), repeat=3):
        # [x,[y,z]] - [[x,y],z] - (-1)^{xy}[y,[x,z]]
        lhs = alg.bracket_vectors({i: 1}, alg.bracket(j, k))
        axpy(lhs, -1, alg.bracket_vectors(alg.bracket(i, j), {k: 1}))
        axpy(lhs, -(-1) ** (par[i] * par[j]), alg.bracket_vectors({j: 1}, alg.bracket(i, k)))
        if lhs:
            out.append(Violation("jacobi", (i, j, k)))
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# Constructors


def _full_table(n: int, entries: Mapping[tuple[int, int], Mapping]) -> dict:
    return {(i, j): dict(entries.get((i, j), {})) for i in range(n) for j in range(i, n)}


def make_gl(m: int, n: int, size_cap: int = DEFAULT_SIZE_CAP) -> LieSuperalgebra:
    """gl(m|n) in the basis of matrix units ``e_ab`` (row-major order)."""
    if m < 1 or n < 1:
        raise ValueError("gl(m|n) needs m, n >= 1")
    if m + n > size_cap:
        raise ValueError(f"gl({m}|{n}) exceeds size cap m+n <= {size_cap}")
    N = m + n
    blk = [0 if a < m else 1 for a in range(N)]
    units = [(a, b) for a in range(N) for b in range(N)]
    pos = {u: k for k, u in enumerate(units)}
    basis = tuple(BasisVector(f"e{a + 1}{b + 1}", (blk[a] + blk[b]) % 2) for a, b in units)
    entries = {}
    for i, (a, b) in enumerate(units):
        for j, (c, d) in enumerate(units):
            if j < i:
                continue
            # [e_ab, e_cd] = d_bc e_ad - (-1)^{|ab||cd|} d_da e_cb
            coeffs: dict = {}
            if b == c:
                coeffs[pos[(a, d)]] = coeffs.get(pos[(a, d)], 0) + 1
            if d == a:
                s = (-1) ** (basis[i].parity * basis[j].parity)
                coeffs[pos[(c, b)]] = coeffs.get(pos[(c, b)], 0) - s
            entries[(i, j)] = {k: Fraction(v) for k, v in coeffs.items() if v}
    cartan = tuple(pos[(a, a)] for a in range(N))
    return LieSuperalgebra(basis, _full_table(N * N, entries), classical=True,
                           name=f"gl({m}|{n})", cartan=cartan)


def make_sl2() -> LieSuperalgebra:
    """sl(2) with basis (e, h, f), viewed as a purely even superalgebra."""
    basis = (BasisVector("e", 0), BasisVector("h", 0), BasisVector("f", 0))
    entries = {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}}
    return LieSuperalgebra(basis, _full_table(3, entries), classical=True, name="sl(2)", cartan=(1,))


def make_abelian(even: int, odd: int) -> LieSuperalgebra:
    """Abelian superalgebra (all brackets zero)."""
    basis = tuple(BasisVector(f"x{i}", 0) for i in range(even)) + tuple(
        BasisVector(f"y{i}", 1) for i in range(odd)
    )
    return LieSuperalgebra(basis, _full_table(even + odd, {}), classical=True,
                           name=f"abelian({even}|{odd})", cartan=tuple(range(even)))


# ---------------------------------------------------------------------------
# Subalgebras and quotients


@dataclass(frozen=True)
class EvenSubalgebra:
    """An even subalgebra, stored as a canonical subspace of the algebra."""

    space: Subspace

    @classmethod
    def from_indices(cls, alg: LieSuperalgebra, indices: Sequence[int]) -> "EvenSubalgebra":
        for i in indices:
            if not 0 <= i < alg.dim:
                raise SchemaError(f"subalgebra index {i} out of range")
        return cls(span(alg.dim, ({i: 1} for i in indices)))

    @classmethod
    def from_vectors(cls, alg: LieSuperalgebra, vectors: Sequence[Mapping]) -> "EvenSubalgebra":
        return cls(span(alg.dim, vectors))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def vectors(self) -> list[dict]:
        return self.space.vectors

    def contains(self, vec: Mapping) -> bool:
        return self.space.contains(clean(vec))


def check_subalgebra(alg: LieSuperalgebra, a: EvenSubalgebra) -> None:
    """Raise ``ValueError`` unless ``a`` is even and closed under the bracket."""
    if a.space.ambient_dim != alg.dim:
        raise SchemaError("subalgebra lives in a space of the wrong dimension")
    par = alg.parities
    for v in a.vectors:
        if any(par[k] for k in v):
            raise ValueError("subalgebra contains an odd vector")
    vecs = a.vectors
    for u, v in itertools.combinations(vecs, 2):
        if not a.contains(alg.bracket_vectors(u, v)):
            raise ValueError("subalgebra is not closed under the bracket")


def zero_subalgebra(alg: LieSuperalgebra) -> EvenSubalgebra:
    return EvenSubalgebra(span(alg.dim, []))


def even_part(alg: LieSuperalgebra) -> EvenSubalgebra:
    return EvenSubalgebra.from_indices(alg, alg.even_indices)


def cartan_subalgebra(alg: LieSuperalgebra) -> EvenSubalgebra:
    if alg.cartan is None:
        raise ValueError(f"no Cartan subalgebra recorded for {alg.name or 'this algebra'}")
    return EvenSubalgebra.from_indices(alg, alg.cartan)


def even_center(alg: LieSuperalgebra) -> EvenSubalgebra:
    """Even central elements: the joint kernel of ``x -> [x, y]`` over even x."""
    ev = alg.even_indices
    rows: dict[int, dict] = {}
    for j in range(alg.dim):
        for c, i in enumerate(ev):
            for k, v in alg.bracket(i, j).items():
                rows.setdefault(j * alg.dim + k, {})[c] = v
    ker = kernel(RationalMatrix.from_rows(alg.dim * alg.dim, len(ev), rows))
    return EvenSubalgebra(span(alg.dim, ({ev[c]: a for c, a in v.items()} for v in ker.vectors)))


def preset_subalgebra(alg: LieSuperalgebra, name: str) -> EvenSubalgebra:
    presets = {
        "0": zero_subalgebra,
        "zero": zero_subalgebra,
        "g0": even_part,
        "cartan": cartan_subalgebra,
        "center": even_center,
    }
    try:
        return presets[name](alg)
    except KeyError:
        raise SchemaError(f"unknown subalgebra preset {name!r}") from None


@dataclass(frozen=True, eq=False)
class QuotientBasis:
    """Homogeneous basis of g/a: ``reps`` are algebra indices, evens first."""

    alg: LieSuperalgebra
    sub: EvenSubalgebra
    reps: tuple[int, ...]
    parities: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.reps)

    @property
    def n_even(self) -> int:
        return sum(1 for p in self.parities if p == 0)

    @property
    def n_odd(self) -> int:
        return self.dim - self.n_even

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.alg.basis[r].name for r in self.reps)

    def project(self, vec: Mapping) -> dict:
        """Coordinates in g/a of an algebra vector."""
        r = self.sub.space.reduce(clean(vec))
        pos = self._pos
        out = {}
        for k, v in r.items():
            if k not in pos:
                raise AssertionError("reduced vector has support outside the representatives")
            out[pos[k]] = v
        return out

    @property
    def _pos(self) -> dict:
        return {r: q for q, r in enumerate(self.reps)}

    def lift(self, q: int) -> dict:
        return {self.reps[q]: mpq(1)}

    def projection_matrix(self) -> RationalMatrix:
        cols = [self.project({i: 1}) for i in range(self.alg.dim)]
        return RationalMatrix.from_columns(self.dim, cols)


def quotient_basis(alg: LieSuperalgebra, a: EvenSubalgebra) -> QuotientBasis:
    """Representatives of g/a: basis vectors off the pivots of ``a``'s echelon form."""
    check_subalgebra(alg, a)
    piv = set(a.space.pivots)
    free = [i for i in range(alg.dim) if i not in piv]
    ev = [i for i in free if alg.basis[i].parity == 0]
    od = [i for i in free if alg.basis[i].parity == 1]
    return QuotientBasis(alg, a, tuple(ev + od), tuple([0] * len(ev) + [1] * len(od)))


def sub_superalgebra(alg: LieSuperalgebra, indices: Sequence[int], name: str = "") -> LieSuperalgebra:
    """The subalgebra spanned by the given basis vectors, as an algebra of its own."""
    pos = {i: k for k, i in enumerate(indices)}
    entries = {}
    for a, i in enumerate(indices):
        for b in range(a, len(indices)):
            br = alg.bracket(i, indices[b])
            if any(k not in pos for k in br):
                raise ValueError("basis vectors do not span a subalgebra")
            entries[(a, b)] = {pos[k]: Fraction(int(v.numerator), int(v.denominator)) for k, v in br.items()}
    cartan = None
    if alg.cartan is not None and all(c in pos for c in alg.cartan):
        cartan = tuple(pos[c] for c in alg.cartan)
    return LieSuperalgebra(tuple(alg.basis[i] for i in indices), entries, alg.classical,
                           name or f"{alg.name}_sub", cartan)


# ---------------------------------------------------------------------------
# Modules


@dataclass(frozen=True, eq=False)
class Representation:
    """A graded module: carrier basis is ``carrier_dims[0]`` even vectors then odd ones.

    ``matrices[i]`` is the action of basis vector ``i`` as a dense nested
    tuple of ``Fraction``.
    """

    carrier_dims: tuple[int, int]
    matrices: tuple
    name: str = ""

    def __post_init__(self):
        mats = tuple(tuple(tuple(_frac(x) for x in row) for row in m) for m in self.matrices)
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "carrier_dims", tuple(self.carrier_dims))
        sparse = []
        for m in mats:
            sparse.append(RationalMatrix.from_rows(len(m), len(m[0]) if m else self.dim,
                                                   {r: {c: x for c, x in enumerate(row) if x}
                                                    for r, row in enumerate(m)}))
        object.__setattr__(self, "_sparse", tuple(sparse))

    @property
    def dim(self) -> int:
        return self.carrier_dims[0] + self.carrier_dims[1]

    def parity(self, k: int) -> int:
        return 0 if k < self.carrier_dims[0] else 1

    @property
    def parities(self) -> tuple[int, ...]:
        return tuple(self.parity(k) for k in range(self.dim))

    def action(self, i: int) -> RationalMatrix:
        return self._sparse[i]

    def act(self, x: Mapping, v: Mapping) -> dict:
        """Action of an algebra vector on a carrier vector."""
        out: dict = {}
        for i, a in x.items():
            if a:
                axpy(out, mpq(a), self._sparse[i].apply(v))
        return out

    @property
    def is_trivial(self) -> bool:
        return self.carrier_dims == (1, 0) and all(m.is_zero() for m in self._sparse)


def validate_module(alg: LieSuperalgebra, rep: Representation) -> ValidationReport:
    """Check parity compatibility and the homomorphism law on basis pairs."""
    d = rep.dim
    if len(rep.matrices) != alg.dim:
        raise SchemaError(f"expected {alg.dim} matrices, got {len(rep.matrices)}")
    for i, m in enumerate(rep.matrices):
        if len(m) != d or any(len(row) != d for row in m):
            raise SchemaError(f"matrix {i} is not {d}x{d}")
    par = alg.parities
    mp = rep.parities
    out = []
    for i in range(alg.dim):
        for (r, c), _ in _entries(rep.action(i)):
            if mp[r] != (mp[c] + par[i]) % 2:
                out.append(Violation("parity", (i, r, c)))
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = _lin(alg.bracket(i, j), rep)
            prod1 = rep.action(i) @ rep.action(j)
            prod2 = rep.action(j) @ rep.action(i)
            s = (-1) ** (par[i] * par[j])
            rhs = _add(prod1, prod2, s)
            if lhs != rhs:
                out.append(Violation("homomorphism", (i, j)))
    return ValidationReport(tuple(out))


def _entries(m: RationalMatrix):
    for r, row in m.data.items():
        for c, v in row.items():
            yield (r, c), v


def _lin(vec: Mapping, rep: Representation) -> RationalMatrix:
    rows: dict = {}
    for i, a in vec.items():
        for (r, c), v in _entries(rep.action(i)):
            rows.setdefault(r, {})
            rows[r][c] = rows[r].get(c, 0) + a * v
    return RationalMatrix.from_rows(rep.dim, rep.dim, rows)


def _add(a: RationalMatrix, b: RationalMatrix, s) -> RationalMatrix:
    """``a - s * b``."""
    rows = {r: dict(row) for r, row in a.data.items()}
    for (r, c), v in _entries(b):
        rows.setdefault(r, {})
        rows[r][c] = rows[r].get(c, 0) - s * v
    return RationalMatrix.from_rows(a.nrows, a.ncols, rows)


def _rep_from_sparse(dims: tuple[int, int], mats: Sequence[RationalMatrix], name: str) -> Representation:
    d = dims[0] + dims[1]
    dense = []
    for m in mats:
        rows = [[Fraction(0)] * d for _ in range(d)]
        for (r, c), v in _entries(m):
            rows[r][c] = Fraction(int(v.numerator), int(v.denominator))
        dense.append(rows)
    return Representation(dims, tuple(dense), name)


def trivial_module(alg: LieSuperalgebra) -> Representation:
    return Representation((1, 0), tuple(((Fraction(0),),) for _ in range(alg.dim)), "trivial")


def adjoint_module(alg: LieSuperalgebra) -> Representation:
    """The adjoint module; the carrier lists even basis vectors first."""
    order = alg.even_indices + alg.odd_indices
    pos = {i: k for k, i in enumerate(order)}
    mats = []
    for i in range(alg.dim):
        rows: dict = {}
        for j in range(alg.dim):
            for k, v in alg.bracket(i, j).items():
                rows.setdefault(pos[k], {})[pos[j]] = v
        mats.append(RationalMatrix.from_rows(alg.dim, alg.dim, rows))
    return _rep_from_sparse((len(alg.even_indices), len(alg.odd_indices)), mats, "adjoint")


def dual_tensor_module(rep: Representation) -> Representation:
    """``M* (x) M`` with the super sign rules.

    Dual: ``(x.phi)(m) = -(-1)^{|x||phi|} phi(x.m)``.
    Tensor: ``x.(phi (x) m) = x.phi (x) m + (-1)^{|x||phi|} phi (x) x.m``.
    """
    d = rep.dim
    mp = rep.parities
    pairs = [(k, l) for k in range(d) for l in range(d)]
    order = [p for p in pairs if (mp[p[0]] + mp[p[1]]) % 2 == 0] + [
        p for p in pairs if (mp[p[0]] + mp[p[1]]) % 2 == 1
    ]
    pos = {p: t for t, p in enumerate(order)}
    n_even = sum(1 for p in order if (mp[p[0]] + mp[p[1]]) % 2 == 0)
    mats = []
    n_alg = len(rep.matrices)
    # recover algebra parities from the matrices' block structure
    for i in range(n_alg):
        act = rep.action(i)
        xp = _matrix_parity(act, mp)
        rows: dict = {}
        for (k, l) in order:
            src = pos[(k, l)]
            # x.phi_k = sum_j -(-1)^{x p_k} rho[k][j] phi_j
            for j, v in act.data.get(k, {}).items():
                coef = -((-1) ** (xp * mp[k])) * v
                tgt = pos[(j, l)]
                rows.setdefault(tgt, {})
                rows[tgt][src] = rows[tgt].get(src, 0) + coef
            for j, v in act.columns.get(l, {}).items():
                coef = (-1) ** (xp * mp[k]) * v
                tgt = pos[(k, j)]
                rows.setdefault(tgt, {})
                rows[tgt][src] = rows[tgt].get(src, 0) + coef
        mats.append(RationalMatrix.from_rows(d * d, d * d, rows))
    name = f"dual_tensor({rep.name})" if rep.name else "dual_tensor"
    return _rep_from_sparse((n_even, d * d - n_even), mats, name)


def _matrix_parity(m: RationalMatrix, mp: Sequence[int]) -> int:
    for (r, c), _ in _entries(m):
        return (mp[r] + mp[c]) % 2
    return 0


def restrict_module(rep: Representation, indices: Sequence[int], name: str = "") -> Representation:
    """Restriction to the subalgebra spanned by the given basis vectors."""
    return Representation(rep.carrier_dims, tuple(rep.matrices[i] for i in indices), name or rep.name)


def induced_module(alg: LieSuperalgebra) -> Representation:
    """``U(g) (x)_{U(g0)} C`` for the trivial g0-module.

    Carrier basis: ordered products ``y_S`` over strictly increasing subsets
    S of the odd basis vectors (PBW).  Parity of ``y_S`` is ``|S| mod 2``.
    """
    odd = alg.odd_indices
    subsets = [s for k in range(len(odd) + 1) for s in itertools.combinations(odd, k)]
    order = [s for s in subsets if len(s) % 2 == 0] + [s for s in subsets if len(s) % 2 == 1]
    pos = {s: t for t, s in enumerate(order)}
    par = alg.parities

    def act(z: int, word: tuple) -> dict:
        # z . (y_word (x) 1) with word strictly increasing
        if not word:
            return {} if par[z] == 0 else {(z,): mpq(1)}
        head, rest = word[0], word[1:]
        out: dict = {}
        if par[z] == 0:
            # z y = [z, y] + y z
            for k, c in alg.bracket(z, head).items():
                for w, v in act(k, rest).items():
                    out[w] = out.get(w, 0) + c * v
            for w, v in act(z, rest).items():
                for w2, v2 in act(head, w).items():
                    out[w2] = out.get(w2, 0) + v * v2
        elif z < head:
            out[(z,) + word] = mpq(1)
        elif z == head:
            # y y = 1/2 [y, y]
            for k, c in alg.bracket(z, z).items():
                for w, v in act(k, rest).items():
                    out[w] = out.get(w, 0) + c * v / 2
        else:
            # z y = -y z + [z, y]
            for w, v in act(z, rest).items():
                for w2, v2 in act(head, w).items():
                    out[w2] = out.get(w2, 0) - v * v2
            for k, c in alg.bracket(z, head).items():
                for w, v in act(k, rest).items():
                    out[w] = out.get(w, 0) + c * v
        return {w: v for w, v in out.items() if v}

    mats = []
    for z in range(alg.dim):
        rows: dict = {}
        for s in order:
            for w, v in act(z, s).items():
                rows.setdefault(pos[w], {})[pos[s]] = v
        mats.append(RationalMatrix.from_rows(len(order), len(order), rows))
    n_even = sum(1 for s in order if len(s) % 2 == 0)
    return _rep_from_sparse((n_even, len(order) - n_even), mats, "induced")
