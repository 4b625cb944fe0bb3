from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superkoszul import linalg
from superkoszul.linalg import RationalMatrix, Subspace

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows=st.integers(0, 6), cols=st.integers(0, 6), density=0.6):
    @st.composite
    def build(draw):
        r, c = draw(rows), draw(cols)
        data = [[draw(rationals) if draw(st.floats(0, 1)) < density else Fraction(0) for _ in range(c)]
                for _ in range(r)]
        return data, c
    return build()


def test_rank_examples():
    assert linalg.rank(RationalMatrix.identity(2)) == 2
    assert linalg.rank(RationalMatrix.from_dense([[1, 1], [1, 1]])) == 1
    hilbert = [[Fraction(1, i + j - 1) for j in range(1, 4)] for i in range(1, 4)]
    assert linalg.rank(RationalMatrix.from_dense(hilbert)) == 3
    assert linalg.rank(RationalMatrix.zero(0, 0)) == 0


def test_kernel_and_image_examples():
    k = linalg.kernel(RationalMatrix.from_dense([[1, 1], [1, 1]]))
    assert k == linalg.span(2, [{0: 1, 1: -1}])
    assert linalg.image(RationalMatrix.zero(3, 2)).dim == 0


def test_lattice_examples():
    e1, e2 = linalg.span(2, [{0: 1}]), linalg.span(2, [{1: 1}])
    assert linalg.intersect(e1, e2).dim == 0
    assert linalg.subspace_sum(linalg.span(2, [{0: 1}]), linalg.span(2, [{0: 1, 1: 1}])) == linalg.full_space(2)
    w = linalg.span(3, [{0: 1, 2: 2}])
    assert linalg.preimage(RationalMatrix.identity(3), w) == w


def test_errors():
    with pytest.raises(linalg.DimensionError):
        linalg.intersect(linalg.full_space(2), linalg.full_space(3))
    with pytest.raises(ValueError):
        linalg.quotient_dim(linalg.span(2, [{0: 1}]), linalg.full_space(2))
    with pytest.raises(ValueError):
        linalg.span(2, [{0: 1}]).coordinates({1: 1})


def test_dump_format():
    m = RationalMatrix.from_dense([[Fraction(1, 2), 0], [0, -3]])
    assert m.dump() == [["1/2", "0"], ["0", "-3"]]


@given(matrices(rows=st.just(10), cols=st.just(10)))
def test_bareiss_matches_naive(mc):
    data, _ = mc
    assert linalg.bareiss_rank(data) == linalg.naive_rank(data)
    assert linalg.rank(RationalMatrix.from_dense(data)) == linalg.naive_rank(data)


@given(matrices())
def test_rank_nullity(mc):
    data, c = mc
    m = RationalMatrix.from_rows(len(data), c, {r: {j: v for j, v in enumerate(row) if v}
                                                  for r, row in enumerate(data)})
    k = linalg.kernel(m)
    assert k.dim + linalg.rank(m) == c
    for v in k.vectors:
        assert not m.apply(v)
    assert linalg.image(m).dim == linalg.rank(m)


@given(matrices(rows=st.just(5), cols=st.just(4)), matrices(rows=st.just(4), cols=st.just(6)))
def test_rank_of_product(a, b):
    A, B = RationalMatrix.from_dense(a[0]), RationalMatrix.from_dense(b[0])
    assert linalg.rank(A @ B) <= min(linalg.rank(A), linalg.rank(B))


def spaces(n=5):
    return st.lists(st.dictionaries(st.integers(0, n - 1), rationals, max_size=n), max_size=4).map(
        lambda vs: linalg.span(n, vs))


@given(spaces(), spaces(), spaces())
def test_lattice_laws(u, v, w):
    assert linalg.intersect(u, v) == linalg.intersect(v, u)
    assert linalg.subspace_sum(u, v) == linalg.subspace_sum(v, u)
    assert linalg.subspace_sum(linalg.subspace_sum(u, v), w) == linalg.subspace_sum(u, linalg.subspace_sum(v, w))
    assert linalg.intersect(u, v).dim + linalg.subspace_sum(u, v).dim == u.dim + v.dim
    s = linalg.subspace_sum(u, v)
    assert linalg.quotient_dim(s, u) == s.dim - u.dim


@given(matrices(rows=st.just(5), cols=st.just(4)), spaces())
def test_preimage_definition(mc, w):
    m = RationalMatrix.from_dense(mc[0])
    pre = linalg.preimage(m, w)
    for v in pre.vectors:
        assert w.contains(m.apply(v))
    # everything mapping into w is caught
    for v in linalg.kernel(m).vectors:
        assert pre.contains(v)


@given(spaces())
def test_canonical_form_is_basis_independent(u):
    shuffled = linalg.span(u.ambient_dim, [linalg.combine([(2, a), (1, b)]) for a, b in
                                           zip(u.vectors, u.vectors[1:] + u.vectors[:1])] + u.vectors)
    assert shuffled == u
    for v in u.vectors:
        c = u.coordinates(v)
        assert u.combination(c) == v


@given(spaces(), spaces())
def test_quotient_classes(u, v):
    s = linalg.subspace_sum(u, v)
    q = linalg.quotient(s, v)
    assert q.dim == s.dim - v.dim
    for k, r in enumerate(q.representatives):
        assert q.class_of(r) == {k: 1}
    for x in v.vectors:
        assert q.class_of(x) == {}
