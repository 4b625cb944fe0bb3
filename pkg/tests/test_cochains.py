import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from superkoszul import linalg
from superkoszul.algebra import (
    adjoint_module,
    make_gl,
    make_sl2,
    preset_subalgebra,
    trivial_module,
)
from superkoszul.cochains import (
    RelativeComplex,
    SuperMonomial,
    cohomology,
    relative_cochains,
    restriction_matrix,
    sigma,
    sort_sign,
    superext_basis,
    superext_count,
    tau,
)
from superkoszul.oracle import _bubble

GL11, GL21, SL2 = make_gl(1, 1), make_gl(2, 1), make_sl2()


def gl11_center():
    return RelativeComplex(GL11, preset_subalgebra(GL11, "center"))


def random_cochain(cx, n, rng):
    B = cx.cochains(n).basis
    return B.combination({k: rng.randint(-3, 3) for k in range(B.dim)})


TRIPLES = [(g, s, m) for g in (GL11, GL21) for s in ("0", "center", "cartan", "g0") for m in ("trivial", "adjoint")]


def complex_for(g, s, m, even_only=False):
    mod = trivial_module(g) if m == "trivial" else adjoint_module(g)
    return RelativeComplex(g, preset_subalgebra(g, s), mod, even_only)


# -- bases -------------------------------------------------------------------


def test_superext_counts():
    assert len(superext_basis(1, 2, 4)) == 9
    assert len(superext_basis(2, 4, 2)) == 19


def test_superext_degree_two_monomials():
    basis = set(superext_basis(1, 2, 2))
    assert basis == {SuperMonomial((0,), (0,)), SuperMonomial((0,), (1,)), SuperMonomial((), (0, 0)),
                     SuperMonomial((), (0, 1)), SuperMonomial((), (1, 1))}


def test_superext_order_even_heavy_first():
    basis = superext_basis(2, 2, 3)
    evens = [len(m.even) for m in basis]
    assert evens == sorted(evens, reverse=True)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 6))
def test_superext_count_formula(e, o, n):
    expected = sum(comb(e, p) * (1 if p == n else comb(o + n - p - 1, n - p))
                   for p in range(0, min(n, e) + 1) if o or p == n)
    basis = superext_basis(e, o, n)
    assert len(basis) == expected == superext_count(e, o, n)
    assert len(set(basis)) == len(basis)


def test_sign_formulas():
    # all even: plain alternating signs
    assert tau(2, [0, 0, 0], 0) == 0 and tau(1, [0, 0], 1) == 1
    assert sigma(0, 1, [0, 0]) == 1
    # alpha followed by odd arguments: sigma_{0,j} = 2j - 1 is odd
    for j in range(1, 6):
        assert sigma(0, j, [0] + [1] * j) == 1
    # odd argument after odd prefix with odd cochain
    assert tau(1, [1, 1], 1) == (1 + 1 * (1 + 1)) % 2


@given(st.lists(st.integers(0, 5), max_size=6))
def test_sort_sign_matches_bubble_sort(args):
    par = [0, 0, 0, 1, 1, 1]
    s, srt = sort_sign(args, par)
    b, bs = _bubble(args, par)
    assert s == b
    if s:
        assert srt == bs


# -- equivariance --------------------------------------------------------------


def test_central_element_acts_trivially():
    cx = gl11_center()
    rng = random.Random(0)
    for n in range(4):
        f = {c: rng.randint(-2, 2) for c in range(cx.ambient_dim(n))}
        assert cx.a_action_matrix({0: 1, 3: 1}, n).apply(f) == {}


def test_degree_zero_trivial_module_action_vanishes():
    cx = RelativeComplex(GL21, preset_subalgebra(GL21, "cartan"))
    for x in cx.sub.vectors:
        assert cx.a_action_matrix(x, 0).is_zero()


def test_action_rejects_outside_elements():
    with pytest.raises(ValueError):
        gl11_center().a_action_matrix({1: 1}, 1)


def test_relative_cochain_dims():
    assert relative_cochains(GL11, preset_subalgebra(GL11, "center"), trivial_module(GL11), 4).dim == 9
    assert relative_cochains(SL2, preset_subalgebra(SL2, "cartan"), trivial_module(SL2), 1).dim == 0
    for g in (GL11, GL21, SL2):
        M = adjoint_module(g)
        assert relative_cochains(g, preset_subalgebra(g, "0"), M, 1).dim == g.dim * M.dim


@given(st.integers(0, 4))
def test_no_constraints_without_subalgebra(n):
    cx = RelativeComplex(GL11, preset_subalgebra(GL11, "0"), adjoint_module(GL11))
    assert cx.cochains(n).dim == superext_count(2, 2, n) * 4


@pytest.mark.parametrize("g,s,m", TRIPLES[:12], ids=lambda x: getattr(x, "name", x))
def test_coboundary_preserves_equivariance(g, s, m):
    cx = complex_for(g, s, m)
    for n in range(3):
        for f in cx.cochains(n).basis.vectors:
            df = cx.apply_d(f, n)
            for x in cx.sub.vectors:
                assert cx.a_action_matrix(x, n + 1).apply(df) == {}


# -- coboundary ----------------------------------------------------------------


def test_degree_zero_coboundary_trivial_module():
    for g in (GL11, GL21, SL2):
        cx = RelativeComplex(g, preset_subalgebra(g, "0"))
        assert cx.d_matrix(0).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_balanced_odd_dual_is_cocycle(n):
    cx = gl11_center()
    f = cx.dual_cochain((1,) * n + (2,) * n)
    assert cx.apply_d(f, 2 * n) == {}


@pytest.mark.parametrize("g,s,m", TRIPLES, ids=lambda x: getattr(x, "name", x))
def test_d_squared_zero(g, s, m):
    cx = complex_for(g, s, m)
    for n in range(4):
        assert (cx.d_matrix(n + 1) @ cx.d_matrix(n)).is_zero()


@given(st.sampled_from(range(len(TRIPLES))), st.integers(0, 3), st.integers(0, 10 ** 6))
def test_d_squared_on_random_cochains(t, n, seed):
    cx = complex_for(*TRIPLES[t])
    f = random_cochain(cx, n, random.Random(seed))
    assert cx.apply_d(cx.apply_d(f, n), n + 1) == {}


# -- cohomology ----------------------------------------------------------------


@pytest.mark.parametrize("g,s", [(GL11, "0"), (GL11, "center"), (GL21, "cartan"), (SL2, "cartan"), (SL2, "0")],
                         ids=str)
def test_h0_trivial_module(g, s):
    assert cohomology(g, preset_subalgebra(g, s), trivial_module(g), 0).dim == 1


def test_h4_gl11_center_representative():
    cx = gl11_center()
    h = cx.cohomology(4)
    assert h.dim >= 1
    dual = cx.dual_cochain((1, 1, 2, 2))
    assert cx.class_of(4, dual) != {}


def test_sl2_adjoint_vanishes():
    cx = RelativeComplex(SL2, preset_subalgebra(SL2, "cartan"), adjoint_module(SL2))
    assert [cx.cohomology(n).dim for n in range(5)] == [0] * 5


def test_representatives_are_cocycles_and_independent():
    cx = RelativeComplex(GL11, preset_subalgebra(GL11, "0"), adjoint_module(GL11))
    for n in range(4):
        h = cx.cohomology(n)
        for r in h.representatives:
            assert cx.apply_d(r, n) == {}
        assert h.dim == cx.cocycles(n).dim - cx.coboundaries(n).dim


@pytest.mark.parametrize("g,s,m", TRIPLES, ids=lambda x: getattr(x, "name", x))
def test_euler_characteristic_of_truncations(g, s, m):
    # sum_{n<=N} (-1)^n (dim C^n - dim H^n) = (-1)^N rank d^N
    cx = complex_for(g, s, m)
    for N in range(4):
        lhs = sum((-1) ** n * (cx.cochains(n).dim - cx.cohomology(n).dim) for n in range(N + 1))
        assert lhs == (-1) ** N * linalg.rank(cx.d_matrix(N))


def test_sl2_euler_characteristic_finite_complex():
    cx = RelativeComplex(SL2, preset_subalgebra(SL2, "cartan"), adjoint_module(SL2))
    assert sum((-1) ** n * cx.cochains(n).dim for n in range(5)) == 0


@pytest.mark.parametrize("g,s,m", TRIPLES[:8] + [(GL21, "cartan", "adjoint")], ids=lambda x: getattr(x, "name", x))
def test_even_only_matches_even_parity_part(g, s, m):
    full = complex_for(g, s, m)
    even = complex_for(g, s, m, even_only=True)
    for n in range(4):
        assert even.cohomology(n).dim == full.cohomology(n).parity_dims[0]


# -- restriction -----------------------------------------------------------------


def test_restriction_identity():
    cx = gl11_center()
    for n in range(4):
        R = restriction_matrix(cx, cx, n)
        assert R == linalg.RationalMatrix.identity(cx.cochains(n).dim)


def test_restriction_injective_and_commutes_with_d():
    big = RelativeComplex(GL11, preset_subalgebra(GL11, "g0"))
    small = gl11_center()
    R2 = restriction_matrix(big, small, 2)
    assert linalg.rank(R2) == big.cochains(2).dim
    for n in range(4):
        lhs = restriction_matrix(big, small, n + 1) @ big.d_matrix(n)
        rhs = small.d_matrix(n) @ restriction_matrix(big, small, n)
        assert lhs == rhs


def test_restriction_commutes_gl21_adjoint():
    big = RelativeComplex(GL21, preset_subalgebra(GL21, "g0"), adjoint_module(GL21))
    small = RelativeComplex(GL21, preset_subalgebra(GL21, "cartan"), big.M)
    for n in range(3):
        assert restriction_matrix(big, small, n + 1) @ big.d_matrix(n) == \
            small.d_matrix(n) @ restriction_matrix(big, small, n)


def test_restriction_requires_nesting():
    a = RelativeComplex(GL11, preset_subalgebra(GL11, "center"))
    b = RelativeComplex(GL11, preset_subalgebra(GL11, "0"))
    with pytest.raises(ValueError):
        restriction_matrix(b, a, 1)
