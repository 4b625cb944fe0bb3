from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superkoszul import linalg
from superkoszul.algebra import (
    EvenSubalgebra,
    LieSuperalgebra,
    Representation,
    SchemaError,
    adjoint_module,
    check_subalgebra,
    dual_tensor_module,
    induced_module,
    make_abelian,
    make_gl,
    make_sl2,
    preset_subalgebra,
    quotient_basis,
    sub_superalgebra,
    trivial_module,
    validate_module,
    validate_superalgebra,
)


def altered(alg, key, value):
    table = {k: dict(v) for k, v in alg.brackets.items()}
    table[key] = value
    return LieSuperalgebra(alg.basis, table, alg.classical, alg.name)


def test_gl11_basis_and_brackets():
    g = make_gl(1, 1)
    assert g.names == ("e11", "e12", "e21", "e22")
    assert g.parities == (0, 1, 1, 0)
    assert g.bracket(0, 1) == {1: 1}
    assert g.bracket(1, 2) == {0: 1, 3: 1}
    assert not validate_superalgebra(g)


def test_gl21_dimension():
    g = make_gl(2, 1)
    assert g.dim == 9 and len(g.even_indices) == 5 and len(g.odd_indices) == 4


def test_builtins_validate():
    for g in (make_gl(1, 1), make_gl(2, 1), make_gl(1, 2), make_sl2(), make_abelian(2, 3)):
        assert validate_superalgebra(g).ok


def test_altered_bracket_reports_jacobi():
    g = altered(make_gl(1, 1), (1, 2), {0: 1})
    rep = validate_superalgebra(g)
    assert rep and any(v.axiom == "jacobi" and len(v.indices) == 3 for v in rep.violations)


def test_grading_violation():
    g = altered(make_gl(1, 1), (0, 3), {1: 1})
    assert any(v.axiom == "grading" for v in validate_superalgebra(g).violations)


def test_missing_pair_is_schema_error():
    g = make_gl(1, 1)
    table = {k: v for k, v in g.brackets.items() if k != (1, 2)}
    with pytest.raises(SchemaError):
        validate_superalgebra(LieSuperalgebra(g.basis, table))


def test_size_cap():
    with pytest.raises(ValueError):
        make_gl(4, 3)


@given(st.integers(1, 3), st.integers(1, 3))
def test_gl_parity_counts(m, n):
    g = make_gl(m, n)
    assert len(g.even_indices) == m * m + n * n
    assert len(g.odd_indices) == 2 * m * n


def test_quotient_basis_examples():
    g = make_gl(1, 1)
    qb = quotient_basis(g, preset_subalgebra(g, "center"))
    assert qb.names == ("e11", "e12", "e21") and qb.parities == (0, 1, 1)
    assert quotient_basis(g, preset_subalgebra(g, "0")).dim == 4
    g21 = make_gl(2, 1)
    qb = quotient_basis(g21, preset_subalgebra(g21, "cartan"))
    assert (qb.n_even, qb.n_odd) == (2, 4)


@given(st.sampled_from(["0", "center", "cartan", "g0"]),
       st.dictionaries(st.integers(0, 8), st.fractions(-3, 3, max_denominator=3), max_size=9))
def test_projection_idempotent(name, vec):
    g = make_gl(2, 1)
    qb = quotient_basis(g, preset_subalgebra(g, name))
    p = qb.project(vec)
    lifted = linalg.combine((c, qb.lift(q)) for q, c in p.items())
    assert qb.project(lifted) == p
    for q in range(qb.dim):
        assert qb.project(qb.lift(q)) == {q: 1}
    for x in qb.sub.vectors:
        assert qb.project(x) == {}


def test_subalgebra_checks():
    g = make_gl(1, 1)
    with pytest.raises(ValueError):
        check_subalgebra(g, EvenSubalgebra.from_indices(g, [1]))
    g21 = make_gl(2, 1)
    # e12 and e21 of the gl(2) block generate e11 - e22
    with pytest.raises(ValueError):
        check_subalgebra(g21, EvenSubalgebra.from_indices(g21, [1, 3]))
    check_subalgebra(g21, preset_subalgebra(g21, "cartan"))


def test_center_is_identity_matrix():
    g = make_gl(1, 1)
    c = preset_subalgebra(g, "center")
    assert c.dim == 1 and c.contains({0: 1, 3: 1})


def test_modules_validate():
    g = make_gl(1, 1)
    assert not validate_module(g, trivial_module(g))
    assert not validate_module(g, adjoint_module(g))
    assert not validate_module(g, dual_tensor_module(adjoint_module(g)))
    ind = induced_module(g)
    assert ind.dim == 4 and not validate_module(g, ind)


def test_flipped_adjoint_sign_is_caught():
    g = make_gl(1, 1)
    ad = adjoint_module(g)
    mats = [list(map(list, m)) for m in ad.matrices]
    r, c = next((r, c) for r in range(4) for c in range(4) if mats[1][r][c])
    mats[1][r][c] = -mats[1][r][c]
    assert validate_module(g, Representation(ad.carrier_dims, tuple(mats)))


def test_module_schema_error():
    g = make_gl(1, 1)
    with pytest.raises(SchemaError):
        validate_module(g, Representation((1, 0), tuple([[[0]]] * 3)))


def test_dual_tensor_dims():
    g = make_gl(1, 1)
    c = dual_tensor_module(trivial_module(g))
    assert c.carrier_dims == (1, 0) and c.is_trivial
    m = Representation((1, 1), tuple([[[Fraction(0)] * 2] * 2] * 4))
    assert dual_tensor_module(m).carrier_dims == (2, 2)


@pytest.mark.parametrize("alg", [make_gl(1, 1), make_gl(2, 1), make_sl2()], ids=lambda a: a.name)
def test_dual_tensor_preserves_validity(alg):
    assert not validate_module(alg, dual_tensor_module(adjoint_module(alg)))


def test_even_subalgebra_as_algebra():
    g = make_gl(2, 1)
    g0 = sub_superalgebra(g, g.even_indices)
    assert g0.dim == 5 and validate_superalgebra(g0).ok
    with pytest.raises(ValueError):
        sub_superalgebra(g, [2, 6])
