"""JSON documents for algebras, subalgebras and modules, plus named presets.

Rationals are strings "p/q" (plain integers are accepted on input).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .algebra import (
    BasisVector,
    EvenSubalgebra,
    LieSuperalgebra,
    Representation,
    SchemaError,
    adjoint_module,
    check_subalgebra,
    induced_module,
    make_abelian,
    make_gl,
    make_sl2,
    preset_subalgebra,
    trivial_module,
)
from .linalg import fstr

ALGEBRA_PRESETS = ("gl11", "gl21", "glMN (e.g. gl12, gl22)", "sl2", "abelianE_O (e.g. abelian0_1)")
SUBALGEBRA_PRESETS = ("0", "g0", "cartan", "center")
MODULE_PRESETS = ("trivial", "adjoint", "induced")


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"not a rational: {x!r}") from None
    raise SchemaError(f"rationals must be strings 'p/q' or integers, got {x!r}")


def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}") from None


def _require(doc, key, kind, where):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"{where}: missing key {key!r}")
    if not isinstance(doc[key], kind):
        raise SchemaError(f"{where}: {key!r} has the wrong type")
    return doc[key]


def algebra_from_doc(doc: dict) -> LieSuperalgebra:
    basis_doc = _require(doc, "basis", list, "algebra")
    basis = []
    for k, b in enumerate(basis_doc):
        name = _require(b, "name", str, f"basis[{k}]")
        par = _require(b, "parity", int, f"basis[{k}]")
        if par not in (0, 1):
            raise SchemaError(f"basis[{k}]: parity must be 0 or 1")
        basis.append(BasisVector(name, par))
    if not basis:
        raise SchemaError("algebra: empty basis")
    n = len(basis)
    entries = {}
    for t, e in enumerate(_require(doc, "brackets", list, "algebra")):
        i = _require(e, "i", int, f"brackets[{t}]")
        j = _require(e, "j", int, f"brackets[{t}]")
        coeffs = _require(e, "coeffs", dict, f"brackets[{t}]")
        if not (0 <= i <= j < n):
            raise SchemaError(f"brackets[{t}]: need 0 <= i <= j < {n}")
        if (i, j) in entries:
            raise SchemaError(f"brackets[{t}]: duplicate pair ({i}, {j})")
        vec = {}
        for k, v in coeffs.items():
            try:
                kk = int(k)
            except ValueError:
                raise SchemaError(f"brackets[{t}]: bad index {k!r}") from None
            if not 0 <= kk < n:
                raise SchemaError(f"brackets[{t}]: index {kk} out of range")
            q = parse_rational(v)
            if q:
                vec[kk] = q
        entries[(i, j)] = vec
    cartan = doc.get("cartan")
    return LieSuperalgebra(tuple(basis), entries, bool(doc.get("classical", False)),
                           str(doc.get("name", "")), tuple(cartan) if cartan is not None else None)


def algebra_to_doc(alg: LieSuperalgebra) -> dict:
    brackets = []
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            brackets.append({"i": i, "j": j,
                             "coeffs": {str(k): fstr(v) for k, v in sorted(alg.bracket(i, j).items())}})
    doc = {"name": alg.name, "classical": bool(alg.classical),
           "basis": [{"name": b.name, "parity": b.parity} for b in alg.basis], "brackets": brackets}
    if alg.cartan is not None:
        doc["cartan"] = list(alg.cartan)
    return doc


def module_from_doc(doc: dict, alg: LieSuperalgebra) -> Representation:
    carrier = _require(doc, "carrier", list, "module")
    if len(carrier) != 2 or not all(isinstance(c, int) and c >= 0 for c in carrier):
        raise SchemaError("module: carrier must be [even_dim, odd_dim]")
    dim = sum(carrier)
    mats = _require(doc, "matrices", list, "module")
    if len(mats) != alg.dim:
        raise SchemaError(f"module: expected {alg.dim} matrices, got {len(mats)}")
    out = []
    for t, m in enumerate(mats):
        if not isinstance(m, list) or len(m) != dim or any(not isinstance(r, list) or len(r) != dim for r in m):
            raise SchemaError(f"module: matrix {t} is not {dim}x{dim}")
        out.append([[parse_rational(x) for x in row] for row in m])
    return Representation(tuple(carrier), tuple(out), str(doc.get("name", "")))


def module_to_doc(rep: Representation) -> dict:
    return {"name": rep.name, "carrier": list(rep.carrier_dims),
            "matrices": [[[fstr(x) for x in row] for row in m] for m in rep.matrices]}


def subalgebra_from_doc(doc: dict, alg: LieSuperalgebra) -> EvenSubalgebra:
    if not isinstance(doc, dict):
        raise SchemaError("subalgebra: expected an object")
    if "indices" in doc:
        idx = doc["indices"]
        if not isinstance(idx, list) or not all(isinstance(i, int) and 0 <= i < alg.dim for i in idx):
            raise SchemaError("subalgebra: indices must be basis positions")
        return EvenSubalgebra.from_indices(alg, idx)
    if "vectors" in doc:
        vecs = []
        for v in doc["vectors"]:
            if not isinstance(v, dict):
                raise SchemaError("subalgebra: each vector is an object {index: 'p/q'}")
            vec = {}
            for k, x in v.items():
                try:
                    kk = int(k)
                except ValueError:
                    raise SchemaError(f"subalgebra: bad index {k!r}") from None
                if not 0 <= kk < alg.dim:
                    raise SchemaError(f"subalgebra: index {kk} out of range")
                vec[kk] = parse_rational(x)
            vecs.append(vec)
        return EvenSubalgebra.from_vectors(alg, vecs)
    raise SchemaError("subalgebra: need 'indices' or 'vectors'")


def subalgebra_to_doc(a: EvenSubalgebra) -> dict:
    return {"vectors": [{str(k): fstr(v) for k, v in sorted(vec.items())} for vec in a.vectors]}


# ---------------------------------------------------------------------------
# Preset resolution


def resolve_algebra(name: str) -> LieSuperalgebra:
    m = re.fullmatch(r"gl(\d)(\d)", name)
    if m:
        try:
            return make_gl(int(m.group(1)), int(m.group(2)))
        except ValueError as e:
            raise SchemaError(str(e)) from None
    if name == "sl2":
        return make_sl2()
    m = re.fullmatch(r"abelian(\d+)_(\d+)", name)
    if m:
        return make_abelian(int(m.group(1)), int(m.group(2)))
    if Path(name).exists() or name.endswith(".json"):
        return algebra_from_doc(read_json(name))
    raise SchemaError(f"unknown algebra {name!r}; presets: {', '.join(ALGEBRA_PRESETS)}")


def resolve_subalgebra(name: str, alg: LieSuperalgebra) -> EvenSubalgebra:
    if name in SUBALGEBRA_PRESETS or name == "zero":
        try:
            return preset_subalgebra(alg, name)
        except ValueError as e:
            raise SchemaError(str(e)) from None
    if re.fullmatch(r"\d+(,\d+)*", name):
        idx = [int(x) for x in name.split(",")]
        if any(i >= alg.dim for i in idx):
            raise SchemaError("subalgebra index out of range")
        a = EvenSubalgebra.from_indices(alg, idx)
    elif Path(name).exists() or name.endswith(".json"):
        a = subalgebra_from_doc(read_json(name), alg)
    else:
        raise SchemaError(f"unknown subalgebra {name!r}; presets: {', '.join(SUBALGEBRA_PRESETS)}")
    return a


def resolve_module(name: str, alg: LieSuperalgebra) -> Representation:
    if name == "trivial":
        return trivial_module(alg)
    if name == "adjoint":
        return adjoint_module(alg)
    if name == "induced":
        return induced_module(alg)
    if Path(name).exists() or name.endswith(".json"):
        return module_from_doc(read_json(name), alg)
    raise SchemaError(f"unknown module {name!r}; presets: {', '.join(MODULE_PRESETS)}")


def ensure_subalgebra(alg: LieSuperalgebra, a: EvenSubalgebra) -> None:
    """Raise ValueError when ``a`` is not an even subalgebra."""
    check_subalgebra(alg, a)
