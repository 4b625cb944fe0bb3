"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 schema/usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass

from .algebra import (
    EvenSubalgebra,
    LieSuperalgebra,
    Representation,
    SchemaError,
    check_subalgebra,
    even_part,
    trivial_module,
    validate_module,
    validate_superalgebra,
)
from .cochains import RelativeComplex
from .documents import (
    algebra_to_doc,
    module_to_doc,
    resolve_algebra,
    resolve_module,
    resolve_subalgebra,
    subalgebra_to_doc,
)
from .linalg import fstr
from .ring import ext_module, generator_probe, hilbert_series, ring_truncation
from .spectral import (
    FilteredComplex,
    collapse_detect,
    e2_factorization_check,
    edge_vs_restriction,
    spectral_report,
    staircase,
)

HARD_CAP = 12
COMMANDS = ("validate", "cohomology", "spectral", "e2check", "collapse", "edge", "ring", "ext")

EXIT_OK, EXIT_INVALID, EXIT_SCHEMA = 0, 1, 2


@dataclass
class JobConfig:
    command: str
    algebra: str = "gl11"
    subalgebra: str = "0"
    module: str = "trivial"
    max_degree: int = 4
    fmt: str = "json"
    even_hom_only: bool = False
    pages: int = 2
    cap: int = HARD_CAP
    show_representatives: bool = False


class CapError(SchemaError):
    pass


@dataclass
class Job:
    config: JobConfig
    alg: LieSuperalgebra
    sub: EvenSubalgebra
    module: Representation

    def input_hash(self) -> str:
        c = self.config
        payload = {"command": c.command, "algebra": algebra_to_doc(self.alg),
                   "subalgebra": subalgebra_to_doc(self.sub), "module": module_to_doc(self.module),
                   "max_degree": c.max_degree, "even_hom_only": c.even_hom_only, "pages": c.pages}
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()

    def complex(self, module: Representation | None = None) -> RelativeComplex:
        return RelativeComplex(self.alg, self.sub, module or self.module, self.config.even_hom_only)


def load_job(config: JobConfig) -> Job:
    if not 0 <= config.max_degree <= config.cap:
        raise CapError(f"--max-degree must lie in 0..{config.cap}, got {config.max_degree}")
    if not 0 <= config.pages <= config.max_degree + 2:
        raise CapError(f"--pages must lie in 0..{config.max_degree + 2}")
    alg = resolve_algebra(config.algebra)
    sub = resolve_subalgebra(config.subalgebra, alg)
    mod = resolve_module(config.module, alg)
    return Job(config, alg, sub, mod)


# ---------------------------------------------------------------------------
# Commands: each returns (exit code, payload dict, text)


def _monomial_name(cx: RelativeComplex, mono: tuple) -> str:
    names = cx.qb.names
    parts, k = [], 0
    while k < len(mono):
        j = k
        while j < len(mono) and mono[j] == mono[k]:
            j += 1
        e = j - k
        parts.append(names[mono[k]] + (f"^{e}" if e > 1 else ""))
        k = j
    return "*".join(parts) or "1"


def _cochain_json(cx: RelativeComplex, n: int, f: dict) -> list:
    out = []
    for c in sorted(f):
        mi, m = cx.split_coord(c)
        out.append([_monomial_name(cx, cx.monomials(n)[mi]), m, fstr(f[c])])
    return out


def cmd_validate(job: Job):
    alg_rep = validate_superalgebra(job.alg)
    mod_rep = validate_module(job.alg, job.module)
    sub_err = None
    try:
        check_subalgebra(job.alg, job.sub)
    except ValueError as e:
        sub_err = str(e)
    ok = alg_rep.ok and mod_rep.ok and sub_err is None
    payload = {"algebra": alg_rep.to_json(), "module": mod_rep.to_json(),
               "subalgebra": {"ok": sub_err is None, "error": sub_err}, "ok": ok}
    lines = [f"algebra {job.alg.name}: {len(alg_rep)} violation(s)"]
    lines += [f"  {v.axiom} at {v.indices}" for v in alg_rep.violations]
    lines.append(f"module {job.module.name}: {len(mod_rep)} violation(s)")
    lines += [f"  {v.axiom} at {v.indices}" for v in mod_rep.violations]
    lines.append("subalgebra: ok" if sub_err is None else f"subalgebra: {sub_err}")
    return (EXIT_OK if ok else EXIT_INVALID), payload, "\n".join(lines)


def cmd_cohomology(job: Job):
    cx = job.complex()
    N = job.config.max_degree
    rows = []
    for n in range(N + 1):
        h = cx.cohomology(n)
        row = {"degree": n, "cochain_dim": cx.cochains(n).dim, "dim": h.dim,
               "dim_even": h.parity_dims[0], "dim_odd": h.parity_dims[1]}
        if job.config.show_representatives:
            row["representatives"] = [_cochain_json(cx, n, r) for r in h.representatives]
        rows.append(row)
    payload = {"degrees": rows, "quotient_basis": list(cx.qb.names)}
    lines = [f"H^n({job.alg.name}, a; {job.module.name})   a = {job.config.subalgebra}",
             " n   dim C^n   dim H^n   (even, odd)"]
    for r in rows:
        lines.append(f"{r['degree']:>2}   {r['cochain_dim']:>7}   {r['dim']:>7}   ({r['dim_even']}, {r['dim_odd']})")
    return EXIT_OK, payload, "\n".join(lines)


def _filtered(job: Job) -> FilteredComplex:
    return FilteredComplex(job.complex(), job.config.max_degree)


def cmd_spectral(job: Job):
    fc = _filtered(job)
    R = job.config.pages
    payload = spectral_report(fc, R)
    N = job.config.max_degree
    texts = [staircase(fc.page(r, False).dims(), N, f"E_{r}") for r in range(R + 1)]
    texts.append(staircase(fc.e_infinity(), N, "E_inf"))
    return EXIT_OK, payload, "\n\n".join(texts)


def cmd_e2check(job: Job):
    fc = _filtered(job)
    rep = e2_factorization_check(job.alg, job.sub, job.module, job.config.max_degree, fc)
    payload = rep.to_json()
    lines = [f"{len(rep.mismatches)} mismatches"]
    if not rep.classical:
        lines.append("note: classical flag not set; the identification is not predicted")
    for m in rep.mismatches:
        lines.append(f"  (p,q)=({m['p']},{m['q']}): E2 {m['e2']} vs product {m['product']}")
    return EXIT_OK, payload, "\n".join(lines)


def cmd_collapse(job: Job):
    fc = _filtered(job)
    rep = collapse_detect(fc)
    text = ("collapses at E_2 within total degree %d" % rep.checked_up_to if rep.collapsed
            else "nonzero d_%d at (p,q)=(%d,%d)" % rep.witness)
    return EXIT_OK, rep.to_json(), text


def cmd_edge(job: Job):
    if not even_part(job.alg).space.contains_space(job.sub.space):
        raise SchemaError("subalgebra must lie in the even part")
    fc = _filtered(job)
    rows = edge_vs_restriction(job.alg, job.sub, job.config.max_degree, fc=fc)
    payload = {"degrees": rows, "all_agree": all(r["agree"] for r in rows)}
    lines = [" n   rank res   dim E_inf^{n,0}   agree"]
    for r in rows:
        lines.append(f"{r['n']:>2}   {r['restriction_rank']:>8}   {r['edge_rank']:>15}   {r['agree']}")
    return EXIT_OK, payload, "\n".join(lines)


def cmd_ring(job: Job):
    cx = job.complex(trivial_module(job.alg))
    rt = ring_truncation(job.alg, job.sub, job.config.max_degree, cx)
    gp = generator_probe(rt)
    payload = rt.to_json()
    payload["generators"] = gp.degrees
    payload["hilbert_series"] = hilbert_series(rt)
    payload["probe"] = gp.to_json()
    lines = ["Hilbert series: " + ", ".join(map(str, rt.dims)),
             "generator degrees: " + (", ".join(map(str, gp.degrees)) or "none"),
             f"generated up to degree {rt.max_degree}: {gp.surjective}"
             + (" (generators within half the bound: heuristic)" if gp.generated_by_half else "")]
    return EXIT_OK, payload, "\n".join(lines)


def cmd_ext(job: Job):
    cx = job.complex(trivial_module(job.alg))
    rt = ring_truncation(job.alg, job.sub, job.config.max_degree, cx)
    em = ext_module(job.alg, job.sub, job.module, job.config.max_degree, rt, job.config.even_hom_only)
    payload = em.to_json()
    lines = ["Ext dims: " + ", ".join(map(str, em.dims)),
             "H(C) dims: " + ", ".join(map(str, rt.dims)),
             "annihilator dims: " + ", ".join(str(em.annihilators[i].dim) for i in range(em.max_degree + 1))]
    return EXIT_OK, payload, "\n".join(lines)


HANDLERS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "spectral": cmd_spectral,
    "e2check": cmd_e2check,
    "collapse": cmd_collapse,
    "edge": cmd_edge,
    "ring": cmd_ring,
    "ext": cmd_ext,
}


def _require_valid(job: Job) -> None:
    """Refuse to compute on inputs that fail the axioms."""
    for what, rep in (("algebra", validate_superalgebra(job.alg)), ("module", validate_module(job.alg, job.module))):
        if not rep.ok:
            v = rep.violations[0]
            raise ValueError(f"{what} violates {v.axiom} at {v.indices} ({len(rep)} violation(s) in total)")
    check_subalgebra(job.alg, job.sub)


def run(config: JobConfig) -> tuple[int, str]:
    """Execute a job; returns (exit code, rendered output)."""
    try:
        job = load_job(config)
        if config.command != "validate":
            _require_valid(job)
        code, payload, text = HANDLERS[config.command](job)
    except SchemaError as e:
        kind = "degree cap" if isinstance(e, CapError) else "schema error"
        return EXIT_SCHEMA, f"{kind}: {e}"
    except ValueError as e:
        return EXIT_INVALID, f"validation failure: {e}"
    if config.fmt == "json":
        doc = {"command": config.command, "input_sha256": job.input_hash(), "exit_code": code,
               "result": payload}
        return code, json.dumps(doc, indent=2, sort_keys=True)
    return code, text


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superkoszul",
                                 description="Relative cohomology of Lie superalgebras over Q.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--algebra", default="gl11", help="preset (gl11, gl21, glMN, sl2, abelianE_O) or JSON path")
    ap.add_argument("--subalgebra", default="0",
                    help="preset (0, g0, cartan, center), comma-separated indices, or JSON path")
    ap.add_argument("--module", default="trivial", help="preset (trivial, adjoint, induced) or JSON path")
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--even-hom-only", action="store_true", help="restrict cochains to even maps")
    ap.add_argument("--pages", type=int, default=2, help="last page index shown by 'spectral'")
    ap.add_argument("--representatives", action="store_true",
                    help="include cocycle representatives in 'cohomology' output")
    ap.add_argument("--output", help="write the report to this file instead of stdout")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = JobConfig(args.command, args.algebra, args.subalgebra, args.module, args.max_degree,
                    args.format, args.even_hom_only, args.pages, HARD_CAP, args.representatives)
    code, out = run(cfg)
    if args.output and code != EXIT_SCHEMA:
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    else:
        stream = sys.stderr if code == EXIT_SCHEMA else sys.stdout
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
