"""Command-line front end.

Exit codes: 0 when a check passes or a certificate is VALID, 1 when a check
fails or a certificate is DIAGNOSTIC, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import AxiomError, HypothesisError, InputError, ShapeError, TPHopfError
from .exactlin import Matrix, Subspace, vec
from .fundamental import adjunction_psi, beta_and_certify
from .gallery import NAMES, fixture
from .hopfcore import antipode_order, is_commutative, verify_algebra, verify_hopf
from .invariants import (
    ColinearAlgebraMap,
    compute_B,
    coinvariants,
    ideal_closure,
    is_field,
    joint_invariants,
    lambda_map,
    lie_invariants,
    projection_p,
    restrict_to_B,
)
from .repcat import (
    ComoduleTPAlgebra,
    ModuleData,
    verify_comodule,
    verify_comodule_tp_algebra,
    verify_tp_hopf_module,
    verify_tp_module,
)
from .report import Report, format_vector
from .serialize import (
    Workspace,
    b_subalgebra_from_json,
    bundle_to_json,
    comodule_algebra_to_json,
    dumps,
    hopf_to_json,
    matrix_to_json,
    module_from_json,
    module_to_json,
    phi_from_json,
    phi_to_json,
    vector_to_json,
)
from .tpalg import tp_center, verify_tp_algebra


@dataclass
class Context:
    """The objects a command works on, from the gallery or from files."""

    hopf: object
    algebra: ComoduleTPAlgebra | None
    module: ModuleData | None
    phi: ColinearAlgebraMap | None
    source: str


def _context(args) -> Context:
    target = getattr(args, "target", None)
    if target and target in NAMES and not Path(target).exists():
        f = fixture(target)
        return Context(f.hopf, f.algebra, f.module, f.phi, f"example:{target}")
    ws = Workspace()
    for opt in ("hopf", "algebra", "module", "phi"):
        path = getattr(args, opt, None)
        if path:
            ws.load(path)
    if target:
        if not Path(target).exists():
            raise InputError(f"no such file or example; examples: {', '.join(NAMES)}", target)
        ws.load(target)

    def single(kind):
        found = ws.of_kind(kind)
        return found[-1].obj if found else None

    hopf = single("hopf")
    algebra = single("algebra")
    mod = single("module")
    phi = single("phi")
    if hopf is None and algebra is not None:
        hopf = algebra.hopf
    return Context(hopf, algebra, mod[0] if mod else None, phi, target or "files")


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(dumps(doc))
    else:
        print(text)


def _report_out(args, rep: Report, extra: dict | None = None) -> int:
    doc = rep.to_json()
    if extra:
        doc.update(extra)
    _emit(args, doc, rep.summary(limit=10))
    return 0 if rep.passed else 1


def _need(obj, what: str):
    if obj is None:
        raise InputError(f"no {what} given")
    return obj


def cmd_check(args) -> int:
    ctx = _context(args)
    kind = args.kind
    if kind == "hopf":
        h = _need(ctx.hopf, "Hopf algebra")
        try:
            rep = verify_hopf(h)
        except AxiomError as exc:
            rep = exc.report
        extra = {"antipode_order": antipode_order(h)} if rep.passed else {}
        return _report_out(args, rep, extra)
    a = _need(ctx.algebra, "algebra")
    if kind == "algebra":
        alg = a.algebra
        from .hopfcore import AlgebraData

        return _report_out(args, verify_algebra(AlgebraData(alg.basis, alg.mult, alg.unit, commutative=True,
                                                            name=alg.name)))
    if kind == "tp":
        return _report_out(args, verify_tp_algebra(a.tp))
    if kind == "comodule":
        rep = verify_comodule(a.comodule, a.hopf, a.basis)
        if rep.passed:
            rep.merge(verify_comodule_tp_algebra(a))
        return _report_out(args, rep)
    m = _need(ctx.module, "module")
    if kind == "module":
        return _report_out(args, verify_tp_module(m, a.tp))
    return _report_out(args, verify_tp_hopf_module(m, a))


def _subspace_doc(sub: Subspace, names) -> dict:
    return {"dim": sub.dim, "basis": [vector_to_json(v) for v in sub.basis],
            "readable": [format_vector(v, names) for v in sub.basis]}


def _subspace_text(title: str, sub: Subspace, names) -> str:
    body = ", ".join(format_vector(v, names) for v in sub.basis) or "0"
    return f"{title}: dim {sub.dim}, span{{{body}}}"


def _phi(ctx: Context, args) -> ColinearAlgebraMap:
    if args.phi_file:
        doc = json.loads(Path(args.phi_file).read_text())
        phi, _ = phi_from_json(doc, _need(ctx.algebra, "algebra"), args.phi_file)
        return phi
    return _need(ctx.phi, "phi")


def cmd_compute(args) -> int:
    ctx = _context(args)
    a = _need(ctx.algebra, "algebra")
    what = args.what
    if what == "center":
        c = tp_center(a.tp)
        _emit(args, _subspace_doc(c.carrier, a.basis), _subspace_text("transposed Poisson center", c.carrier, a.basis))
        return 0
    if what in ("coinvariants", "lie-invariants"):
        m = ctx.module
        if m is None:
            from .repcat import regular_module

            m = regular_module(a)
        sub = coinvariants(m.coaction, a.hopf) if what == "coinvariants" else lie_invariants(m, a)
        _emit(args, _subspace_doc(sub, m.basis), _subspace_text(what, sub, m.basis))
        return 0
    if what == "B":
        b = compute_B(a)
        verdict = is_field(b, seed=args.rng_seed)
        doc = _subspace_doc(b.carrier, a.basis)
        doc["field"] = {"verdict": verdict.kind, "detail": verdict.detail, "seed": args.rng_seed,
                        "witness": [vector_to_json(w) for w in verdict.witness] if verdict.witness else None}
        doc["mult"] = [[vector_to_json(v) for v in row] for row in b.algebra.mult]
        text = _subspace_text("B", b.carrier, a.basis) + f"\nfield test (seed {args.rng_seed}): {verdict.kind}"
        if verdict.detail:
            text += f" ({verdict.detail})"
        _emit(args, doc, text)
        return 0
    if what == "p":
        m = _need(ctx.module, "module")
        P = projection_p(m, _phi(ctx, args))
        _emit(args, {"p": matrix_to_json(P)}, f"p_M =\n{_matrix_text(P)}")
        return 0
    if what == "lambda":
        m = _need(ctx.module, "module")
        res = lambda_map(m, _phi(ctx, args))
        doc = {"lambda": matrix_to_json(res.lam), "report": res.report.to_json()}
        _emit(args, doc, f"lambda =\n{_matrix_text(res.lam)}\n{res.report.summary()}")
        return 0 if res.report.passed else 1
    if what == "ideal-closure":
        if args.seed_vector is None:
            raise InputError("ideal-closure needs --seed with a comma-separated vector")
        vecs = []
        for part in args.seed_vector.split(";"):
            try:
                v = vec(x.strip() for x in part.split(","))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad seed vector {part!r}", "--seed") from exc
            if len(v) != a.dim:
                raise InputError(f"seed vector must have {a.dim} entries", "--seed")
            vecs.append(v)
        sub = ideal_closure(a, vecs)
        _emit(args, _subspace_doc(sub, a.basis), _subspace_text("Poisson H-ideal", sub, a.basis))
        return 0
    raise InputError(f"unknown computation {what!r}")


def _matrix_text(m: Matrix) -> str:
    from .exactlin import format_rational

    rows = [[format_rational(x) for x in r] for r in m.tolist()]
    width = max((len(x) for r in rows for x in r), default=1)
    return "\n".join("  [" + " ".join(x.rjust(width) for x in r) + "]" for r in rows)


def cmd_fundamental(args) -> int:
    ctx = _context(args)
    a = _need(ctx.algebra, "algebra")
    m = _need(ctx.module, "module")
    phi = _phi(ctx, args)
    b = None
    if args.B and args.B != "auto":
        doc = json.loads(Path(args.B).read_text())
        b = b_subalgebra_from_json(doc, a, args.B)
        auto = compute_B(a)
        if not auto.carrier.contains(b.carrier):
            raise InputError("the given B is not contained in the coinvariant center", args.B)
    cert = beta_and_certify(a, m, phi, b)
    doc = cert.to_json()
    lines = [f"certificate: {cert.status}"]
    rd = cert.rank_data
    lines.append(f"dim A = {rd['dim_A']}, dim B = {rd['dim_B']}, dim M = {rd['dim_M']}, "
                 f"dim M^coH = {rd['dim_coinvariants']}, dim M^AcoH = {rd['dim_joint']}")
    lines.append(f"alpha bijective: {cert.alpha_bijective}")
    if cert.failed_hypotheses:
        lines.append("failed hypotheses: " + ", ".join(cert.failed_hypotheses))
    for w in cert.witnesses[:5]:
        lines.append(f"  {w}")
    if rd.get("free_basis"):
        lines.append("free A-basis of M: " + ", ".join(rd["free_basis"]))
    _emit(args, doc, "\n".join(lines))
    return 0 if cert.valid else 1


def cmd_adjunction(args) -> int:
    ctx = _context(args)
    a = _need(ctx.algebra, "algebra")
    m = _need(ctx.module, "module")
    b = compute_B(a)
    instances = []
    if args.N:
        doc = json.loads(Path(args.N).read_text())
        doc.setdefault("over", "B")
        instances.append(("file", module_from_json(doc, a, b.dim, args.N)))
    else:
        zero = tuple(Matrix.zeros(b.dim, b.dim) for _ in range(b.dim))
        instances.append(("B", ModuleData(b.dim, b.algebra.left, zero, basis=b.algebra.basis, over="B", name="B")))
        instances.append(("G(M)", restrict_to_B(m, a, b)))
    results = {}
    lines = []
    ok = True
    for label, n in instances:
        ad = adjunction_psi(n, m, a, b)
        ok &= ad.verified
        results[label] = {"dims": list(ad.dims), "psi": matrix_to_json(ad.psi), "psi_prime": matrix_to_json(ad.psi_prime),
                          "triangle_F": ad.triangle_F, "triangle_G": ad.triangle_G, "verified": ad.verified}
        lines.append(f"N = {label}: hom dims {ad.dims[0]} = {ad.dims[1]}, triangles {ad.triangle_F}/{ad.triangle_G}, "
                     f"verified: {ad.verified}")
    _emit(args, {"instances": results, "verified": ok}, "\n".join(lines))
    return 0 if ok else 1


def cmd_example(args) -> int:
    f = fixture(args.name)
    doc = {
        "name": f.name,
        "description": f.description,
        "expected": f.expected,
        "dims": {"A": f.algebra.dim, "H": f.hopf.dim, "M": f.module.dim},
        "phi_flags": dict(f.phi.flags) if f.phi else None,
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        files = {
            "hopf.json": hopf_to_json(f.hopf),
            "algebra.json": comodule_algebra_to_json(f.algebra),
            "module.json": module_to_json(f.module, f.algebra),
            "bundle.json": bundle_to_json(f.hopf, f.algebra, f.module, f.phi),
        }
        if f.phi is not None:
            files["phi.json"] = phi_to_json(f.phi)
        for fname, body in files.items():
            (out / fname).write_text(dumps(body), encoding="utf-8")
        doc["files"] = sorted(str(out / k) for k in files)
    text = f"{f.name}: {f.description}\n  dims A={f.algebra.dim} H={f.hopf.dim} M={f.module.dim}, expected {f.expected}"
    if "files" in doc:
        text += "\n  wrote " + ", ".join(doc["files"])
    _emit(args, doc, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tphopf", description="Exact verification for transposed Poisson Hopf modules.")
    p.add_argument("--seed", dest="rng_seed", type=int, default=0, help="seed for randomized field certificates")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("--hopf", help="Hopf algebra JSON")
    files.add_argument("--algebra", help="comodule transposed Poisson algebra JSON")
    files.add_argument("--module", help="module JSON")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common, files], help="verify a structure")
    c.add_argument("kind", choices=["algebra", "hopf", "tp", "comodule", "module", "hopf-module"])
    c.add_argument("target", nargs="?", help="example name or JSON file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("compute", parents=[common, files], help="compute invariants and maps")
    c.add_argument("what", choices=["center", "coinvariants", "lie-invariants", "B", "p", "lambda", "ideal-closure"])
    c.add_argument("target", nargs="?", help="example name or JSON file")
    c.add_argument("--phi", dest="phi_file", help="phi JSON")
    c.add_argument("--seed", dest="seed_vector", help="ideal-closure seed: comma-separated vector, ';' between vectors")
    c.set_defaults(func=cmd_compute)

    c = sub.add_parser("fundamental", parents=[common, files], help="certify the fundamental theorem")
    c.add_argument("target", nargs="?", help="example name or bundle JSON")
    c.add_argument("--phi", dest="phi_file", help="phi JSON")
    c.add_argument("--B", default="auto", help="'auto' or a JSON file with a basis of B")
    c.set_defaults(func=cmd_fundamental)

    c = sub.add_parser("adjunction", parents=[common, files], help="verify psi and the triangle identities")
    c.add_argument("target", nargs="?", help="example name or bundle JSON")
    c.add_argument("--N", help="B-module JSON (default: B itself and M^AcoH)")
    c.set_defaults(func=cmd_adjunction)

    c = sub.add_parser("example", parents=[common], help="build a gallery fixture")
    c.add_argument("name", choices=NAMES)
    c.add_argument("--out", help="directory to write JSON files into")
    c.set_defaults(func=cmd_example)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (InputError, ShapeError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisError as exc:
        print(f"hypothesis failed: {exc}", file=sys.stderr)
        return 1
    except AxiomError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(exc.report.summary(limit=10), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
