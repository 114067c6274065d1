"""Canonical JSON for structure constants and a workspace that re-verifies
everything it loads.

Rationals are written as ``"p/q"`` strings (integers as ``"n"``), keys are
sorted, and saving a loaded canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import AxiomError, InputError, ShapeError
from .exactlin import Matrix, Subspace, format_rational, to_rational
from .hopfcore import AlgebraData, CoalgebraData, HopfAlgebraData, verify_algebra, verify_hopf
from .invariants import ColinearAlgebraMap, colinear_map
from .repcat import ComoduleData, ComoduleTPAlgebra, ModuleData, verify_comodule_tp_algebra, verify_tp_hopf_module
from .report import Report
from .tpalg import TPAlgebraData, induced_subalgebra, verify_tp_algebra, zero_bracket


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _q(x) -> str:
    return format_rational(to_rational(x))


def vector_to_json(v) -> list[str]:
    return [_q(x) for x in v]


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[_q(x) for x in row] for row in m.tolist()]


def _rational(x, loc: str):
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"expected an exact rational (int or \"p/q\"), got {x!r}", loc)
    try:
        return to_rational(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {x!r}", loc) from exc


def _vector(v, n: int | None, loc: str) -> tuple:
    if not isinstance(v, list):
        raise InputError("expected a list", loc)
    if n is not None and len(v) != n:
        raise InputError(f"expected vector of length {n}, got {len(v)}", loc)
    return tuple(_rational(x, f"{loc}[{k}]") for k, x in enumerate(v))


def _table(t, rows: int, cols: int, n: int, loc: str) -> list:
    if not isinstance(t, list) or len(t) != rows:
        raise InputError(f"expected {rows} rows", loc)
    out = []
    for i, row in enumerate(t):
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"expected {cols} entries", f"{loc}[{i}]")
        out.append([_vector(v, n, f"{loc}[{i}][{j}]") for j, v in enumerate(row)])
    return out


def _matrix(t, rows: int, cols: int, loc: str) -> Matrix:
    if not isinstance(t, list) or len(t) != rows:
        raise InputError(f"expected {rows} rows", loc)
    return Matrix([_vector(r, cols, f"{loc}[{i}]") for i, r in enumerate(t)], cols)


def _require(doc: dict, key: str, loc: str):
    if key not in doc:
        raise InputError(f"missing field {key!r}", loc)
    return doc[key]


def _basis(doc: dict, loc: str) -> tuple[str, ...]:
    b = _require(doc, "basis", loc)
    if not isinstance(b, list) or not b or not all(isinstance(x, str) for x in b):
        raise InputError("basis must be a nonempty list of names", f"{loc}.basis")
    return tuple(b)


# algebra / Hopf algebra


def algebra_from_json(doc: dict, loc: str = "algebra") -> AlgebraData:
    basis = _basis(doc, loc)
    d = len(basis)
    mult = _table(_require(doc, "mult", loc), d, d, d, f"{loc}.mult")
    unit = _vector(_require(doc, "unit", loc), d, f"{loc}.unit")
    comm = doc.get("commutative")
    return AlgebraData(basis, mult, unit, commutative=comm, name=doc.get("name", ""))


def algebra_to_json(a: AlgebraData) -> dict:
    doc = {
        "basis": list(a.basis),
        "mult": [[vector_to_json(v) for v in row] for row in a.mult],
        "name": a.name,
        "unit": vector_to_json(a.unit),
    }
    if a.commutative is not None:
        doc["commutative"] = a.commutative
    return doc


def hopf_from_json(doc: dict, loc: str = "hopf") -> HopfAlgebraData:
    alg = algebra_from_json(doc, loc)
    d = alg.dim
    comult = _require(doc, "comult", loc)
    if not isinstance(comult, list) or len(comult) != d:
        raise InputError(f"expected {d} coproduct vectors", f"{loc}.comult")
    comult = [_vector(v, d * d, f"{loc}.comult[{i}]") for i, v in enumerate(comult)]
    counit = _vector(_require(doc, "counit", loc), d, f"{loc}.counit")
    S = _matrix(_require(doc, "antipode", loc), d, d, f"{loc}.antipode")
    return HopfAlgebraData(alg, CoalgebraData(alg.basis, comult, counit), S, name=alg.name)


def hopf_to_json(h: HopfAlgebraData) -> dict:
    doc = algebra_to_json(h.algebra)
    doc.update({
        "kind": "hopf",
        "name": h.name,
        "comult": [vector_to_json(v) for v in h.coalgebra.comult],
        "counit": vector_to_json(h.counit),
        "antipode": matrix_to_json(h.antipode),
    })
    return doc


def tp_from_json(doc: dict, loc: str = "algebra") -> TPAlgebraData:
    alg = algebra_from_json(doc, loc)
    if "bracket" not in doc:
        return zero_bracket(alg)
    d = alg.dim
    return TPAlgebraData(alg, _table(doc["bracket"], d, d, d, f"{loc}.bracket"), name=alg.name)


def coaction_from_json(rows, dim: int, hopf_dim: int, loc: str) -> ComoduleData:
    if not isinstance(rows, list) or len(rows) != dim:
        raise InputError(f"expected {dim} coaction vectors", loc)
    return ComoduleData.from_flat([_vector(r, dim * hopf_dim, f"{loc}[{i}]") for i, r in enumerate(rows)], hopf_dim)


def comodule_algebra_from_json(doc: dict, hopf: HopfAlgebraData, loc: str = "algebra") -> ComoduleTPAlgebra:
    tp = tp_from_json(doc, loc)
    if "coaction" in doc:
        co = coaction_from_json(doc["coaction"], tp.dim, hopf.dim, f"{loc}.coaction")
    else:
        co = ComoduleData.trivial(tp.dim, hopf)
    return ComoduleTPAlgebra(tp, hopf, co, name=tp.name)


def comodule_algebra_to_json(a: ComoduleTPAlgebra) -> dict:
    doc = algebra_to_json(a.algebra)
    doc.update({
        "kind": "algebra",
        "name": a.name,
        "bracket": [[vector_to_json(v) for v in row] for row in a.tp.bracket],
        "coaction": [vector_to_json(v) for v in a.comodule.to_flat()],
        "over_hopf": a.hopf.name,
    })
    return doc


# modules and maps


def _action(t, dim_alg: int, dim: int, loc: str) -> tuple[Matrix, ...]:
    """``t[i][j]`` is the vector ``e_i * m_j``."""
    rows = _table(t, dim_alg, dim, dim, loc)
    return tuple(Matrix.from_columns(rows[i], rows=dim) for i in range(dim_alg))


def module_from_json(doc: dict, a: ComoduleTPAlgebra, b_dim: int | None = None, loc: str = "module") -> ModuleData:
    dim = _require(doc, "dim", loc)
    if not isinstance(dim, int) or dim < 0:
        raise InputError("dim must be a nonnegative integer", f"{loc}.dim")
    over = doc.get("over", "A")
    if over not in ("A", "B"):
        raise InputError("over must be \"A\" or \"B\"", f"{loc}.over")
    n_alg = a.dim if over == "A" else b_dim
    if n_alg is None:
        raise InputError("a B-module needs the subalgebra B", loc)
    act = _action(doc["act"], n_alg, dim, f"{loc}.act") if doc.get("act") is not None else None
    lie = _action(doc["lie_act"], n_alg, dim, f"{loc}.lie_act") if doc.get("lie_act") is not None else None
    co = None
    if doc.get("coaction") is not None:
        co = coaction_from_json(doc["coaction"], dim, a.hopf.dim, f"{loc}.coaction")
    basis = tuple(doc.get("basis", ()))
    if basis and len(basis) != dim:
        raise InputError(f"expected {dim} basis names", f"{loc}.basis")
    return ModuleData(dim, act, lie, co, basis, over=over, name=doc.get("name", ""))


def module_to_json(m: ModuleData, a: ComoduleTPAlgebra) -> dict:
    def action(mats):
        if mats is None:
            return None
        return [[vector_to_json(mat.column(j)) for j in range(m.dim)] for mat in mats]

    return {
        "kind": "module",
        "name": m.name,
        "dim": m.dim,
        "basis": list(m.basis),
        "over": m.over,
        "act": action(m.act),
        "lie_act": action(m.lie),
        "coaction": [vector_to_json(v) for v in m.coaction.to_flat()] if m.coaction is not None else None,
        "over_algebra": a.name,
        "over_hopf": a.hopf.name,
    }


def phi_from_json(doc: dict, a: ComoduleTPAlgebra, loc: str = "phi") -> tuple[ColinearAlgebraMap, dict]:
    """Returns the map with recomputed flags and the flags the file declared."""
    mat = _matrix(_require(doc, "matrix", loc), a.dim, a.hopf.dim, f"{loc}.matrix")
    declared = doc.get("flags", {})
    if not isinstance(declared, dict):
        raise InputError("flags must be an object", f"{loc}.flags")
    return colinear_map(a, mat), declared


def phi_to_json(phi: ColinearAlgebraMap) -> dict:
    return {
        "kind": "phi",
        "matrix": matrix_to_json(phi.phi),
        "flags": dict(phi.flags),
        "over_algebra": phi.algebra.name,
        "over_hopf": phi.algebra.hopf.name,
    }


def subspace_from_json(doc: dict, ambient: int, loc: str = "subspace") -> Subspace:
    vecs = _require(doc, "basis", loc)
    if not isinstance(vecs, list):
        raise InputError("basis must be a list of vectors", f"{loc}.basis")
    return Subspace.span(ambient, [_vector(v, ambient, f"{loc}.basis[{i}]") for i, v in enumerate(vecs)])


# workspace


@dataclass
class Entry:
    kind: str
    obj: Any
    source: str
    sha256: str
    report: Report | None = None


@dataclass
class Workspace:
    """Objects keyed by ``(kind, name)`` with provenance; each is verified when registered."""

    entries: dict[tuple[str, str], Entry] = field(default_factory=dict)

    def add(self, name: str, kind: str, obj, source: str = "<memory>", digest: str = "") -> Entry:
        entry = Entry(kind, obj, source, digest, self._verify(kind, obj))
        self.entries[kind, name] = entry
        return entry

    def get(self, name: str | None, kind: str):
        if name is None:
            found = [n for k, n in self.entries if k == kind]
            if len(found) != 1:
                raise InputError(f"cannot resolve which {kind} is meant")
            name = found[0]
        if (kind, name) not in self.entries:
            raise InputError(f"unresolved {kind} reference {name!r}")
        return self.entries[kind, name].obj

    def entry(self, name: str, kind: str) -> Entry:
        return self.entries[kind, name]

    def of_kind(self, kind: str) -> list[Entry]:
        return [e for (k, _), e in self.entries.items() if k == kind]

    @staticmethod
    def _verify(kind: str, obj) -> Report | None:
        if kind == "hopf":
            return verify_hopf(obj)
        if kind == "algebra":
            rep = Report(f"algebra {obj.name}")
            base = verify_algebra(AlgebraData(obj.algebra.basis, obj.algebra.mult, obj.algebra.unit,
                                              commutative=True, name=obj.name))
            rep.merge(base)
            if base.passed:
                rep.merge(verify_tp_algebra(obj.tp))
                if rep.passed:
                    try:
                        rep.merge(verify_comodule_tp_algebra(obj))
                    except AxiomError as exc:
                        rep.merge(exc.report)
            return rep
        if kind == "module":
            m, a = obj
            if m.over == "B" or m.coaction is None:
                return None
            return verify_tp_hopf_module(m, a)
        if kind == "phi":
            return obj.report
        return None

    def load(self, path: str | Path, hopf: str | None = None, algebra: str | None = None) -> list[str]:
        """Load one file (an object or a bundle); returns the names registered."""
        path = Path(path)
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read file: {exc.strerror}", str(path)) from exc
        digest = hashlib.sha256(raw).hexdigest()
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise InputError(f"invalid JSON: {exc}", str(path)) from exc
        if not isinstance(doc, dict):
            raise InputError("top level must be an object", str(path))
        try:
            return self._load_doc(doc, str(path), digest, hopf, algebra)
        except ShapeError as exc:
            raise InputError(str(exc), str(path)) from exc

    def _load_doc(self, doc: dict, source: str, digest: str, hopf: str | None, algebra: str | None) -> list[str]:
        kind = doc.get("kind")
        names = []
        if kind == "bundle":
            for part in ("hopf", "algebra", "module", "phi"):
                if part in doc:
                    names += self._load_doc(doc[part], f"{source}:{part}", digest, hopf, algebra)
                    if part == "hopf":
                        hopf = names[-1]
                    if part == "algebra":
                        algebra = names[-1]
            return names
        name = doc.get("name") or kind or "object"
        if not isinstance(name, str):
            raise InputError("name must be a string", source)
        if kind == "hopf":
            self.add(name, "hopf", hopf_from_json(doc, source), source, digest)
        elif kind == "algebra":
            ref = doc.get("over_hopf", hopf)
            h = self._resolve_hopf(ref)
            self.add(name, "algebra", comodule_algebra_from_json(doc, h, source), source, digest)
        elif kind == "module":
            a = self.get(doc.get("over_algebra", algebra), "algebra")
            m = module_from_json(doc, a, loc=source)
            self.add(name or "module", "module", (m, a), source, digest)
        elif kind == "phi":
            a = self.get(doc.get("over_algebra", algebra), "algebra")
            phi, _ = phi_from_json(doc, a, source)
            name = doc.get("name") or "phi"
            self.add(name, "phi", phi, source, digest)
        else:
            raise InputError(f"unknown kind {kind!r}", source)
        return [name]

    def _resolve_hopf(self, ref: str | None) -> HopfAlgebraData:
        if ref is None and not self.of_kind("hopf"):
            from .hopfcore import trivial_hopf

            return trivial_hopf()
        return self.get(ref, "hopf")


def bundle_to_json(hopf: HopfAlgebraData, a: ComoduleTPAlgebra, m: ModuleData | None = None,
                   phi: ColinearAlgebraMap | None = None) -> dict:
    doc = {"kind": "bundle", "hopf": hopf_to_json(hopf), "algebra": comodule_algebra_to_json(a)}
    if m is not None:
        doc["module"] = module_to_json(m, a)
    if phi is not None:
        doc["phi"] = phi_to_json(phi)
    return doc


def b_subalgebra_from_json(doc: dict, a: ComoduleTPAlgebra, loc: str = "B"):
    return induced_subalgebra(a.algebra, subspace_from_json(doc, a.dim, loc), a.tp, label="B")
