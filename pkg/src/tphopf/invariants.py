"""Invariant subspaces, the coinvariant projection, the splitting map lambda,
Poisson H-ideal closure and the field test for the coinvariant center."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .errors import HypothesisError, ShapeError, TheoremViolation
from .exactlin import (
    ZERO,
    Matrix,
    RowEchelon,
    Subspace,
    Vector,
    kernel_of_rows,
    kron,
    lincomb,
    unit_vector,
    vec,
    zeros,
)
from .hopfcore import AlgebraData, HopfAlgebraData, is_commutative
from .repcat import (
    ComoduleData,
    ComoduleTPAlgebra,
    ModuleData,
    check_associative_actions,
    induce_tensor_H,
    regular_module,
)
from .report import Report, format_vector
from .tpalg import Subalgebra, TPAlgebraData, induced_subalgebra, tp_center

PHI_FLAGS = ("unit_preserving", "colinear", "algebra_map", "lands_in_center")


@dataclass(frozen=True, eq=False)
class ColinearAlgebraMap:
    """A linear map ``phi: H -> A`` (``dim A x dim H``) with its flags computed, never declared."""

    phi: Matrix
    algebra: ComoduleTPAlgebra
    flags: dict
    report: Report

    def __call__(self, h: Sequence) -> Vector:
        return self.phi @ vec(h)

    def require(self, *names: str) -> None:
        missing = [n for n in names if not self.flags[n]]
        if missing:
            raise HypothesisError(f"phi fails: {', '.join(missing)}", missing)


def colinear_map(a: ComoduleTPAlgebra, phi: Matrix | Sequence, center: Subalgebra | None = None) -> ColinearAlgebraMap:
    """Wrap ``phi`` and evaluate each flag with witnesses."""
    h = a.hopf
    if not isinstance(phi, Matrix):
        phi = Matrix(phi)
    if phi.shape != (a.dim, h.dim):
        raise ShapeError(f"phi must be {a.dim}x{h.dim}, got {phi.shape}")
    center = center if center is not None else tp_center(a.tp)
    rep = Report("phi")
    flags = {}
    flags["unit_preserving"] = rep.compare("unit_preserving", ("1",), phi @ h.unit, a.algebra.unit)
    ok = True
    CA = a.comodule.components
    D = h.regular_components
    for j in range(h.dim):
        lhs = tuple(x for k in range(h.dim) for x in (CA[k] @ phi.column(j)))
        rhs = tuple(x for k in range(h.dim) for x in (phi @ D[k].column(j)))
        # both sides listed component by component
        ok &= rep.compare("colinear", (h.basis[j],), lhs, rhs)
    flags["colinear"] = ok
    ok = True
    for p in range(h.dim):
        for q in range(h.dim):
            lhs = phi @ h.algebra.mult[p][q]
            rhs = a.algebra.mul(phi.column(p), phi.column(q))
            ok &= rep.compare("algebra_map", (h.basis[p], h.basis[q]), lhs, rhs)
    flags["algebra_map"] = ok
    ok = True
    for j in range(h.dim):
        v = phi.column(j)
        if v not in center.carrier:
            ok = False
            rep.fail("lands_in_center", (h.basis[j],), v, "not in the transposed Poisson center")
        else:
            rep.law("lands_in_center")
    flags["lands_in_center"] = ok
    return ColinearAlgebraMap(phi, a, flags, rep)


def unit_phi(a: ComoduleTPAlgebra) -> ColinearAlgebraMap:
    """``h -> eps(h) 1_A``."""
    u, e = a.algebra.unit, a.hopf.counit
    return colinear_map(a, Matrix([[ui * ej for ej in e] for ui in u], a.hopf.dim))


def identity_phi(a: ComoduleTPAlgebra) -> ColinearAlgebraMap:
    """``phi = id`` when ``A`` and ``H`` share a basis."""
    return colinear_map(a, Matrix.identity(a.dim))


def is_subcomodule(sub: Subspace, co: ComoduleData) -> bool:
    return all(sub.is_invariant(c) for c in co.components)


def coinvariants(m: ComoduleData, h: HopfAlgebraData) -> Subspace:
    """``{m : rho(m) = m (x) 1_H}``."""
    I = Matrix.identity(m.dim)
    rows = (r for k, c in enumerate(m.components) for r in (c - I * h.unit[k])._data)
    return kernel_of_rows(rows, m.dim)


def coinvariant_subalgebra(a: ComoduleTPAlgebra) -> Subalgebra:
    """``A^{coH}`` with its induced product and bracket; closure is checked, not assumed."""
    carrier = coinvariants(a.comodule, a.hopf)
    try:
        return induced_subalgebra(a.algebra, carrier, a.tp, label=f"coinvariants of {a.name}")
    except Exception as exc:
        raise TheoremViolation(f"A^coH is not a transposed Poisson subalgebra: {exc}") from exc


def lie_invariant_conditions(m: ModuleData, tp: TPAlgebraData) -> list[Matrix]:
    """``m -> e_i <> (e_j . m) - {e_i, e_j} . m`` for all basis pairs."""
    d = tp.dim
    return [m.lie[i] @ m.act[j] - m.act_by(tp.bracket[i][j]) for i in range(d) for j in range(d)]


def lie_invariants(m: ModuleData, a: ComoduleTPAlgebra | TPAlgebraData) -> Subspace:
    """``M^A``; when ``m`` has a coaction the result is checked to be a subcomodule."""
    tp = a.tp if isinstance(a, ComoduleTPAlgebra) else a
    rows = (r for blk in lie_invariant_conditions(m, tp) for r in blk._data)
    sub = kernel_of_rows(rows, m.dim)
    if m.coaction is not None and not is_subcomodule(sub, m.coaction):
        raise TheoremViolation("M^A is not stable under the coaction")
    return sub


@dataclass(frozen=True, eq=False)
class InvariantReport:
    coinvariants: Subspace
    lie_invariants: Subspace
    joint: Subspace
    center: Subalgebra | None = None
    B: Subalgebra | None = None

    def dims(self) -> dict:
        out = {"coinvariants": self.coinvariants.dim, "lie_invariants": self.lie_invariants.dim,
               "joint": self.joint.dim}
        if self.center is not None:
            out["center"] = self.center.dim
            out["B"] = self.B.dim
        return out


def compute_B(a: ComoduleTPAlgebra, center: Subalgebra | None = None) -> Subalgebra:
    """``B = A^A`` intersected with ``A^{coH}``, with induced product and (zero) bracket."""
    center = center if center is not None else tp_center(a.tp)
    carrier = center.carrier & coinvariants(a.comodule, a.hopf)
    b = induced_subalgebra(a.algebra, carrier, a.tp, label=f"B of {a.name}")
    if not b.tp.is_zero_bracket():
        raise TheoremViolation("bracket restricted to A^A is not zero")
    return b


def invariant_report(a: ComoduleTPAlgebra, m: ModuleData | None = None) -> InvariantReport:
    """All invariant subspaces of ``m`` (default: ``A`` itself, adding the center and ``B``)."""
    if m is None:
        center = tp_center(a.tp)
        b = compute_B(a, center)
        regular = regular_module(a)
        co = coinvariants(a.comodule, a.hopf)
        li = lie_invariants(regular, a)
        return InvariantReport(co, li, li & co, center, b)
    co = coinvariants(m.coaction, a.hopf)
    li = lie_invariants(m, a)
    return InvariantReport(co, li, li & co)


def joint_invariants(m: ModuleData, a: ComoduleTPAlgebra) -> Subspace:
    """``M^{AcoH}``."""
    return lie_invariants(m, a) & coinvariants(m.coaction, a.hopf)


def restrict_to_B(m: ModuleData, a: ComoduleTPAlgebra, b: Subalgebra, joint: Subspace | None = None) -> ModuleData:
    """``M^{AcoH}`` as a ``B``-module; the Lie action of ``B`` on it is checked to vanish."""
    joint = joint if joint is not None else joint_invariants(m, a)
    act, lie = [], []
    for bv in b.basis_vectors:
        A, L = m.act_by(bv), m.lie_by(bv)
        cols_a, cols_l = [], []
        for v in joint.basis:
            w = A @ v
            if w not in joint:
                raise TheoremViolation("M^AcoH is not closed under the action of B")
            cols_a.append(joint.coords(w))
            if any(L @ v):
                raise TheoremViolation("B acts on M^AcoH by a nonzero Lie action")
            cols_l.append(zeros(joint.dim))
        act.append(Matrix.from_columns(cols_a, rows=joint.dim))
        lie.append(Matrix.from_columns(cols_l, rows=joint.dim))
    names = tuple(format_vector(v, m.basis) for v in joint.basis)
    return ModuleData(joint.dim, tuple(act), tuple(lie), None, names, over="B", name=f"G({m.name or 'M'})")


def projection_p(m: ModuleData, phi: ColinearAlgebraMap) -> Matrix:
    """``P = sum_l phi(S^{-1}(h_l)) . C_l``: the projection of ``M`` onto ``M^{coH}``."""
    phi.require("unit_preserving", "colinear")
    a = phi.algebra
    h = a.hopf
    Sinv = h.antipode_inverse
    if Sinv is None:
        raise HypothesisError("antipode is not invertible", ["S invertible"])
    P = Matrix.zeros(m.dim, m.dim)
    for l, C in enumerate(m.coaction.components):
        coeff = phi(Sinv.column(l))
        if any(coeff):
            P = P + m.act_by(coeff) @ C
    if P @ P != P:
        raise TheoremViolation("p_M is not idempotent")
    if P.image() != coinvariants(m.coaction, h):
        raise TheoremViolation("image of p_M differs from M^coH")
    return P


@dataclass(frozen=True, eq=False)
class LambdaResult:
    lam: Matrix
    report: Report
    induced: ModuleData


def lambda_hypotheses(m: ModuleData, phi: ColinearAlgebraMap, center: Subalgebra | None = None) -> list[str]:
    """Names of the unmet hypotheses for the splitting map (empty when all hold)."""
    a = phi.algebra
    failed = [f for f in ("lands_in_center", "unit_preserving", "colinear") if not phi.flags[f]]
    center = center if center is not None else tp_center(a.tp)
    if not check_associative_actions(m, a.tp, center).passed:
        failed.append("associative actions")
    if not (is_commutative(a.hopf) or phi.flags["algebra_map"]):
        failed.append("H commutative or phi an algebra map")
    return failed


def lambda_map(m: ModuleData, phi: ColinearAlgebraMap, center: Subalgebra | None = None) -> LambdaResult:
    """``lambda(m (x) h) = phi(h S^{-1}(m_(1))) . m_(0)`` from ``M (x) H`` to ``M``, with its certificate.

    The report checks ``lambda rho = id``, ``H``-colinearity and Lie ``A``-linearity
    for the structure on ``M (x) H`` built by :func:`induce_tensor_H`; when ``H``
    is commutative ``A``-linearity is checked too.
    """
    failed = lambda_hypotheses(m, phi, center)
    if failed:
        raise HypothesisError(f"splitting map hypotheses fail: {', '.join(failed)}", failed)
    a = phi.algebra
    h = a.hopf
    Sinv = h.antipode_inverse
    if Sinv is None:
        raise HypothesisError("antipode is not invertible", ["S invertible"])
    d, dh = m.dim, h.dim
    CM = m.coaction.components
    cols = []
    for j in range(d):
        for k in range(dh):
            acc = zeros(d)
            for l in range(dh):
                cm = CM[l].column(j)
                if not any(cm):
                    continue
                coeff = phi(h.mul(h.algebra.e(k), Sinv.column(l)))
                if any(coeff):
                    acc = lincomb([(1, acc), (1, m.act_by(coeff) @ cm)], d)
            cols.append(acc)
    lam = Matrix.from_columns(cols, rows=d)
    commutative = is_commutative(h)
    level = "tp" if commutative else "lie"
    induced = induce_tensor_H(m if commutative else m.replace(act=None), a, level)
    rep = Report("splitting map")
    rho = m.coaction.matrix
    comp = lam @ rho
    for j in range(d):
        rep.compare("lambda rho = id", (m.basis[j],), comp.column(j), unit_vector(d, j))
    checks = [("H-colinear", CM, induced.coaction.components)]
    checks.append(("Lie A-linear", m.lie, induced.lie))
    if commutative:
        checks.append(("A-linear", m.act, induced.act))
    for law, target, source in checks:
        rep.law(law)
        for i, (T, S) in enumerate(zip(target, source)):
            lhs, rhs = lam @ S, T @ lam
            if lhs != rhs:
                for c in range(lhs.cols):
                    rep.compare(law, (i, induced.basis[c]), lhs.column(c), rhs.column(c))
    return LambdaResult(lam, rep, induced)


def ideal_operators(a: ComoduleTPAlgebra) -> list[Matrix]:
    """Generators whose common invariant subspaces are exactly the Poisson H-ideals."""
    return list(a.algebra.left) + list(a.tp.ad) + list(a.comodule.components)


def ideal_closure(a: ComoduleTPAlgebra, seed: Subspace | Sequence[Sequence]) -> Subspace:
    """Smallest subspace containing ``seed`` closed under ``A .``, ``{A, -}`` and the coaction."""
    if not isinstance(seed, Subspace):
        seed = Subspace.span(a.dim, seed)
    ops = ideal_operators(a)
    current = seed
    for _ in range(a.dim + 1):
        nxt = Subspace.span(a.dim, list(current.basis) + [op @ v for op in ops for v in current.basis])
        if nxt.dim == current.dim:
            return current
        current = nxt
    return current


def generated_operator_algebra_dim(ops: Sequence[Matrix], n: int) -> int:
    """Dimension of the unital associative algebra generated by ``ops`` inside ``End(Q^n)``."""
    flat = lambda m: tuple(x for row in m._data for x in row)
    ech = RowEchelon(n * n)
    ident = Matrix.identity(n)
    ech.add(flat(ident))
    frontier = [ident]
    while frontier:
        new = []
        for w in frontier:
            for g in ops:
                p = g @ w
                if ech.add(flat(p)):
                    new.append(p)
        frontier = new
    return ech.rank


@dataclass(frozen=True)
class SimplicityEvidence:
    verdict: str  # "Simple", "NotSimple" or "Inconclusive"
    ideal: Subspace | None
    detail: str


def simplicity_evidence(a: ComoduleTPAlgebra, trials: int = 16, seed: int = 0) -> SimplicityEvidence:
    """Search for a proper nonzero Poisson H-ideal; prove simplicity only when it is certain.

    Simplicity is certified when ``dim A = 1`` or the operators generate all of
    ``End(A)`` (then no proper invariant subspace exists).
    """
    n = a.dim
    if n == 1:
        return SimplicityEvidence("Simple", None, "dimension 1")
    ops = ideal_operators(a)
    rng = random.Random(seed)
    candidates = [unit_vector(n, i) for i in range(n)]
    candidates += [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(trials)]
    for v in candidates:
        if not any(v):
            continue
        closure = ideal_closure(a, [v])
        if 0 < closure.dim < n:
            return SimplicityEvidence("NotSimple", closure, f"closure of {format_vector(v, a.basis)}")
    if generated_operator_algebra_dim(ops, n) == n * n:
        return SimplicityEvidence("Simple", None, "structure operators generate End(A)")
    return SimplicityEvidence("Inconclusive", None, f"no proper ideal among {len(candidates)} sampled closures")


@dataclass(frozen=True)
class FieldVerdict:
    kind: str  # "Field", "NotField" or "Inconclusive"
    witness: tuple | None = None
    trials: int = 0
    detail: str = ""

    def __bool__(self) -> bool:
        return self.kind == "Field"


def _as_algebra(b) -> AlgebraData:
    if isinstance(b, Subalgebra):
        return b.algebra
    if isinstance(b, AlgebraData):
        return b
    raise TypeError("expected a Subalgebra or AlgebraData")


def trace_form(alg: AlgebraData) -> Matrix:
    d = alg.dim
    return Matrix([[sum((alg.left_mult(alg.mult[i][j])[k, k] for k in range(d)), ZERO) for j in range(d)]
                   for i in range(d)], d)


def minimal_polynomial(alg: AlgebraData, z: Sequence) -> list:
    """Monic coefficients (lowest degree first) of the minimal polynomial of ``z``."""
    d = alg.dim
    powers = [alg.unit]
    while True:
        nxt = alg.mul(powers[-1], z)
        k = len(powers)
        M = Matrix.from_columns(powers + [nxt])
        ker = M.kernel()
        if ker.dim:
            v = ker.basis[0]
            # the last coordinate is nonzero because 1, z, ..., z^(k-1) are independent
            lead = v[k]
            return [c / lead for c in v]
        powers.append(nxt)
        if len(powers) > d + 1:
            raise TheoremViolation("minimal polynomial degree exceeds the dimension")


def _eval_poly(alg: AlgebraData, coeffs: Sequence, z: Sequence) -> Vector:
    acc = zeros(alg.dim)
    power = alg.unit
    for c in coeffs:
        if c:
            acc = lincomb([(1, acc), (c, power)], alg.dim)
        power = alg.mul(power, z)
    return acc


def _zero_divisor(alg: AlgebraData, x: Vector, y: Vector, how: str) -> FieldVerdict:
    names = alg.basis
    return FieldVerdict("NotField", (x, y), detail=f"{how}: ({format_vector(x, names)})({format_vector(y, names)}) = 0")


def is_field(b, seed: int = 0, trials: int = 32) -> FieldVerdict:
    """Decide whether a commutative unital algebra is a field, with a certificate either way when possible.

    Nilpotents are found through the radical of the trace form, zero divisors
    through singular multiplication operators or reducible minimal
    polynomials, and fields are certified by an element whose minimal
    polynomial is irreducible of full degree.
    """
    alg = _as_algebra(b)
    d = alg.dim
    if d == 1:
        return FieldVerdict("Field", detail="dimension 1")
    rad = trace_form(alg).kernel()
    if rad.dim:
        r = rad.basis[0]
        prev, cur = r, alg.mul(r, r)
        while any(cur):
            prev, cur = cur, alg.mul(cur, r)
        return _zero_divisor(alg, prev, r, "nilpotent element")
    for i in range(d):
        ker = alg.left[i].kernel()
        if ker.dim:
            return _zero_divisor(alg, alg.e(i), ker.basis[0], "singular multiplication")
    t = sympy.Symbol("t")
    rng = random.Random(seed)
    samples = [alg.e(i) for i in range(d)]
    count = 0
    while count < trials:
        z = samples[count] if count < len(samples) else vec(rng.randint(-3, 3) for _ in range(d))
        count += 1
        coeffs = minimal_polynomial(alg, z)
        poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])), t,
                          domain="QQ")
        _, factors = poly.factor_list()
        if len(factors) > 1 or factors[0][1] > 1:
            f = factors[0][0].monic()
            g = sympy.div(poly, f)[0]
            to_list = lambda p: [sympy.Rational(x) for x in reversed(p.all_coeffs())]
            fx = _eval_poly(alg, [_frac(x) for x in to_list(f)], z)
            gx = _eval_poly(alg, [_frac(x) for x in to_list(g)], z)
            return _zero_divisor(alg, fx, gx, f"minimal polynomial of {format_vector(z, alg.basis)} factors")
        if poly.degree() == d:
            return FieldVerdict("Field", (z,), count, f"{format_vector(z, alg.basis)} has irreducible minimal "
                                                      f"polynomial {poly.as_expr()} of degree {d}")
    return FieldVerdict("Inconclusive", None, count, f"no certificate after {count} trials")


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))
