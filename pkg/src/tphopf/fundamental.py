"""The module ``A (x)_B N``, the multiplication map ``alpha`` onto ``M``, the
two coincidence conditions, the inverse ``beta`` and the adjunction between
``N -> A (x)_B N`` and ``M -> M^{AcoH}``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import AxiomError, HypothesisError, TheoremViolation, WellDefinednessError
from .exactlin import Matrix, Subspace, Vector, kron, tensor, unit_vector, zeros
from .invariants import (
    ColinearAlgebraMap,
    coinvariants,
    compute_B,
    joint_invariants,
    projection_p,
    restrict_to_B,
)
from .repcat import (
    ComoduleData,
    ComoduleTPAlgebra,
    ModuleData,
    b_actions,
    check_morphism,
    hom_space,
    regular_module,
    tensor_names,
    verify_module,
    verify_tp_hopf_module,
    verify_tp_module,
)
from .report import Report, Witness, format_vector
from .tpalg import Subalgebra

MORPHISM_FLAGS = ("a_linear", "lie_linear", "h_colinear")


@dataclass(frozen=True, eq=False)
class TensorOverB:
    """``A (x)_B N`` as a quotient of ``A (x) N`` by ``ab (x) n - a (x) bn``.

    Cosets are represented by the ambient basis vectors at the non-pivot
    positions of ``relations``; ``module`` carries the induced structure in
    those coordinates.
    """

    algebra: ComoduleTPAlgebra
    factor: ModuleData
    b: Subalgebra
    relations: Subspace
    positions: tuple[int, ...]
    module: ModuleData

    @property
    def ambient_dim(self) -> int:
        return self.relations.ambient_dim

    @property
    def dim(self) -> int:
        return len(self.positions)

    def project(self, v: Sequence) -> Vector:
        """Coordinates of the coset of an ambient vector."""
        return self.relations.quotient_coords(v)

    def representative(self, q: int) -> tuple[int, int]:
        """``(i, j)`` with ``e_i (x) n_j`` the representative of the ``q``-th coset basis vector."""
        return divmod(self.positions[q], self.factor.dim)


def _check_B_module(n: ModuleData, b: Subalgebra) -> None:
    acts = b_actions(n, b)
    probe = ModuleData(n.dim, acts, n.lie if n.over == "B" else None, basis=n.basis)
    rep = verify_module(probe, b.algebra)
    if n.over == "B" and n.lie is not None:
        rep = verify_tp_module(probe, b.tp)
    if not rep.passed:
        raise AxiomError("not a transposed Poisson B-module", rep)


def tensor_over_B(a: ComoduleTPAlgebra, n: ModuleData, b: Subalgebra | None = None) -> TensorOverB:
    """Build ``A (x)_B N``; every structure map is checked to preserve the relations first."""
    b = b if b is not None else compute_B(a)
    _check_B_module(n, b)
    dA, dN = a.dim, n.dim
    I = Matrix.identity(dN)
    acts = b_actions(n, b)
    rels = []
    for i in range(dA):
        ei = a.algebra.e(i)
        for t, bv in enumerate(b.basis_vectors):
            left = a.algebra.mul(ei, bv)
            for j in range(dN):
                rels.append(tuple(x - y for x, y in zip(tensor(left, I.column(j)), tensor(ei, acts[t].column(j)))))
    R = Subspace.span(dA * dN, rels)
    maps = []
    maps += [(f"{a.basis[i]} . -", "act", kron(L, I)) for i, L in enumerate(a.algebra.left)]
    maps += [(f"{a.basis[i]} <> -", "lie", kron(L, I)) for i, L in enumerate(a.tp.ad)]
    maps += [(f"coaction component {a.hopf.basis[k]}", "co", kron(C, I))
             for k, C in enumerate(a.comodule.components)]
    positions = R.quotient_positions()
    reps = [unit_vector(dA * dN, p) for p in positions]
    induced = {"act": [], "lie": [], "co": []}
    for label, kind, T in maps:
        for r in R.basis:
            if (T @ r) not in R:
                raise WellDefinednessError(f"{label} does not preserve the relations of A (x)_B N", label, r)
        induced[kind].append(Matrix.from_columns([R.quotient_coords(T @ v) for v in reps], rows=len(positions)))
    all_names = tensor_names(a.basis, n.basis)
    module = ModuleData(
        len(positions),
        tuple(induced["act"]),
        tuple(induced["lie"]),
        ComoduleData(tuple(induced["co"])),
        tuple(all_names[p] for p in positions),
        name=f"A (x)_B {n.name or 'N'}",
    )
    out = TensorOverB(a, n, b, R, positions, module)
    if positions:
        rep = verify_tp_hopf_module(module, a)
        if not rep.passed:
            raise TheoremViolation(f"A (x)_B N failed verification:\n{rep.summary()}")
    return out


@dataclass(frozen=True, eq=False)
class AlphaData:
    tensor: TensorOverB
    matrix: Matrix
    joint: Subspace
    morphism_report: Report

    @property
    def bijective(self) -> bool:
        m = self.matrix
        return m.rows == m.cols and m.rank() == m.rows


def _multiplication_map(t: TensorOverB, target: ModuleData, inclusion: Sequence[Vector]) -> Matrix:
    """``a (x)_B n -> a . iota(n)`` on coset representatives."""
    cols = []
    for q in range(t.dim):
        i, j = t.representative(q)
        cols.append(target.act[i] @ inclusion[j])
    m = Matrix.from_columns(cols, rows=target.dim)
    for r in t.relations.basis:
        img = zeros(target.dim)
        for p, c in enumerate(r):
            if c:
                i, j = divmod(p, t.factor.dim)
                img = tuple(x + c * y for x, y in zip(img, target.act[i] @ inclusion[j]))
        if any(img):
            raise WellDefinednessError("multiplication map does not vanish on the relations", "alpha", r)
    return m


def build_alpha(a: ComoduleTPAlgebra, m: ModuleData, b: Subalgebra | None = None,
                joint: Subspace | None = None) -> AlphaData:
    """``alpha: A (x)_B M^{AcoH} -> M``, ``a (x) m -> a . m``, with its morphism report."""
    b = b if b is not None else compute_B(a)
    joint = joint if joint is not None else joint_invariants(m, a)
    g = restrict_to_B(m, a, b, joint)
    t = tensor_over_B(a, g, b)
    mat = _multiplication_map(t, m, joint.basis)
    rep = check_morphism(mat, t.module, m, MORPHISM_FLAGS, subject="alpha") if t.dim else Report("alpha")
    return AlphaData(t, mat, joint, rep)


def alpha(a: ComoduleTPAlgebra, m: ModuleData, b: Subalgebra | None = None) -> Matrix:
    return build_alpha(a, m, b).matrix


@dataclass
class ConditionResult:
    c31: Report
    c32: Report
    coincidence: bool
    coinvariants: Subspace
    joint: Subspace


def _condition(law: str, target: ModuleData, P: Matrix, phi: ColinearAlgebraMap) -> Report:
    a = phi.algebra
    rep = Report(law)
    rep.law(law)
    one = a.algebra.unit
    CA = a.comodule.components
    lie_phi = [target.lie_by(phi.phi.column(k)) for k in range(a.hopf.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = target.act_by(a.tp.br(one, a.algebra.mult[i][j])) @ P
            rhs = Matrix.zeros(target.dim, target.dim)
            for k, C in enumerate(CA):
                part = C @ a.algebra.e(j)
                if any(part) and any(any(r) for r in lie_phi[k]._data):
                    rhs = rhs + lie_phi[k] @ target.act[i] @ P @ target.act_by(part)
            if lhs != rhs:
                for c in range(target.dim):
                    rep.compare(law, (a.basis[i], a.basis[j], target.basis[c]), lhs.column(c), rhs.column(c))
    return rep


def _conditions(a: ComoduleTPAlgebra, m: ModuleData, phi: ColinearAlgebraMap) -> ConditionResult:
    P = projection_p(m, phi)
    regular = regular_module(a)
    PA = projection_p(regular, phi)
    c31 = _condition("condition on M", m, P, phi)
    c32 = _condition("condition on A", regular, PA, phi)
    co = coinvariants(m.coaction, a.hopf)
    joint = joint_invariants(m, a)
    coincidence = co == joint
    if c31.passed and not coincidence:
        raise TheoremViolation("condition on M holds but M^coH differs from M^AcoH")
    return ConditionResult(c31, c32, coincidence, co, joint)


def check_conditions(a: ComoduleTPAlgebra, m: ModuleData, phi: ColinearAlgebraMap) -> ConditionResult:
    """Check ``{1,aa'}.p(m) = phi(a'_(1)) <> (a . p(a'_(0) . m))`` on ``M`` and on ``A``.

    Requires ``phi`` to be a unital colinear algebra map into the center.
    """
    phi.require("lands_in_center", "colinear", "algebra_map", "unit_preserving")
    return _conditions(a, m, phi)


@dataclass
class IsoCertificate:
    status: str  # "VALID" or "DIAGNOSTIC"
    alpha: Matrix
    beta: Matrix | None
    composites: tuple[Matrix, Matrix] | None
    morphism_report: Report
    condition_31: Report | None
    condition_32: Report | None
    coincidence: bool | None
    failed_hypotheses: list[str]
    alpha_bijective: bool
    rank_data: dict
    tensor: TensorOverB = field(repr=False, default=None)

    @property
    def valid(self) -> bool:
        return self.status == "VALID"

    @property
    def witnesses(self) -> list[Witness]:
        out = []
        for r in (self.condition_31, self.condition_32, self.morphism_report):
            if r is not None:
                out.extend(r.witnesses)
        return out

    def to_json(self) -> dict:
        from .serialize import matrix_to_json

        return {
            "status": self.status,
            "failed_hypotheses": list(self.failed_hypotheses),
            "alpha": matrix_to_json(self.alpha),
            "beta": matrix_to_json(self.beta) if self.beta is not None else None,
            "alpha_bijective": self.alpha_bijective,
            "coincidence": self.coincidence,
            "condition_31": self.condition_31.to_json() if self.condition_31 is not None else None,
            "condition_32": self.condition_32.to_json() if self.condition_32 is not None else None,
            "morphisms": self.morphism_report.to_json(),
            "dims": {k: self.rank_data[k] for k in ("dim_A", "dim_B", "dim_M", "dim_joint", "dim_coinvariants")},
            "rank_data": self.rank_data,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _beta(t: TensorOverB, m: ModuleData, phi: ColinearAlgebraMap, P: Matrix, joint: Subspace) -> Matrix:
    """``m -> phi(m_(1)) (x)_B p(m_(0))`` in coset coordinates."""
    cols = []
    CM = m.coaction.components
    for c in range(m.dim):
        amb = zeros(t.ambient_dim)
        for k, C in enumerate(CM):
            pm = P @ C.column(c)
            if not any(pm):
                continue
            piece = tensor(phi.phi.column(k), joint.coords(pm))
            amb = tuple(x + y for x, y in zip(amb, piece))
        cols.append(t.project(amb))
    return Matrix.from_columns(cols, rows=t.dim)


def _rank_data(a: ComoduleTPAlgebra, m: ModuleData, b: Subalgebra, joint: Subspace, co: Subspace) -> dict:
    data = {
        "dim_A": a.dim,
        "dim_B": b.dim,
        "dim_M": m.dim,
        "dim_joint": joint.dim,
        "dim_coinvariants": co.dim,
        "rank_equality": None,
        "free_basis": None,
    }
    if b.dim == 1:
        data["rank_equality"] = m.dim == joint.dim * a.dim
        # a free A-basis of M is any basis of M^{AcoH}
        cols = [m.act[i] @ w for w in joint.basis for i in range(a.dim)]
        spans = bool(cols) and Matrix.from_columns(cols, rows=m.dim).rank() == m.dim == len(cols)
        data["free_basis"] = [format_vector(w, m.basis) for w in joint.basis] if spans else None
    return data


def beta_and_certify(a: ComoduleTPAlgebra, m: ModuleData, phi: ColinearAlgebraMap,
                     b: Subalgebra | None = None) -> IsoCertificate:
    """Certify that ``alpha`` is an isomorphism, or explain which hypothesis failed.

    ``alpha`` and its morphism laws are always computed.  The conditions are
    evaluated when ``p_M`` exists, ``beta`` is built when ``M^{coH} = M^{AcoH}``.
    VALID requires every hypothesis, both composites equal to the identity and
    all six morphism laws.
    """
    b = b if b is not None else compute_B(a)
    joint = joint_invariants(m, a)
    co = coinvariants(m.coaction, a.hopf)
    ad = build_alpha(a, m, b, joint)
    failed = [f for f in ("lands_in_center", "colinear", "algebra_map", "unit_preserving") if not phi.flags[f]]
    cond = None
    P = None
    if phi.flags["unit_preserving"] and phi.flags["colinear"]:
        cond = _conditions(a, m, phi)
        P = projection_p(m, phi)
        if not cond.c31.passed:
            failed.append("condition on M")
        if not cond.c32.passed:
            failed.append("condition on A")
    else:
        failed.append("p_M undefined")
    morph = Report("morphisms")
    morph.merge(ad.morphism_report)
    beta = None
    composites = None
    if P is not None and co == joint:
        beta = _beta(ad.tensor, m, phi, P, joint)
        composites = (ad.matrix @ beta, beta @ ad.matrix)
        if ad.tensor.dim:
            morph.merge(check_morphism(beta, m, ad.tensor.module, MORPHISM_FLAGS, subject="beta"))
    inverse = composites is not None and composites[0].is_identity() and composites[1].is_identity()
    if not morph.passed:
        raise TheoremViolation(f"alpha or beta is not a morphism:\n{morph.summary()}")
    if not failed and not inverse:
        raise TheoremViolation("hypotheses hold but alpha and beta are not mutually inverse")
    status = "VALID" if not failed and inverse else "DIAGNOSTIC"
    return IsoCertificate(
        status,
        ad.matrix,
        beta,
        composites,
        morph,
        cond.c31 if cond else None,
        cond.c32 if cond else None,
        cond.coincidence if cond else co == joint,
        failed,
        ad.bijective,
        _rank_data(a, m, b, joint, co),
        ad.tensor,
    )


def _induced_map(t_src: TensorOverB, t_tgt: TensorOverB, g: Matrix) -> Matrix:
    """``A (x)_B g`` between two tensor modules, ``g`` given on the factors."""
    cols = []
    for q in range(t_src.dim):
        i, j = t_src.representative(q)
        cols.append(t_tgt.project(tensor(unit_vector(t_src.algebra.dim, i), g.column(j))))
    return Matrix.from_columns(cols, rows=t_tgt.dim)


def _unit_eta(t: TensorOverB) -> Matrix:
    """``n -> 1 (x)_B n`` into the coset coordinates of ``t``."""
    one = t.algebra.algebra.unit
    return Matrix.from_columns([t.project(tensor(one, unit_vector(t.factor.dim, j))) for j in range(t.factor.dim)],
                               rows=t.dim)


def _to_joint(joint: Subspace, f: Matrix) -> Matrix:
    return Matrix.from_columns([joint.coords(c) for c in f.columns()], rows=joint.dim)


def _from_joint(joint: Subspace, ambient: int) -> Matrix:
    return Matrix.from_columns(list(joint.basis), rows=ambient)


@dataclass(frozen=True, eq=False)
class AdjunctionData:
    psi: Matrix
    psi_prime: Matrix
    eta: Matrix
    epsilon: Matrix
    source_space: object
    target_space: object
    triangle_F: bool
    triangle_G: bool
    verified: bool

    @property
    def dims(self) -> tuple[int, int]:
        return (self.source_space.dim, self.target_space.dim)


def adjunction_psi(n: ModuleData, m: ModuleData, a: ComoduleTPAlgebra, b: Subalgebra | None = None) -> AdjunctionData:
    """``psi: Hom(A (x)_B N, M) -> Hom_B(N, M^{AcoH})``, ``f -> f(1 (x) -)``, with inverse and triangle checks."""
    b = b if b is not None else compute_B(a)
    t = tensor_over_B(a, n, b)
    joint = joint_invariants(m, a)
    gm = restrict_to_B(m, a, b, joint)
    S1 = hom_space(t.module, m, MORPHISM_FLAGS)
    S2 = hom_space(n, gm, ("b_linear",), b)
    eta = _unit_eta(t)
    iota = _from_joint(joint, m.dim)
    verified = S1.dim == S2.dim

    psi_cols = []
    for f in S1.maps():
        g = _to_joint(joint, f @ eta)
        if g not in S2:
            verified = False
            psi_cols.append(zeros(S2.dim))
        else:
            psi_cols.append(S2.coords(g))
    pp_cols = []
    for g in S2.maps():
        f = _multiplication_map(t, m, (iota @ g).columns()) if t.dim else Matrix.zeros(m.dim, 0)
        if f not in S1:
            verified = False
            pp_cols.append(zeros(S1.dim))
        else:
            pp_cols.append(S1.coords(f))
    psi = Matrix.from_columns(psi_cols, rows=S2.dim)
    psi_p = Matrix.from_columns(pp_cols, rows=S1.dim)
    if verified:
        verified = (psi @ psi_p).is_identity() and (psi_p @ psi).is_identity()

    # epsilon_{F N} o F(eta_N) = id on A (x)_B N
    joint_t = joint_invariants(t.module, a)
    g_t = restrict_to_B(t.module, a, b, joint_t)
    t2 = tensor_over_B(a, g_t, b)
    eta_n = _to_joint(joint_t, eta)
    f_eta = _induced_map(t, t2, eta_n)
    eps_ft = _multiplication_map(t2, t.module, joint_t.basis)
    tri_F = (eps_ft @ f_eta).is_identity()

    # G(epsilon_M) o eta_{G M} = id on M^{AcoH}
    t3 = tensor_over_B(a, gm, b)
    eps_m = _multiplication_map(t3, m, joint.basis)
    joint3 = joint_invariants(t3.module, a)
    eta_g = _to_joint(joint3, _unit_eta(t3))
    g_eps = _to_joint(joint, eps_m @ _from_joint(joint3, t3.dim))
    tri_G = (g_eps @ eta_g).is_identity()

    return AdjunctionData(psi, psi_p, eta, eps_m, S1, S2, tri_F, tri_G, verified and tri_F and tri_G)
