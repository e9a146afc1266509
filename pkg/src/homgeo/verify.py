"""Runnable invariant suite over the catalog.

Every check re-derives a structural identity from raw bracket data and
measures the residual: curvature symmetries, agreement of independent
curvature formulas, trace-form identities, foliation geometry, and the
constraint families of the block-metric quotients.  The runner reports
pass/fail results in a deterministic order; `verify-all` on the command
line is a thin wrapper around run_all.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import default_entries, sp11_model, su21_model
from .config import seed_or_default, tol_or_default
from .curvature import (
    curvature_diagonal_general,
    curvature_tensor,
    cyclic_curvature_diagonal,
    einstein_check,
    killing_quadratic_via_brackets,
    ricci_routes,
    sectional_curvature,
    xi_curvatures,
)
from .errors import HomgeoError
from .lie import killing_form, trace_vector
from .reductive import Frame, canonical_data, closedness_residual, foliation_data
from .spectrum import flat_section_witness, solve_cyclic, theta_split
from .structure import (
    StructureTensor,
    TorsionTensor,
    classify,
    contract_12,
    decompose,
    homogeneous_structure,
    structure_to_torsion,
    torsion_to_structure,
    trace_form,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    results: tuple
    tolerance: float
    seed: int

    @property
    def passed_count(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def failed_count(self) -> int:
        return len(self.results) - self.passed_count

    @property
    def ok(self) -> bool:
        return self.failed_count == 0

    def lines(self) -> list:
        out = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}"
               for r in self.results]
        out.append(f"{self.passed_count} passed, {self.failed_count} failed "
                   f"(tolerance {self.tolerance:g}, seed {self.seed})")
        return out

    def to_json_dict(self) -> dict:
        return {
            "checks": [
                {"name": r.name, "passed": r.passed, "detail": r.detail}
                for r in self.results
            ],
            "passed": self.passed_count,
            "failed": self.failed_count,
            "ok": self.ok,
            "tolerance": self.tolerance,
            "seed": self.seed,
        }


def _result(name: str, residual: float, bound: float) -> CheckResult:
    return CheckResult(name, residual <= bound,
                       f"residual {residual:.3e} (bound {bound:.1e})")


def _is_unimodular(algebra, tol) -> bool:
    return float(np.abs(trace_vector(algebra)).max()) <= tol


def _is_abelian(algebra, tol) -> bool:
    return float(np.abs(algebra.tensor).max()) <= tol


# --- per-entry checks ---------------------------------------------------


def _check_classification(entry, frame, rng, tol):
    report = classify(entry.decomposition, entry.metric, tol=max(tol, 1e-8))
    bad = entry.expected.mismatches(report, tol=max(tol, 1e-8))
    if bad:
        got = {k: report.booleans()[k] for k in bad if k != "eta"}
        return [CheckResult("classification", False,
                            f"fields {bad} disagree, computed {got}")]
    return [CheckResult("classification", True,
                        "labels and trace form match the catalog")]


def _check_curvature_symmetries(entry, frame, rng, tol):
    r4 = curvature_tensor(frame)
    scale = max(1.0, float(np.abs(r4).max()))
    res = max(
        float(np.abs(r4 + np.einsum("bacd->abcd", r4)).max()),
        float(np.abs(r4 + np.einsum("abdc->abcd", r4)).max()),
        float(np.abs(r4 - np.einsum("cdab->abcd", r4)).max()),
        float(np.abs(r4 + np.einsum("bcad->abcd", r4)
                     + np.einsum("cabd->abcd", r4)).max()),
    )
    return [_result("curvature_symmetries", res, 1e-10 * scale)]


def _check_diagonal_routes(entry, frame, rng, tol):
    n = frame.n
    r4 = curvature_tensor(frame)
    worst = 0.0
    for _ in range(20):
        x = rng.standard_normal(n)
        y = rng.standard_normal(n)
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        from_tensor = float(np.einsum("a,b,c,d,abcd->", x, y, x, y, r4))
        general = curvature_diagonal_general(frame, None, x, y)
        worst = max(worst, abs(from_tensor - general))
        if entry.expected.cyclic:
            cyc = cyclic_curvature_diagonal(frame, None, x, y)
            worst = max(worst, abs(from_tensor - cyc))
    return [_result("diagonal_routes", worst, 1e-8)]


def _check_ricci_routes(entry, frame, rng, tol):
    routes = ricci_routes(frame)
    keys = sorted(routes)
    gap = max((float(np.abs(routes[a] - routes[b]).max())
               for a in keys for b in keys), default=0.0)
    return [CheckResult("ricci_routes", True,
                        f"routes {keys} agree within {gap:.3e}")]


def _check_killing_identity(entry, frame, rng, tol):
    b_full = killing_form(entry.algebra)
    worst = 0.0
    for _ in range(10):
        x = rng.standard_normal(frame.n)
        x /= np.linalg.norm(x)
        xg = frame.g_coords(x)
        expected = float(xg @ b_full @ xg)
        got = killing_quadratic_via_brackets(frame, x)
        worst = max(worst, abs(got - expected))
    return [_result("killing_identity", worst, 1e-9)]


def _check_scaling_covariance(entry, frame, rng, tol):
    n = frame.n
    x = np.zeros(n)
    y = np.zeros(n)
    x[0] = 1.0
    y[1] = 1.0
    base = sectional_curvature(entry.decomposition, entry.metric, x, y)
    worst = 0.0
    from .reductive import InvariantMetric

    for t in (0.5, 2.0):
        scaled = InvariantMetric(t * entry.metric.matrix)
        got = sectional_curvature(entry.decomposition, scaled, x, y)
        worst = max(worst, abs(got - base / t))
    return [_result("scaling_covariance", worst, 1e-9 * max(1.0, abs(base)))]


def _check_closedness(entry, frame, rng, tol):
    res = closedness_residual(frame, None)
    return [_result("closedness", res, 1e-10)]


def _check_trace_form(entry, frame, rng, tol):
    data = canonical_data(entry.decomposition, entry.metric)
    eta2 = trace_form(TorsionTensor(data.tc))
    res = float(np.abs(eta2 - data.eta).max()) if frame.n else 0.0
    return [_result("canonical_trace_form", res, 1e-10 * max(1.0, frame.c))]


def _check_structure_tensor(entry, frame, rng, tol):
    s = homogeneous_structure(entry.decomposition, entry.metric)
    scale = max(1.0, float(np.abs(s.components).max()))
    t = structure_to_torsion(s)
    round_trip = float(np.abs(torsion_to_structure(t).components
                              - s.components).max())
    eta_gap = float(np.abs(contract_12(s.components) - frame.eta).max())

    d = decompose(s)
    parts = {"s1": d.s1, "s2": d.s2, "s3": d.s3}
    recon = float(np.abs(d.s1 + d.s2 + d.s3 - s.components).max())
    idem = 0.0
    for slot, comp in parts.items():
        if float(np.abs(comp).max()) <= 1e-14 * scale:
            continue
        again = decompose(StructureTensor(comp))
        own = getattr(again, slot)
        others = [getattr(again, k) for k in parts if k != slot]
        idem = max(idem, float(np.abs(own - comp).max()),
                   *(float(np.abs(o).max()) for o in others))
    res = max(round_trip, eta_gap, recon, idem)
    return [_result("structure_decomposition", res, 1e-10 * scale)]


def _check_foliation(entry, frame, rng, tol):
    if _is_unimodular(entry.algebra, max(tol, 1e-10)):
        return []
    fol = foliation_data(frame, None)
    n = frame.n
    res = float(np.abs(fol.h_mean + fol.xi / (n - 1)).max())
    out = [_result("foliation_mean_curvature", res, 1e-12 * max(1.0, frame.c))]
    if entry.expected.cyclic:
        s = homogeneous_structure(entry.decomposition, entry.metric)
        s_xi = np.einsum("a,abc->bc", fol.xi, s.components)
        out.append(_result("foliation_s_xi", float(np.abs(s_xi).max()),
                           1e-10 * max(1.0, frame.c)))
        rep = xi_curvatures(frame)
        out.append(_result("xi_radial_identity", rep.radial_residual,
                           1e-9 * max(1.0, frame.c ** 2)))
        negative = min(rep.sectional) < -1e-6
        out.append(CheckResult(
            "xi_negative_curvature", negative,
            f"min K(X, xi) = {min(rep.sectional):.6g}"))
    return out


def _check_einstein_obstruction(entry, frame, rng, tol):
    guard = max(tol, 1e-10)
    if not (entry.expected.cyclic
            and _is_unimodular(entry.algebra, guard)
            and not _is_abelian(entry.algebra, guard)):
        return []
    rep = einstein_check(frame)
    return [CheckResult(
        "no_unimodular_cyclic_einstein", not rep.is_einstein,
        f"Einstein deviation {rep.deviation:.6g}")]


def _check_grading_relations(entry, frame, rng, tol):
    if entry.grading is None:
        return []
    alg = entry.algebra
    blocks = entry.grading.blocks
    k_idx = list(entry.grading.k_indices(alg.dim))

    def span_residual(i, j, allowed):
        v = alg.tensor[i, j, :].copy()
        v[list(allowed)] = 0.0
        return float(np.abs(v).max())

    res = 0.0
    if entry.name == "su21_a3ii":
        for a in range(3):
            for b in range(3):
                if a == b:
                    allowed = k_idx
                else:
                    c = 3 - a - b
                    allowed = list(blocks[c])
                for i in blocks[a]:
                    for j in blocks[b]:
                        res = max(res, span_residual(i, j, allowed))
    elif entry.name == "sp11_a3iii":
        v_blk, h_blk = blocks
        for i in v_blk:
            for j in v_blk:
                res = max(res, span_residual(i, j, k_idx))
            for j in h_blk:
                res = max(res, span_residual(i, j, list(h_blk)))
        for i in h_blk:
            for j in h_blk:
                res = max(res, span_residual(i, j, k_idx + list(v_blk)))
    else:
        return []
    return [_result("grading_relations", res, 1e-10)]


_ENTRY_CHECKS = (
    _check_classification,
    _check_curvature_symmetries,
    _check_diagonal_routes,
    _check_ricci_routes,
    _check_killing_identity,
    _check_scaling_covariance,
    _check_closedness,
    _check_trace_form,
    _check_structure_tensor,
    _check_foliation,
    _check_einstein_obstruction,
    _check_grading_relations,
)


# --- model-level checks -------------------------------------------------


def _model_checks(tol):
    results = []

    alg, grading, theta = su21_model()
    split = theta_split(alg, theta)
    ok = split.k_basis.shape[1] == 2 and split.m_basis.shape[1] == 6
    results.append(CheckResult(
        "models::su21_theta_split", ok,
        f"dim k = {split.k_basis.shape[1]}, dim m = {split.m_basis.shape[1]}"))

    fam = solve_cyclic(alg, grading)
    cons_ok = (fam.dimension == 2 and fam.feasible
               and len(fam.constraints) == 1)
    direction = np.array([-2.0, 1.0, 1.0])
    coeff, _, _, _ = np.linalg.lstsq(fam.null_basis, direction, rcond=None)
    in_span = float(np.abs(fam.null_basis @ coeff - direction).max()) <= 1e-9
    results.append(CheckResult(
        "models::su21_cyclic_family", cons_ok and in_span,
        f"{fam.description}, feasible {fam.feasible}"))

    alg2, grading2, theta2 = sp11_model()
    split2 = theta_split(alg2, theta2)
    ok2 = split2.k_basis.shape[1] == 4 and split2.m_basis.shape[1] == 6
    results.append(CheckResult(
        "models::sp11_theta_split", ok2,
        f"dim k = {split2.k_basis.shape[1]}, dim m = {split2.m_basis.shape[1]}"))

    fam2 = solve_cyclic(alg2, grading2)
    ray_ok = fam2.dimension == 1 and fam2.feasible
    if ray_ok:
        ray = fam2.null_basis[:, 0]
        ray_ok = abs(ray[1]) > 0 and abs(ray[0] / ray[1] + 2.0) <= 1e-9
    results.append(CheckResult(
        "models::sp11_cyclic_family", bool(ray_ok),
        f"{fam2.description}, feasible {fam2.feasible}"))

    from .catalog import build

    gentry = build("g", alpha=(0.5, 1.0, 2.0))
    eigen = [(0.5, 1), (1.0, 2), (2.0, 3)]
    pair = flat_section_witness(gentry.algebra, eigen)
    results.append(CheckResult(
        "models::flat_section_witness", pair == (0, 1),
        f"commuting pair {pair}"))
    return results


# --- runner -------------------------------------------------------------


def run_all(tol=None, seed=None, entries=None) -> VerificationReport:
    """Run every invariant check over the catalog entries.

    Results are sorted by check name; a HomgeoError inside a check is
    reported as a failure of that check rather than aborting the run.
    """
    tol = tol_or_default(tol)
    seed = seed_or_default(seed)
    if entries is None:
        entries = default_entries()

    results = []
    for pos, entry in enumerate(entries):
        rng = np.random.default_rng(seed + 101 * pos)
        try:
            frame = Frame(entry.decomposition, entry.metric, tol)
        except HomgeoError as exc:
            results.append(CheckResult(f"{entry.label}::frame", False,
                                       f"{type(exc).__name__}: {exc}"))
            continue
        for check in _ENTRY_CHECKS:
            name = check.__name__.removeprefix("_check_")
            try:
                for res in check(entry, frame, rng, tol):
                    results.append(CheckResult(
                        f"{entry.label}::{res.name}", res.passed, res.detail))
            except HomgeoError as exc:
                results.append(CheckResult(
                    f"{entry.label}::{name}", False,
                    f"{type(exc).__name__}: {exc}"))
    try:
        results.extend(_model_checks(tol))
    except HomgeoError as exc:
        results.append(CheckResult("models::suite", False,
                                   f"{type(exc).__name__}: {exc}"))

    results.sort(key=lambda r: r.name)
    return VerificationReport(results=tuple(results), tolerance=tol, seed=seed)
