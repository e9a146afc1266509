"""Homogeneous structure tensors and their type decomposition.

The structure tensor of a reductive splitting is S = (1/2) T^c - U,
where T^c is the canonical torsion and U the symmetric bilinear map of
the Levi-Civita connection.  Lowered with the metric, S is
antisymmetric in its last two slots; the associated torsion T is
antisymmetric in its first two.  Components throughout are taken with
respect to an orthonormal basis of (m, metric), so traces are plain
index contractions.

The orthogonal group splits the space of such tensors into three
irreducible pieces.  With phi(Z) = (1/(n-1)) sum_a S_{a a Z}:

    S1_{XYZ} = <X,Y> phi(Z) - <X,Z> phi(Y)     (vectorial part)
    S3       = alternation of S                 (totally skew part)
    S2       = S - S1 - S3                      (traceless cyclic part)

The classification booleans reported by classify are computed from the
brackets directly and cross-checked against the component norms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import tol_or_default
from .errors import ConsistencyError, SlotSymmetryViolation
from .lie import _frozen, trace_vector
from .reductive import Frame, InvariantMetric, ReductiveDecomposition, u_tensor


def _check_rank3(components) -> np.ndarray:
    a = np.asarray(components, dtype=float)
    if a.ndim != 3 or len(set(a.shape)) != 1:
        raise SlotSymmetryViolation(f"expected cubic rank-3 components, got {a.shape}")
    return a


@dataclass(frozen=True, eq=False)
class StructureTensor:
    """Lowered structure tensor, antisymmetric in the last two slots."""

    components: np.ndarray
    frame: Frame | None = None

    def __post_init__(self):
        a = _check_rank3(self.components)
        defect = float(np.abs(a + np.einsum("abc->acb", a)).max()) if a.size else 0.0
        if defect > max(1e-9, 1e-12 * max(1.0, float(np.abs(a).max()))):
            raise SlotSymmetryViolation(
                f"structure tensor not antisymmetric in slots 2,3 (defect {defect:.3e})"
            )
        object.__setattr__(self, "components", _frozen(a))

    @property
    def n(self) -> int:
        return self.components.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


@dataclass(frozen=True, eq=False)
class TorsionTensor:
    """Lowered torsion tensor, antisymmetric in the first two slots."""

    components: np.ndarray
    frame: Frame | None = None

    def __post_init__(self):
        a = _check_rank3(self.components)
        defect = float(np.abs(a + np.einsum("abc->bac", a)).max()) if a.size else 0.0
        if defect > max(1e-9, 1e-12 * max(1.0, float(np.abs(a).max()))):
            raise SlotSymmetryViolation(
                f"torsion tensor not antisymmetric in slots 1,2 (defect {defect:.3e})"
            )
        object.__setattr__(self, "components", _frozen(a))

    @property
    def n(self) -> int:
        return self.components.shape[0]


def u_map(dec: ReductiveDecomposition, metric: InvariantMetric, tol=None) -> np.ndarray:
    """Frame components U[a,b,c] of the symmetric map U(X, Y)."""
    frame = dec if isinstance(dec, Frame) else Frame(dec, metric, tol)
    return u_tensor(frame)


def homogeneous_structure(dec, metric, tol=None) -> StructureTensor:
    """Structure tensor S = (1/2) T^c - U in frame components."""
    frame = dec if isinstance(dec, Frame) else Frame(dec, metric, tol)
    s = -0.5 * frame.lte - u_tensor(frame)
    return StructureTensor(s, frame)


def structure_to_torsion(s: StructureTensor) -> TorsionTensor:
    """T_{XYZ} = S_{XYZ} - S_{YXZ}."""
    a = s.components
    return TorsionTensor(a - np.einsum("abc->bac", a), s.frame)


def torsion_to_structure(t: TorsionTensor) -> StructureTensor:
    """2 S_{XYZ} = T_{XYZ} + T_{ZYX} + T_{ZXY}."""
    a = t.components
    s = 0.5 * (a + np.einsum("abc->cba", a) + np.einsum("abc->bca", a))
    return StructureTensor(s, t.frame)


def torsion_structure_convert(tensor):
    """Convert between torsion and structure presentations (either way)."""
    if isinstance(tensor, StructureTensor):
        return structure_to_torsion(tensor)
    if isinstance(tensor, TorsionTensor):
        return torsion_to_structure(tensor)
    raise SlotSymmetryViolation(
        "expected a StructureTensor or TorsionTensor, got "
        + type(tensor).__name__
    )


def contract_12(s_components: np.ndarray) -> np.ndarray:
    """c12(S)(Z) = sum_a S_{a a Z}."""
    return np.einsum("aax->x", s_components)


def trace_form(t: TorsionTensor, tol=None) -> np.ndarray:
    """Trace form eta(X) = tr T_X of a torsion tensor.

    Asserts the identity eta = c12(S) for the converted structure
    tensor before returning.
    """
    tol = tol_or_default(tol)
    eta = np.einsum("xaa->x", t.components)
    via_s = contract_12(torsion_to_structure(t).components)
    gap = float(np.abs(eta - via_s).max()) if eta.size else 0.0
    if gap > max(tol, 1e-12 * max(1.0, float(np.abs(t.components).max()))):
        raise ConsistencyError(
            f"trace form disagrees with the structure contraction (gap {gap:.3e})"
        )
    return eta


@dataclass(frozen=True, eq=False)
class TypeDecomposition:
    """Orthogonal splitting S = S1 + S2 + S3 with component norms."""

    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray
    phi: np.ndarray
    norms: dict = field(default_factory=dict)

    def component_norms(self) -> tuple[float, float, float]:
        return self.norms["s1"], self.norms["s2"], self.norms["s3"]


def _to_orthonormal(components, metric):
    """Re-express rank-3 lowered components in an orthonormal frame."""
    g = np.asarray(metric.matrix if isinstance(metric, InvariantMetric) else metric,
                   dtype=float)
    chol = np.linalg.cholesky(g)
    q = np.linalg.inv(chol).T  # columns: orthonormal vectors in old basis
    new = np.einsum("ia,jb,kc,ijk->abc", q, q, q, components)
    return new, q


def decompose(s, metric=None, tol=None) -> TypeDecomposition:
    """Split a structure tensor into its three orthogonal type components.

    Components are assumed orthonormal; pass `metric` (the Gram matrix
    of the basis the components refer to) to orthonormalize first.  In
    dimension n < 3 only the vectorial class exists and the remaining
    components are returned as zeros.
    """
    tol = tol_or_default(tol)
    if isinstance(s, StructureTensor):
        a = s.components
    else:
        a = StructureTensor(s).components
    if metric is not None:
        a, _ = _to_orthonormal(a, metric)
    n = a.shape[0]

    if n <= 1:
        zeros = np.zeros_like(a)
        return TypeDecomposition(zeros, zeros.copy(), zeros.copy(),
                                 np.zeros(n), {"s1": 0.0, "s2": 0.0, "s3": 0.0})

    eye = np.eye(n)
    phi = contract_12(a) / (n - 1)
    s1 = np.einsum("ab,c->abc", eye, phi) - np.einsum("ac,b->abc", eye, phi)
    if n == 2:
        s3 = np.zeros_like(a)
        s2 = np.zeros_like(a)
        resid = float(np.abs(a - s1).max())
        if resid > max(tol, 1e-12 * max(1.0, float(np.abs(a).max()))):
            raise ConsistencyError(
                f"dimension-2 tensor is not purely vectorial (residual {resid:.3e})"
            )
        s1 = a.copy()
    else:
        s3 = (a + np.einsum("abc->cab", a) + np.einsum("abc->bca", a)) / 3.0
        s2 = a - s1 - s3

    dec = TypeDecomposition(
        _frozen(s1), _frozen(s2), _frozen(s3), _frozen(phi),
        {"s1": float(np.linalg.norm(s1)),
         "s2": float(np.linalg.norm(s2)),
         "s3": float(np.linalg.norm(s3))},
    )
    _decomposition_selfcheck(a, dec)
    return dec


def _decomposition_selfcheck(a, dec):
    """Reconstruction, mutual orthogonality and the defining traces."""
    scale = max(1.0, float(np.abs(a).max()))
    slack = 1e-11 * scale
    parts = (dec.s1, dec.s2, dec.s3)
    if float(np.abs(a - sum(parts)).max()) > slack:
        raise ConsistencyError("type components do not reconstruct the tensor")
    for i in range(3):
        for j in range(i + 1, 3):
            ip = float(np.abs(np.sum(parts[i] * parts[j])))
            if ip > slack * max(1.0, scale):
                raise ConsistencyError("type components are not orthogonal")
    if float(np.abs(dec.s3 + np.einsum("abc->bac", dec.s3)).max()) > slack:
        raise ConsistencyError("skew component is not totally skew")
    if dec.s2.size and float(np.abs(contract_12(dec.s2)).max()) > slack:
        raise ConsistencyError("traceless component has a nonzero trace")
    cyc = dec.s2 + np.einsum("abc->cab", dec.s2) + np.einsum("abc->bca", dec.s2)
    if float(np.abs(cyc).max()) > slack:
        raise ConsistencyError("traceless cyclic component has a cyclic sum")


def cyclic_sum(components: np.ndarray) -> np.ndarray:
    """S_{XYZ} + S_{YZX} + S_{ZXY} over all index triples."""
    return components + np.einsum("abc->cab", components) + np.einsum("abc->bca", components)


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    """Class membership booleans plus the norms and residuals behind them.

    traceless_cyclic means a nonvanishing structure tensor lying in the
    traceless cyclic class, i.e. traceless and cyclic and S != 0.
    eta holds the canonical trace form evaluated on the m-index basis
    vectors of the input decomposition.
    """

    cyclic: bool
    traceless: bool
    traceless_cyclic: bool
    vectorial: bool
    naturally_reductive: bool
    symmetric: bool
    norms: dict
    eta: tuple
    residuals: dict

    def to_json_dict(self) -> dict:
        return {
            "cyclic": self.cyclic,
            "traceless": self.traceless,
            "traceless_cyclic": self.traceless_cyclic,
            "vectorial": self.vectorial,
            "naturally_reductive": self.naturally_reductive,
            "symmetric": self.symmetric,
            "norms": {k: float(v) for k, v in self.norms.items()},
            "eta": [float(v) for v in self.eta],
        }

    def booleans(self) -> dict:
        return {
            "cyclic": self.cyclic,
            "traceless": self.traceless,
            "traceless_cyclic": self.traceless_cyclic,
            "vectorial": self.vectorial,
            "naturally_reductive": self.naturally_reductive,
            "symmetric": self.symmetric,
        }


def classify(dec, metric, tol=None) -> ClassificationReport:
    """Classify a reductive homogeneous space by its structure tensor.

    The booleans are decided on the raw bracket data:

      cyclic:       the cyclic sum of <[X,Y]_m, Z> vanishes,
      traceless:    the canonical trace form vanishes,
      vectorial:    [X,Y]_m = (1/(n-1)) (X eta(Y) - Y eta(X)),
      nat. red.:    <[X,Y]_m, Z> is antisymmetric in Y, Z,
      symmetric:    S = 0.

    Each decision is cross-checked against the type-component norms.
    """
    frame = dec if isinstance(dec, Frame) else Frame(dec, metric, tol)
    tol = frame.tol
    n = frame.n
    lte = frame.lte
    eta = frame.eta

    s = homogeneous_structure(frame, None)
    types = decompose(s, tol=tol)

    cyc_res = float(np.abs(cyclic_sum(lte)).max()) if n else 0.0
    nat_res = float(np.abs(lte + np.einsum("abc->acb", lte)).max()) if n else 0.0
    trace_res = float(np.abs(eta).max()) if n else 0.0
    sym_res = float(np.abs(s.components).max()) if n else 0.0
    if n >= 2:
        eye = np.eye(n)
        vect_target = (np.einsum("ac,b->abc", eye, eta)
                       - np.einsum("bc,a->abc", eye, eta)) / (n - 1)
        vect_res = float(np.abs(lte - vect_target).max())
    else:
        vect_res = 0.0

    cyclic = cyc_res <= tol
    traceless = trace_res <= tol
    symmetric = sym_res <= tol
    vectorial = vect_res <= tol
    naturally_reductive = nat_res <= tol
    traceless_cyclic = traceless and cyclic and not symmetric

    report = ClassificationReport(
        cyclic=cyclic,
        traceless=traceless,
        traceless_cyclic=traceless_cyclic,
        vectorial=vectorial,
        naturally_reductive=naturally_reductive,
        symmetric=symmetric,
        norms=dict(types.norms),
        eta=tuple(float(v) for v in
                  -trace_vector(frame.dec.algebra)[list(frame.dec.m_indices)]),
        residuals={
            "cyclic": cyc_res,
            "traceless": trace_res,
            "vectorial": vect_res,
            "naturally_reductive": nat_res,
            "symmetric": sym_res,
        },
    )
    _classify_crosscheck(report, types, s, eta, tol)
    return report


def _classify_crosscheck(report, types, s, eta, tol):
    """Bracket-level decisions must match the component-norm picture.

    Exact identities tie the two routes together: the cyclic sum of S
    is 3 S3, the trace c12(S) equals eta, and S - S1 has norm
    sqrt(s2^2 + s3^2).  A wide guard band (factor 50) keeps the check
    meaningful without flapping at the threshold.
    """
    n = s.n
    cyc_s = cyclic_sum(s.components)
    if float(np.abs(cyc_s - 3.0 * types.s3).max()) > 1e-10 * max(
            1.0, float(np.abs(s.components).max())):
        raise ConsistencyError("cyclic sum of S does not equal 3 S3")
    if n >= 2:
        gap = float(np.abs(contract_12(s.components) - eta).max())
        if gap > max(tol, 1e-11 * max(1.0, float(np.abs(s.components).max()))):
            raise ConsistencyError(
                f"c12(S) disagrees with the canonical trace form (gap {gap:.3e})"
            )

    checks = [
        (report.cyclic, types.norms["s3"]),
        (report.traceless, types.norms["s1"]),
        (report.vectorial, np.hypot(types.norms["s2"], types.norms["s3"])),
        (report.naturally_reductive, np.hypot(types.norms["s1"], types.norms["s2"])),
        (report.symmetric, float(np.linalg.norm(s.components))),
    ]
    scale = max(1.0, float(np.abs(s.components).max())) * n ** 1.5
    for decided, norm in checks:
        if decided and norm > 50.0 * tol * scale:
            raise ConsistencyError(
                "bracket-level classification disagrees with component norms"
            )
        if not decided and norm <= tol / (50.0 * scale):
            raise ConsistencyError(
                "component norms disagree with bracket-level classification"
            )
