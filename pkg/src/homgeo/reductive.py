"""Reductive decompositions, invariant metrics, and canonical data.

A homogeneous space is presented infinitesimally: a Lie algebra g, a
coordinate splitting g = k + m given by two index sets, and an inner
product on m.  Reductivity means [k, k] in k and [k, m] in m; the
metric must be symmetric positive definite and ad_k-invariant.  All
tensor components downstream are taken in an orthonormal frame of m,
built once per (decomposition, metric) pair by Frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import tol_or_default
from .errors import (
    ConsistencyError,
    IndexOutOfRange,
    InvalidMetric,
    NotReductive,
    UnimodularInput,
)
from .lie import LieAlgebra, trace_vector, _frozen


@dataclass(frozen=True, eq=False)
class ReductiveDecomposition:
    """Index splitting g = k + m.  k may be empty (a metric Lie group)."""

    algebra: LieAlgebra
    k_indices: tuple[int, ...]
    m_indices: tuple[int, ...]

    def __post_init__(self):
        dim = self.algebra.dim
        k = tuple(int(i) for i in self.k_indices)
        m = tuple(int(i) for i in self.m_indices)
        object.__setattr__(self, "k_indices", k)
        object.__setattr__(self, "m_indices", m)
        seen = set(k) | set(m)
        if len(k) + len(m) != dim or seen != set(range(dim)):
            raise IndexOutOfRange(
                f"k={k} and m={m} do not partition the basis 0..{dim - 1}"
            )

    @property
    def dim_m(self) -> int:
        return len(self.m_indices)

    @property
    def dim_k(self) -> int:
        return len(self.k_indices)


@dataclass(frozen=True)
class ReductiveReport:
    kk_residual: float
    km_residual: float

    @property
    def residual(self) -> float:
        return max(self.kk_residual, self.km_residual)


def check_reductive(dec: ReductiveDecomposition, tol=None) -> ReductiveReport:
    """Verify [k,k] in k and [k,m] in m; raise NotReductive otherwise."""
    tol = tol_or_default(tol)
    c = dec.algebra.tensor
    k, m = list(dec.k_indices), list(dec.m_indices)
    kk = 0.0
    km = 0.0
    if k:
        if m:
            kk = float(np.abs(c[np.ix_(k, k)][:, :, m]).max())
            km = float(np.abs(c[np.ix_(k, m)][:, :, k]).max())
    report = ReductiveReport(kk, km)
    if report.residual > tol:
        raise NotReductive(
            f"splitting is not reductive: [k,k] leak {kk:.3e}, [k,m] leak {km:.3e}"
        )
    return report


@dataclass(frozen=True, eq=False)
class InvariantMetric:
    """Inner product on m, ordered like the decomposition's m_indices."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise InvalidMetric(f"metric must be a square matrix, got {mat.shape}")
        sym = float(np.abs(mat - mat.T).max()) if mat.size else 0.0
        if sym > 1e-12 * max(1.0, float(np.abs(mat).max())):
            raise InvalidMetric(f"metric is not symmetric (defect {sym:.3e})")
        object.__setattr__(self, "matrix", _frozen((mat + mat.T) / 2.0))

    @classmethod
    def identity(cls, n: int) -> "InvariantMetric":
        return cls(np.eye(n))

    @classmethod
    def from_diag(cls, diag) -> "InvariantMetric":
        return cls(np.diag(np.asarray(diag, dtype=float)))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


class Frame:
    """Orthonormal frame of (m, metric) plus the bracket data in it.

    Attributes
    ----------
    q : (n, n) columns express frame vectors in the m-index basis
    frame_g : (dim_g, n) frame vectors as algebra coefficient vectors
    lte : (n, n, n) lte[a,b,c] = <[f_a, f_b]_m, f_c>
    k_part : (n, n, dim_k) k-components of [f_a, f_b]
    ad_k : (dim_k, n, n) ad_k[w, d, c] = <[k_w, f_c], f_d>
    eta : (n,) canonical trace form, eta[a] = -tr ad_{f_a}
    """

    def __init__(self, dec: ReductiveDecomposition, metric: InvariantMetric, tol=None):
        tol = tol_or_default(tol)
        check_reductive(dec, tol)
        n = dec.dim_m
        if metric.dim != n:
            raise InvalidMetric(
                f"metric is {metric.dim}-dimensional but m has dimension {n}"
            )
        try:
            chol = np.linalg.cholesky(metric.matrix)
        except np.linalg.LinAlgError as exc:
            raise InvalidMetric("metric is not positive definite") from exc

        self.dec = dec
        self.metric = metric
        self.tol = tol
        self.n = n
        self.q = scipy.linalg.solve_triangular(chol, np.eye(n), lower=True).T
        self.q_inv = chol.T
        algebra = dec.algebra
        dim = algebra.dim
        m_idx = list(dec.m_indices)
        k_idx = list(dec.k_indices)

        frame_g = np.zeros((dim, n))
        frame_g[m_idx, :] = self.q
        self.frame_g = frame_g

        c = algebra.tensor
        br = np.einsum("ia,jb,ijk->abk", frame_g, frame_g, c)
        self.lte = np.einsum("fk,abk->abf", self.q_inv, br[:, :, m_idx])
        self.k_part = br[:, :, k_idx].copy()

        if k_idx:
            adk = np.empty((len(k_idx), n, n))
            for w, kw in enumerate(k_idx):
                vec = c[kw].T @ frame_g  # (dim_g, n): column c holds [k_w, f_c]
                adk[w] = self.q_inv @ vec[m_idx, :]
            self.ad_k = adk
            inv = float(np.abs(adk + np.transpose(adk, (0, 2, 1))).max())
            if inv > tol:
                raise InvalidMetric(
                    f"metric is not ad_k-invariant (residual {inv:.3e})"
                )
        else:
            self.ad_k = np.zeros((0, n, n))

        tau = trace_vector(algebra)
        self.eta = -(frame_g.T @ tau)
        self.c = float(np.linalg.norm(self.eta))
        # metric dual of eta; in an orthonormal frame the coordinates agree
        self.xi = self.eta.copy()

    # coordinate helpers ------------------------------------------------
    def m_coords(self, v_frame):
        """Frame coordinates -> coordinates in the m-index basis."""
        return self.q @ np.asarray(v_frame, dtype=float)

    def frame_coords(self, v_m):
        """m-index basis coordinates -> frame coordinates."""
        return self.q_inv @ np.asarray(v_m, dtype=float)

    def g_coords(self, v_frame):
        return self.frame_g @ np.asarray(v_frame, dtype=float)

    def killing_m(self, killing_g) -> np.ndarray:
        """Killing form restricted to m, in frame coordinates."""
        return self.frame_g.T @ killing_g @ self.frame_g

    def bracket_full(self, x_frame, y_frame) -> np.ndarray:
        """Full algebra bracket of two m-vectors, in g coordinates."""
        return self.dec.algebra.bracket(self.g_coords(x_frame), self.g_coords(y_frame))

    def m_part_frame(self, v_g) -> np.ndarray:
        """m-component of a g-coefficient vector, in frame coordinates."""
        return self.q_inv @ np.asarray(v_g, dtype=float)[list(self.dec.m_indices)]

    def k_coords(self, v_g) -> np.ndarray:
        return np.asarray(v_g, dtype=float)[list(self.dec.k_indices)]


@dataclass(frozen=True, eq=False)
class CanonicalData:
    """Canonical torsion, curvature and trace data of a reductive splitting.

    tc[a,b,c] is the lowered canonical torsion -<[f_a,f_b]_m, f_c>;
    rc[a,b,c,d] = <[[f_a,f_b]_k, f_c], f_d>; eta is the canonical trace
    form on the frame; xi its metric dual; c = |xi|.
    """

    tc: np.ndarray
    rc: np.ndarray
    eta: np.ndarray
    xi: np.ndarray
    c: float
    frame: Frame


def canonical_data(dec: ReductiveDecomposition, metric: InvariantMetric,
                   tol=None) -> CanonicalData:
    frame = dec if isinstance(dec, Frame) else Frame(dec, metric, tol)
    rc = np.einsum("abw,wdc->abcd", frame.k_part, frame.ad_k)
    return CanonicalData(
        tc=_frozen(-frame.lte),
        rc=_frozen(rc),
        eta=_frozen(frame.eta),
        xi=_frozen(frame.xi),
        c=frame.c,
        frame=frame,
    )


def closedness_residual(dec, metric, tol=None) -> float:
    """Max of |eta([f_a, f_b]_m)| over frame pairs.

    The canonical trace form kills m-brackets on every reductive
    splitting, so this vanishes identically; the residual is exposed
    for verification.
    """
    frame = dec if isinstance(dec, Frame) else Frame(dec, metric, tol)
    if frame.n == 0:
        return 0.0
    return float(np.abs(np.einsum("abc,c->ab", frame.lte, frame.eta)).max())


def u_tensor(frame: Frame) -> np.ndarray:
    """Symmetric connection bilinear map U in frame components.

    U is determined by 2<U(X,Y),Z> = <[Z,X]_m,Y> + <[Z,Y]_m,X>.
    """
    lte = frame.lte
    return 0.5 * (np.einsum("cab->abc", lte) + np.einsum("cba->abc", lte))


@dataclass(frozen=True, eq=False)
class FoliationData:
    """Orthogonal foliation data of a non-unimodular space.

    d_basis columns form an orthonormal basis (frame coordinates) of
    the distribution D = ker eta; h_coeff[i,j] is the coefficient of xi
    in the second fundamental form h(d_i, d_j); h_mean is the mean
    curvature vector -(1/(n-1)) xi in frame coordinates.
    """

    d_basis: np.ndarray
    h_coeff: np.ndarray
    h_mean: np.ndarray
    xi: np.ndarray
    c: float
    frame: Frame

    def h_vector(self, i: int, j: int) -> np.ndarray:
        """h(d_i, d_j) as a frame-coordinate vector."""
        return self.h_coeff[i, j] * self.xi


def foliation_data(dec, metric, tol=None) -> FoliationData:
    """Second fundamental form and mean curvature of the canonical foliation.

    Requires a non-unimodular space (c > 0); raises UnimodularInput
    otherwise.  Internal identities (symmetry of h, U(xi,xi) = 0 and
    the trace identity xi = -sum_i U(d_i, d_i)) are verified.
    """
    frame = dec if isinstance(dec, Frame) else Frame(dec, metric, tol)
    tol = frame.tol
    n = frame.n
    if frame.c <= max(tol, 1e-12):
        raise UnimodularInput(
            "canonical trace form vanishes; the foliation needs c > 0"
        )
    c2 = frame.c ** 2

    # Orthonormal basis of ker eta: project frame vectors and Gram-Schmidt
    # in index order, keeping the first n-1 independent directions.
    cols = []
    for a in range(n):
        v = np.eye(n)[a] - (frame.eta[a] / c2) * frame.xi
        for u in cols:
            v = v - (u @ v) * u
        norm = np.linalg.norm(v)
        if norm > max(np.sqrt(tol), 1e-8):
            cols.append(v / norm)
        if len(cols) == n - 1:
            break
    if len(cols) != n - 1:
        raise ConsistencyError("failed to build an orthonormal basis of ker eta")
    d_basis = np.array(cols).T

    u = u_tensor(frame)
    u_dd = np.einsum("ai,bj,abc->ijc", d_basis, d_basis, u)
    h_coeff = np.einsum("ijc,c->ij", u_dd, frame.eta) / c2
    h_mean = -frame.xi / (n - 1)

    sym = float(np.abs(h_coeff - h_coeff.T).max())
    u_xi = np.einsum("a,b,abc->c", frame.xi, frame.xi, u)
    trace_id = np.einsum("iic->c", u_dd) + frame.xi
    worst = max(sym, float(np.abs(u_xi).max()) / max(c2, 1.0),
                float(np.abs(trace_id).max()) / max(frame.c, 1.0))
    if worst > max(tol, 1e-10):
        raise ConsistencyError(
            f"foliation identities failed (residual {worst:.3e})"
        )
    return FoliationData(
        d_basis=_frozen(d_basis),
        h_coeff=_frozen(h_coeff),
        h_mean=_frozen(h_mean),
        xi=_frozen(frame.xi.copy()),
        c=frame.c,
        frame=frame,
    )
