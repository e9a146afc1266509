"""Cyclic-metric families on graded algebras, and related constructions.

For a semisimple algebra graded into Killing-orthogonal blocks inside
m, the block metrics lam_a * B|_block are the natural candidates, and
the cyclic condition reduces to one linear equation per "active"
triple of blocks: the eigenvalues of the metric relative to B must sum
to zero over every triple that the bracket couples.  solve_cyclic
builds those equations, intersects with the positivity chamber
(lam_a * eps_a > 0, where eps_a is the sign of B on the block), and
reports the resulting solution cone.

The module also carries the order-3 automorphism splitting used by
3-symmetric presentations, and the commuting-pair witness search for
flat sections in diagonalizable metric Lie groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np
import scipy.linalg
import scipy.optimize

from .config import tol_or_default
from .errors import (
    ConsistencyError,
    DegenerateKillingForm,
    IndexOutOfRange,
    NoWitness,
    NotAutomorphism,
    NotOrder3,
    ParamOutOfRange,
)
from .lie import LieAlgebra, killing_form, _frozen
from .reductive import InvariantMetric, ReductiveDecomposition


@dataclass(frozen=True, eq=False)
class BlockGrading:
    """Disjoint index blocks spanning m, with the Killing sign per block.

    signs[a] is +1 when the Killing form is positive definite on
    blocks[a] (noncompact directions) and -1 when negative definite.
    Indices not covered by any block form k.
    """

    blocks: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        signs = tuple(int(s) for s in self.signs)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "signs", signs)
        if not blocks or any(not b for b in blocks):
            raise ParamOutOfRange("grading needs at least one nonempty block")
        if len(signs) != len(blocks):
            raise ParamOutOfRange(
                f"{len(blocks)} blocks but {len(signs)} signs"
            )
        if any(s not in (-1, 1) for s in signs):
            raise ParamOutOfRange("block signs must be +1 or -1")
        flat = [i for b in blocks for i in b]
        if len(set(flat)) != len(flat):
            raise IndexOutOfRange("grading blocks overlap")

    @property
    def m_indices(self) -> tuple[int, ...]:
        return tuple(i for b in self.blocks for i in b)

    def k_indices(self, dim: int) -> tuple[int, ...]:
        m = set(self.m_indices)
        if any(i < 0 or i >= dim for i in m):
            raise IndexOutOfRange(f"grading indices exceed the algebra (dim {dim})")
        return tuple(i for i in range(dim) if i not in m)


def grading_decomposition(algebra: LieAlgebra, grading: BlockGrading) -> ReductiveDecomposition:
    """Reductive splitting with m the concatenated blocks, k the rest."""
    return ReductiveDecomposition(
        algebra, grading.k_indices(algebra.dim), grading.m_indices
    )


def _block_killing(algebra, grading, killing, tol):
    """Validate the per-block Killing restrictions and return them."""
    b = killing if killing is not None else killing_form(algebra)
    b = np.asarray(b, dtype=float)
    scale = max(1.0, float(np.abs(b).max()))
    restrictions = []
    for blk, sign in zip(grading.blocks, grading.signs):
        sub = b[np.ix_(blk, blk)]
        eig = np.linalg.eigvalsh(sub)
        if float(np.abs(eig).min()) <= max(tol, 1e-12) * scale:
            raise DegenerateKillingForm(
                f"Killing form is singular on block {blk}"
            )
        if not (np.all(sign * eig > 0)):
            raise ParamOutOfRange(
                f"Killing form on block {blk} does not have sign {sign:+d}"
            )
        restrictions.append(sub)
    # cross-block orthogonality keeps the family block diagonal
    for (i, bi), (j, bj) in combinations_with_replacement(
            enumerate(grading.blocks), 2):
        if i == j:
            continue
        off = float(np.abs(b[np.ix_(bi, bj)]).max())
        if off > max(tol, 1e-10) * scale:
            raise ParamOutOfRange(
                f"blocks {bi} and {bj} are not Killing-orthogonal ({off:.3e})"
            )
    return restrictions


def cyclic_metric(algebra: LieAlgebra, grading: BlockGrading, lam,
                  killing=None, tol=None) -> InvariantMetric:
    """Block metric with lam[a] times the Killing form on each block."""
    tol = tol_or_default(tol)
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (len(grading.blocks),):
        raise ParamOutOfRange(
            f"expected {len(grading.blocks)} coefficients, got shape {lam.shape}"
        )
    restrictions = _block_killing(algebra, grading, killing, tol)
    n = len(grading.m_indices)
    mat = np.zeros((n, n))
    pos = 0
    for coeff, sub in zip(lam, restrictions):
        w = sub.shape[0]
        mat[pos:pos + w, pos:pos + w] = coeff * sub
        pos += w
    return InvariantMetric(mat)


def active_triples(algebra: LieAlgebra, grading: BlockGrading, tol=None) -> list:
    """Unordered block triples (with repeats) coupled by the bracket.

    {a, b, c} is active when some bracket of a block-a vector with a
    block-b vector has a component in block c, in any arrangement.
    """
    tol = tol_or_default(tol)
    c = algebra.tensor
    scale = max(1.0, float(np.abs(c).max()))
    nb = len(grading.blocks)
    found = set()
    for a in range(nb):
        for b in range(a, nb):
            ia = list(grading.blocks[a])
            ib = list(grading.blocks[b])
            sub = c[np.ix_(ia, ib)]
            for d in range(nb):
                leak = float(np.abs(sub[:, :, list(grading.blocks[d])]).max())
                if leak > tol * scale:
                    found.add(tuple(sorted((a, b, d))))
    return sorted(found)


@dataclass(frozen=True, eq=False)
class CyclicSolutionFamily:
    """Solution cone of the cyclic condition on a block-metric family.

    constraints holds one row per active triple (coefficients of the
    lam variables); null_basis spans its kernel; dimension is the
    number of free parameters; feasible says whether the kernel meets
    the open positivity chamber, and sample is an interior point when
    it does.
    """

    algebra: LieAlgebra
    grading: BlockGrading
    triples: tuple
    constraints: np.ndarray
    null_basis: np.ndarray
    dimension: int
    feasible: bool
    sample: np.ndarray | None
    description: str

    def metric(self, lam, tol=None) -> InvariantMetric:
        return cyclic_metric(self.algebra, self.grading, lam, tol=tol)

    def decomposition(self) -> ReductiveDecomposition:
        return grading_decomposition(self.algebra, self.grading)


def solve_cyclic(algebra: LieAlgebra, grading: BlockGrading,
                 killing=None, tol=None) -> CyclicSolutionFamily:
    """Solve the cyclic condition over a graded block-metric family.

    Returns the linear constraints (sum of lam over each active triple,
    with multiplicity), a basis of their kernel, and the feasibility of
    the positivity chamber lam_a * eps_a > 0, decided by maximizing the
    chamber margin with a linear program.
    """
    tol = tol_or_default(tol)
    _block_killing(algebra, grading, killing, tol)
    nb = len(grading.blocks)
    triples = active_triples(algebra, grading, tol)

    rows = np.zeros((len(triples), nb))
    for r, trip in enumerate(triples):
        for a in trip:
            rows[r, a] += 1.0
    if len(triples):
        null = scipy.linalg.null_space(rows)
    else:
        null = np.eye(nb)
    r = null.shape[1]

    feasible = False
    sample = None
    if r:
        eps = np.asarray(grading.signs, dtype=float)
        # variables (x, t): maximize t with eps*(N x) in [t, 1]
        a_ub = np.zeros((2 * nb, r + 1))
        b_ub = np.zeros(2 * nb)
        chamber = eps[:, None] * null
        a_ub[:nb, :r] = -chamber
        a_ub[:nb, r] = 1.0
        a_ub[nb:, :r] = chamber
        b_ub[nb:] = 1.0
        bounds = [(None, None)] * r + [(None, 1.0)]
        res = scipy.optimize.linprog(
            np.append(np.zeros(r), -1.0), A_ub=a_ub, b_ub=b_ub,
            bounds=bounds, method="highs",
        )
        if not res.success:
            raise ConsistencyError(
                f"chamber linear program failed: {res.message}"
            )
        if res.x[-1] > 1e-6:
            feasible = True
            lam = null @ res.x[:r]
            if len(triples):
                worst = float(np.abs(rows @ lam).max())
                if worst > 1e-8 * max(1.0, float(np.abs(lam).max())):
                    raise ConsistencyError(
                        "chamber point violates the cyclic constraints"
                    )
            sample = lam

    if all(s == -1 for s in grading.signs):
        # with every block compact the coefficients are all negative, so
        # any active triple makes the sum strictly negative
        expected = len(triples) == 0
        if expected != feasible:
            raise ConsistencyError(
                "compact-case feasibility disagrees with the chamber program"
            )

    if not feasible:
        description = "empty"
        dimension = 0
    elif r == 1:
        description = "ray"
        dimension = 1
    else:
        description = f"{r}-parameter cone"
        dimension = r
    return CyclicSolutionFamily(
        algebra=algebra,
        grading=grading,
        triples=tuple(triples),
        constraints=_frozen(rows),
        null_basis=_frozen(null),
        dimension=dimension,
        feasible=feasible,
        sample=None if sample is None else _frozen(sample),
        description=description,
    )


@dataclass(frozen=True, eq=False)
class Order3Split:
    """Fixed-space / moved-space splitting of an order-3 automorphism.

    k_basis and m_basis have orthonormal columns spanning the fixed
    space of theta and its invariant complement; j_matrix is the
    complex structure (2 theta + 1)/sqrt(3) restricted to m, written in
    the m_basis coordinates.
    """

    theta: np.ndarray
    k_basis: np.ndarray
    m_basis: np.ndarray
    j_matrix: np.ndarray


def theta_split(algebra: LieAlgebra, theta, tol=None) -> Order3Split:
    """Split the algebra under an order-3 automorphism theta.

    Validates theta^3 = 1 and theta != 1 (NotOrder3) and that theta
    respects brackets (NotAutomorphism).  The fixed space k is the
    image of 1 + theta + theta^2, m its kernel; on m the normalized
    operator J = (2 theta + 1)/sqrt(3) squares to -1 and commutes with
    every ad of k, both of which are verified.
    """
    tol = tol_or_default(tol)
    theta = np.asarray(theta, dtype=float)
    dim = algebra.dim
    if theta.shape != (dim, dim):
        raise ParamOutOfRange(
            f"automorphism must be {dim}x{dim}, got {theta.shape}"
        )
    eye = np.eye(dim)
    scale = max(1.0, float(np.abs(theta).max()))
    if float(np.abs(theta @ theta @ theta - eye).max()) > max(tol, 1e-10) * scale ** 3:
        raise NotOrder3("theta^3 is not the identity")
    if float(np.abs(theta - eye).max()) <= max(tol, 1e-10) * scale:
        raise NotOrder3("theta is the identity; the splitting is trivial")

    c = algebra.tensor
    lhs = np.einsum("ai,bj,abk->ijk", theta, theta, c)
    rhs = np.einsum("ijl,kl->ijk", c, theta)
    defect = float(np.abs(lhs - rhs).max())
    if defect > max(tol, 1e-10) * max(1.0, float(np.abs(c).max())) * scale ** 2:
        raise NotAutomorphism(
            f"theta does not respect the bracket (defect {defect:.3e})"
        )

    phi = eye + theta + theta @ theta
    u, s, _ = np.linalg.svd(phi)
    rank = int(np.sum(s > max(np.sqrt(tol), 1e-8) * max(1.0, s[0] if len(s) else 1.0)))
    k_basis = u[:, :rank]
    m_basis = scipy.linalg.null_space(phi, rcond=max(np.sqrt(tol), 1e-8))
    if k_basis.shape[1] + m_basis.shape[1] != dim:
        raise ConsistencyError("fixed space and complement do not fill the algebra")

    j_matrix = m_basis.T @ ((2.0 * theta + eye) / np.sqrt(3.0)) @ m_basis
    nm = m_basis.shape[1]
    worst = float(np.abs(j_matrix @ j_matrix + np.eye(nm)).max()) if nm else 0.0
    for w in range(k_basis.shape[1]):
        ad = np.einsum("i,ijk->kj", k_basis[:, w], c)
        ad_m = m_basis.T @ ad @ m_basis
        worst = max(worst, float(np.abs(j_matrix @ ad_m - ad_m @ j_matrix).max()))
    if worst > max(tol, 1e-9) * max(1.0, scale, float(np.abs(c).max())):
        raise ConsistencyError(
            f"order-3 splitting identities failed (residual {worst:.3e})"
        )
    return Order3Split(
        theta=_frozen(theta),
        k_basis=_frozen(k_basis),
        m_basis=_frozen(m_basis),
        j_matrix=_frozen(j_matrix),
    )


def flat_section_witness(algebra: LieAlgebra, eigen_list, tol=None) -> tuple[int, int]:
    """First commuting pair among eigenvectors of a symmetric derivation.

    eigen_list holds (eigenvalue, vector) pairs, the vector given either
    as a basis index or a coefficient vector.  Pairs whose eigenvalues
    do not cancel must commute already; that is validated up front.
    Returns the lexicographically first (i, j) with [v_i, v_j] = 0.
    When every pair fails, NoWitness is raised, which can only happen
    with trace-free data (the eigenvalues sum to zero); anything else
    means the input was inconsistent.
    """
    tol = tol_or_default(tol)
    lams = []
    vecs = []
    for lam, vec in eigen_list:
        lams.append(float(lam))
        if np.isscalar(vec) or isinstance(vec, (int, np.integer)):
            v = np.zeros(algebra.dim)
            v[int(vec)] = 1.0
        else:
            v = np.asarray(vec, dtype=float)
            if v.shape != (algebra.dim,):
                raise ParamOutOfRange(
                    f"eigenvector shape {v.shape} does not match dim {algebra.dim}"
                )
        vecs.append(v)

    scale = max(1.0, float(np.abs(algebra.tensor).max()))
    norms = [max(1.0, float(np.linalg.norm(v))) for v in vecs]
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            mix = abs(lams[i] + lams[j]) * float(
                np.linalg.norm(algebra.bracket(vecs[i], vecs[j]))
            )
            if mix > max(tol, 1e-10) * scale * norms[i] * norms[j] * max(
                    1.0, abs(lams[i]) + abs(lams[j])):
                raise ParamOutOfRange(
                    f"eigen data is inconsistent: [v_{i}, v_{j}] does not vanish "
                    f"although the eigenvalues do not cancel"
                )

    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if float(np.linalg.norm(algebra.bracket(vecs[i], vecs[j]))) <= max(
                    tol, 1e-10) * scale * norms[i] * norms[j]:
                return (i, j)

    if abs(sum(lams)) <= max(tol, 1e-10) * max(
            1.0, max((abs(v) for v in lams), default=0.0)):
        raise NoWitness(
            "no commuting pair exists among the given eigenvectors"
        )
    raise ConsistencyError(
        "nonzero eigenvalue sum guarantees a commuting pair, but none was found"
    )
