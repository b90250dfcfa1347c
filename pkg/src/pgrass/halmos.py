"""Halmos decomposition of a pair of projections.

Given projections P and Q (Q defaults to E+), the space splits into the
four intersections R(P)&R(Q), N(P)&N(Q), R(P)&N(Q), N(P)&R(Q) plus a
generic part of even dimension 2m.  On the generic part there is a frame
in which Q looks like [[1, 0], [0, 0]] and P like
[[C^2, C S], [C S, S^2]] with C = cos(Gamma), S = sin(Gamma) for the
principal-angle operator Gamma with spectrum in (0, pi/2).

The commutator [Q, P] vanishes on the intersections and has singular
values cos(g) sin(g), each twice, on the generic part, which gives the
closed form for its Schatten norms.
"""

from dataclasses import dataclass, field

import numpy as np

from .blockop import BlockOperator, require_projection
from .errors import InvalidP, ToleranceBreakdown
from .linalg import hermitian_eig
from .tolerances import SUBSPACE_AMBIG, SUBSPACE_ASSIGN, cluster


@dataclass(frozen=True, eq=False)
class HalmosDecomposition:
    """Five-part decomposition of the pair (P, Q).

    dim_11 = dim R(P)&R(Q), dim_00 = dim N(P)&N(Q),
    dim_10 = dim R(P)&N(Q), dim_01 = dim N(P)&R(Q).

    angles are (gamma, multiplicity) pairs, strictly increasing in
    (0, pi/2).  basis is unitary; its columns order the intersections
    (11, 00, 10, 01) and then the generic part as u_1..u_m, v_1..v_m
    with u_i in R(Q), v_i in N(Q); in that frame Q = diag(1, 0) blocks
    and P is the angle matrix.
    """

    dim_11: int
    dim_00: int
    dim_10: int
    dim_01: int
    generic_half_dim: int
    angles: tuple
    basis: np.ndarray = field(repr=False)

    def angle_array(self):
        """Angles expanded with multiplicity, ascending."""
        return np.asarray([g for g, m in self.angles for _ in range(m)], dtype=float)

    def generic_columns(self):
        """(U, V): the u_i and v_i columns of the basis."""
        off = self.dim_11 + self.dim_00 + self.dim_10 + self.dim_01
        m = self.generic_half_dim
        return self.basis[:, off : off + m], self.basis[:, off + m : off + 2 * m]


def _range_nullspace_bases(P, tol):
    """Orthonormal bases of R(P) and N(P) from the eigendecomposition."""
    eig = hermitian_eig(P.dense(), tol)
    keep = eig.values > 0.5
    return eig.vectors[:, keep], eig.vectors[:, ~keep]


def halmos_decompose(P, Q=None, tol=None):
    """Decompose the pair (P, Q) into intersections plus generic part.

    Q defaults to E+ for P's splitting.  Raises ToleranceBreakdown when
    a principal-angle cosine falls in the declared ambiguity band near
    0 or 1, where assignment to an intersection is unreliable.
    """
    if Q is None:
        Q = BlockOperator.eplus(P.splitting)
    P._check_same(Q)
    require_projection(P, tol, "P")
    require_projection(Q, tol, "Q")
    n = P.splitting.total

    if Q is not None and _is_eplus(Q):
        dp = Q.splitting.dim_plus
        eye = np.eye(n, dtype=complex)
        U_q, N_q = eye[:, :dp], eye[:, dp:]
    else:
        U_q, N_q = _range_nullspace_bases(Q, tol)
    W_p, _ = _range_nullspace_bases(P, tol)

    r_q, r_p = U_q.shape[1], W_p.shape[1]
    M = U_q.conj().T @ W_p
    A, svals, Bh = np.linalg.svd(M, full_matrices=True)
    # Pad implicit zero singular values on the larger side.
    s_full_left = np.concatenate([svals, np.zeros(max(r_q - svals.size, 0))])
    s_full_right = np.concatenate([svals, np.zeros(max(r_p - svals.size, 0))])

    def assign(c):
        dev0, dev1 = 1.0 - c, c
        if dev0 < SUBSPACE_ASSIGN:
            return "one"
        if dev1 < SUBSPACE_ASSIGN:
            return "zero"
        if dev0 < SUBSPACE_AMBIG or dev1 < SUBSPACE_AMBIG:
            raise ToleranceBreakdown(
                f"principal-angle cosine {c!r} within the ambiguity band "
                f"of 0 or 1; intersection assignment unreliable"
            )
        return "generic"

    m11, m10, m01 = [], [], []
    gen_u, gen_v, gen_angles = [], [], []
    for j in range(max(r_q, r_p)):
        w = W_p @ Bh[j, :].conj() if j < r_p else None
        u = U_q @ A[:, j] if j < r_q else None
        c = float(np.clip(svals[j], 0.0, 1.0)) if j < svals.size else 0.0
        kind = assign(c)
        if kind == "one":
            m11.append(u)
        elif kind == "zero":
            if w is not None:
                m10.append(w)  # in R(P), orthogonal to R(Q)
            if u is not None:
                m01.append(u)  # in R(Q), orthogonal to R(P)
        else:
            s = float(np.sqrt(1.0 - c * c))
            v = (w - c * u) / s
            gen_u.append(u)
            gen_v.append(v)
            gen_angles.append(float(np.arccos(c)))

    def hcat(cols):
        return (
            np.stack(cols, axis=1) if cols else np.zeros((n, 0), dtype=complex)
        )

    B11, B10, B01 = hcat(m11), hcat(m10), hcat(m01)
    GU, GV = hcat(gen_u), hcat(gen_v)

    # Sort generic pairs by ascending angle, then group multiplicities.
    order = np.argsort(gen_angles) if gen_angles else np.array([], dtype=int)
    GU, GV = GU[:, order], GV[:, order]
    gamma = np.asarray(gen_angles, dtype=float)[order]
    groups = cluster(gamma) if gamma.size else []
    angles = tuple((val, stop - start) for val, start, stop in groups)

    # N(P) & N(Q) is whatever is orthogonal to everything collected.
    collected = np.hstack([B11, B10, B01, GU, GV])
    B00 = _orthogonal_complement(collected, n)

    basis = np.hstack([B11, B00, B10, B01, GU, GV])
    return HalmosDecomposition(
        dim_11=B11.shape[1],
        dim_00=B00.shape[1],
        dim_10=B10.shape[1],
        dim_01=B01.shape[1],
        generic_half_dim=GU.shape[1],
        angles=angles,
        basis=basis,
    )


def _is_eplus(Q):
    dp, dm = Q.splitting.dim_plus, Q.splitting.dim_minus
    return (
        np.array_equal(Q.a11, np.eye(dp))
        and not Q.a12.any()
        and not Q.a21.any()
        and not Q.a22.any()
    )


def _orthogonal_complement(cols, n):
    """Orthonormal basis of the orthogonal complement of the column span."""
    k = cols.shape[1]
    if k == 0:
        return np.eye(n, dtype=complex)
    if k >= n:
        return np.zeros((n, 0), dtype=complex)
    U, svals, _ = np.linalg.svd(cols, full_matrices=True)
    rank = int((svals > 1e-12 * max(1.0, svals[0])).sum())
    return U[:, rank:]


def commutator_norm_via_angles(H, p):
    """Schatten p-norm of [Q, P] from the principal angles alone.

    Each cos(g) sin(g) appears twice among the singular values of the
    commutator, hence the 2^(1/p) prefactor; the intersections
    contribute nothing.
    """
    if p != np.inf and (not np.isfinite(p) or p < 1):
        raise InvalidP(f"p must be >= 1 or inf, got {p!r}")
    gamma = H.angle_array()
    if gamma.size == 0:
        return 0.0
    cs = np.cos(gamma) * np.sin(gamma)
    if p == np.inf:
        return float(cs.max())
    return float(2.0 ** (1.0 / p) * ((cs**p).sum()) ** (1.0 / p))
