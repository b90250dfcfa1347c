"""Constructors for the three example families.

* Hardy: projections onto phi * H^2 for a nowhere-vanishing circle
  symbol phi, truncated to the mode window -N..N.  The monomial case
  z^k is an exact mode shift with integer index -k; general symbols are
  orthonormalized spanning sets, with the winding number computed by
  phase accumulation (at finite scale the trace of the truncation pins
  the top degree rather than the winding, so both are reported).

* Fourier: the conjugated coordinate projection P = F* diag(t) F on a
  cyclic group, reported through its trace norm against E+ and the
  (generically trivial) subspace intersections.  No class label is
  emitted: essential membership is an infinite-dimensional statement a
  finite DFT cannot witness.

* Idempotent range: the explicit orthogonal projection onto the range
  of the adjoint of E = [[1, B], [0, 0]], assembled entrywise from B.
"""

from dataclasses import dataclass

import numpy as np

from .blockop import BlockOperator, Splitting, commutator_with_eplus
from .errors import (
    DimensionMismatch,
    RangeViolation,
    SymbolVanishes,
    TruncationTooCoarse,
)
from .linalg import as_complex_matrix, schatten_norm
from .models import ClassLabel, index_of
from .tolerances import SUBSPACE_ASSIGN

# Minimum modulus of a usable symbol on the sampling grid.
SYMBOL_FLOOR = 1e-9


@dataclass(frozen=True)
class HardyConfig:
    """Truncated Hardy-space setup: modes -N..N, symbol z^k or a
    coefficient list.

    phi lists coefficients for powers min_power, min_power + 1, ...;
    exactly one of k and phi is given.
    """

    modes: int
    k: int = None
    phi: tuple = None
    min_power: int = 0

    def __post_init__(self):
        if (self.k is None) == (self.phi is None):
            raise RangeViolation("give exactly one of k (monomial) or phi")
        if self.modes < 1:
            raise RangeViolation("modes must be >= 1")
        if self.k is not None and abs(self.k) > self.modes:
            raise RangeViolation(f"|k| = {abs(self.k)} exceeds modes = {self.modes}")
        if self.phi is not None:
            coeffs = tuple(complex(c) for c in self.phi)
            if not any(coeffs):
                raise RangeViolation("phi has no nonzero coefficient")
            object.__setattr__(self, "phi", coeffs)

    def degree_range(self):
        """(lowest, highest) power carried by the symbol."""
        if self.k is not None:
            return self.k, self.k
        nz = [i for i, c in enumerate(self.phi) if c != 0]
        return self.min_power + nz[0], self.min_power + nz[-1]


def _mode_permutation(N):
    """Global mode order -N..N mapped to splitting order [0..N] + [-N..-1]."""
    modes = list(range(-N, N + 1))
    plus = [i for i, m in enumerate(modes) if m >= 0]
    minus = [i for i, m in enumerate(modes) if m < 0]
    return np.asarray(plus + minus, dtype=int)


def winding_number(cfg, grid=None):
    """Winding of the symbol around 0 by phase accumulation.

    Uses a 4N-point grid by default; raises SymbolVanishes if the
    symbol's modulus dips to the floor anywhere on the grid.
    """
    if cfg.k is not None:
        return cfg.k
    n_grid = int(grid) if grid else max(4 * cfg.modes, 64)
    theta = 2.0 * np.pi * np.arange(n_grid + 1) / n_grid
    z = np.exp(1j * theta)
    vals = np.zeros_like(z)
    for i, c in enumerate(cfg.phi):
        vals += c * z ** (cfg.min_power + i)
    if np.abs(vals).min() <= SYMBOL_FLOOR:
        raise SymbolVanishes(
            f"symbol modulus reaches {np.abs(vals).min():.3e} on the grid"
        )
    phases = np.angle(vals)
    increments = np.diff(phases)
    increments = (increments + np.pi) % (2.0 * np.pi) - np.pi
    w = increments.sum() / (2.0 * np.pi)
    return int(round(w))


def hardy_projection(cfg):
    """Projection onto the truncated span of {phi z^j} and its expected class.

    Returns (P, expected, info) where expected is D3 with index
    -winding(phi) and info records the truncation's own trace index
    (exact for monomials; for general symbols the finite window pins
    -deg+(phi) instead, and info flags the disagreement).
    """
    N = cfg.modes
    dim = 2 * N + 1
    sp = Splitting(N + 1, N)
    perm = _mode_permutation(N)
    d_lo, d_hi = cfg.degree_range()
    if d_lo < -N or d_hi > N:
        raise RangeViolation(
            f"symbol powers {d_lo}..{d_hi} leave the mode window -{N}..{N}"
        )

    if cfg.k is not None:
        # Exact mode shift: R(P) spans modes k..N.
        diag = np.array([1.0 if m >= cfg.k else 0.0 for m in range(-N, N + 1)])
        dense = np.diag(diag)[np.ix_(perm, perm)]
        P = BlockOperator.from_dense(dense, sp)
        w = cfg.k
        basis_dim = N - cfg.k + 1
    else:
        w = winding_number(cfg)
        j_max = N - d_hi
        cols = np.zeros((dim, j_max + 1), dtype=complex)
        for j in range(j_max + 1):
            for i, c in enumerate(cfg.phi):
                power = cfg.min_power + i + j
                cols[power + N, j] = c
        U, svals, _ = np.linalg.svd(cols, full_matrices=False)
        rank = int((svals > 1e-10 * svals[0]).sum())
        if rank < cols.shape[1]:
            raise TruncationTooCoarse(
                f"spanning set has numerical rank {rank} < {cols.shape[1]}"
            )
        V = U[:, :rank]
        dense = (V @ V.conj().T)[np.ix_(perm, perm)]
        P = BlockOperator.from_dense(dense, sp)
        basis_dim = rank

    expected = ClassLabel("D3", -w)
    trace_index = index_of(P, BlockOperator.eplus(sp))
    info = {
        "winding": w,
        "trace_index": trace_index,
        "subspace_dim": basis_dim,
        "trace_matches_expected": trace_index == -w,
    }
    return P, expected, info


@dataclass(frozen=True)
class FourierConfig:
    """Cyclic-group Fourier pair: E+ on the coordinate set S, P on the
    frequency set T."""

    n: int
    s_mask: tuple
    t_mask: tuple

    def __post_init__(self):
        s = tuple(bool(b) for b in self.s_mask)
        t = tuple(bool(b) for b in self.t_mask)
        if len(s) != self.n or len(t) != self.n:
            raise DimensionMismatch("masks must have length n")
        if not 1 <= sum(s) <= self.n - 1 or not 1 <= sum(t) <= self.n - 1:
            raise RangeViolation("mask supports must be proper and nonempty")
        object.__setattr__(self, "s_mask", s)
        object.__setattr__(self, "t_mask", t)


@dataclass(frozen=True)
class FourierReport:
    trace_norm_eplus_p: float
    dim_range_range: int
    dim_range_null: int
    dim_null_range: int
    commutator_identity_residual: float


def _intersection_dims(P, splitting):
    """Counts of principal-angle cosines pinned at 1 for the three
    intersections tested against E+ (report-style; no ambiguity raise)."""
    from .linalg import hermitian_eig

    dp = splitting.dim_plus
    n = splitting.total
    eig = hermitian_eig(P.dense())
    keep = eig.values > 0.5
    W_r, W_n = eig.vectors[:, keep], eig.vectors[:, ~keep]
    eye = np.eye(n, dtype=complex)
    U_p, U_m = eye[:, :dp], eye[:, dp:]

    def dim_cap(A, B):
        if min(A.shape[1], B.shape[1]) == 0:
            return 0
        s = np.linalg.svd(A.conj().T @ B, compute_uv=False)
        return int((s >= 1.0 - SUBSPACE_ASSIGN).sum())

    return (
        dim_cap(U_p, W_r),  # R(E+) & R(P)
        dim_cap(U_p, W_n),  # R(E+) & N(P)
        dim_cap(U_m, W_r),  # N(E+) & R(P)
    )


def fourier_projection(cfg):
    """Conjugated coordinate projection P = F* diag(t_mask) F.

    The splitting puts the S coordinates first.  The report carries
    ||E+ P||_1, the three intersection dimensions, and the residual of
    [E+, P] = E+ P - (E+ P)* on the off-diagonal corners.
    """
    n = cfg.n
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    F = np.exp(-2j * np.pi * j * k / n) / np.sqrt(n)
    P_global = F.conj().T @ (np.asarray(cfg.t_mask, dtype=float)[:, None] * F)

    order = [i for i in range(n) if cfg.s_mask[i]] + [
        i for i in range(n) if not cfg.s_mask[i]
    ]
    order = np.asarray(order, dtype=int)
    sp = Splitting(sum(cfg.s_mask), n - sum(cfg.s_mask))
    P = BlockOperator.from_dense(P_global[np.ix_(order, order)], sp)

    ep = BlockOperator.eplus(sp)
    trace_norm = schatten_norm((ep @ P).dense(), 1)
    d_rr, d_rn, d_nr = _intersection_dims(P, sp)

    # [E+, P] = -[P, E+] equals E+ P - (E+ P)* because P is self-adjoint.
    comm = -commutator_with_eplus(P).dense()
    ep_p = (ep @ P).dense()
    residual = np.abs(comm - (ep_p - ep_p.conj().T)).max()
    report = FourierReport(
        trace_norm_eplus_p=float(trace_norm),
        dim_range_range=d_rr,
        dim_range_null=d_rn,
        dim_null_range=d_nr,
        commutator_identity_residual=float(residual),
    )
    return P, report


def idempotent_range_projection(B):
    """Orthogonal projection onto R(E*) for the idempotent E = [[1, B], [0, 0]].

    Assembled from the closed form
    [[(1 + B B*)^-1,      B (1 + B* B)^-1],
     [B* (1 + B B*)^-1,   B* B (1 + B* B)^-1]];
    the corner's singular values are s / (1 + s^2) over singular values
    s of B.  Expected class: D3 with index 0.
    """
    Bm = as_complex_matrix(B)
    L, L2 = Bm.shape
    if L != L2:
        raise DimensionMismatch("B must be square")
    inv_bbs = np.linalg.inv(np.eye(L) + Bm @ Bm.conj().T)
    inv_bsb = np.linalg.inv(np.eye(L) + Bm.conj().T @ Bm)
    P = BlockOperator(
        Splitting(L, L),
        inv_bbs,
        Bm @ inv_bsb,
        Bm.conj().T @ inv_bbs,
        Bm.conj().T @ Bm @ inv_bsb,
    )
    return P, ClassLabel("D3", 0)
