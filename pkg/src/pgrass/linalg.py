"""Dense complex-matrix primitives.

Hermitian eigendecomposition with deterministic phases, Schatten norms,
polar decomposition, and Hermitian functional calculus.  Everything here
is a pure function of its inputs and safe to call concurrently.

Reconstruction residuals are bounded by c * tol * ||M|| with c = 10 * n
for an n x n input; in practice LAPACK delivers a few ulps.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    FUndefinedOnSpectrum,
    InvalidP,
    NonFinite,
    NotHermitian,
    Singular,
)
from .tolerances import scaled_tol


def as_complex_matrix(M):
    """Coerce to a 2-D complex ndarray, rejecting NaN/Inf entries."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={A.ndim}")
    if not np.all(np.isfinite(A)):
        raise NonFinite("matrix contains NaN or Inf entries")
    return A


def op_norm(M):
    """Operator (spectral) norm: the largest singular value."""
    A = as_complex_matrix(M)
    if min(A.shape) == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


@dataclass(frozen=True, eq=False)
class EigDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    values are real and ascending; vectors holds the corresponding
    orthonormal eigenvectors as columns, each with its first
    significant component rotated to be real positive.
    """

    values: np.ndarray
    vectors: np.ndarray


def _fix_phases(V):
    """Rotate each column so its first significant entry is real positive."""
    V = V.copy()
    absV = np.abs(V)
    thresh = absV.max(axis=0) * 1e-8
    for j in range(V.shape[1]):
        i0 = int(np.argmax(absV[:, j] > thresh[j]))
        piv = V[i0, j]
        if piv != 0:
            V[:, j] *= np.conj(piv) / abs(piv)
    return V


def hermitian_eig(M, tol=None):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    M : array_like
        Square complex matrix with ||M - M*|| <= tol-scale * ||M||.
    tol : float, optional
        Relative tolerance; defaults to the global policy.

    Returns
    -------
    EigDecomposition
        Ascending eigenvalues and phase-fixed orthonormal eigenvectors.
    """
    A = as_complex_matrix(M)
    n, m = A.shape
    if n != m:
        raise DimensionMismatch(f"expected square matrix, got {A.shape}")
    scale = op_norm(A)
    if op_norm(A - A.conj().T) > scaled_tol(n, scale, tol):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    H = 0.5 * (A + A.conj().T)
    vals, vecs = np.linalg.eigh(H)
    return EigDecomposition(values=vals, vectors=_fix_phases(vecs))


def schatten_norm(M, p):
    """Schatten p-norm (sum of p-th powers of singular values)^(1/p).

    p = inf is admitted and returns the operator norm, so a single entry
    point serves both the corner norms and the diagonal-block norms of
    the mixed norm.
    """
    A = as_complex_matrix(M)
    if p != np.inf and (not np.isfinite(p) or p < 1):
        raise InvalidP(f"p must be >= 1 or inf, got {p!r}")
    if min(A.shape) == 0:
        return 0.0
    s = np.linalg.svd(A, compute_uv=False)
    if p == np.inf:
        return float(s[0])
    if p == 1:
        return float(s.sum())
    if p == 2:
        return float(np.sqrt((s * s).sum()))
    top = float(s[0])
    if top == 0.0:
        return 0.0
    # Scale by the largest singular value so large p does not underflow.
    return float(top * (((s / top) ** p).sum()) ** (1.0 / p))


def polar(G, tol=None):
    """Right polar decomposition G = U R of an invertible matrix.

    Returns
    -------
    (U, R)
        U unitary, R = (G*G)^(1/2) positive definite.

    Raises
    ------
    Singular
        If the smallest singular value is below the scaled tolerance.
    """
    A = as_complex_matrix(G)
    n, m = A.shape
    if n != m:
        raise DimensionMismatch(f"polar factor needs a square matrix, got {A.shape}")
    W, s, Vh = np.linalg.svd(A)
    if s[-1] <= scaled_tol(n, s[0], tol):
        raise Singular(f"smallest singular value {s[-1]:.3e} below tolerance")
    U = W @ Vh
    R = (Vh.conj().T * s) @ Vh
    R = 0.5 * (R + R.conj().T)
    return U, R


def matfun_hermitian(M, f, tol=None):
    """Apply a scalar function to a Hermitian matrix via eigendecomposition.

    f may be real- or complex-valued (e.g. t -> exp(i t)); it is evaluated
    on each eigenvalue and must return finite values there.
    """
    eig = hermitian_eig(M, tol)
    try:
        fv = np.asarray([f(float(v)) for v in eig.values])
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise FUndefinedOnSpectrum(f"function failed on spectrum: {exc}") from exc
    if not np.all(np.isfinite(fv)):
        raise FUndefinedOnSpectrum("function returned NaN/Inf on an eigenvalue")
    V = eig.vectors
    return (V * fv) @ V.conj().T


# Below |t| < SINC_SERIES_CUTOFF the direct quotient sin(t)/t loses no
# accuracy yet, but the series avoids the 0/0 at the identity geodesic.
SINC_SERIES_CUTOFF = 1e-4


def sinc(t):
    """Cardinal sine sin(t)/t with sinc(0) = 1, series near the origin."""
    t = float(t)
    if abs(t) < SINC_SERIES_CUTOFF:
        t2 = t * t
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0
    return np.sin(t) / t
