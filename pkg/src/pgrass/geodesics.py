"""Geodesics between projections and the Finsler distance bounds.

A curve delta(t) = exp(i t X) P exp(-i t X) with X Hermitian,
P-codiagonal and ||X|| <= pi/2 reaches every projection Q whose
intersection dimensions match (dim R(P)&N(Q) = dim N(P)&R(Q)); its
p-length ||X||_p realizes the geodesic distance d_p(P, Q).

Because X is P-codiagonal, [P, exp(i X)] = i sinc(X) [P, X], and since
sinc maps [-pi/2, pi/2] into [2/pi, 1] this pins the two-sided bound
(2/pi) d_p <= ||P - Q||_p <= d_p.
"""

from dataclasses import dataclass, field

import numpy as np

from .blockop import BlockOperator, norm_infty_p, require_projection
from .errors import NoGeodesic
from .halmos import halmos_decompose
from .linalg import hermitian_eig, matfun_hermitian, op_norm, schatten_norm, sinc
from .tolerances import scaled_tol


@dataclass(frozen=True, eq=False)
class GeodesicSpec:
    """Endpoint projection P and the Hermitian, P-codiagonal exponent X.

    pi_half_pairs counts inserted angle-pi/2 blocks; when positive the
    minimal geodesic is not unique (minimality still holds).
    """

    P: BlockOperator
    X: np.ndarray = field(repr=False)
    pi_half_pairs: int = 0

    @property
    def unique(self):
        return self.pi_half_pairs == 0


def build_geodesic(P, Q, tol=None):
    """Exponent X with exp(iX) P exp(-iX) = Q, ||X|| <= pi/2.

    On the generic part of the pair, X is assembled from the principal
    angles; matched R(P)&N(Q) / N(P)&R(Q) directions receive angle-pi/2
    blocks.  Raises NoGeodesic when those intersection dimensions
    differ (no such exponent exists at this scale).
    """
    P._check_same(Q)
    require_projection(P, tol, "P")
    require_projection(Q, tol, "Q")
    n = P.splitting.total

    # Decompose with P as the reference so the generic frame shows
    # P = diag(1, 0) blocks and Q = the angle matrix.
    D = halmos_decompose(Q, P, tol)
    # In D's labeling: dim_01 = N(Q)&R(P), dim_10 = R(Q)&N(P).
    if D.dim_01 != D.dim_10:
        raise NoGeodesic(
            f"dim R(P)&N(Q) = {D.dim_01} differs from dim N(P)&R(Q) = {D.dim_10}"
        )
    off = D.dim_11 + D.dim_00
    B10 = D.basis[:, off : off + D.dim_10]
    B01 = D.basis[:, off + D.dim_10 : off + D.dim_10 + D.dim_01]
    U, V = D.generic_columns()  # u_i in R(P), v_i in N(P)
    gamma = D.angle_array()

    X = np.zeros((n, n), dtype=complex)
    for i in range(gamma.size):
        u, v = U[:, i : i + 1], V[:, i : i + 1]
        X += gamma[i] * (1j * u @ v.conj().T - 1j * v @ u.conj().T)
    for j in range(D.dim_01):
        r = B01[:, j : j + 1]  # in R(P), orthogonal to R(Q)
        s = B10[:, j : j + 1]  # in R(Q), orthogonal to R(P)
        X += (np.pi / 2.0) * (1j * r @ s.conj().T - 1j * s @ r.conj().T)
    X = 0.5 * (X + X.conj().T)
    return GeodesicSpec(P=P, X=X, pi_half_pairs=int(D.dim_01))


def geodesic_eval(g, t):
    """delta(t) = exp(i t X) P exp(-i t X)."""
    if t == 0.0:
        return g.P
    E = matfun_hermitian(g.X, lambda v: np.exp(1j * t * v))
    D = E @ g.P.dense() @ E.conj().T
    return BlockOperator.from_dense(D, g.P.splitting)


def codiagonal_residual(g):
    """Norm of the P-diagonal part of X (should vanish)."""
    Pd = g.P.dense()
    Pc = np.eye(Pd.shape[0]) - Pd
    return max(op_norm(Pd @ g.X @ Pd), op_norm(Pc @ g.X @ Pc))


def sinc_identity_residual(g):
    """|| [P, exp(iX)] - i sinc(X) [P, X] || (operator norm)."""
    Pd = g.P.dense()
    E = matfun_hermitian(g.X, lambda v: np.exp(1j * v))
    lhs = Pd @ E - E @ Pd
    S = matfun_hermitian(g.X, sinc)
    rhs = 1j * S @ (Pd @ g.X - g.X @ Pd)
    return op_norm(lhs - rhs)


@dataclass(frozen=True)
class DistanceReport:
    """Geodesic distance d_p = ||X||_p against the norm distances.

    ratio = ||P - Q||_p / d_p lies in [2/pi, 1]; the mixed norm is
    bounded by 4 ||P - Q||_p.  ratio is None for coincident endpoints.
    """

    p: float
    d_p: float
    norm_p: float
    norm_inf_p: float
    ratio: float
    lower_ok: bool
    upper_ok: bool
    mixed_ok: bool


def distance_report(P, Q, p, tol=None):
    """Build the geodesic and compare d_p with ||P-Q||_p and ||P-Q||inf,p."""
    g = build_geodesic(P, Q, tol)
    n = P.splitting.total
    t = scaled_tol(n, 1.0, tol)
    d_p = schatten_norm(g.X, p)
    diff = P - Q
    norm_p = schatten_norm(diff.dense(), p)
    norm_ip = norm_infty_p(diff, p)
    ratio = norm_p / d_p if d_p > t else None
    return DistanceReport(
        p=float(p),
        d_p=d_p,
        norm_p=norm_p,
        norm_inf_p=norm_ip,
        ratio=ratio,
        lower_ok=(2.0 / np.pi) * d_p - t <= norm_p,
        upper_ok=norm_p <= d_p + t,
        mixed_ok=norm_ip <= 4.0 * norm_p + t,
    )


def curve_spectra(g, ts):
    """Eigenvalues of the compressed block P(t)_{11} along the curve.

    Returns rows (t, eigenvalues of delta(t) as a full matrix), used by
    the CSV/figure emitters to picture the spectral flow.
    """
    rows = []
    for t in ts:
        Pt = geodesic_eval(g, float(t))
        vals = hermitian_eig(Pt.a11).values
        rows.append((float(t), vals))
    return rows
