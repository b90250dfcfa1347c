"""Spectral picture of a projection relative to the splitting.

A projection P = [[x, a], [a*, y]] satisfies x - x^2 = a a*,
y - y^2 = a* a and x a + a y = a.  Its nontrivial spectrum therefore
comes in pairs: each eigenvalue t of x away from {0, 1} equals
1/2 +- sqrt(1/4 - s^2) for a singular value s <= 1/2 of the corner a,
and 1 - t is an eigenvalue of y with the same multiplicity.  The
spectral picture collects the small eigenvalues (alphas, below 1/2),
the large ones (betas, from 1/2 up), the 0/1 ranks on both sides, and
the paired eigenvector systems.

Partner bases are chosen as normalized a* xi, which makes the
intertwining identity hold by construction; it is re-tested
independently in :func:`verify_pairing`.
"""

from dataclasses import dataclass, field

import numpy as np

from .blockop import BlockOperator, require_projection
from .errors import ClusterAmbiguity, DimensionMismatch, OutOfRange
from .linalg import hermitian_eig, op_norm
from .tolerances import CLUSTER_MERGE, TAU, cluster

# Eigenvalues within this absolute distance of 0 or 1 are absorbed into
# the N/N'/E1/E1' ranks (they are spectral projections, not sequence
# members); the default matches the global TAU.
BOUNDARY_ABSORB = TAU

# Values within this slack of 1/2 are assigned to the beta list, which
# owns the closed endpoint.
HALF_SLACK = 1e-12


def t_pair(s):
    """Eigenvalue pair t+ = 1/2 + sqrt(1/4 - s^2), t- = 1 - t+.

    s must be a corner singular value in [0, 1/2]; s = 1/2 collapses the
    pair to (1/2, 1/2).
    """
    s = float(s)
    if s < 0.0 or s > 0.5:
        raise OutOfRange(f"corner singular value must lie in [0, 1/2], got {s!r}")
    r = np.sqrt(max(0.25 - s * s, 0.0))
    return 0.5 + r, 0.5 - r


@dataclass(frozen=True, eq=False)
class SpectralPicture:
    """Eigenvalue/eigenvector data of a projection.

    alphas and betas are (value, multiplicity) pairs, strictly
    increasing; alphas lie in (0, 1/2), betas in [1/2, 1).  The paired
    bases satisfy x xi = alpha xi, y xi' = (1-alpha) xi', x eta = beta
    eta, y eta' = (1-beta) eta'.  The optional 0/1 eigenspace bases make
    a picture reconstruct its source projection exactly; rank-only
    pictures reconstruct a canonical representative instead.
    """

    alphas: tuple
    betas: tuple
    rank_e1: int
    rank_e1prime: int
    rank_n: int
    rank_nprime: int
    xi_basis: np.ndarray = field(default=None, repr=False)
    xiprime_basis: np.ndarray = field(default=None, repr=False)
    eta_basis: np.ndarray = field(default=None, repr=False)
    etaprime_basis: np.ndarray = field(default=None, repr=False)
    e1_basis: np.ndarray = field(default=None, repr=False)
    n_basis: np.ndarray = field(default=None, repr=False)
    e1prime_basis: np.ndarray = field(default=None, repr=False)
    nprime_basis: np.ndarray = field(default=None, repr=False)

    @classmethod
    def rank_only(cls, alphas, betas, rank_e1, rank_e1prime, rank_n, rank_nprime):
        """Picture without bases; reconstruct places blocks canonically."""
        return cls(
            alphas=tuple((float(v), int(m)) for v, m in alphas),
            betas=tuple((float(v), int(m)) for v, m in betas),
            rank_e1=int(rank_e1),
            rank_e1prime=int(rank_e1prime),
            rank_n=int(rank_n),
            rank_nprime=int(rank_nprime),
        )

    @property
    def has_bases(self):
        return self.xi_basis is not None

    @property
    def alpha_count(self):
        return sum(m for _, m in self.alphas)

    @property
    def beta_count(self):
        return sum(m for _, m in self.betas)

    def dims(self):
        """(dim H+, dim H-) implied by the bookkeeping."""
        pair = self.alpha_count + self.beta_count
        return (
            pair + self.rank_e1 + self.rank_n,
            pair + self.rank_e1prime + self.rank_nprime,
        )

    def to_json_dict(self):
        d = {
            "schema_version": 1,
            "kind": "spectral_picture",
            "alphas": [[v, m] for v, m in self.alphas],
            "betas": [[v, m] for v, m in self.betas],
            "rank_e1": self.rank_e1,
            "rank_e1prime": self.rank_e1prime,
            "rank_n": self.rank_n,
            "rank_nprime": self.rank_nprime,
        }
        return d


def _classify_clusters(eig, absorb):
    """Split clustered eigenvalues into (zero, alpha, beta, one) groups."""
    groups = cluster(eig.values)
    zero, one, alphas, betas = [], [], [], []
    for value, start, stop in groups:
        vecs = eig.vectors[:, start:stop]
        if abs(value) <= absorb:
            zero.append(vecs)
        elif abs(1.0 - value) <= absorb:
            one.append(vecs)
        elif value < 0.5 - HALF_SLACK:
            alphas.append((value, vecs))
        else:
            betas.append((value, vecs))
    hcat = lambda vs, n: np.hstack(vs) if vs else np.zeros((n, 0), dtype=complex)
    n = eig.vectors.shape[0]
    return hcat(zero, n), alphas, betas, hcat(one, n)


def _match(x_groups, y_pool, unused, side):
    """Pair x-eigenvalue groups with pool entries at 1 - value, equal mults.

    unused holds the still-available indices into y_pool and is shared
    between the alpha and beta passes (the boundary value 1/2 pairs with
    itself, so the two passes draw from one pool).
    """
    pairs = []
    for value, vecs in x_groups:
        target = 1.0 - value
        hit = None
        for i in unused:
            if abs(y_pool[i][0] - target) < CLUSTER_MERGE:
                hit = i
                break
        if hit is None:
            raise ClusterAmbiguity(
                f"x-eigenvalue {value!r} ({side}) has no partner "
                f"1 - value in the y spectrum"
            )
        yval, yvecs = y_pool[hit]
        if yvecs.shape[1] != vecs.shape[1]:
            raise ClusterAmbiguity(
                f"multiplicity mismatch at eigenvalue {value!r} ({side}): "
                f"{vecs.shape[1]} vs {yvecs.shape[1]}"
            )
        unused.remove(hit)
        pairs.append((value, vecs, yvecs))
    return pairs


def extract_picture(P, tol=None):
    """Extract the full spectral picture of a projection.

    Raises NotAProjection if P fails its defining relations, and
    ClusterAmbiguity when an eigenvalue gap or a pairing mismatch falls
    below the declared resolution.
    """
    require_projection(P, tol, "P")
    absorb = max(tol if tol is not None else BOUNDARY_ABSORB, 1e-12)
    ex = hermitian_eig(P.a11, tol)
    ey = hermitian_eig(P.a22, tol)
    a = P.a12

    n_basis, x_alpha, x_beta, e1_basis = _classify_clusters(ex, absorb)
    nprime_basis, y_alpha, y_beta, e1prime_basis = _classify_clusters(ey, absorb)

    # y's eigenvalues in (1/2, 1) partner the alphas; in (0, 1/2] the
    # betas.  One shared pool covers the boundary value 1/2, which pairs
    # with itself.
    y_pool = y_alpha + y_beta
    unused = list(range(len(y_pool)))
    alpha_pairs = _match(x_alpha, y_pool, unused, "alpha")
    beta_pairs = _match(x_beta, y_pool, unused, "beta")
    if unused:
        raise ClusterAmbiguity("unpaired nontrivial eigenvalues in the y spectrum")

    dp, dm = P.splitting.dim_plus, P.splitting.dim_minus

    def paired_bases(pairs):
        vals, mults, xs, xps = [], [], [], []
        for value, vecs, _ in pairs:
            lam = np.sqrt(value - value * value)
            vals.append(value)
            mults.append(vecs.shape[1])
            xs.append(vecs)
            xps.append((a.conj().T @ vecs) / lam)
        hcat = lambda vs, n: np.hstack(vs) if vs else np.zeros((n, 0), dtype=complex)
        spectrum = tuple(zip(vals, mults))
        return spectrum, hcat(xs, dp), hcat(xps, dm)

    alphas, xi, xiprime = paired_bases(alpha_pairs)
    betas, eta, etaprime = paired_bases(beta_pairs)

    pic = SpectralPicture(
        alphas=alphas,
        betas=betas,
        rank_e1=e1_basis.shape[1],
        rank_e1prime=e1prime_basis.shape[1],
        rank_n=n_basis.shape[1],
        rank_nprime=nprime_basis.shape[1],
        xi_basis=xi,
        xiprime_basis=xiprime,
        eta_basis=eta,
        etaprime_basis=etaprime,
        e1_basis=e1_basis,
        n_basis=n_basis,
        e1prime_basis=e1prime_basis,
        nprime_basis=nprime_basis,
    )
    dims = pic.dims()
    if dims != (dp, dm):
        raise ClusterAmbiguity(
            f"dimension bookkeeping {dims} does not match splitting ({dp}, {dm})"
        )
    return pic


def _canonical_bases(pic, splitting):
    """Bases for reconstruction: stored ones, or standard coordinates."""
    dp, dm = splitting.dim_plus, splitting.dim_minus
    ka, kb = pic.alpha_count, pic.beta_count

    if pic.has_bases:
        if pic.e1_basis is None or pic.n_basis is None or (
            pic.e1prime_basis is None or pic.nprime_basis is None
        ):
            raise DimensionMismatch(
                "picture has paired bases but no 0/1 eigenspace bases; "
                "use a rank-only picture or provide all of them"
            )
        plus = [pic.xi_basis, pic.eta_basis, pic.e1_basis, pic.n_basis]
        minus = [pic.xiprime_basis, pic.etaprime_basis, pic.e1prime_basis, pic.nprime_basis]
        return plus, minus

    def build(side_dim, counts):
        # Consecutive identity columns in declared order.
        eye = np.eye(side_dim, dtype=complex)
        out, used = [], 0
        for cnt in counts:
            out.append(eye[:, used : used + cnt])
            used += cnt
        return out

    plus = build(dp, [ka, kb, pic.rank_e1, pic.rank_n])
    minus = build(dm, [ka, kb, pic.rank_e1prime, pic.rank_nprime])
    return plus, minus


def reconstruct(pic, splitting):
    """Assemble the projection a spectral picture describes.

    With stored bases this reproduces the source projection; with
    rank-only data it places the paired blocks on consecutive standard
    coordinates (alphas, betas, E1/E1', N/N') and returns the canonical
    representative of the picture.
    """
    dp, dm = splitting.dim_plus, splitting.dim_minus
    expected = pic.dims()
    if expected != (dp, dm):
        raise DimensionMismatch(
            f"picture implies dims {expected}, splitting is ({dp}, {dm})"
        )
    (xi, eta, e1b, nb), (xip, etap, e1pb, npb) = _canonical_bases(pic, splitting)

    def repeated(spectrum):
        vals = [v for v, m in spectrum for _ in range(m)]
        return np.asarray(vals, dtype=float)

    av = repeated(pic.alphas)
    bv = repeated(pic.betas)
    lam = np.sqrt(av - av * av) if av.size else av
    mu = np.sqrt(bv - bv * bv) if bv.size else bv

    x = (xi * av) @ xi.conj().T + (eta * bv) @ eta.conj().T + e1b @ e1b.conj().T
    y = (
        (xip * (1.0 - av)) @ xip.conj().T
        + (etap * (1.0 - bv)) @ etap.conj().T
        + e1pb @ e1pb.conj().T
    )
    a = (xi * lam) @ xip.conj().T + (eta * mu) @ etap.conj().T
    return BlockOperator(splitting, x, a, a.conj().T, y)


@dataclass(frozen=True)
class PairingEntry:
    """Per-eigenvalue record of the pairing check (keyed by the y-eigenvalue)."""

    y_value: float
    multiplicity: int
    partner_multiplicity: int
    intertwine_residual: float
    min_singular_value: float
    onto_residual: float


@dataclass(frozen=True)
class PairingReport:
    entries: tuple
    rank_a: int
    expected_rank_a: int
    max_residual: float
    ok: bool


def verify_pairing(P, tol=None):
    """Check the multiplicity pairing and intertwining identities.

    For each eigenvalue lambda of y away from {0, 1}: a maps the
    lambda-eigenspace of y injectively onto the (1-lambda)-eigenspace of
    x, and a Proj_lambda(y) = Proj_{1-lambda}(x) a.  Also checks
    N(a) = N(y) (+) N(y - 1) by rank comparison.
    """
    require_projection(P, tol, "P")
    absorb = max(tol if tol is not None else BOUNDARY_ABSORB, 1e-12)
    pic = extract_picture(P, tol)
    a = P.a12
    dm = P.splitting.dim_minus

    bound = max(100.0 * absorb, 1e-10)
    entries = []

    def check(y_value, yvecs, xvecs):
        proj_y = yvecs @ yvecs.conj().T
        proj_x = xvecs @ xvecs.conj().T
        inter = op_norm(a @ proj_y - proj_x @ a)
        image = a @ yvecs
        svals = np.linalg.svd(image, compute_uv=False) if image.size else np.array([0.0])
        onto = op_norm(image - proj_x @ image)
        entries.append(
            PairingEntry(
                y_value=float(y_value),
                multiplicity=yvecs.shape[1],
                partner_multiplicity=xvecs.shape[1],
                intertwine_residual=float(inter),
                min_singular_value=float(svals[-1]),
                onto_residual=float(onto),
            )
        )

    # Re-derive eigenspaces of x and y directly so the check does not
    # reuse the aligned bases the picture constructed.
    ex = hermitian_eig(P.a11, tol)
    ey = hermitian_eig(P.a22, tol)
    _, yx_alpha, yx_beta, _ = _classify_clusters(ey, absorb)
    _, xx_alpha, xx_beta, _ = _classify_clusters(ex, absorb)
    x_groups = xx_alpha + xx_beta
    for y_value, yvecs in yx_alpha + yx_beta:
        target = 1.0 - y_value
        partners = [
            vecs for v, vecs in x_groups if abs(v - target) < CLUSTER_MERGE
        ]
        xvecs = partners[0] if partners else np.zeros((P.splitting.dim_plus, 0))
        check(y_value, yvecs, xvecs)

    svals_a = np.linalg.svd(a, compute_uv=False) if min(a.shape) else np.array([])
    # A corner value s counts only if the eigenvalue it induces,
    # t- ~ s^2, survives the same 0/1 absorption the picture applied.
    svals_a = np.clip(svals_a, 0.0, 0.5)
    rank_a = int(sum(1 for s in svals_a if t_pair(s)[1] > absorb))
    expected = dm - pic.rank_nprime - pic.rank_e1prime
    max_res = max(
        [e.intertwine_residual for e in entries] + [e.onto_residual for e in entries],
        default=0.0,
    )
    ok = (
        rank_a == expected
        and max_res <= bound
        and all(e.multiplicity == e.partner_multiplicity for e in entries)
    )
    return PairingReport(
        entries=tuple(entries),
        rank_a=rank_a,
        expected_rank_a=expected,
        max_residual=float(max_res),
        ok=ok,
    )


def tail_halving_exponent(s_exponent):
    """Tail exponent of t- = 1/2 - sqrt(1/4 - s^2) for s_n ~ n^(-g).

    Near the origin t-(s) = s^2 + O(s^4), so the induced eigenvalue tail
    decays with exponent 2 g; membership of s in l^p is therefore
    equivalent to membership of t- in l^(p/2).
    """
    g = float(s_exponent)
    if g <= 0:
        raise OutOfRange("tail exponent must be positive")
    return 2.0 * g
