"""Symbolic projection models and the nine-class classification.

A model records the spectral picture of a projection with finite data
plus infinite-tail flags: the small eigenvalues (alpha side), the large
ones (beta side, stored as 1 - beta so both tails decrease to 0), and
the four 0/1 ranks e1, e1p, n, np, each a nonnegative integer or
infinity.  Class verdicts are decided from these flags alone, never
from matrices: finite matrices cannot witness essential spectra.
Materialization builds exact finite projections for cross-checks.

The nine classes: D1 (finite rank), D2 (finite corank), D3/D4 (the
restricted Grassmannians of E+/E-, carrying an integer index), and the
five connected essential classes E1-E5.
"""

import math
from dataclasses import dataclass

import numpy as np

from .blockop import BlockOperator, Splitting
from .errors import (
    FiniteSpace,
    InputSchemaError,
    NotInteger,
    RangeViolation,
    NotSummable,
    SingularB,
    TruncationTooSmall,
)
from .linalg import op_norm, polar
from .spectral import SpectralPicture, extract_picture, reconstruct
from .tolerances import scaled_tol

INF = math.inf

DISCRETE_CLASSES = ("D1", "D2", "D3", "D4")
ESSENTIAL_CLASSES = ("E1", "E2", "E3", "E4", "E5")


def is_infinite_rank(r):
    return r == INF


def _check_rank(r, name):
    if r == INF:
        return INF
    if isinstance(r, bool) or not isinstance(r, int) or r < 0:
        raise RangeViolation(f"{name} must be a nonnegative integer or inf, got {r!r}")
    return r


@dataclass(frozen=True)
class TailSpec:
    """A decreasing positive sequence: finite head plus optional power tail.

    kind is one of "none", "finite_list", "power_tail".  values holds
    (value, multiplicity) pairs; a power tail appends c * k^(-g) for
    k = 1, 2, ... with multiplicity 1 each.  Values describe alphas
    directly, or 1 - beta on the beta side, so both sides live in
    (0, 1/2] with 1/2 allowed only for explicit beta entries.
    """

    kind: str
    values: tuple = ()
    coefficient: float = 0.0
    exponent: float = 0.0

    @classmethod
    def none(cls):
        return cls(kind="none")

    @classmethod
    def finite(cls, values):
        return cls(kind="finite_list", values=tuple((float(v), int(m)) for v, m in values))

    @classmethod
    def power(cls, coefficient, exponent, head=()):
        return cls(
            kind="power_tail",
            values=tuple((float(v), int(m)) for v, m in head),
            coefficient=float(coefficient),
            exponent=float(exponent),
        )

    @property
    def is_infinite(self):
        return self.kind == "power_tail"

    @property
    def head_count(self):
        return sum(m for _, m in self.values)

    def tail_value(self, k):
        """k-th power-tail value (1-based)."""
        return self.coefficient * float(k) ** (-self.exponent)

    def materialized(self, tail_terms):
        """Ascending (value, multiplicity) pairs after truncating the tail."""
        vals = list(self.values)
        if self.kind == "power_tail":
            vals.extend((self.tail_value(k), 1) for k in range(1, tail_terms + 1))
        vals.sort(key=lambda vm: vm[0])
        for (v1, _), (v2, _) in zip(vals, vals[1:]):
            if v1 == v2:
                raise RangeViolation(
                    f"duplicate tail/head value {v1!r}; fold it into a multiplicity"
                )
        return vals


@dataclass(frozen=True)
class ProjectionModel:
    """Symbolic projection: tails, 0/1 ranks, and the Schatten exponent p.

    beta is stored as the sequence 1 - beta_m.  np is the rank of the
    null space of y (the H- side), n of x; e1/e1p the rank-1 eigenspaces.
    """

    p: float
    alpha: TailSpec
    beta: TailSpec
    e1: object
    e1p: object
    n: object
    np: object


@dataclass(frozen=True)
class ClassLabel:
    """One of D1-D4 / E1-E5 with its discrete parameter.

    param is the rank for D1, the corank for D2, and the index k for
    D3/D4; absent for essential classes.
    """

    cls: str
    param: int = None

    def __post_init__(self):
        if self.cls not in DISCRETE_CLASSES + ESSENTIAL_CLASSES:
            raise RangeViolation(f"unknown class {self.cls!r}")
        if (self.param is not None) != (self.cls in DISCRETE_CLASSES):
            raise RangeViolation("param is present exactly for the discrete classes")


@dataclass(frozen=True)
class Truncation:
    """Materialization budget: power-tail terms and the stand-in size
    for infinite ranks."""

    tail_terms: int = 24
    inf_block: int = 8


def _validate_tail(t, name, model_p, allow_half):
    if t.kind not in ("none", "finite_list", "power_tail"):
        raise RangeViolation(f"{name}: unknown tail kind {t.kind!r}")
    top = 0.5 if allow_half else 0.5 - 1e-12
    for v, m in t.values:
        if not (0.0 < v <= top):
            raise RangeViolation(f"{name}: value {v!r} outside (0, 1/2{']' if allow_half else ')'}")
        if m < 1:
            raise RangeViolation(f"{name}: multiplicity {m!r} must be >= 1")
    seen = [v for v, _ in t.values]
    if len(set(seen)) != len(seen):
        raise RangeViolation(f"{name}: duplicate listed values; use multiplicities")
    if t.kind == "power_tail":
        if t.coefficient <= 0 or t.exponent <= 0:
            raise RangeViolation(f"{name}: power tail needs c > 0 and g > 0")
        if t.coefficient >= 0.5:
            raise RangeViolation(f"{name}: power-tail start c = {t.coefficient!r} must be < 1/2")
        if t.exponent * (model_p / 2.0) <= 1.0:
            raise NotSummable(
                f"{name}: tail exponent g = {t.exponent!r} gives g*(p/2) <= 1 "
                f"for p = {model_p!r}; not in l^(p/2)"
            )
        for v, _ in t.values:
            # An exact collision with some tail term would break strict
            # monotonicity of the merged sequence.
            k = (t.coefficient / v) ** (1.0 / t.exponent)
            kr = round(k)
            if kr >= 1 and abs(k - kr) < 1e-9 and t.tail_value(kr) == v:
                raise RangeViolation(
                    f"{name}: head value {v!r} collides with tail term {kr}"
                )


def validate_model(m):
    """Check ranges, monotonicity, summability, and infinite-dimension flags."""
    if not np.isfinite(m.p) or m.p < 1:
        raise RangeViolation(f"p must be >= 1, got {m.p!r}")
    _validate_tail(m.alpha, "alpha", m.p, allow_half=False)
    _validate_tail(m.beta, "beta", m.p, allow_half=True)
    for r, name in ((m.e1, "e1"), (m.e1p, "e1p"), (m.n, "n"), (m.np, "np")):
        _check_rank(r, name)
    plus_infinite = (
        m.alpha.is_infinite or m.beta.is_infinite or m.e1 == INF or m.n == INF
    )
    minus_infinite = (
        m.alpha.is_infinite or m.beta.is_infinite or m.e1p == INF or m.np == INF
    )
    if not plus_infinite:
        raise FiniteSpace("H+ side is finite-dimensional in this model")
    if not minus_infinite:
        raise FiniteSpace("H- side is finite-dimensional in this model")
    return m


def classify(m):
    """Nine-class verdict from the model flags.

    The x-side image e is 0 iff x is compact (finitely many betas and
    finite e1) and 1 iff 1 - x is compact (finitely many alphas and
    finite n); the y-side image f symmetrically.  The (e, f) pair picks
    the class; discrete classes carry rank, corank, or index.
    """
    validate_model(m)
    e_zero = (not m.beta.is_infinite) and m.e1 != INF
    e_one = (not m.alpha.is_infinite) and m.n != INF
    f_zero = (not m.alpha.is_infinite) and m.e1p != INF
    f_one = (not m.beta.is_infinite) and m.np != INF
    e = "zero" if e_zero else ("one" if e_one else "proper")
    f = "zero" if f_zero else ("one" if f_one else "proper")

    if e == "zero" and f == "zero":
        rank = m.alpha.head_count + m.beta.head_count + m.e1 + m.e1p
        return ClassLabel("D1", int(rank))
    if e == "one" and f == "one":
        corank = m.alpha.head_count + m.beta.head_count + m.n + m.np
        return ClassLabel("D2", int(corank))
    if e == "one" and f == "zero":
        return ClassLabel("D3", int(m.e1p - m.n))
    if e == "zero" and f == "one":
        return ClassLabel("D4", int(m.e1 - m.np))
    if f == "zero":
        return ClassLabel("E1")
    if e == "zero":
        return ClassLabel("E2")
    if f == "one":
        return ClassLabel("E3")
    if e == "one":
        return ClassLabel("E4")
    return ClassLabel("E5")


def complement_model(m):
    """Model of 1 - P.

    1 - P swaps the small and large eigenvalue lists on each side and
    exchanges the 0/1 ranks sidewise: the new e1 is the old n (the
    1-eigenspace of 1 - x is the null space of x), and likewise
    n <-> e1, e1p <-> np.  Beta entries at exactly 1/2 stay on the beta
    side of the new model.
    """
    half_entries = tuple((v, mm) for v, mm in m.beta.values if v == 0.5)
    beta_rest = tuple((v, mm) for v, mm in m.beta.values if v != 0.5)

    def rebuild(src, values):
        if src.kind == "power_tail":
            return TailSpec.power(src.coefficient, src.exponent, head=values)
        if values:
            return TailSpec.finite(values)
        return TailSpec.none()

    new_alpha = rebuild(m.beta, beta_rest)
    new_beta = rebuild(m.alpha, m.alpha.values + half_entries)
    return ProjectionModel(
        p=m.p,
        alpha=new_alpha,
        beta=new_beta,
        e1=m.n,
        e1p=m.np,
        n=m.e1,
        np=m.e1p,
    )


def _rank_size(r, inf_block, name):
    if r == INF:
        return inf_block
    if r > inf_block:
        raise TruncationTooSmall(
            f"declared finite rank {name} = {r} exceeds block budget {inf_block}"
        )
    return int(r)


def truncated_picture(m, trunc=Truncation()):
    """Rank-only spectral picture of the model at a truncation budget."""
    validate_model(m)
    alphas = m.alpha.materialized(trunc.tail_terms)
    # Stored beta values are 1 - beta; picture wants the betas themselves,
    # ascending.
    one_minus = m.beta.materialized(trunc.tail_terms)
    betas = sorted(((1.0 - v, mm) for v, mm in one_minus), key=lambda vm: vm[0])
    return SpectralPicture.rank_only(
        alphas=alphas,
        betas=betas,
        rank_e1=_rank_size(m.e1, trunc.inf_block, "e1"),
        rank_e1prime=_rank_size(m.e1p, trunc.inf_block, "e1p"),
        rank_n=_rank_size(m.n, trunc.inf_block, "n"),
        rank_nprime=_rank_size(m.np, trunc.inf_block, "np"),
    )


def materialize(m, trunc=Truncation()):
    """Exact finite projection realizing the truncated model.

    Each eigenvalue t with multiplicity r contributes r paired 2x2
    blocks [[t, sqrt(t - t^2)], [sqrt(t - t^2), 1 - t]] spanning one H+
    and one H- coordinate; 0/1 ranks become zero/identity blocks, with
    infinity standing in as inf_block coordinates.
    """
    pic = truncated_picture(m, trunc)
    dp, dm = pic.dims()
    return reconstruct(pic, Splitting(dp, dm))


def index_of(P, Q, p=2):
    """round(trace(P - Q)), the finite-scale Fredholm index.

    Any finite matrix difference is trace-class, so p is recorded only
    for reporting.  Raises NotInteger when the trace is farther than
    1e-6 from an integer (the pair does not sit in one discrete orbit).
    """
    tr = float(np.trace(P.dense() - Q.dense()).real)
    k = round(tr)
    if abs(tr - k) > 1e-6:
        raise NotInteger(f"trace {tr!r} is not within 1e-6 of an integer")
    return int(k)


@dataclass(frozen=True)
class NormDistanceReport:
    """Operator-norm distances to E+ and E- against the class verdict.

    Projections at operator-norm distance < 1 from E+ must lie in D3;
    essential classes sit at distance 1 from both E+ and E-.
    """

    label: ClassLabel
    dist_plus: float
    dist_minus: float
    d3_compatible: bool
    consistent: bool


def norm_distance_check(P, label, threshold=1e-6):
    """Compare ||P - E+||, ||P - E-|| with what the class permits.

    The threshold is meaningful relative to the truncation: tail-only
    essential models approach distance 1 only as fast as their smallest
    materialized eigenvalue (see norm_distance_oracle), so the 1e-6
    default presumes the default tail budget or better.
    """
    ep = BlockOperator.eplus(P.splitting)
    em = BlockOperator.eminus(P.splitting)
    dist_plus = op_norm((P - ep).dense())
    dist_minus = op_norm((P - em).dense())
    # Only the E+ side constrains the class: at finite scale a small
    # projection can sit within distance 1 of E- as well, which the
    # infinite-dimensional dichotomy forbids only in the limit.
    d3_compatible = label.cls == "D3"
    consistent = dist_plus >= 1.0 - threshold or d3_compatible
    return NormDistanceReport(
        label=label,
        dist_plus=float(dist_plus),
        dist_minus=float(dist_minus),
        d3_compatible=d3_compatible,
        consistent=consistent,
    )


def norm_distance_oracle(m, trunc=Truncation()):
    """Exact ||P - E+|| of the model's materialization.

    The paired blocks contribute sqrt(1 - alpha) and sqrt(1 - beta)
    (the stored beta values directly), a nonzero x null space or
    y 1-eigenspace contributes exactly 1, and the e1/np blocks
    contribute nothing.
    """
    validate_model(m)
    contributions = [0.0]
    if _rank_size(m.n, trunc.inf_block, "n") > 0:
        contributions.append(1.0)
    if _rank_size(m.e1p, trunc.inf_block, "e1p") > 0:
        contributions.append(1.0)
    for v, _ in m.alpha.materialized(trunc.tail_terms):
        contributions.append(float(np.sqrt(1.0 - v)))
    for u, _ in m.beta.materialized(trunc.tail_terms):
        contributions.append(float(np.sqrt(u)))
    return max(contributions)


@dataclass(frozen=True)
class DiagonalizationResult:
    """Diagonal model P0, the conjugating symmetry V, and sigma_min(B)."""

    p0: BlockOperator
    v: BlockOperator
    sigma_min_b: float


def diagonalize_pair(P, tol=None):
    """Conjugate P to its diagonal model by a symmetry.

    P0 rounds the spectral picture to a projection commuting with E+:
    x-eigenvalues from 1/2 up (betas and E1) go to 1, the rest to 0,
    with the complementary rounding on the y side.  Then
    B = P + P0 - 1 is invertible and self-adjoint with B P = P0 B, so
    the unitary polar factor V of B is a symmetry with V P V* = P0.
    """
    pic = extract_picture(P, tol)
    dp, dm = P.splitting.dim_plus, P.splitting.dim_minus

    def proj(cols, dim):
        if cols is None or cols.shape[1] == 0:
            return np.zeros((dim, dim), dtype=complex)
        return cols @ cols.conj().T

    p0_11 = proj(pic.eta_basis, dp) + proj(pic.e1_basis, dp)
    p0_22 = proj(pic.xiprime_basis, dm) + proj(pic.e1prime_basis, dm)
    P0 = BlockOperator(
        P.splitting,
        p0_11,
        np.zeros((dp, dm)),
        np.zeros((dm, dp)),
        p0_22,
    )
    n = P.splitting.total
    B = P.dense() + P0.dense() - np.eye(n)
    svals = np.linalg.svd(B, compute_uv=False)
    if svals[-1] <= scaled_tol(n, svals[0], tol):
        raise SingularB(
            f"B = P + P0 - 1 numerically singular: sigma_min = {svals[-1]:.3e}"
        )
    V, _ = polar(B, tol)
    return DiagonalizationResult(
        p0=P0,
        v=BlockOperator.from_dense(V, P.splitting),
        sigma_min_b=float(svals[-1]),
    )


def block_diag_unitary_between(F, G, tol=None):
    """E+-diagonal unitary U with U F U* = G for E+-diagonal projections.

    Requires the blockwise ranks of F and G to agree (the finite shadow
    of 'same essential class at equal truncation budgets').
    """
    from .errors import DimensionMismatch
    from .linalg import hermitian_eig

    F._check_same(G)

    def side_unitary(fb, gb, dim):
        ef, eg = hermitian_eig(fb, tol), hermitian_eig(gb, tol)
        rf = int((ef.values > 0.5).sum())
        rg = int((eg.values > 0.5).sum())
        if rf != rg:
            raise DimensionMismatch(
                f"blockwise ranks differ ({rf} vs {rg}); no diagonal conjugation"
            )
        # eigh orders ascending, so range vectors occupy the same slots.
        return eg.vectors @ ef.vectors.conj().T

    u11 = side_unitary(F.a11, G.a11, F.splitting.dim_plus)
    u22 = side_unitary(F.a22, G.a22, F.splitting.dim_minus)
    dp, dm = F.splitting.dim_plus, F.splitting.dim_minus
    return BlockOperator(F.splitting, u11, np.zeros((dp, dm)), np.zeros((dm, dp)), u22)


# -- JSON schema ------------------------------------------------------

def _tail_to_json(t):
    d = {"kind": t.kind}
    if t.values:
        d["values"] = [[v, m] for v, m in t.values]
    if t.kind == "power_tail":
        d["coefficient"] = t.coefficient
        d["exponent"] = t.exponent
    return d


def _tail_from_json(d, name):
    if not isinstance(d, dict) or "kind" not in d:
        raise InputSchemaError(f"{name}: tail spec must be an object with 'kind'")
    kind = d["kind"]
    values = tuple((float(v), int(m)) for v, m in d.get("values", []))
    if kind == "none":
        return TailSpec.none()
    if kind == "finite_list":
        return TailSpec.finite(values)
    if kind == "power_tail":
        try:
            return TailSpec.power(d["coefficient"], d["exponent"], head=values)
        except KeyError as exc:
            raise InputSchemaError(f"{name}: power tail needs {exc}") from exc
    raise InputSchemaError(f"{name}: unknown tail kind {kind!r}")


def _rank_to_json(r):
    return "inf" if r == INF else int(r)


def _rank_from_json(v, name):
    if v == "inf":
        return INF
    if isinstance(v, int) and not isinstance(v, bool) and v >= 0:
        return v
    raise InputSchemaError(f"{name}: rank must be a nonnegative integer or 'inf'")


def model_to_json_dict(m):
    return {
        "schema_version": 1,
        "p": m.p,
        "alpha": _tail_to_json(m.alpha),
        "beta": _tail_to_json(m.beta),
        "e1": _rank_to_json(m.e1),
        "e1p": _rank_to_json(m.e1p),
        "n": _rank_to_json(m.n),
        "np": _rank_to_json(m.np),
    }


def model_from_json_dict(d):
    try:
        m = ProjectionModel(
            p=float(d["p"]),
            alpha=_tail_from_json(d["alpha"], "alpha"),
            beta=_tail_from_json(d["beta"], "beta"),
            e1=_rank_from_json(d["e1"], "e1"),
            e1p=_rank_from_json(d["e1p"], "e1p"),
            n=_rank_from_json(d["n"], "n"),
            np=_rank_from_json(d["np"], "np"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputSchemaError(f"bad model JSON: {exc}") from exc
    return validate_model(m)
