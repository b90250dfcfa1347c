"""Global numerical tolerance policy.

One knob, TAU = 1e-9, treated as a relative tolerance and scaled by
dimension and operator size wherever a post-condition needs an absolute
bound.  The clustering and subspace-assignment thresholds declare
explicit ambiguity bands instead of silently merging borderline cases.
"""

import numpy as np

from .errors import ClusterAmbiguity

# Single global relative tolerance.
TAU = 1e-9

# Eigenvalues closer than CLUSTER_MERGE (absolute) form one multiplicity
# group; a gap inside [CLUSTER_AMBIG, CLUSTER_MERGE) is ambiguous.
CLUSTER_MERGE = 1e-7
CLUSTER_AMBIG = 1e-9

# Principal-angle cosines within SUBSPACE_ASSIGN of 0 or 1 are assigned to
# intersections / orthogonal pairs; deviations in
# [SUBSPACE_ASSIGN, SUBSPACE_AMBIG) are ambiguous.
SUBSPACE_ASSIGN = 1e-8
SUBSPACE_AMBIG = 1e-7


def scaled_tol(dim, scale=1.0, tol=None):
    """Absolute tolerance for a dim-sized problem of the given norm scale."""
    base = TAU if tol is None else tol
    return base * max(int(dim), 1) * max(float(scale), 1.0)


def cluster(values, merge_tol=CLUSTER_MERGE, ambig_tol=CLUSTER_AMBIG):
    """Group ascending real values into multiplicity clusters.

    Parameters
    ----------
    values : array_like
        Real values, sorted ascending.
    merge_tol : float
        Adjacent values closer than this belong to one cluster.
    ambig_tol : float
        Lower edge of the ambiguity band.

    Returns
    -------
    list of (value, start, stop)
        Cluster mean and the half-open index range it covers.

    Raises
    ------
    ClusterAmbiguity
        If any adjacent gap lies in [ambig_tol, merge_tol).
    """
    vals = np.asarray(values, dtype=float)
    if vals.size == 0:
        return []
    gaps = np.diff(vals)
    bad = np.where((gaps >= ambig_tol) & (gaps < merge_tol))[0]
    if bad.size:
        i = int(bad[0])
        raise ClusterAmbiguity(
            f"eigenvalue gap {gaps[i]:.3e} between {vals[i]!r} and "
            f"{vals[i + 1]!r} lies in the ambiguity band "
            f"[{ambig_tol:g}, {merge_tol:g})"
        )
    groups = []
    start = 0
    for i in range(1, vals.size):
        if vals[i] - vals[i - 1] >= merge_tol:
            groups.append((float(vals[start:i].mean()), start, i))
            start = i
    groups.append((float(vals[start:].mean()), start, vals.size))
    return groups
