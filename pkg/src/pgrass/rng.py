"""Deterministic random generation for suites and tests.

The generator is numpy's PCG64 seeded with a 64-bit integer; random
unitaries come from QR factorization of complex Gaussian matrices with
the R diagonal rephased positive, which makes them Haar-distributed and
bit-reproducible for a fixed seed.
"""

import numpy as np

from .blockop import BlockOperator
from .linalg import hermitian_eig


def make_rng(seed):
    """PCG64 generator for a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def random_unitary(rng, n):
    """Haar-distributed n x n unitary with deterministic phases."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_projection(rng, splitting, rank=None):
    """Random projection of the given (or random nontrivial) rank."""
    n = splitting.total
    if rank is None:
        rank = int(rng.integers(1, n))
    U = random_unitary(rng, n)
    V = U[:, :rank]
    return BlockOperator.from_dense(V @ V.conj().T, splitting)


def random_hermitian(rng, n, scale=1.0):
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * 0.5 * (Z + Z.conj().T)


def random_invertible(rng, n, min_sv=0.5):
    """Random matrix with singular values bounded away from zero."""
    U = random_unitary(rng, n)
    V = random_unitary(rng, n)
    s = min_sv + rng.random(n)
    return (U * s) @ V


def random_codiagonal_exponent(rng, P, max_angle):
    """Random Hermitian P-codiagonal X with ||X|| = max_angle.

    In the frame splitting H into R(P) and N(P), X couples the two parts
    only; its largest singular value is scaled to max_angle.
    """
    eig = hermitian_eig(P.dense())
    keep = eig.values > 0.5
    Vr, Vn = eig.vectors[:, keep], eig.vectors[:, ~keep]
    r, q = Vr.shape[1], Vn.shape[1]
    Z = rng.standard_normal((r, q)) + 1j * rng.standard_normal((r, q))
    top = np.linalg.norm(Z, 2)
    if top > 0:
        Z *= max_angle / top
    X = Vr @ Z @ Vn.conj().T
    return X + X.conj().T


def random_geodesic_pair(rng, splitting, max_angle=None, rank=None):
    """(P, Q) with Q = exp(iX) P exp(-iX) for a random codiagonal X.

    max_angle defaults to a random value in (0, 0.98 * pi/2], keeping
    clear of the pi/2 assignment band.
    """
    from .linalg import matfun_hermitian

    P = random_projection(rng, splitting, rank)
    if max_angle is None:
        max_angle = (0.02 + 0.96 * rng.random()) * (np.pi / 2.0)
    X = random_codiagonal_exponent(rng, P, max_angle)
    E = matfun_hermitian(X, lambda v: np.exp(1j * v))
    Q = BlockOperator.from_dense(E @ P.dense() @ E.conj().T, splitting)
    return P, Q


def random_nearby_projection(rng, P, max_angle=0.4):
    """Projection within operator-norm distance sin(max_angle) of P."""
    _, Q = _pair_from(rng, P, max_angle)
    return Q


def _pair_from(rng, P, max_angle):
    from .linalg import matfun_hermitian

    X = random_codiagonal_exponent(rng, P, max_angle)
    E = matfun_hermitian(X, lambda v: np.exp(1j * v))
    Q = BlockOperator.from_dense(E @ P.dense() @ E.conj().T, P.splitting)
    return P, Q
