"""Matplotlib figure rendering for the report path.

Figures are written to files next to the delimited output (the CSV/JSON
stay the canonical data); the Agg backend keeps everything headless.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_curve_figure(rows, path, title="geodesic spectral flow"):
    """Eigenvalue trajectories of the compressed block along the curve."""
    ts = np.asarray([t for t, _ in rows])
    eigs = np.vstack([np.asarray(v, dtype=float) for _, v in rows])
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for j in range(eigs.shape[1]):
        ax.plot(ts, eigs[:, j], lw=1.2)
    ax.set_xlabel("t")
    ax.set_ylabel("eigenvalues of the (+,+) block")
    ax.set_title(title)
    ax.set_ylim(-0.05, 1.05)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_ratio_figure(ratios, path, title="norm/geodesic distance ratios"):
    """Histogram of ||P-Q||_p / d_p against the [2/pi, 1] band."""
    vals = np.asarray([r for r in ratios if r is not None], dtype=float)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if vals.size:
        ax.hist(vals, bins=40, color="#4878d0", edgecolor="white")
    ax.axvline(2.0 / np.pi, color="crimson", ls="--", lw=1.2, label="2/pi")
    ax.axvline(1.0, color="black", ls="--", lw=1.2, label="1")
    ax.set_xlabel("ratio")
    ax.set_ylabel("count")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_angle_figure(angles, path, title="principal angle spectrum"):
    """Stem plot of the principal angles in (0, pi/2)."""
    gamma = np.asarray(angles, dtype=float)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if gamma.size:
        ax.stem(np.arange(1, gamma.size + 1), gamma)
    ax.axhline(np.pi / 2, color="crimson", ls="--", lw=1.0, label="pi/2")
    ax.set_xlabel("index")
    ax.set_ylabel("angle")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_singular_value_figure(svals, path, title="corner singular values"):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    s = np.asarray(svals, dtype=float)
    if s.size:
        ax.semilogy(np.arange(1, s.size + 1), np.maximum(s, 1e-18), "o-", lw=1.0)
    ax.set_xlabel("index")
    ax.set_ylabel("singular value")
    ax.set_title(title)
    ax.grid(alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
