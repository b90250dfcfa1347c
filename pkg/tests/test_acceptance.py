"""Acceptance criteria, one test per criterion, each printing a
pass/fail line at its stated tolerance.

Criterion 11 (wall clock) is measured from session start in conftest;
this module is deliberately the heaviest part of the suite.
"""

import time

import numpy as np

import conftest
from pgrass.blockop import (
    BlockOperator,
    Splitting,
    commutator_with_eplus,
    norm_infty_p,
)
from pgrass.cli import build_parser, cmd_example
from pgrass.geodesics import (
    build_geodesic,
    distance_report,
    sinc_identity_residual,
)
from pgrass.golden import INVOLUTION_MAP, golden_models
from pgrass.halmos import commutator_norm_via_angles, halmos_decompose
from pgrass.gallery import idempotent_range_projection
from pgrass.linalg import op_norm, schatten_norm
from pgrass.models import (
    Truncation,
    classify,
    complement_model,
    diagonalize_pair,
    index_of,
    materialize,
    norm_distance_check,
)
from pgrass.rng import make_rng, random_geodesic_pair, random_projection
from pgrass.spectral import t_pair, verify_pairing

from test_spectral import angle_projection


def report(num, title, ok):
    print(f"ACCEPTANCE {num:>2} [{title}]: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} ({title}) failed"


def test_criterion_01_hardy_index():
    parser = build_parser()
    ok = True
    for k in range(-5, 6):
        start = time.monotonic()
        args = parser.parse_args(
            ["example", "hardy", "--k", str(k), "--modes", "16"]
        )
        rep, _ = cmd_example(args)
        elapsed = time.monotonic() - start
        reported = rep.checks[0].value
        ok = ok and rep.passed and reported == -k and elapsed < 1.0
    report(1, "Hardy index -k, k in -5..5, < 1 s", ok)


def test_criterion_02_t_pair_formula():
    rng = make_rng(2024)
    s = rng.random(1000) * 0.5
    ok = True
    for sv in s:
        tp, tm = t_pair(sv)
        ok = ok and abs(tp + tm - 1.0) <= 1e-12 and abs(tp * tm - sv * sv) <= 1e-12
    ok = ok and t_pair(0.5) == (0.5, 0.5)
    report(2, "t+- formula, 1000 samples at 1e-12", ok)


def test_criterion_03_pairing_lemma():
    rng = make_rng(3)
    ok = True
    worst = 0.0
    for dims in (8, 16, 32):
        sp = Splitting(dims // 2, dims // 2)
        for _ in range(100):
            P = random_projection(rng, sp)
            rep = verify_pairing(P)
            ok = ok and rep.ok
            ok = ok and all(
                e.multiplicity == e.partner_multiplicity for e in rep.entries
            )
            worst = max(worst, rep.max_residual)
    ok = ok and worst <= 1e-8
    report(3, f"pairing lemma, 100 x dims 8/16/32, residual {worst:.2e}", ok)


def test_criterion_04_halmos_cross_check():
    rng = make_rng(4)
    sp = Splitting(8, 8)
    ok = True
    worst = 0.0
    for _ in range(100):
        P = random_projection(rng, sp)
        H = halmos_decompose(P)
        for p in (1, 2, 3):
            direct = schatten_norm(commutator_with_eplus(P).dense(), p)
            via = commutator_norm_via_angles(H, p)
            worst = max(worst, abs(direct - via))
    ok = worst <= 1e-8
    report(4, f"Halmos commutator cross-check p=1,2,3, residual {worst:.2e}", ok)


def test_criterion_05_metric_band():
    rng = make_rng(5)
    sp = Splitting(8, 8)
    ok = True
    lo, hi, worst_sinc = np.inf, -np.inf, 0.0
    for p in (1, 2):
        for _ in range(200):
            P, Q = random_geodesic_pair(rng, sp)
            rep = distance_report(P, Q, p)
            g = build_geodesic(P, Q)
            worst_sinc = max(worst_sinc, sinc_identity_residual(g))
            lo, hi = min(lo, rep.ratio), max(hi, rep.ratio)
    ok = ok and lo >= 2.0 / np.pi - 1e-9 and hi <= 1.0 + 1e-9
    ok = ok and worst_sinc <= 1e-9
    # 2x2 closed form at 1e-12.
    for p in (1, 2):
        for gamma in (0.3, 0.9, 1.4):
            rep = distance_report(
                BlockOperator.eplus(Splitting(1, 1)), angle_projection(gamma), p
            )
            scale = 2.0 ** (1.0 / p)
            ok = ok and abs(rep.d_p - scale * gamma) <= 1e-12
            ok = ok and abs(rep.norm_p - scale * np.sin(gamma)) <= 1e-12
    report(
        5,
        f"metric band ratio in [{lo:.6f}, {hi:.6f}], sinc {worst_sinc:.2e}",
        ok,
    )


def test_criterion_06_mixed_norm_bound_and_nonequivalence():
    rng = make_rng(6)
    sp = Splitting(8, 8)
    ok = True
    for p in (1, 2):
        for _ in range(50):
            P, Q = random_geodesic_pair(rng, sp)
            diff = P - Q
            ok = ok and norm_infty_p(diff, p) <= 4.0 * schatten_norm(
                diff.dense(), p
            ) + 1e-9
    dm = 16
    spd = Splitting(2, dm)
    for p in (1, 2):
        for r in (1, 2, 4, 8):
            d_mask, f_mask = np.zeros(dm), np.zeros(dm)
            d_mask[:r] = 1.0
            f_mask[r : 2 * r] = 1.0
            P = BlockOperator(
                spd, np.eye(2), np.zeros((2, dm)), np.zeros((dm, 2)),
                np.diag(d_mask),
            )
            Q = BlockOperator(
                spd, np.eye(2), np.zeros((2, dm)), np.zeros((dm, 2)),
                np.diag(f_mask),
            )
            diff = P - Q
            ok = ok and abs(norm_infty_p(diff, p) - 1.0) <= 1e-14
            ok = ok and abs(
                schatten_norm(diff.dense(), p) - (2.0 * r) ** (1.0 / p)
            ) <= 1e-12
    report(6, "mixed-norm bound and non-equivalence construction", ok)


def test_criterion_07_classification():
    ok = True
    for name, (model, expected) in golden_models().items():
        label = classify(model)
        ok = ok and label == expected
        comp = classify(complement_model(model))
        ok = ok and comp.cls == INVOLUTION_MAP[expected.cls]
        if expected.cls in ("D3", "D4"):
            ref = (
                BlockOperator.eplus
                if expected.cls == "D3"
                else BlockOperator.eminus
            )
            for ib in (4, 8, 16, 32):
                P = materialize(model, Truncation(24, ib))
                tr = float(np.trace((P - ref(P.splitting)).dense()).real)
                ok = ok and abs(tr - expected.param) <= 1e-6
                ok = ok and index_of(P, ref(P.splitting)) == expected.param
    report(7, "nine-class truth table, involution, index invariance", ok)


def test_criterion_08_norm_dichotomy():
    ok = True
    for name, (model, expected) in golden_models().items():
        P = materialize(model)
        rep = norm_distance_check(P, classify(model))
        ok = ok and rep.consistent
        if rep.dist_plus < 1.0 - 1e-6:
            ok = ok and rep.d3_compatible
        if expected.cls.startswith("E"):
            P50 = materialize(model, Truncation(tail_terms=50, inf_block=8))
            rep50 = norm_distance_check(P50, expected)
            ok = ok and rep50.dist_plus >= 0.99
    report(8, "norm dichotomy at default and tail_terms = 50", ok)


def test_criterion_09_diagonalization():
    rng = make_rng(9)
    sp = Splitting(16, 16)
    ok = True
    worst_conj, worst_unit, min_sigma = 0.0, 0.0, np.inf
    for _ in range(100):
        P = random_projection(rng, sp)
        res = diagonalize_pair(P)
        V = res.v.dense()
        worst_conj = max(
            worst_conj, op_norm(V @ P.dense() @ V.conj().T - res.p0.dense())
        )
        worst_unit = max(worst_unit, op_norm(V.conj().T @ V - np.eye(32)))
        min_sigma = min(min_sigma, res.sigma_min_b)
    ok = worst_conj <= 1e-8 and worst_unit <= 1e-10
    report(
        9,
        f"diagonalization: conj {worst_conj:.2e}, unitary {worst_unit:.2e}, "
        f"sigma_min(B) >= {min_sigma:.4f}",
        ok,
    )


def test_criterion_10_idempotent_range_formula():
    rng = make_rng(10)
    ok = True
    for _ in range(50):
        B = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        P, expected = idempotent_range_projection(B)
        D = P.dense()
        ok = ok and op_norm(D @ D - D) <= 1e-10
        ok = ok and op_norm(D - D.conj().T) <= 1e-10
        ok = ok and index_of(P, BlockOperator.eplus(P.splitting)) == 0
        s = np.linalg.svd(B, compute_uv=False)
        s12 = np.linalg.svd(P.a12, compute_uv=False)
        ok = ok and np.abs(s12 - np.sort(s / (1.0 + s * s))[::-1]).max() <= 1e-10
    report(10, "idempotent-range formula, 50 random 4x4 blocks", ok)


def test_criterion_11_wall_clock():
    elapsed = time.monotonic() - conftest.SESSION_START
    report(11, f"wall clock {elapsed:.1f} s < 300 s", elapsed < 300.0)
