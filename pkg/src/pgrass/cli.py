"""Command-line interface.

Commands
--------
classify    classify a model file (optionally cross-check a materialization)
example     run one of the gallery families: hardy | fourier | idempotent
verify      run a verification suite: spectral | halmos | metric |
            classify | gallery | diagonalize | all
geodesic    build a random geodesic pair and emit its spectral flow as CSV

Reports are written as report.json under --out (or $PGRASS_OUT); curve
data goes to CSV and, unless --no-figures is given, each report also
renders matplotlib figures next to the delimited output.  Exit status:
0 all checks passed, 1 a check failed, 2 usage or input error.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .blockop import BlockOperator
from .errors import ConfigError, InputSchemaError, PgrassError
from .geodesics import build_geodesic, curve_spectra, distance_report
from .models import (
    Truncation,
    classify,
    index_of,
    materialize,
    model_from_json_dict,
    norm_distance_check,
)
from .gallery import (
    FourierConfig,
    HardyConfig,
    fourier_projection,
    hardy_projection,
    idempotent_range_projection,
)
from .reporting import (
    Check,
    Report,
    flag_check,
    value_check,
    write_curve_csv,
    write_report,
)
from .rng import make_rng, random_geodesic_pair
from .suites import SUITE_NAMES, SuiteConfig, run_suite


def _add_common(parser):
    parser.add_argument("--p", type=float, default=2.0, help="Schatten exponent")
    parser.add_argument("--seed", type=int, default=7, help="64-bit RNG seed")
    parser.add_argument("--tol", type=float, default=None, help="tolerance override")
    parser.add_argument("--out", type=str, default=None, help="output directory")
    parser.add_argument(
        "--no-figures", action="store_true", help="skip matplotlib figure rendering"
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pgrass",
        description="Finite-scale geometry of projection pairs: spectral "
        "pictures, Halmos angles, geodesic distances, classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cls = sub.add_parser("classify", help="classify a projection model file")
    p_cls.add_argument("--model", type=str, required=True, help="model JSON path")
    p_cls.add_argument("--tail-terms", type=int, default=24)
    p_cls.add_argument("--inf-block", type=int, default=8)
    p_cls.add_argument(
        "--check-materialization",
        action="store_true",
        help="also materialize and cross-check trace index / norm dichotomy",
    )
    _add_common(p_cls)

    p_ex = sub.add_parser("example", help="run a gallery family")
    ex_sub = p_ex.add_subparsers(dest="family", required=True)

    p_h = ex_sub.add_parser("hardy", help="Hardy-space projection")
    p_h.add_argument("--modes", type=int, default=16, help="mode window half-width N")
    p_h.add_argument("--k", type=int, default=None, help="monomial symbol z^k")
    p_h.add_argument(
        "--phi", type=str, default=None, help="comma-separated symbol coefficients"
    )
    p_h.add_argument(
        "--min-power", type=int, default=0, help="power of the first phi coefficient"
    )
    _add_common(p_h)

    p_f = ex_sub.add_parser("fourier", help="DFT-conjugated coordinate projection")
    p_f.add_argument("--n", type=int, default=16, help="cyclic group size")
    p_f.add_argument("--s", type=str, default="0:4", help="E+ support, e.g. 0:4 or 0,1,5")
    p_f.add_argument("--t", type=str, default="5:9", help="frequency support")
    _add_common(p_f)

    p_i = ex_sub.add_parser("idempotent", help="range projection of [[1,B],[0,0]]")
    p_i.add_argument("--size", type=int, default=4, help="size of the random block B")
    _add_common(p_i)

    p_v = sub.add_parser("verify", help="run a verification suite")
    p_v.add_argument(
        "--suite", type=str, required=True, help="|".join(SUITE_NAMES + ("all",))
    )
    p_v.add_argument("--dims", type=int, default=16, help="total space dimension")
    p_v.add_argument("--cases", type=int, default=100, help="random cases per sweep")
    p_v.add_argument("--tail-terms", type=int, default=24)
    p_v.add_argument("--inf-block", type=int, default=8)
    _add_common(p_v)

    p_g = sub.add_parser("geodesic", help="emit a geodesic's spectral flow")
    p_g.add_argument("--dims", type=int, default=16, help="total space dimension")
    p_g.add_argument("--samples", type=int, default=21, help="curve sample count")
    _add_common(p_g)

    return parser


def _parse_mask(spec, n):
    mask = [False] * n
    try:
        for part in spec.split(","):
            part = part.strip()
            if ":" in part:
                lo, hi = part.split(":")
                for i in range(int(lo), int(hi)):
                    mask[i] = True
            elif part:
                mask[int(part)] = True
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad mask spec {spec!r}: {exc}") from exc
    return tuple(mask)


def _out_dir(args):
    out = args.out or os.environ.get("PGRASS_OUT")
    if out is None:
        return None
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _config_echo(args):
    skip = {"command", "family"}
    return {
        k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None
    }


def cmd_classify(args):
    path = Path(args.model)
    if not path.exists():
        raise ConfigError(f"model file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputSchemaError(f"model file is not valid JSON: {exc}") from exc
    model = model_from_json_dict(data)
    label = classify(model)
    report = Report(command="classify", config=_config_echo(args))
    report.checks.append(
        Check(
            name=f"class {label.cls}"
            + (f", param {label.param}" if label.param is not None else ""),
            passed=True,
            value=label.param,
        )
    )
    if args.check_materialization:
        trunc = Truncation(tail_terms=args.tail_terms, inf_block=args.inf_block)
        P = materialize(model, trunc)
        if label.cls in ("D3", "D4"):
            ref = (
                BlockOperator.eplus(P.splitting)
                if label.cls == "D3"
                else BlockOperator.eminus(P.splitting)
            )
            idx = index_of(P, ref, args.p)
            report.checks.append(
                value_check("trace index agrees with class param", idx, label.param)
            )
        ndc = norm_distance_check(P, label)
        report.checks.append(
            flag_check(
                f"norm dichotomy consistent (||P-E+|| = {ndc.dist_plus:.6f})",
                ndc.consistent,
            )
        )
    return report, {}


def cmd_example(args):
    report = Report(command=f"example {args.family}", config=_config_echo(args))
    artifacts = {}
    if args.family == "hardy":
        if args.phi is not None:
            coeffs = tuple(complex(c) for c in args.phi.split(","))
            cfg = HardyConfig(modes=args.modes, phi=coeffs, min_power=args.min_power)
        else:
            cfg = HardyConfig(modes=args.modes, k=args.k if args.k is not None else 0)
        P, expected, info = hardy_projection(cfg)
        report.checks.append(
            Check(
                name=f"expected class {expected.cls}, index {expected.param}",
                passed=True,
                value=expected.param,
            )
        )
        report.checks.append(
            value_check(
                "trace index of the truncation", info["trace_index"], -info["winding"]
            )
            if cfg.k is not None
            else Check(
                name="trace index of the truncation",
                passed=True,
                value=info["trace_index"],
                detail="general symbols pin -deg+ at finite scale",
            )
        )
        report.checks.append(
            flag_check(f"winding number {info['winding']}", True)
        )
    elif args.family == "fourier":
        cfg = FourierConfig(args.n, _parse_mask(args.s, args.n), _parse_mask(args.t, args.n))
        P, rep = fourier_projection(cfg)
        report.checks.append(
            Check(
                name="trace norm ||E+ P||_1",
                passed=True,
                value=rep.trace_norm_eplus_p,
            )
        )
        for name, dim in (
            ("dim R(E+) & R(P)", rep.dim_range_range),
            ("dim R(E+) & N(P)", rep.dim_range_null),
            ("dim N(E+) & R(P)", rep.dim_null_range),
        ):
            report.checks.append(Check(name=name, passed=True, value=dim))
        report.checks.append(
            flag_check(
                "commutator identity [E+,P] = E+P - (E+P)*",
                rep.commutator_identity_residual <= 1e-12,
            )
        )
    else:
        rng = make_rng(args.seed)
        B = rng.standard_normal((args.size, args.size)) + 1j * rng.standard_normal(
            (args.size, args.size)
        )
        P, expected = idempotent_range_projection(B)
        D = P.dense()
        from .linalg import op_norm

        report.checks.append(
            flag_check(
                "P^2 = P = P*",
                max(op_norm(D @ D - D), op_norm(D - D.conj().T)) <= 1e-10,
            )
        )
        idx = index_of(P, BlockOperator.eplus(P.splitting), args.p)
        report.checks.append(value_check("index", idx, expected.param))
        artifacts["svals"] = np.linalg.svd(P.a12, compute_uv=False).tolist()
    return report, artifacts


def cmd_verify(args):
    cfg = SuiteConfig(
        seed=args.seed,
        p=args.p,
        dims=args.dims,
        cases=args.cases,
        tail_terms=args.tail_terms,
        inf_block=args.inf_block,
        tol=args.tol,
    )
    checks, artifacts = run_suite(args.suite, cfg)
    report = Report(command=f"verify {args.suite}", config=_config_echo(args))
    report.extend(checks)
    return report, artifacts


def cmd_geodesic(args):
    rng = make_rng(args.seed)
    cfg = SuiteConfig(seed=args.seed, dims=args.dims)
    P, Q = random_geodesic_pair(rng, cfg.splitting())
    g = build_geodesic(P, Q, args.tol)
    rep = distance_report(P, Q, args.p, args.tol)
    ts = np.linspace(0.0, 1.0, max(args.samples, 2))
    rows = curve_spectra(g, ts)
    report = Report(command="geodesic", config=_config_echo(args))
    report.checks.append(Check(name="d_p", passed=True, value=rep.d_p))
    report.checks.append(Check(name="||P - Q||_p", passed=True, value=rep.norm_p))
    report.checks.append(Check(name="||P - Q||_inf,p", passed=True, value=rep.norm_inf_p))
    report.checks.append(
        Check(
            name="ratio in [2/pi, 1]",
            passed=rep.lower_ok and rep.upper_ok,
            value=rep.ratio,
        )
    )
    report.checks.append(
        flag_check("mixed norm <= 4 ||P-Q||_p", rep.mixed_ok)
    )
    return report, {"curve": rows}


def _write_artifacts(report, artifacts, out, no_figures):
    # Angle/ratio/singular-value lists also land in the JSON report.
    report.data = {
        k: artifacts[k] for k in ("angles", "ratios", "svals") if k in artifacts
    }
    paths = [write_report(report, out / "report.json")]
    if "curve" in artifacts:
        paths.append(write_curve_csv(out / "curve.csv", artifacts["curve"]))
        if not no_figures:
            from .figures import save_curve_figure

            paths.append(save_curve_figure(artifacts["curve"], out / "curve.png"))
    if "ratios" in artifacts and not no_figures:
        from .figures import save_ratio_figure

        paths.append(save_ratio_figure(artifacts["ratios"], out / "ratios.png"))
    if "angles" in artifacts and not no_figures:
        from .figures import save_angle_figure

        paths.append(save_angle_figure(artifacts["angles"], out / "angles.png"))
    if "svals" in artifacts and not no_figures:
        from .figures import save_singular_value_figure

        paths.append(
            save_singular_value_figure(artifacts["svals"], out / "corner_svals.png")
        )
    return paths


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    handlers = {
        "classify": cmd_classify,
        "example": cmd_example,
        "verify": cmd_verify,
        "geodesic": cmd_geodesic,
    }
    try:
        report, artifacts = handlers[args.command](args)
    except (ConfigError, InputSchemaError) as exc:
        print(f"pgrass: error: {exc}", file=sys.stderr)
        return 2
    except PgrassError as exc:
        print(f"pgrass: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(report.render_text())
    out = _out_dir(args)
    if out is not None:
        for path in _write_artifacts(report, artifacts, out, args.no_figures):
            print(f"wrote {path}")
    return 0 if report.passed else 1


def entrypoint():
    raise SystemExit(main())
