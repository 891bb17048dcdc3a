"""Batch command-line front end.

Commands: transform, check, simulate, fit, report.  Exit codes: 0 on
success, 1 on domain or validation errors, 2 on usage errors.  The seed
for `simulate` resolves as flag > CONFDOP_SEED env var > config value.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import __version__
from .checks import SUITES, run_suite
from .conformal import (
    Event,
    GroupParameter,
    conformal_factor,
    hill_transform,
    interval_squared,
    invariant_ratio,
    transform_finite,
)
from .constants import HUBBLE_RATE, PIONEER_ANOMALY_RATE, SPEED_OF_LIGHT
from .errors import ConfdopError
from .estimator import bootstrap_alpha, decide_metric, fit_alpha
from .manifest import build_manifest, write_manifest
from .tracking import (
    RNG_ALGORITHM,
    SimConfig,
    read_records_csv,
    sign_comparison_report,
    simulate,
    write_records_csv,
)
from .wave import hubble_alpha_correction

ENV_SEED = "CONFDOP_SEED"


class _Parser(argparse.ArgumentParser):
    # stdlib argparse (< 3.13) only treats plain decimals as negative-number
    # values; rates like -2.80e-18 need the exponent form recognized too
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(
            r"^-\d+$|^-\d*\.\d+$|^-\d+\.?\d*[eE][-+]?\d+$"
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="confdop", description=__doc__)
    parser.add_argument("--version", action="version", version=f"confdop {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    tr = sub.add_parser("transform", help="apply the finite transformation to one event")
    group_param = tr.add_mutually_exclusive_group(required=True)
    group_param.add_argument("--beta4", type=float, help="group parameter in 1/m")
    group_param.add_argument("--alpha", type=float, help="group parameter in 1/s")
    tr.add_argument("--r", type=float, required=True, help="radial distance in m")
    group_time = tr.add_mutually_exclusive_group(required=True)
    group_time.add_argument("--x4", type=float, help="time coordinate c*t in m")
    group_time.add_argument("--t", type=float, help="time coordinate in s")
    tr.add_argument("--c", type=float, default=SPEED_OF_LIGHT, help="speed of light in m/s")
    tr.add_argument("--hill", action="store_true", help="also print the first-order map")

    ck = sub.add_parser("check", help="run a randomized property suite")
    ck.add_argument("--suite", required=True, choices=SUITES)
    ck.add_argument("--tol", type=float, default=None,
                    help="error tolerance (for hill: minimum convergence order)")
    ck.add_argument("--seed", type=int, default=0)
    ck.add_argument("--cases", type=int, default=None, help="number of random cases")

    sim = sub.add_parser("simulate", help="simulate a tracking mission to CSV + manifest")
    sim.add_argument("--config", required=True, help="JSON config path")
    sim.add_argument("--out", required=True, help="output CSV path")
    sim.add_argument("--seed", type=int, default=None,
                     help=f"override the config seed (precedence: flag > ${ENV_SEED} > config)")

    fit = sub.add_parser("fit", help="estimate alpha from a tracking CSV")
    fit.add_argument("--input", required=True, help="tracking CSV path")
    fit.add_argument("--out", required=True, help="output JSON path")
    fit.add_argument("--bootstrap", type=int, default=None, metavar="N",
                     help="also bootstrap the standard error with N resamples")
    fit.add_argument("--z-threshold", type=float, default=5.0)
    fit.add_argument("--seed", type=int, default=0, help="bootstrap seed")
    fit.add_argument("--c", type=float, default=SPEED_OF_LIGHT)

    rep = sub.add_parser("report", help="compare fitted, Hubble, and anomaly rates")
    rep.add_argument("--fit", default=None, help="FitResult JSON path")
    rep.add_argument("--hubble", type=float, default=HUBBLE_RATE, help="Hubble rate in 1/s")
    rep.add_argument("--anomaly", type=float, default=PIONEER_ANOMALY_RATE,
                     help="anomaly rate in 1/s")
    return parser


def cmd_transform(args) -> int:
    c = args.c
    if args.beta4 is not None:
        p = GroupParameter(beta4=args.beta4, c=c)
    else:
        p = GroupParameter.from_alpha(args.alpha, c=c)
    x4 = args.x4 if args.x4 is not None else c * args.t
    e = Event(r=args.r, x4=x4)
    out = transform_finite(p, e)
    doc = {
        "beta4": p.beta4,
        "alpha": p.alpha,
        "c": c,
        "r": e.r,
        "x4": e.x4,
        "t": e.x4 / c,
        "r_prime": out.r,
        "x4_prime": out.x4,
        "t_prime": out.x4 / c,
        "gamma": conformal_factor(p, e),
        "s2": interval_squared(e),
        "s2_over_r": invariant_ratio(e) if e.r > 0.0 else None,
    }
    if args.hill:
        hr, ht = hill_transform(p, e.r, e.x4 / c)
        doc["hill"] = {"r_prime": hr, "t_prime": ht, "x4_prime": c * ht}
    print(json.dumps(doc, indent=2))
    return 0


def cmd_check(args) -> int:
    result = run_suite(args.suite, args.tol, args.seed, args.cases)
    print(result.summary())
    return 0 if result.passed else 1


def _resolve_seed(args_seed) -> int | None:
    if args_seed is not None:
        return args_seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        return int(env)
    return None  # fall through to the config value (or its default)


def cmd_simulate(args) -> int:
    raw = json.loads(Path(args.config).read_text())
    if not isinstance(raw, dict):
        raise ConfdopError("config must be a JSON object")
    seed = _resolve_seed(args.seed)
    if seed is not None:
        raw = dict(raw, seed=seed)
    cfg = SimConfig.from_dict(raw)
    records = simulate(cfg)
    out = Path(args.out)
    write_records_csv(records, out)
    manifest = build_manifest(
        command="simulate",
        tool_version=__version__,
        rng_algorithm=RNG_ALGORITHM,
        seed=cfg.seed,
        config=cfg.to_dict(),
        output_paths=[out],
        base_dir=out.parent,
    )
    manifest_path = out.with_name(out.name + ".manifest.json")
    write_manifest(manifest, manifest_path)
    print(f"wrote {out} ({len(records)} records) and {manifest_path}")
    return 0


def cmd_fit(args) -> int:
    records = read_records_csv(args.input)
    fit = fit_alpha(records, c=args.c)
    decision = decide_metric(fit, z_threshold=args.z_threshold)
    doc = fit.to_dict()
    doc["decision"] = decision.value
    if args.bootstrap is not None:
        doc["alpha_stderr_boot"] = bootstrap_alpha(records, args.bootstrap, args.seed, c=args.c)
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    print(
        f"alpha_hat={fit.alpha_hat:.6e} 1/s  stderr={fit.alpha_stderr:.6e}  "
        f"z={fit.z_score_alpha_zero:.3f}  decision={decision.value}"
    )
    return 0


def cmd_report(args) -> int:
    comp = sign_comparison_report(args.anomaly, args.hubble)
    lines = [
        f"anomaly_rate_per_s: {args.anomaly!r}",
        f"hubble_rate_per_s: {args.hubble!r}",
        f"magnitude_ratio: {comp.magnitude_ratio:.6f}",
        f"opposite_sign: {str(comp.opposite_sign).lower()}",
        f"caveat: {comp.caveat}",
    ]
    if args.fit is not None:
        fit_doc = json.loads(Path(args.fit).read_text())
        alpha_hat = float(fit_doc["alpha_hat"])
        corrected = hubble_alpha_correction(args.hubble, alpha_hat)
        lines += [
            f"alpha_hat_per_s: {alpha_hat!r}",
            f"corrected_hubble_rate_per_s: {corrected!r}",
            f"decision: {fit_doc.get('decision', 'n/a')}",
        ]
    print("\n".join(lines))
    return 0


_HANDLERS = {
    "transform": cmd_transform,
    "check": cmd_check,
    "simulate": cmd_simulate,
    "fit": cmd_fit,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ConfdopError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())
