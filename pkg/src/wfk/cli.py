"""Command-line surface: gen, realize, verify, eval, analyze, synthesize.

Exit codes are a function of outcome only:

* 0 - success / all checks passed
* 1 - a verification check failed (report still written)
* 2 - usage or file-format error
* 3 - domain invariant violated by an input file
* 4 - numeric singularity (evaluation at a pole)
* 5 - unsupported mode (e.g. time-domain subbands for a non-FIR filter)

The environment variable ``WFK_SEED`` supplies the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import io as wio
from .errors import (
    FirRequiredError,
    InvariantError,
    PoleError,
    SingularMatrixError,
    WfkError,
)
from .filters import (
    CheckReport,
    box_to_params,
    check_paraunitary,
    check_symmetry,
    sample_box,
    subband_filters,
    wavelet_eval,
)
from .linalg import TOL
from .realization import (
    eval_realization,
    mcmillan_degree,
    realize_wavelet,
    stein_certificate,
    verify_minimality,
)
from .signal import SubbandSet, analyze, frequency_pr_check, synthesize, synthesis_delay

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_SINGULAR = 4
EXIT_UNSUPPORTED = 5


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("WFK_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _load_document(path: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})")
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: expected a JSON object")
    return doc


def _load_params_file(path: str):
    return wio.parameters_from_dict(_load_document(path))


def _cmd_gen(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    if args.index < 0:
        raise UsageError("--index must be >= 0")
    if not 0.0 <= args.rho <= 1.0:
        raise UsageError("--rho must lie in [0, 1]")
    if args.box is not None:
        box = wio.load_box(args.box, args.n, args.index, args.rho)
    else:
        box = sample_box(args.seed, args.n, args.index, args.rho)
    params = box_to_params(box)
    wio.save_parameters(params, args.output, box=box)
    return EXIT_OK


def _cmd_realize(args) -> int:
    params = _load_params_file(args.params)
    wio.save_realization(realize_wavelet(params), args.output)
    return EXIT_OK


def _verify_params(params, points, tol, seed):
    checks = [
        check_symmetry(lambda z: wavelet_eval(params, z), params.n, points, tol, seed),
        check_paraunitary(lambda z: wavelet_eval(params, z), params.n, points, tol, seed),
        frequency_pr_check(params, points, tol, seed),
    ]
    real = realize_wavelet(params)
    degree_gap = abs(real.state_dim - mcmillan_degree(params))
    checks.append(
        _scalar_check("degree", float(degree_gap), 0.0, points, seed)
    )
    checks.extend(_verify_realization_core(real, points, tol, seed))
    return checks


def _scalar_check(name, residual, tol, points, seed):
    return CheckReport(
        name=name,
        max_residual=residual,
        tolerance=tol,
        passed=residual <= tol,
        sample_count=points,
        seed=seed,
    )


def _verify_realization_core(real, points, tol, seed):
    cert = stein_certificate(real)
    minim = verify_minimality(real)
    return [
        _scalar_check("stein_blocks", cert.max_block_residual, tol, points, seed),
        _scalar_check("stein_hermiticity", cert.hermiticity, 1e-10, points, seed),
        _scalar_check(
            "minimality",
            float(
                real.state_dim
                - min(minim.controllability_rank, minim.observability_rank)
            ),
            0.0,
            points,
            seed,
        ),
    ]


def _verify_realization(real, n, points, tol, seed):
    checks = [
        check_symmetry(lambda z: eval_realization(real, z), n, points, tol, seed),
        check_paraunitary(lambda z: eval_realization(real, z), n, points, tol, seed),
    ]
    # Degree quantization: the state dimension must be n*(n-1)/2 plus a
    # whole number of n-state factor cores.
    extra = real.state_dim - n * (n - 1) // 2
    quantized = extra >= 0 and extra % n == 0
    checks.append(_scalar_check("degree", 0.0 if quantized else 1.0, 0.0, points, seed))
    checks.extend(_verify_realization_core(real, points, tol, seed))
    return checks


def _cmd_verify(args) -> int:
    doc = _load_document(args.file)
    if "factors" in doc:
        target = wio.parameters_from_dict(doc)
        checks = _verify_params(target, args.points, args.tol, args.seed)
    elif "state_dim" in doc:
        real = wio.realization_from_dict(doc)
        checks = _verify_realization(real, real.outputs, args.points, args.tol, args.seed)
    else:
        raise UsageError(f"{args.file}: neither a parameter nor a realization file")
    report = wio.report_to_dict(checks, args.seed, args.points, args.tol)
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n")
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


def _parse_z(raw: str) -> complex:
    parts = raw.split(",")
    if len(parts) != 2:
        raise UsageError("--z expects 're,im'")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise UsageError("--z expects numeric 're,im'")


def _cmd_eval(args) -> int:
    doc = _load_document(args.file)
    if "factors" in doc:
        params = wio.parameters_from_dict(doc)
        fn = lambda z: wavelet_eval(params, z)  # noqa: E731
    elif "state_dim" in doc:
        real = wio.realization_from_dict(doc)
        fn = lambda z: eval_realization(real, z)  # noqa: E731
    else:
        raise UsageError(f"{args.file}: neither a parameter nor a realization file")
    if args.circle is not None:
        if args.circle < 1:
            raise UsageError("--circle must be >= 1")
        zs = np.exp(2j * np.pi * np.arange(args.circle) / args.circle)
    else:
        zs = [_parse_z(args.z)]
    rows = [(z, fn(z)) for z in zs]
    if args.output:
        wio.save_eval_csv(rows, args.output)
    else:
        for z, value in rows:
            cells = [repr(complex(z).real), repr(complex(z).imag)]
            for c in np.asarray(value, dtype=complex).reshape(-1):
                cells.extend([repr(float(c.real)), repr(float(c.imag))])
            print(",".join(cells))
    return EXIT_OK


def _cmd_analyze(args) -> int:
    params = _load_params_file(args.params)
    filters = subband_filters(params)
    x = wio.load_signal(args.signal)
    bands = analyze(x, filters)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for k, band in enumerate(bands.bands):
        wio.save_signal(band, out / f"band_{k}.csv")
    return EXIT_OK


def _cmd_synthesize(args) -> int:
    params = _load_params_file(args.params)
    filters = subband_filters(params)
    band_dir = Path(args.bands)
    bands = []
    for k in range(params.n):
        path = band_dir / f"band_{k}.csv"
        if not path.exists():
            raise UsageError(f"missing band file: {path}")
        bands.append(wio.load_signal(path))
    rebuilt = synthesize(SubbandSet(n=params.n, bands=tuple(bands)), filters)
    wio.save_signal(rebuilt, args.out)
    delay = synthesis_delay(filters)
    sidecar = {"delay": delay, "bands": params.n, "signal_length": int(rebuilt.size)}
    if args.reference:
        ref = wio.load_signal(args.reference)
        if ref.size != rebuilt.size:
            raise UsageError(
                f"reference length {ref.size} != reconstruction length {rebuilt.size}"
            )
        err = float(np.linalg.norm(rebuilt - np.roll(ref, delay)))
        scale = float(np.linalg.norm(ref))
        sidecar["reconstruction_error"] = err / scale if scale else err
    else:
        sidecar["reconstruction_error"] = None
    Path(str(args.out) + ".json").write_text(
        json.dumps(sidecar, indent=2, sort_keys=True) + "\n"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wfk",
        description="Construct, realize and verify N-band paraunitary wavelet filters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    seed = _default_seed()

    p = sub.add_parser("gen", help="draw or convert filter parameters")
    p.add_argument("--n", type=int, required=True, help="band count (>= 2)")
    p.add_argument("--index", type=int, required=True, help="number of factors (>= 0)")
    p.add_argument("--rho", type=float, default=0.0, help="spectral-radius bound in [0, 1]")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--box", help="JSON file of box coordinates instead of sampling")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("realize", help="build the state-space realization")
    p.add_argument("params")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("verify", help="run all applicable checks on a file")
    p.add_argument("file")
    p.add_argument("--points", type=int, default=256)
    p.add_argument("--tol", type=float, default=TOL)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("eval", help="evaluate a filter or realization")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--z", help="evaluation point as 're,im'")
    group.add_argument("--circle", type=int, help="evaluate at this many roots of unity")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("analyze", help="split a signal into subband CSV files")
    p.add_argument("params")
    p.add_argument("--signal", required=True)
    p.add_argument("--out", required=True, help="output directory for band_k.csv")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("synthesize", help="rebuild a signal from subband CSV files")
    p.add_argument("params")
    p.add_argument("--bands", required=True, help="directory holding band_k.csv")
    p.add_argument("--out", required=True)
    p.add_argument("--reference", help="original signal for the error sidecar")
    p.set_defaults(func=_cmd_synthesize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (PoleError, SingularMatrixError) as exc:
        print(f"numeric singularity: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except FirRequiredError as exc:
        print(f"unsupported mode: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except WfkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
