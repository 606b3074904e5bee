"""Command-line interface: build codes, decode, sweep, bench.

Exit codes: 0 success, 2 usage error, 3 input/kind mismatch, 4 internal
assertion failure.  All outputs are deterministic under fixed seeds; the
environment variable LOCQ_SEED provides the seed when --seed is absent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    CodeFormatError,
    DecoderMismatchError,
    OpCounter,
    UnsatisfiableClusterError,
)
from .genrep import build_gen_rep
from .io import census_lines, code_kind, load_code, save_code, FORMAT_VERSION
from .logical import is_logical_failure
from .sim import (
    GenUnionFindDecoder,
    NoiseModel,
    PeelingDecoder,
    QuadraticReferenceDecoder,
    RepMwpmDecoder,
    SubdividedDecoder,
    SweepResult,
    UnionFindDecoder,
    bench_scaling,
    hoeffding_bound,
    mwpm_path_bound,
    run_trials,
    sample,
    u_path_diagnostic,
    SweepPoint,
)
from .square_complex import toric_square_complex
from .subdivide import subdivide
from .subdivided import StageDiagnostics, decode_subdivided
from .surface import build_gen_surface, build_planar_surface

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_INTERNAL = 4


class UsageError(Exception):
    """Unusable command arguments (missing or invalid flag values)."""

DECODER_KINDS = {
    "peel": ("planar", "gen-surface"),
    "uf": ("planar",),
    "gen-uf": ("gen-surface",),
    "rep-mwpm": ("gen-rep",),
    "subdivided": ("subdivided",),
}


def _parse_outer(spec: str):
    if spec.startswith("toric:"):
        try:
            w, h = (int(x) for x in spec.split(":", 1)[1].split(","))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad outer spec {spec!r}") from exc
        return toric_square_complex(w, h)
    raise argparse.ArgumentTypeError(f"unknown outer code {spec!r}")


def _parse_int_list(spec: str) -> list[int]:
    try:
        return [int(x) for x in spec.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {spec!r}") from exc


def _parse_p_values(spec: str) -> list[float]:
    """Either comma values '0.01,0.02' or a range 'start:stop:step'."""
    try:
        if ":" in spec:
            start, stop, step = (float(x) for x in spec.split(":"))
            if step <= 0 or stop < start:
                raise ValueError("empty range")
            values = []
            k = 0
            while True:
                v = round(start + k * step, 12)
                if v > stop + 1e-12:
                    break
                values.append(v)
                k += 1
            return values
        return [float(x) for x in spec.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad probability spec {spec!r}") from exc


def _seed_default(args_seed: int | None) -> int:
    if args_seed is not None:
        return args_seed
    env = os.environ.get("LOCQ_SEED")
    return int(env) if env else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locq",
        description="Build and decode geometrically local codes from subdivision.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a code and write its description")
    b.add_argument("--kind", required=True,
                   choices=["gen-rep", "gen-surface", "subdivided", "planar"])
    b.add_argument("--delta", help="branching degree, or pair 'a,b' for surfaces")
    b.add_argument("--length", type=int, help="chain length / subdivision parameter")
    b.add_argument("--distance", type=int, help="planar code distance")
    b.add_argument("--outer", help="outer code, e.g. toric:3,3")
    b.add_argument("--out", help="output JSON path")

    d = sub.add_parser("decode", help="run one decode and emit a JSON report")
    d.add_argument("--code", required=True)
    d.add_argument("--error", help="JSON error file")
    d.add_argument("--sample", help="sample noise: p[,p_erase[,seed]]")
    d.add_argument("--decoder", required=True, choices=sorted(DECODER_KINDS))
    d.add_argument("--parallel-patches", action="store_true")
    d.add_argument("--out", help="report path (default stdout)")

    s = sub.add_parser("sweep", help="Monte-Carlo logical-error-rate sweep")
    s.add_argument("--outer", default="toric:3,3", type=_parse_outer)
    s.add_argument("--L", required=True, type=_parse_int_list,
                   help="comma-separated lengths")
    s.add_argument("--p", required=True, type=_parse_p_values,
                   help="values 'a,b' or range 'a:b:step'")
    s.add_argument("--p-erase", type=float, default=0.0)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--decoder", default="subdivided", choices=["subdivided"])
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--bounds", action="store_true",
                   help="append analytic bound rows")
    s.add_argument("--out", required=True)

    be = sub.add_parser("bench", help="operation-count scaling benchmark")
    be.add_argument("--decoder", default="subdivided",
                    choices=["subdivided", "gen-uf", "uf", "quadratic-reference"])
    be.add_argument("--sizes", required=True, type=_parse_int_list,
                    help="comma-separated lengths")
    be.add_argument("--outer", default="toric:3,3", type=_parse_outer)
    be.add_argument("--delta", default="3,3")
    be.add_argument("--p", type=float, default=0.02)
    be.add_argument("--trials", type=int, default=20)
    be.add_argument("--seed", type=int)
    be.add_argument("--out", help="CSV path")
    return parser


def cmd_build(args) -> int:
    try:
        if args.kind == "gen-rep":
            if args.delta is None or args.length is None:
                raise UsageError("gen-rep needs --delta and --length")
            code = build_gen_rep(int(args.delta), args.length)
        elif args.kind == "gen-surface":
            if args.delta is None or args.length is None:
                raise UsageError("gen-surface needs --delta and --length")
            deltas = _parse_int_list(args.delta)
            if len(deltas) == 1:
                deltas = deltas * 2
            code = build_gen_surface(
                build_gen_rep(deltas[0], args.length),
                build_gen_rep(deltas[1], args.length),
            )
        elif args.kind == "planar":
            if args.distance is None:
                raise UsageError("planar needs --distance")
            code = build_planar_surface(args.distance)
        else:
            if args.outer is None or args.length is None:
                raise UsageError("subdivided needs --outer and --length")
            code = subdivide(_parse_outer(args.outer), args.length)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(str(exc)) from exc
    for line in census_lines(code):
        print(line)
    if args.out:
        save_code(code, args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def _decoder_for(name: str, code):
    kind = code_kind(code)
    if kind not in DECODER_KINDS[name]:
        raise DecoderMismatchError(
            f"decoder {name!r} does not handle {kind!r} codes"
        )
    if name == "peel":
        return PeelingDecoder()
    if name == "uf":
        return UnionFindDecoder()
    if name == "gen-uf":
        return GenUnionFindDecoder()
    if name == "rep-mwpm":
        return RepMwpmDecoder()
    return SubdividedDecoder(code)


def cmd_decode(args) -> int:
    code = load_code(args.code)
    kind = code_kind(code)
    if (args.error is None) == (args.sample is None):
        raise DecoderMismatchError("provide exactly one of --error or --sample")
    if args.error:
        with open(args.error) as fh:
            payload = json.load(fh)
        if payload.get("format_version") != FORMAT_VERSION:
            raise CodeFormatError("unsupported error-file format_version")
        error = set(payload.get("error", []))
        erasure = set(payload.get("erasure", []))
        noise_desc = {"source": args.error}
    else:
        parts = args.sample.split(",")
        p = float(parts[0])
        p_erase = float(parts[1]) if len(parts) > 1 else 0.0
        seed = int(parts[2]) if len(parts) > 2 else _seed_default(None)
        noise = NoiseModel(p=p, p_erase=p_erase, seed=seed)
        error, erasure = sample(noise, code, 0)
        noise_desc = {"p": p, "p_erase": p_erase, "seed": seed}
    bad = [q for q in error | erasure if not 0 <= q < code.graph.n_edges]
    if bad:
        raise CodeFormatError(f"error/erasure references unknown qubits {bad}")

    decoder = _decoder_for(args.decoder, code)
    if erasure and not decoder.erasure_aware:
        raise DecoderMismatchError(
            f"decoder {args.decoder!r} cannot use erasure information"
        )
    sigma = code.graph.syndrome_of(error)
    counter = OpCounter()
    diagnostics = StageDiagnostics() if kind == "subdivided" else None
    if kind == "subdivided":
        mode = "parallel-patches" if args.parallel_patches else "serial"
        correction = decode_subdivided(
            code, sigma, decoder.outer, mode=mode,
            counter=counter, diagnostics=diagnostics,
        )
    else:
        correction = decoder.decode(code, sigma, erasure, counter=counter)
    residual = correction ^ error
    residual_syndrome = code.graph.syndrome_of(residual)
    failure = (not residual_syndrome) and is_logical_failure(code, residual)
    report = {
        "format_version": FORMAT_VERSION,
        "code": {"kind": kind, "path": args.code},
        "decoder": args.decoder,
        "noise": noise_desc,
        "error": sorted(error),
        "erasure": sorted(erasure),
        "syndrome": sorted(sigma),
        "correction": sorted(correction),
        "residual_syndrome_empty": not residual_syndrome,
        "failure": failure,
        "op_count": counter.ticks,
    }
    if diagnostics is not None:
        report["stages"] = {
            "patch_defects": diagnostics.patch_defects,
            "active_patches": diagnostics.active_patches,
            "t_defects": diagnostics.t_defects,
            "active_t_regions": diagnostics.active_t_regions,
            "outer_syndrome_weight": diagnostics.outer_syndrome_weight,
            "outer_correction_weight": diagnostics.outer_correction_weight,
            "outer_beyond_guarantee": diagnostics.outer_beyond_guarantee,
        }
        report["u_path_diagnostic"] = bool(failure and u_path_diagnostic(code, residual))
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    outer = args.outer
    lengths = args.L
    ps = args.p
    seed = _seed_default(args.seed)
    result = SweepResult()
    for L in lengths:
        code = subdivide(outer, L)
        decoder = SubdividedDecoder(code)
        for p in ps:
            noise = NoiseModel(p=p, p_erase=args.p_erase, seed=seed)
            point = run_trials(code, decoder, noise, args.trials,
                               code_id=f"{outer.name};L={L}", L=L, jobs=args.jobs)
            result.points.append(point)
    if args.bounds:
        r = (outer.distance_hint - 1) // 2
        for L in lengths:
            for p in ps:
                if p <= (r + 1) / outer.n_qubits:
                    value = hoeffding_bound(outer.n_qubits, r, p)
                    result.points.append(SweepPoint(
                        code_id=f"{outer.name};L={L}", decoder="bound:hoeffding",
                        L=L, p=p, p_erase=args.p_erase, trials=0, failures=0,
                        rate=value, ci_lo=value, ci_hi=value, seed=seed,
                    ))
                delta_t = 2  # toric outer qubits touch two Z checks
                if p < 1.0 / (2 * (delta_t - 1)) ** 4:
                    value = mwpm_path_bound(L, delta_t, None, p)
                    result.points.append(SweepPoint(
                        code_id=f"{outer.name};L={L}", decoder="bound:mwpm_path",
                        L=L, p=p, p_erase=args.p_erase, trials=0, failures=0,
                        rate=value, ci_lo=value, ci_hi=value, seed=seed,
                    ))
    result.write(args.out)
    print(f"wrote {args.out} ({len(result.points)} rows)")
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = args.sizes
    if not sizes:
        raise UsageError("no sizes given")
    seed = _seed_default(args.seed)
    cases = []
    if args.decoder in ("subdivided", "quadratic-reference"):
        outer = args.outer
        for L in sizes:
            cases.append((L, subdivide(outer, L)))
        decoder = (SubdividedDecoder(cases[0][1]) if args.decoder == "subdivided"
                   else QuadraticReferenceDecoder())
    elif args.decoder == "gen-uf":
        deltas = _parse_int_list(args.delta)
        if len(deltas) == 1:
            deltas = deltas * 2
        for L in sizes:
            cases.append((L, build_gen_surface(
                build_gen_rep(deltas[0], L), build_gen_rep(deltas[1], L))))
        decoder = GenUnionFindDecoder()
    else:
        for d in sizes:
            cases.append((d, build_planar_surface(d)))
        decoder = UnionFindDecoder()
    result = bench_scaling(cases, decoder, args.p, args.trials, seed)
    for row in result.rows:
        print(f"n={row.n} ops={row.ops} seconds={row.seconds:.6g}")
    if result.slope_ops is None:
        print("slope: undefined (need at least two sizes)")
    else:
        print(f"slope_ops={result.slope_ops:.6f}")
        print(f"slope_seconds={result.slope_seconds:.6f}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(result.to_csv())
        print(f"wrote {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "build":
            return cmd_build(args)
        if args.command == "decode":
            return cmd_decode(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        return cmd_bench(args)
    except (UsageError, argparse.ArgumentTypeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DecoderMismatchError, CodeFormatError, UnsatisfiableClusterError,
            FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
