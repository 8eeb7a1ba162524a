"""Command-line front end.

Exit status: 0 on success, 2 on invalid input (one-line diagnostic on
stderr), 3 when ``oracle`` finds a mismatch beyond ``--tol``, 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import TruncVarError
from .play import play, play_recursion, skorohod_check
from .processes import PathSpec, generate
from .rates import estimate_rate
from .stepfn import (
    StepFunction,
    TimeInterval,
    index_range,
    interleave,
    read_samples_csv,
    write_samples_csv,
)
from .truncated import envelope_arrays, minimal_envelope, tv_truncated
from .variation import (
    VariationProfile,
    ab_trunc_oracle_profile,
    dp_profile,
    p_variation,
    running_variation,
    total_variation,
)


class UsageError(TruncVarError):
    pass


def load_step(path: str) -> StepFunction:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    if path.endswith(".csv"):
        return read_samples_csv(text)
    try:
        return StepFunction.from_dict(json.loads(text))
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e.msg}") from None


def _band(args, u: StepFunction):
    """(alpha, beta) from --alpha/--beta files or a constant --c."""
    if args.c is not None:
        if args.alpha or args.beta:
            raise UsageError("give either --c or --alpha/--beta, not both")
        if not args.c > 0:
            raise UsageError(f"--c must be positive, got {args.c}")
        half = 0.5 * args.c
        return StepFunction.constant(-half, u.knots), StepFunction.constant(half, u.knots)
    if not (args.alpha and args.beta):
        raise UsageError("a band is required: --c or both --alpha and --beta")
    return load_step(args.alpha), load_step(args.beta)


def _interval(args):
    return TimeInterval.parse(args.interval) if args.interval else None


def _emit(args, payload: dict, table: str | None = None):
    if args.format == "table" and table is not None:
        text = table + "\n"
    else:
        text = json.dumps(payload, sort_keys=True) + "\n"
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _profile_table(times, tv, utv, dtv) -> str:
    lines = [f"{'time':>12} {'TV':>14} {'UTV':>14} {'DTV':>14}"]
    for row in zip(times, tv, utv, dtv):
        lines.append("{:12.6g} {:14.8g} {:14.8g} {:14.8g}".format(*row))
    return "\n".join(lines)


# -- subcommands ----------------------------------------------------------------


def cmd_tv(args):
    u = load_step(args.input)
    iv = _interval(args)
    if args.p is not None:
        val = p_variation(u, args.p, iv)
        _emit(args, {"p": args.p, "p_variation": val}, f"p-variation (p={args.p:g}): {val:.10g}")
        return 0
    if args.alpha or args.beta:
        alpha, beta = _band(args, u)
        tri = interleave(u, alpha, beta)
        lo, hi = index_range(tri.knots, iv)
        sl = slice(lo, hi + 1)
        p = envelope_arrays(tri.lower[sl], tri.upper[sl])[0]
        prof = VariationProfile(tri.times[sl], *running_variation(p))
    elif args.c is not None:
        prof = tv_truncated(u, args.c, iv)
    else:
        prof = total_variation(u, iv)
    _emit(args, prof.final, _profile_table(prof.times, prof.tv, prof.utv, prof.dtv))
    return 0


def cmd_envelope(args):
    u = load_step(args.input)
    alpha, beta = _band(args, u)
    env = minimal_envelope(interleave(u, alpha, beta))
    payload = {
        "envelope": env.envelope.to_dict(),
        "profile": env.profile.to_dict(),
        "switches": [[i, d] for i, d in env.switches],
        "start_value": env.start_value,
        "branch": env.branch,
    }
    p = env.profile
    table = _profile_table(p.times, p.tv, p.utv, p.dtv) + f"\nstart={env.start_value:.10g} branch={env.branch}"
    _emit(args, payload, table)
    return 0


def _play(args):
    u = load_step(args.input)
    alpha, beta = _band(args, u)
    fn = play_recursion if args.route == "recursion" else play
    return fn(u, alpha, beta, args.xi0), alpha, beta


def cmd_play(args):
    res, _, _ = _play(args)
    _emit(args, res.to_dict(), _play_table(res))
    return 0


def _play_table(res) -> str:
    lines = [f"{'time':>12} {'xi':>14} {'xi_u':>14} {'xi_d':>14} {'phi':>14}"]
    cols = [res.xi.time_labels()] + [f.interleaved() for f in (res.xi, res.xi_u, res.xi_d, res.phi)]
    for row in zip(*cols):
        lines.append("{:12.6g} {:14.8g} {:14.8g} {:14.8g} {:14.8g}".format(*row))
    return "\n".join(lines)


def cmd_skorohod(args):
    res, alpha, beta = _play(args)
    viol = skorohod_check(res, alpha, beta, tol=args.tol)
    payload = {"violations": viol, "result": res.to_dict()}
    table = "no violations" if not viol else "\n".join(f"{v['index']}: {v['kind']}" for v in viol)
    _emit(args, payload, table)
    return 0


def cmd_rates(args):
    spec = PathSpec(
        kind=args.process,
        horizon_T=args.T,
        n_steps=args.n,
        seed=args.seed,
        hurst=args.hurst,
        stability=args.stability,
    )
    if args.dump_path:
        Path(args.dump_path).write_text(write_samples_csv(generate(spec, 0)))
    rep = estimate_rate(spec, args.c_min, args.c_max, args.c_points, args.paths, workers=args.workers)
    _emit(args, rep.to_dict(), rep.table())
    return 0


def cmd_oracle(args):
    u = load_step(args.input)
    if args.c is None and not (args.alpha or args.beta):
        lo, hi = index_range(u.knots, _interval(args))
        x = u.interleaved()[lo:hi + 1]
        fast = total_variation(u, _interval(args))
        slow = [dp_profile(x, x, m) for m in ("TV", "UTV", "DTV")]
    else:
        alpha, beta = _band(args, u)
        tri = interleave(u, alpha, beta)
        fast = minimal_envelope(tri).profile
        o = ab_trunc_oracle_profile(tri)
        slow = [o.tv, o.utv, o.dtv]
    diffs = {
        name: float(np.max(np.abs(getattr(fast, name) - s)))
        for name, s in zip(("tv", "utv", "dtv"), slow)
    }
    worst = max(diffs.values())
    ok = worst <= args.tol
    _emit(args, {"max_abs_diff": diffs, "ok": ok, "tol": args.tol},
          f"max |fast - oracle| = {worst:.3g} ({'ok' if ok else 'MISMATCH'})")
    return 0 if ok else 3


# -- parser ----------------------------------------------------------------------


def _seed_default():
    env = os.environ.get("TRUNCVAR_SEED")
    return int(env) if env not in (None, "") else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_seed_default(),
                        help="RNG seed (default: $TRUNCVAR_SEED or 0)")
    common.add_argument("--tol", type=float, default=1e-9, help="tolerance for cross-route diffs")
    common.add_argument("--output", default="-", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "table"), default="json")

    band = argparse.ArgumentParser(add_help=False)
    band.add_argument("--input", required=True, help="step function JSON or time,value CSV")
    band.add_argument("--c", type=float, help="constant band [-c/2; c/2]")
    band.add_argument("--alpha", help="lower characteristic (JSON/CSV)")
    band.add_argument("--beta", help="upper characteristic (JSON/CSV)")

    p = argparse.ArgumentParser(prog="truncvar", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tv", parents=[common, band], help="total / truncated / p-variation")
    s.add_argument("--interval", help="a,b (endpoints on knots or strictly inside intervals)")
    s.add_argument("--truncated", action="store_true", help="accepted for clarity; implied by --c")
    s.add_argument("--p", type=float, help="p-variation exponent instead of TV")
    s.set_defaults(func=cmd_tv)

    s = sub.add_parser("envelope", parents=[common, band], help="minimal-variation envelope")
    s.set_defaults(func=cmd_envelope)

    for name, func, hlp in (("play", cmd_play, "play operator output"),
                            ("skorohod", cmd_skorohod, "Skorohod decomposition check")):
        s = sub.add_parser(name, parents=[common, band], help=hlp)
        s.add_argument("--xi0", type=float, required=True, help="starting value")
        s.add_argument("--route", choices=("envelope", "recursion"), default="envelope")
        s.set_defaults(func=func)

    s = sub.add_parser("rates", parents=[common], help="Monte Carlo growth rate of TV^c")
    s.add_argument("--process", choices=("bm", "brownian", "fbm", "stable"), required=True)
    s.add_argument("--T", type=float, default=1.0)
    s.add_argument("--n", type=int, default=2 ** 15)
    s.add_argument("--paths", type=int, default=20)
    s.add_argument("--c-min", type=float, required=True)
    s.add_argument("--c-max", type=float, required=True)
    s.add_argument("--c-points", type=int, default=8)
    s.add_argument("--hurst", type=float)
    s.add_argument("--stability", type=float)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--dump-path", help="write replicate 0 as time,value CSV")
    s.set_defaults(func=cmd_rates)

    s = sub.add_parser("oracle", parents=[common, band], help="diff fast profiles against brute force")
    s.add_argument("--interval")
    s.set_defaults(func=cmd_oracle)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except TruncVarError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
