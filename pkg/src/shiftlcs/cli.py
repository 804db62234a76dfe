"""Command-line surface: LCS queries, experiments, and bound evaluation."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import bounds as bd
from . import montecarlo as mc
from .geometry import blockcount_bound
from .lcs import KERNELS, lcs_witness
from .words import Word, parse_word_lines


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip() != "")


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip() != "")


def _error_json(kind: str, message: str) -> str:
    return json.dumps({"error": {"type": kind, "message": message}}, sort_keys=True)


# ---------------------------------------------------------------------------
# lcs subcommand
# ---------------------------------------------------------------------------

def _cmd_lcs(args) -> int:
    try:
        if args.from_file:
            k, words = parse_word_lines(Path(args.from_file).read_text())
            if len(words) < 2:
                raise ValueError("word file must contain at least two words")
            v, w = words[0], words[1]
        else:
            if args.word1 is None or args.word2 is None:
                raise ValueError("two words are required (inline or --from-file)")
            v = Word.from_text(args.word1, k=args.k)
            w = Word.from_text(args.word2, k=args.k)
        kernel = KERNELS[args.kernel]
        length = kernel(v, w)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(length)
    if args.witness:
        witness = lcs_witness(v, w)
        print(json.dumps(witness.to_json_dict(), sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# simulate subcommand
# ---------------------------------------------------------------------------

_CONFIG_FLAGS = (
    ("kind", "kind"),
    ("k", "k"),
    ("n", "n"),
    ("trials", "trials"),
    ("seed", "master_seed"),
    ("eps", "eps"),
    ("kernel", "kernel"),
    ("block_len", "block_len"),
    ("m", "m"),
    ("gamma", "gamma"),
    ("c_k", "c_k"),
    ("emit_alignment", "emit_alignment"),
    ("baseline", "baseline"),
)


def _build_configs(args) -> list[mc.ExperimentConfig]:
    base: dict = {"version": mc.CONFIG_VERSION}
    if args.config:
        base = json.loads(Path(args.config).read_text())
        if "config" in base and isinstance(base["config"], dict):
            base = base["config"]
        if not isinstance(base, dict):
            raise mc.ConfigError("config JSON must be an object")
        base.setdefault("version", mc.CONFIG_VERSION)
    for flag, field_name in _CONFIG_FLAGS:
        val = getattr(args, flag)
        if val is not None and val is not False:
            base[field_name] = val
    if args.lambdas is not None:
        base["lam_grid"] = list(_parse_float_list(args.lambdas))
    if args.thresholds is not None:
        base["thresholds"] = list(_parse_float_list(args.thresholds))
    if args.ks is not None:
        base["ks"] = list(_parse_int_list(args.ks))

    shifts: list[int | None] = [None]
    if args.s is not None:
        shifts = list(_parse_int_list(args.s))
        if not shifts:
            raise mc.ConfigError("empty --s list")
    configs = []
    for s in shifts:
        payload = dict(base)
        if s is not None:
            payload["s"] = s
        configs.append(mc.ExperimentConfig.from_dict(payload))
    return configs


def _cmd_simulate(args) -> int:
    try:
        configs = _build_configs(args)
    except (mc.ConfigError, ValueError, OSError) as exc:
        print(_error_json("config", str(exc)), file=sys.stderr)
        return 2

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    workers = max(1, args.threads)
    sweep = len(configs) > 1
    mean_curve: list[tuple[int, float]] = []
    try:
        for config in configs:
            tag = f"_s{config.s}" if sweep else ""
            if config.kind == mc.KIND_GAMMA_SWEEP:
                rows = mc.run_gamma_sweep(
                    config.ks, config.n, config.trials, config.master_seed,
                    kernel=config.kernel, workers=workers,
                )
                csv_path = out_dir / f"records{tag}.csv"
                lines = ["k,gamma_low,gamma_high,gamma_sqrtk"]
                lines += [
                    f"{r.k},{r.gamma_low!r},{r.gamma_high!r},{r.gamma_sqrtk!r}"
                    for r in rows
                ]
                csv_path.write_text("\n".join(lines) + "\n")
                print(f"master_seed={config.master_seed}")
                print(f"wrote {csv_path}")
                continue
            records, summary = mc.run_experiment(config, workers=workers)
            csv_path = out_dir / f"records{tag}.csv"
            summary_path = out_dir / f"summary{tag}.json"
            mc.write_records_csv(csv_path, records, mc.record_columns(config))
            mc.write_summary(summary_path, config, summary)
            if config.kind in (mc.KIND_SHIFT, mc.KIND_TAILS):
                mean_curve.append((config.s, summary.mean))
            print(f"master_seed={config.master_seed}")
            print(f"wrote {csv_path}")
            print(f"wrote {summary_path}")
            print(f"mean={summary.mean!r} std={summary.std!r} count={summary.count}")
            if args.plot_data and config.kind == mc.KIND_TAILS:
                table = summary.extras["tail_table"]
                for side in ("upper", "lower"):
                    series = out_dir / f"tails_{side}{tag}.csv"
                    rows = [f"t,empirical,bound"]
                    rows += [
                        f"{row['t']!r},{row[side + '_freq']!r},{row[side + '_bound']!r}"
                        for row in table
                    ]
                    series.write_text("\n".join(rows) + "\n")
                    print(f"wrote {series}")
    except mc.ConfigError as exc:
        print(_error_json("config", str(exc)), file=sys.stderr)
        return 2
    except mc.InternalCheckError as exc:
        print(_error_json("internal-check", str(exc)), file=sys.stderr)
        return 1

    if args.plot_data and mean_curve:
        series = out_dir / "mean_vs_s.csv"
        rows = ["s,mean_length"]
        rows += [f"{s},{mean!r}" for s, mean in mean_curve]
        series.write_text("\n".join(rows) + "\n")
        print(f"wrote {series}")
    return 0


# ---------------------------------------------------------------------------
# bounds subcommand
# ---------------------------------------------------------------------------

def _check_constants(kmax: int) -> int:
    table = bd.GammaTable()
    all_hold = True
    for k in range(2, kmax + 1):
        gamma_lower = table.lower(k)
        value, holds = bd.case2_constant_check(k, gamma_lower)
        all_hold &= holds
        status = "holds" if holds else "FAILS"
        print(f"k={k} gamma_lower={gamma_lower:.6g} value={value:.6g} {status}")
    return 0 if all_hold else 1


def _cmd_bounds(args) -> int:
    if args.check_constants:
        return _check_constants(args.kmax)
    if not args.name:
        print("error: a bound name or --check-constants is required", file=sys.stderr)
        return 2
    name = args.name
    try:
        if name == "boris":
            value = bd.boris_bound(args.m, args.k, args.lam)
        elif name == "boriseasy":
            value = bd.boriseasy_bound(args.m, args.k, args.lam)
        elif name == "grosscase":
            value = bd.grosscase_bound(args.len_a, args.len_b, args.k)
        elif name == "azuma":
            value = bd.azuma_tail(args.lam, args.n)
        elif name == "hoeffding":
            ranges = [(0.0, w) for w in _parse_float_list(args.ranges)]
            value = bd.hoeffding_tail(args.t, ranges)
        elif name == "gamma-bracket":
            low, high = bd.gamma_bracket(args.n, args.mean)
            print(f"{low:.6g} {high:.6g}")
            return 0
        elif name == "theorem1":
            value, in_regime = bd.theorem1_bound(args.n, args.t, args.c_k)
            print(f"{value:.6g}")
            if not in_regime:
                print(f"note: t={args.t:.6g} below regime floor "
                      f"{bd.theorem1_regime_floor(args.n):.6g}")
            return 0
        elif name == "theorem2":
            value, in_regime = bd.theorem2_bound(args.n, args.t, args.c_k)
            print(f"{value:.6g}")
            if not in_regime:
                print(f"note: t={args.t:.6g} below regime floor "
                      f"{bd.theorem2_regime_floor(args.n):.6g}")
            return 0
        elif name == "exp-inequality":
            print("holds" if bd.exp_inequality_check(args.x) else "FAILS")
            return 0
        elif name == "binom-upper":
            value = bd.binom_upper(args.n, args.j)
        elif name == "blockcount":
            print(blockcount_bound(args.n, args.eps))
            return 0
        elif name == "case2":
            value, holds = bd.case2_constant_check(args.k, args.gamma, args.eps)
            print(f"{value:.6g} {'holds' if holds else 'FAILS'}")
            return 0
        else:
            print(f"error: unknown bound {name!r}", file=sys.stderr)
            return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{value:.6g}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftlcs",
        description="LCS statistics of shifted random words",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_lcs = sub.add_parser("lcs", help="LCS length (and optional witness) of two words")
    p_lcs.add_argument("word1", nargs="?", default=None)
    p_lcs.add_argument("word2", nargs="?", default=None)
    p_lcs.add_argument("--kernel", choices=sorted(KERNELS), default="dp")
    p_lcs.add_argument("--witness", action="store_true")
    p_lcs.add_argument("--k", type=int, default=None, help="alphabet size override")
    p_lcs.add_argument("--from-file", default=None, help="read the two words from a word file")
    p_lcs.set_defaults(func=_cmd_lcs)

    p_sim = sub.add_parser("simulate", help="run a Monte Carlo experiment")
    p_sim.add_argument("--kind", choices=mc.KINDS, default=None)
    p_sim.add_argument("--k", type=int, default=None)
    p_sim.add_argument("--n", type=int, default=None)
    p_sim.add_argument("--s", default=None, help="shift, or comma list for a sweep")
    p_sim.add_argument("--trials", type=int, default=None)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--eps", type=float, default=None)
    p_sim.add_argument("--kernel", choices=sorted(KERNELS), default=None)
    p_sim.add_argument("--block-len", dest="block_len", type=int, default=None)
    p_sim.add_argument("--m", type=int, default=None)
    p_sim.add_argument("--lambdas", default=None, help="comma list of slack values")
    p_sim.add_argument("--thresholds", default=None, help="comma list of deviations")
    p_sim.add_argument("--ks", default=None, help="comma list of alphabet sizes")
    p_sim.add_argument("--gamma", type=float, default=None)
    p_sim.add_argument("--c-k", dest="c_k", type=float, default=None)
    p_sim.add_argument("--emit-alignment", dest="emit_alignment", action="store_true")
    p_sim.add_argument("--baseline", action="store_true")
    p_sim.add_argument("--threads", type=int, default=1)
    p_sim.add_argument("--out", default="out")
    p_sim.add_argument("--plot-data", dest="plot_data", action="store_true")
    p_sim.add_argument("--config", default=None)
    p_sim.set_defaults(func=_cmd_simulate)

    p_b = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p_b.add_argument("name", nargs="?", default=None)
    p_b.add_argument("--m", type=int, default=1)
    p_b.add_argument("--k", type=int, default=2)
    p_b.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p_b.add_argument("--n", type=int, default=100)
    p_b.add_argument("--t", type=float, default=1.0)
    p_b.add_argument("--c-k", dest="c_k", type=float, default=1.0)
    p_b.add_argument("--len-a", dest="len_a", type=int, default=1)
    p_b.add_argument("--len-b", dest="len_b", type=int, default=0)
    p_b.add_argument("--mean", type=float, default=0.0)
    p_b.add_argument("--x", type=float, default=0.0)
    p_b.add_argument("--j", type=int, default=1)
    p_b.add_argument("--eps", type=float, default=0.01)
    p_b.add_argument("--gamma", type=float, default=0.5)
    p_b.add_argument("--ranges", default="1", help="comma list of range widths")
    p_b.add_argument("--check-constants", dest="check_constants", action="store_true")
    p_b.add_argument("--kmax", type=int, default=26)
    p_b.set_defaults(func=_cmd_bounds)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
