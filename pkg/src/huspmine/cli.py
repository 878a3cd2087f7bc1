"""Command-line entry points: mine, verify, gen, and bench.

Exit codes: 0 success (or verification PASS), 1 verification mismatch,
2 usage error, 3 I/O or data error.
"""

import argparse
import sys
from fractions import Fraction
from time import perf_counter

from .bounds import BoundKind
from .datagen import GenParams, generate, small_random_qsdb
from .miner import (MinerConfig, UtilityPredicate, exact_minimum_utility,
                    mine, stats_document)
from .oracle import OracleLimitError, OracleLimits, mine_bruteforce
from .qsdb import (ParseError, QSDB, load_database, serialize_sequences,
                   serialize_utilities)

ALL_CONFIG_COMBINATIONS = tuple(
    (bound, iip, ep)
    for bound in (BoundKind.TRSU, BoundKind.RSU)
    for iip in (True, False)
    for ep in (True, False)
)


def _ratio(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid ratio {text!r}")
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"ratio {text} outside (0, 1]")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return value


def _ratio_list(text: str) -> list[Fraction]:
    parts = [p for p in text.split(",") if p]
    if not parts:
        raise argparse.ArgumentTypeError("empty ratio list")
    return [_ratio(p) for p in parts]


def _config_token(token: str) -> MinerConfig:
    parts = token.split("-")
    base = parts[0]
    if base not in ("trsu", "rsu"):
        raise argparse.ArgumentTypeError(f"config {token!r} must start with trsu or rsu")
    cfg = MinerConfig(ratio="1", bound=BoundKind(base))
    for part in parts[1:]:
        if part == "noiip":
            cfg.iip = False
        elif part == "noep":
            cfg.ep = False
        elif part == "nopeu":
            cfg.peu_depth_prune = False
        elif part == "noswu":
            cfg.swu_prefilter = False
        else:
            raise argparse.ArgumentTypeError(f"unknown config modifier {part!r}")
    return cfg


def _config_list(text: str) -> list[tuple[str, MinerConfig]]:
    parts = [p for p in text.split(",") if p]
    if not parts:
        raise argparse.ArgumentTypeError("empty config list")
    return [(p, _config_token(p)) for p in parts]


def _add_dataset_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="sequence file")
    parser.add_argument("--utils", required=True, help="external-utility file")


def _add_threshold_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--ratio", type=_ratio, help="threshold as a fraction of total utility")
    group.add_argument("--minutil", type=int, help="absolute minimum utility")


def _write_text(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_mine(args) -> int:
    db = load_database(args.data, args.utils)
    cfg = MinerConfig(
        ratio=args.ratio,
        min_utility=args.minutil,
        bound=BoundKind(args.bound),
        iip=not args.no_iip,
        ep=not args.no_ep,
        peu_depth_prune=not args.no_peu,
        swu_prefilter=not args.no_swu,
        threads=args.threads,
    )
    result = mine(db, cfg)
    _write_text(args.out, "".join(line + "\n" for line in result.lines()))
    stats_json = stats_document(cfg, result.stats, data=args.data,
                                utils=args.utils, out=args.out or "-") + "\n"
    if args.stats is None:
        sys.stderr.write(stats_json)
    else:
        _write_text(args.stats, stats_json)
    return 0


def _verify_one(db: QSDB, ratio: Fraction, label: str) -> bool:
    """Compare the miner against the brute-force reference for every combination."""
    predicate = UtilityPredicate(exact_minimum_utility(MinerConfig(ratio=ratio), db))
    expected = {(p.itemsets, u) for p, u in mine_bruteforce(db, predicate)}
    for bound, iip, ep in ALL_CONFIG_COMBINATIONS:
        cfg = MinerConfig(ratio=ratio, bound=bound, iip=iip, ep=ep)
        got = mine(db, cfg).as_set()
        if got != expected:
            name = f"bound={bound.value} iip={iip} ep={ep}"
            print(f"FAIL {label} ({name})")
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            if missing:
                print(f"  missing: {missing[:5]}")
            if extra:
                print(f"  extra:   {extra[:5]}")
            return False
    print(f"PASS {label}")
    return True


def _cmd_verify(args) -> int:
    db = load_database(args.data, args.utils)
    limits = OracleLimits()
    if not _verify_one(db, args.ratio, f"{args.data} ratio={args.ratio}"):
        return 1
    for seed in range(args.seeds):
        random_db = small_random_qsdb(
            seed,
            max_sequences=limits.max_sequences,
            max_items=limits.max_distinct_items,
            max_sequence_length=limits.max_sequence_length,
        )
        if not _verify_one(random_db, args.ratio, f"seed={seed} ratio={args.ratio}"):
            return 1
    return 0


def _cmd_gen(args) -> int:
    params = GenParams(
        sequence_count=args.d,
        avg_elements=args.c,
        avg_items_per_element=args.t,
        distinct_items=args.n,
        max_quantity=args.max_quantity,
        eu_range=(args.eu_min, args.eu_max),
        seed=args.seed,
    )
    db = generate(params)
    seq_path = f"{args.out_prefix}.seq"
    eu_path = f"{args.out_prefix}.eu"
    with open(seq_path, "w", encoding="utf-8") as fh:
        fh.write(serialize_sequences(db))
    with open(eu_path, "w", encoding="utf-8") as fh:
        fh.write(serialize_utilities(db))
    print(f"wrote {seq_path} ({len(db.sequences)} sequences) and {eu_path}")
    return 0


def _cmd_bench(args) -> int:
    db = load_database(args.data, args.utils)
    rows = ["config,ratio,runtime_ms,candidates,husps,mem_bytes"]
    for name, base_cfg in args.configs:
        for ratio in args.ratios:
            cfg = MinerConfig(
                ratio=ratio,
                bound=base_cfg.bound,
                iip=base_cfg.iip,
                ep=base_cfg.ep,
                peu_depth_prune=base_cfg.peu_depth_prune,
                swu_prefilter=base_cfg.swu_prefilter,
                threads=args.threads,
            )
            started = perf_counter()
            result = mine(db, cfg)
            elapsed_ms = int((perf_counter() - started) * 1000)
            s = result.stats
            rows.append(f"{name},{ratio},{elapsed_ms},{s.candidates},{s.husps},{s.mem_bytes}")
    _write_text(args.out, "".join(r + "\n" for r in rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="huspmine",
        description="High-utility sequential pattern mining on quantitative sequence data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mine = sub.add_parser("mine", help="mine all high-utility sequential patterns")
    _add_dataset_args(p_mine)
    _add_threshold_args(p_mine)
    p_mine.add_argument("--bound", choices=("trsu", "rsu"), default="trsu",
                        help="upper bound used by early pruning")
    p_mine.add_argument("--no-iip", action="store_true", help="disable irrelevant-item pruning")
    p_mine.add_argument("--no-ep", action="store_true", help="disable early pruning")
    p_mine.add_argument("--no-peu", action="store_true", help="disable PEU depth pruning")
    p_mine.add_argument("--no-swu", action="store_true", help="disable the SWU prefilter")
    p_mine.add_argument("--threads", type=_positive_int, default=1,
                        help="process first-level branches concurrently")
    p_mine.add_argument("--out", help="result file (default stdout)")
    p_mine.add_argument("--stats", help="stats JSON file (default stderr)")
    p_mine.set_defaults(func=_cmd_mine)

    p_verify = sub.add_parser("verify", help="check the miner against brute force")
    _add_dataset_args(p_verify)
    p_verify.add_argument("--ratio", type=_ratio, required=True)
    p_verify.add_argument("--seeds", type=int, default=0,
                          help="also verify this many seeded random databases")
    p_verify.set_defaults(func=_cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a synthetic database")
    p_gen.add_argument("--d", type=_positive_int, required=True, help="sequence count")
    p_gen.add_argument("--c", type=float, default=6.0, help="average elements per sequence")
    p_gen.add_argument("--t", type=float, default=4.0, help="average items per element")
    p_gen.add_argument("--n", type=_positive_int, default=1000, help="distinct item count")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--max-quantity", type=_positive_int, default=5)
    p_gen.add_argument("--eu-min", type=_positive_int, default=1)
    p_gen.add_argument("--eu-max", type=_positive_int, default=10)
    p_gen.add_argument("--out-prefix", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="compare configurations on one dataset")
    _add_dataset_args(p_bench)
    p_bench.add_argument("--ratios", type=_ratio_list, required=True,
                         help="comma-separated threshold ratios")
    p_bench.add_argument("--configs", type=_config_list,
                         default=[("trsu", _config_token("trsu")), ("rsu", _config_token("rsu"))],
                         help="comma-separated config tokens, e.g. trsu,rsu,trsu-noiip")
    p_bench.add_argument("--threads", type=_positive_int, default=1)
    p_bench.add_argument("--out", help="CSV output (default stdout)")
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OracleLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
