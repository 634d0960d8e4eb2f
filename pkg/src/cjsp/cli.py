"""Command-line interface: solve, expand, validate, bench, gantt.

Exit codes: 0 success, 1 failed validation, 2 instance/schedule parse
error, 3 invalid solver configuration, 4 I/O failure, 64 usage error.
The ``CJSP_SEED`` environment variable supplies the seed when no
``--seed`` flag is given.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import bench as bench_mod
from .corpus import (
    bundled_registry,
    load_bundled_corpus,
    load_bundled_instance,
    load_corpus_dir,
    load_instance_file,
)
from .cyclic import expand
from .errors import EmptySchedule, InvalidConfig, OrderZero, ParseError, PermutationMismatch
from .gantt import render_gantt
from .instance import Instance, to_extended
from .sa import SAConfig, anneal, best_of_seeds
from .schedule import decode, schedule_from_json, schedule_to_json, validate

EX_OK = 0
EX_VIOLATIONS = 1
EX_PARSE = 2
EX_CONFIG = 3
EX_IO = 4
EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse with sysexits-style usage failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    env = os.environ.get("CJSP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InvalidConfig(f"CJSP_SEED must be an integer, got {env!r}") from exc
    return 0


def _add_sa_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="FILE",
                   help="key = value profile for the flags below; flags win on conflict")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $CJSP_SEED or 0)")
    p.add_argument("--steps", type=int, default=None, metavar="N",
                   help="outer cooling steps (default 3000; 6000 for order >= 6)")
    p.add_argument("--steps-per-temp", type=int, default=None, metavar="N",
                   help="moves per temperature (default 3000; 6000 for order >= 6)")
    p.add_argument("--t0", type=float, default=None, metavar="T", help="initial temperature (default 1.0)")
    p.add_argument("--alpha", type=float, default=None, metavar="A",
                   help="cooling fraction in (0,1) (default 0.97)")
    p.add_argument("--kt", type=float, default=None, metavar="K",
                   help="acceptance scaling constant (default 0.01)")
    p.add_argument("--time-limit", type=float, default=None, metavar="SEC", help="wall-clock cap per run")


def _config_from(args) -> SAConfig:
    """Precedence: explicit flag > config file > CJSP_SEED env > defaults."""
    cfg = SAConfig(seed=_default_seed())
    if args.config:
        text = Path(args.config).read_text()
        file_cfg = SAConfig.from_text(text)
        keys = {
            line.split("#", 1)[0].partition("=")[0].strip()
            for line in text.splitlines()
            if "=" in line.split("#", 1)[0]
        }
        cfg = replace(cfg, **{k: getattr(file_cfg, k) for k in keys})
    overrides = {
        "initial_temperature": args.t0,
        "cooling_steps": args.steps,
        "cooling_fraction": args.alpha,
        "steps_per_temp": args.steps_per_temp,
        "kt": args.kt,
        "time_limit": args.time_limit,
        "seed": args.seed,
    }
    return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})


def _load_instance_arg(spec: str) -> Instance:
    path = Path(spec)
    if path.exists():
        return load_instance_file(path)
    try:
        return load_bundled_instance(spec)
    except KeyError:
        raise FileNotFoundError(f"no such file or bundled instance: {spec}") from None


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _write_bytes(path: str | None, blob: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(blob)
    else:
        Path(path).write_bytes(blob)


def _cmd_solve(args) -> int:
    inst = _load_instance_arg(args.instance)
    cfg = _config_from(args).resolved(args.order)
    cyc = expand(inst, args.order)
    if args.best_of > 1:
        if args.trace is not None:
            print("cjsp: --trace applies to single runs, ignoring it", file=sys.stderr)
        result, _ = best_of_seeds(cyc.expanded, cfg, args.best_of)
    else:
        result = anneal(cyc.expanded, cfg, collect_trace=args.trace is not None)
    if args.trace is not None and result.trace is not None:
        lines = ["step,temperature,current,best"]
        lines += [f"{t.step},{t.temperature!r},{t.current_value},{t.best_value}" for t in result.trace]
        Path(args.trace).write_text("\n".join(lines) + "\n")
    sched = decode(cyc.expanded, result.best_perm)
    doc = schedule_to_json(sched, instance_name=inst.name, order=args.order, scale=inst.scale)
    status = f"makespan {inst.display(sched.makespan)}"
    if result.timed_out:
        status += " (time limit hit, best so far)"
    if args.out:
        Path(args.out).write_text(doc)
        print(status)
    else:
        print(status, file=sys.stderr)
        sys.stdout.write(doc)
    return EX_OK


def _cmd_expand(args) -> int:
    inst = _load_instance_arg(args.instance)
    cyc = expand(inst, args.order)
    comment = f"base={inst.name or 'unnamed'} k={args.order}"
    _write_text(args.out, to_extended(cyc.expanded, comment=comment))
    return EX_OK


def _cmd_validate(args) -> int:
    inst = _load_instance_arg(args.instance)
    sched, meta = schedule_from_json(Path(args.schedule).read_text())
    target = expand(inst, meta["order"]).expanded
    violations = validate(target, sched)
    if not violations:
        print(f"OK: {len(sched.entries)} operations, makespan {target.display(sched.makespan)}")
        return EX_OK
    for v in violations:
        print(f"{v.kind}: {v.detail}", file=sys.stderr)
    print(f"{len(violations)} violation(s)", file=sys.stderr)
    return EX_VIOLATIONS


def _cmd_gantt(args) -> int:
    sched, meta = schedule_from_json(Path(args.schedule).read_text())
    fmt = "ascii" if args.ascii else args.format
    title = meta["instance"] if meta["order"] == 1 else f"{meta['instance']} (order {meta['order']})"
    blob = render_gantt(sched, format=fmt, scale=meta["scale"], title=title)
    _write_bytes(args.out, blob)
    return EX_OK


def _parse_orders(text: str) -> list[int]:
    try:
        text = text.strip()
        if ".." in text:
            lo, _, hi = text.partition("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise InvalidConfig(f"cannot parse orders spec {text!r}") from None


def _cmd_bench(args) -> int:
    if args.instance:
        corpus = {}
        for spec in args.instance:
            inst = _load_instance_arg(spec)
            corpus[inst.name or spec] = inst
    elif args.dir:
        corpus = load_corpus_dir(Path(args.dir))
    else:
        corpus = load_bundled_corpus()
    if args.registry:
        registry = bench_mod.BestKnownRegistry.from_csv(Path(args.registry).read_text())
    else:
        registry = bundled_registry()
    orders = _parse_orders(args.orders)
    if not orders or min(orders) < 1:
        raise InvalidConfig(f"orders must be positive integers, got {args.orders!r}")
    cfg = _config_from(args)
    report = bench_mod.run_benchmark(
        corpus, orders, seeds=args.seeds, cfg=cfg, registry=registry, workers=args.workers
    )
    if args.format == "csv":
        out = bench_mod.to_csv(report)
    elif args.format == "md":
        out = bench_mod.to_markdown(report)
    else:
        out = bench_mod.to_json(report)
    _write_text(args.out, out)
    if args.plot:
        bench_mod.render_report_figure(report, args.plot)
    return EX_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="cjsp", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[], help="anneal one instance at a given cyclic order")
    p.add_argument("--instance", required=True, help="instance file or bundled name")
    p.add_argument("--order", type=int, default=1, help="cyclic order k (default 1)")
    p.add_argument("--best-of", type=int, default=1, metavar="S", help="run S seeds, keep the best")
    p.add_argument("--out", help="write schedule JSON here instead of stdout")
    p.add_argument("--trace", help="write a step,temperature,current,best CSV here")
    _add_sa_flags(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("expand", help="emit the order-k expansion in the extended format")
    p.add_argument("instance", help="instance file or bundled name")
    p.add_argument("--order", type=int, required=True, help="cyclic order k")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=_cmd_expand)

    p = sub.add_parser("validate", help="check a schedule JSON against its instance")
    p.add_argument("--instance", required=True, help="instance file or bundled name")
    p.add_argument("--schedule", required=True, help="schedule JSON produced by solve")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("gantt", help="render a schedule JSON as SVG or ASCII")
    p.add_argument("--schedule", required=True, help="schedule JSON produced by solve")
    p.add_argument("--format", choices=("svg", "ascii"), default="svg")
    p.add_argument("--ascii", action="store_true", help="shortcut for --format ascii")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=_cmd_gantt)

    p = sub.add_parser("bench", help="compare direct order-k solving with the repetition baseline")
    p.add_argument("--dir", help="directory of *.jss instances (default: bundled corpus)")
    p.add_argument("--instance", action="append",
                   help="benchmark a single file or bundled name (repeatable)")
    p.add_argument("--orders", default="1,2,4", help="comma list or lo..hi range (default 1,2,4)")
    p.add_argument("--seeds", type=int, default=1, help="independent seeds per cell (default 1)")
    p.add_argument("--registry", help="name,best1 CSV overriding the built-in registry")
    p.add_argument("--format", choices=("csv", "md", "json"), default="md")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", help="report path (default stdout)")
    p.add_argument("--plot", help="also render a figure of the report here (png/svg)")
    _add_sa_flags(p)
    p.set_defaults(fn=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"cjsp: parse error: {exc}", file=sys.stderr)
        return EX_PARSE
    except (PermutationMismatch, EmptySchedule, ValueError, KeyError) as exc:
        print(f"cjsp: bad input: {exc}", file=sys.stderr)
        return EX_PARSE
    except (InvalidConfig, OrderZero) as exc:
        print(f"cjsp: invalid configuration: {exc}", file=sys.stderr)
        return EX_CONFIG
    except FileNotFoundError as exc:
        print(f"cjsp: {exc}", file=sys.stderr)
        return EX_IO
    except OSError as exc:
        print(f"cjsp: I/O error: {exc}", file=sys.stderr)
        return EX_IO


if __name__ == "__main__":
    sys.exit(main())
