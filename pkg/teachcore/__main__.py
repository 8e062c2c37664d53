import argparse
import sys
from logging import getLogger
from pathlib import Path

log = getLogger("teachcore.main")


def _split_ids(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _selector(values: list[str] | None):
    # "all" か、カンマ区切りの ID 列 (空文字列は空集合)
    if not values or any(v.strip().lower() == "all" for v in values):
        return None
    return [_split_ids(v) for v in values]


def _choices(value: str | None, every: list[str], default: str) -> list[str]:
    value = value or default
    return every if value == "all" else [value]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="teachcore", description="Exact machine-teaching costs over feature lattices")
    parser.add_argument("--version", action="store_true", help="show version")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="configuration file (written with defaults if missing)")
    common.add_argument("--format", choices=["table", "machine"], default="table")
    common.add_argument("--out", type=Path)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, help="maximum number of search states")
    common.add_argument("--max-subset-size", type=int)
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("-q", "--quiet", action="store_true")

    target = argparse.ArgumentParser(add_help=False)
    target.add_argument("--learner", choices=["lin", "1nn", "all"], default="lin")
    target.add_argument("--feature-set", action="append", metavar="IDS|all",
                        help="comma separated feature ids (repeatable, '' for the empty set)")

    sub = parser.add_subparsers(dest="command")

    analyze = sub.add_parser("analyze", parents=[common, target], help="feature set cost table")
    analyze.add_argument("--instance", type=Path, required=True)

    simulate = sub.add_parser("simulate", parents=[common, target], help="replay a script or search optimal plans")
    simulate.add_argument("--instance", type=Path, required=True)
    simulate.add_argument("--protocol", choices=["open", "edf", "all"], default="open")
    simulate.add_argument("--script", type=Path)
    simulate.add_argument("--optimal", action="store_true")

    verify = sub.add_parser("verify", parents=[common], help="check properties by exhaustive search")
    verify.add_argument("properties", nargs="*", metavar="PROPERTY", help="P1..P9, L1 or all (default: all)")
    verify.add_argument("--properties", dest="property_list", help="comma separated property ids")
    verify.add_argument("--instance", type=Path, action="append", default=[])
    verify.add_argument("--trials", type=int)

    generate = sub.add_parser("generate", parents=[common], help="write a generated instance")
    generate.add_argument("--kind", default="random",
                          choices=["random", "concept-tightness", "invalidation-tightness", "1nn-explosion"])
    generate.add_argument("--dimension", type=int, default=1)
    generate.add_argument("--pool-size", type=int, default=4)
    generate.add_argument("--k", type=int, default=2)
    generate.add_argument("--mode", choices=["separable", "general"], default="general")
    generate.add_argument("--lattice", choices=["chain", "powerset"], default="chain")
    generate.add_argument("--both-labels", action="store_true")
    return parser


def _properties(args) -> list[str] | None:
    names = list(args.properties)
    if args.property_list:
        names.extend(_split_ids(args.property_list))
    names = [n.upper() for n in names]
    if not names or "ALL" in names:
        return None
    return names


def request_values(args) -> dict:
    values = dict(command=args.command, seed=args.seed, budget=args.budget, max_subset_size=args.max_subset_size,
                  format=args.format, out=args.out)
    if args.command in ("analyze", "simulate"):
        values.update(instances=[args.instance], feature_sets=_selector(args.feature_set),
                      learners=_choices(args.learner, ["1nn", "lin"], "lin"))
    if args.command == "simulate":
        values.update(protocols=_choices(args.protocol, ["open", "edf"], "open"),
                      script=args.script, optimal=args.optimal)
    elif args.command == "verify":
        values.update(instances=args.instance, trials=args.trials)
        properties = _properties(args)
        if properties is not None:
            values["properties"] = properties
    elif args.command == "generate":
        values.update(kind=args.kind, dimension=args.dimension, pool_size=args.pool_size, k=args.k,
                      mode=args.mode, lattice=args.lattice, both_labels=args.both_labels)
    return values


def load_config(path: Path | None):
    from teachcore.appconfig import AppConfig

    if path is None:
        return AppConfig(Path("teachcore.yml"))  # 読み込まない (既定値のみ)
    config = AppConfig(path)
    config.load()
    return config


def run(argv: list[str] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.version:
        from teachcore import version_info
        print(version_info)
        return 0
    if not args.command:
        parser.print_help()
        return 2

    from teachcore.commands import (
        Command, ExitCode, RunRequest, exit_code_for, cmd_analyze, cmd_simulate, cmd_verify, cmd_generate,
    )
    from teachcore.errors import ProtocolError
    from teachcore.util import setup_logging

    setup_logging("warning" if args.quiet else "debug" if args.verbose else "info")
    try:
        config = load_config(args.config)
        if args.config is not None:
            print_level = "warning" if args.quiet else "debug" if args.verbose else config.logging.print_level
            setup_logging(print_level, config.logging.file_level, config.logging.log_file)

        req = RunRequest.parse(**request_values(args))
        handler = {
            Command.ANALYZE: cmd_analyze,
            Command.SIMULATE: cmd_simulate,
            Command.VERIFY: cmd_verify,
            Command.GENERATE: cmd_generate,
        }[req.command]
        result = handler(req, config)

    except ProtocolError as e:
        log.error("%s (step %s)", e, e.step_index)
        if e.transcript is not None:
            log.error("Actions applied before the failure: %s",
                      ", ".join(map(str, e.transcript.actions)) or "(none)")
        return int(exit_code_for(e))

    except Exception as e:
        code = exit_code_for(e)
        if code is ExitCode.UNEXPECTED:
            log.exception("Unexpected error", exc_info=e)
        else:
            log.error(str(e))
        return int(code)

    if req.out is not None and req.command is not Command.GENERATE:
        req.out.parent.mkdir(parents=True, exist_ok=True)
        req.out.write_text(result.output + "\n", encoding="utf-8")
    else:
        print(result.output)
    return int(result.exit_code)


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
