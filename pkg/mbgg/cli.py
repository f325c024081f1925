#!/usr/bin/env python3
"""
mbgg command line.

Every subcommand that checks something prints a report whose first line is
PASS, FAIL or INCONCLUSIVE. Exit status: 0 on pass or a finished solve,
1 on a failed check, 2 on bad input or an inconclusive result.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional

from mbgg.config import get_config, load_config, load_config_from_env
from mbgg.errors import ErrorHandler, MBGGError, SynthesisError
from mbgg.game.mbh_format import dump_mbh, read_mbh
from mbgg.game.pairing import Pairing
from mbgg.gadgets.library import dump_library, load_library
from mbgg.gadgets.synthesis import synthesize_gadgets
from mbgg.gadgets.validator import validate_library
from mbgg.geography.digraph import Ruleset, classify_all, normalize_start, validate_convertible
from mbgg.geography.generator import enumerate_convertible, gen_convertible
from mbgg.geography.gg_format import dump_gg, read_gg
from mbgg.logging import get_logger, setup_logging
from mbgg.reduction.associated import build_associated_game, write_map
from mbgg.reduction.uniform import uniformize5
from mbgg.reports import Report, ReportStatus
from mbgg.solver.equivalence import verify_equivalence
from mbgg.solver.geography import solve_gg
from mbgg.solver.maker_breaker import Outcome, SolveLimits, certificate_valid, solve_mb
from mbgg.strategy.deviations import verify_breaker_deviations, verify_maker_deviations
from mbgg.strategy.regular import check_invariants, simulate_regular_outcome
from mbgg.strategy.trace import read_trace, replay_trace, trace_from_state

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_EXIT = {ReportStatus.PASS: EXIT_OK, ReportStatus.FAIL: EXIT_FAIL, ReportStatus.INCONCLUSIVE: EXIT_USAGE}

# check-deviations --lemma values and the side whose deviations they check
DEVIATION_CHECKS = {"5": "breaker", "8": "maker"}


def _write(args, text: str) -> None:
    target = getattr(args, 'output', None)
    if target:
        Path(target).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit(args, report: Report) -> int:
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(report.render_text().rstrip("\n"))
    return _EXIT[report.status]


def _limits(args) -> SolveLimits:
    limits = SolveLimits.from_config()
    overrides = {}
    if getattr(args, 'max_nodes', None) is not None:
        overrides['max_nodes'] = args.max_nodes
    if getattr(args, 'max_seconds', None) is not None:
        overrides['max_seconds'] = args.max_seconds
    if args.threads is not None:
        overrides['threads'] = args.threads
    return replace(limits, **overrides)


def _library(args):
    return load_library(args.library)


def _parse_choices(raw: Optional[str]) -> Dict[str, str]:
    choices: Dict[str, str] = {}
    if not raw:
        return choices
    for item in raw.split(","):
        vertex, sep, choice = item.partition("=")
        if not sep or not vertex or not choice:
            raise argparse.ArgumentTypeError(f"bad choice '{item}', expected vertex=successor")
        choices[vertex.strip()] = choice.strip()
    return choices


def cmd_validate(args) -> int:
    inst = read_gg(args.instance)
    report = validate_convertible(inst, require_planar=args.planar,
                                  allow_start_out_two=args.allow_start_out_two)
    return _emit(args, report)


def cmd_normalize(args) -> int:
    _write(args, dump_gg(normalize_start(read_gg(args.instance))))
    return EXIT_OK


def cmd_classify(args) -> int:
    classes = classify_all(read_gg(args.instance))
    for v, cls in classes.items():
        print(f"{v} {cls.value}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = build_associated_game(read_gg(args.instance), _library(args))
    spec = uniformize5(g.spec) if args.uniform5 else g.spec
    _write(args, dump_mbh(spec))
    if args.map:
        Path(args.map).write_text(write_map(g.map), encoding="utf-8")
    logger.info("reduce_done", squares=len(spec.squares), combos=len(spec.combos), uniform=args.uniform5)
    return EXIT_OK


def cmd_solve_gg(args) -> int:
    ruleset = Ruleset.REVISED if args.revised else Ruleset.ORIGINAL
    print(solve_gg(read_gg(args.instance), ruleset).render())
    return EXIT_OK


def _certificate_text(cert) -> str:
    if isinstance(cert, Pairing):
        return "".join(f"pair {a} {b}\n" for a, b in cert.ordered())
    return "".join(f"move {s}\n" for s in cert)


def cmd_solve_mb(args) -> int:
    pos = read_mbh(args.game)
    result = solve_mb(pos, _limits(args), use_memo=not args.no_memo)
    print(result.render())
    if result.outcome is Outcome.INCONCLUSIVE:
        return EXIT_USAGE
    if args.certify:
        if result.certificate is None:
            logger.warning("no_certificate", winner=result.outcome.value)
        else:
            if not certificate_valid(pos, result):
                logger.error("certificate_rejected", winner=result.outcome.value)
                return EXIT_FAIL
            Path(args.certify).write_text(_certificate_text(result.certificate), encoding="utf-8")
    return EXIT_OK


def cmd_verify_equivalence(args) -> int:
    report = verify_equivalence(read_gg(args.instance), _library(args), _limits(args), uniform=args.uniform5)
    return _emit(args, report)


def cmd_check_gadgets(args) -> int:
    return _emit(args, validate_library(_library(args)))


def cmd_synth_gadgets(args) -> int:
    seed = args.seed if args.seed is not None else get_config().seed
    try:
        lib = synthesize_gadgets(budget=args.budget, seed=seed)
    except SynthesisError as e:
        print(e.details.get('report') or f"FAIL\n# gadget search\n{e.message}")
        return EXIT_FAIL
    _write(args, dump_library(lib))
    return EXIT_OK


def cmd_simulate_regular(args) -> int:
    g = build_associated_game(read_gg(args.instance), _library(args))
    choices = _parse_choices(args.choices)
    result = simulate_regular_outcome(g, choices, choices)
    report = Report(title="regular play")
    report.add("Geography and Maker-Breaker winners agree", result.agree,
               f"{result.gg_winner.value}/{result.mb_winner.value}")
    if result.pairing_complete is not None:
        report.add("joint pairing is complete", result.pairing_complete)
    report.extend(check_invariants(g, result.state))
    report.bump("moves", len(result.state.moves))
    report.note = f"finished: {result.state.finished.value}"
    if args.trace:
        Path(args.trace).write_text(trace_from_state(result.state).render(), encoding="utf-8")
    return _emit(args, report)


def cmd_check_deviations(args) -> int:
    g = build_associated_game(read_gg(args.instance), _library(args))
    side = args.side or DEVIATION_CHECKS[args.lemma]
    if side == "breaker":
        report = verify_breaker_deviations(g, _limits(args) if args.confirm else None)
    else:
        report = verify_maker_deviations(g, piece_budget=get_config().solver.pairing_search_budget)
    return _emit(args, report)


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else get_config().seed
    _write(args, dump_gg(gen_convertible(args.vertices, seed=seed, start_out_degree=args.start_out_degree)))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    instances = enumerate_convertible(args.max_vertices)
    chunks = [f"# instance {k}\n{dump_gg(inst)}" for k, inst in enumerate(instances, start=1)]
    _write(args, "\n".join(chunks))
    logger.info("enumerated", count=len(instances), max_vertices=args.max_vertices)
    return EXIT_OK


def cmd_replay(args) -> int:
    g = build_associated_game(read_gg(args.instance), _library(args))
    return _emit(args, replay_trace(g, read_trace(args.trace)))


def _add_limit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-nodes", type=int, help="Node limit for the Maker-Breaker solver")
    p.add_argument("--max-seconds", type=float, help="Time limit in seconds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbgg",
        description="Generalized Geography to Maker-Breaker reduction toolkit",
    )
    parser.add_argument("--json", action="store_true", help="Print reports as JSON")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR")
    parser.add_argument("--log-file", help="Also write JSON log lines here")
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--threads", type=int, help="Solver threads")
    parser.add_argument("--library", help="Gadget library file (default: MBGG_GADGET_LIB or packaged)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Check that an instance is convertible")
    p.add_argument("instance")
    p.add_argument("--planar", action="store_true", help="Also require planarity")
    p.add_argument("--allow-start-out-two", action="store_true", help="Accept a start of out-degree 2")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("normalize", help="Give the start vertex out-degree 1")
    p.add_argument("instance")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("classify", help="Print the class of every vertex")
    p.add_argument("instance")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="Build the associated Maker-Breaker game")
    p.add_argument("instance")
    p.add_argument("-o", "--output")
    p.add_argument("--uniform5", action="store_true", help="Pad every combo to five squares")
    p.add_argument("--map", help="Write the square map sidecar here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve-gg", help="Solve a Geography instance")
    p.add_argument("instance")
    p.add_argument("--revised", action="store_true", help="Use the revised rules")
    p.set_defaults(func=cmd_solve_gg)

    p = sub.add_parser("solve-mb", help="Solve a Maker-Breaker game")
    p.add_argument("game")
    _add_limit_args(p)
    p.add_argument("--certify", help="Write the win certificate here")
    p.add_argument("--no-memo", action="store_true", help="Search without the transposition table")
    p.set_defaults(func=cmd_solve_mb)

    p = sub.add_parser("verify-equivalence", help="Compare Geography and Maker-Breaker winners")
    p.add_argument("instance")
    _add_limit_args(p)
    p.add_argument("--uniform5", action="store_true", help="Also check the 5-uniform game")
    p.set_defaults(func=cmd_verify_equivalence)

    p = sub.add_parser("check-gadgets", help="Validate the gadget library")
    p.set_defaults(func=cmd_check_gadgets)

    p = sub.add_parser("synth-gadgets", help="Search for a gadget library")
    p.add_argument("--budget", type=int, default=10_000, help="Candidates tried per class")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_synth_gadgets)

    p = sub.add_parser("simulate-regular", help="Play regular play next to Geography")
    p.add_argument("instance")
    p.add_argument("--choices", help="vertex=successor,... for every choice vertex reached")
    p.add_argument("--trace", help="Write the trace log here")
    p.set_defaults(func=cmd_simulate_regular)

    p = sub.add_parser("check-deviations", help="Check replies to deviations from regular play")
    p.add_argument("instance")
    side = p.add_mutually_exclusive_group(required=True)
    side.add_argument("--lemma", choices=tuple(DEVIATION_CHECKS),
                      help="5: Breaker deviations lose, 8: Maker deviations get a certified reply")
    side.add_argument("--side", choices=("breaker", "maker"), help="The same checks named by the deviating side")
    p.add_argument("--confirm", action="store_true", help="Solve each Breaker deviation exactly")
    _add_limit_args(p)
    p.set_defaults(func=cmd_check_deviations)

    p = sub.add_parser("gen", help="Generate a random convertible instance")
    p.add_argument("--vertices", type=int, default=8, help="Vertex budget")
    p.add_argument("--seed", type=int)
    p.add_argument("--start-out-degree", type=int, choices=(1, 2), default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("enumerate", help="List convertible instances up to isomorphism")
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("replay", help="Replay a trace log on an instance")
    p.add_argument("instance")
    p.add_argument("trace")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    with ErrorHandler("configure") as handler:
        if args.config:
            load_config(args.config)
        else:
            load_config_from_env()
    if handler.exception is not None:
        print(f"error: {handler.exception}", file=sys.stderr)
        return EXIT_USAGE

    config = get_config()
    setup_logging(args.log_level or config.logging.level, args.log_file or config.logging.file,
                  config.logging.json)

    with ErrorHandler(args.command) as handler:
        return args.func(args)
    if isinstance(handler.exception, (MBGGError, OSError, argparse.ArgumentTypeError)):
        print(f"error: {handler.exception}", file=sys.stderr)
    else:
        print(f"internal error: {handler.exception!r}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
