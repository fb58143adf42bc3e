"""Command-line driver: gen, process, export, serve, verify, report."""

from __future__ import annotations

import argparse
import logging
import sys
from datetime import date
from pathlib import Path

from . import PolarscopeError, __version__
from .controversy import DEFAULT_K, DEFAULT_WALKS
from .generate import SCENARIOS, InvalidScenario, generate_scenario
from .graph import from_node_link, to_gexf, to_node_link_json
from .ingest import DEFAULT_MIN_USERS
from .layout import LayoutParams
from .partition import DEFAULT_EPS, DEFAULT_SEED
from .pipeline import PipelineParams, process_corpus
from .report import write_report
from .service import ApiConfig, serve_forever
from .store import CorruptRecord, TopicNotFound, TopicStore

log = logging.getLogger("polarscope")


def _add_pipeline_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED,
                     help="master random seed (fixed default keeps runs reproducible)")
    sub.add_argument("--balance-eps", type=float, default=DEFAULT_EPS,
                     help="partition balance tolerance")
    sub.add_argument("--authorities-k", type=int, default=DEFAULT_K,
                     help="authorities per side for the walk score")
    sub.add_argument("--mode", choices=["auto", "exact", "montecarlo"], default="auto",
                     help="controversy scorer")
    sub.add_argument("--walks", type=int, default=DEFAULT_WALKS,
                     help="walks per side for montecarlo mode")
    sub.add_argument("--min-users", type=int, default=DEFAULT_MIN_USERS,
                     help="drop topics with fewer distinct users")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarscope",
        description="Controversy scoring and exploration for per-topic retweet graphs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="generate a synthetic corpus with ground truth")
    gen.add_argument("--scenario", choices=SCENARIOS, required=True)
    gen.add_argument("--out", required=True, help="corpus path (.jsonl or .jsonl.gz)")
    gen.add_argument("--hashtag", default="topic")
    gen.add_argument("--day", type=date.fromisoformat, default=date(2015, 6, 3))
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-m", "--clique-size", type=int, default=20, help="barbell clique size")
    gen.add_argument("-b", "--bridge", type=int, default=1, help="barbell bridge multiplicity")
    gen.add_argument("-n", "--vertices", type=int, default=200)
    gen.add_argument("-p", "--edge-prob", type=float, default=0.05)
    gen.add_argument("--p-in", type=float, default=0.3)
    gen.add_argument("--p-out", type=float, default=0.02)

    process = commands.add_parser("process", help="run the full pipeline over a corpus")
    process.add_argument("--corpus", required=True)
    process.add_argument("--data-dir", required=True)
    process.add_argument("--day", action="append", type=date.fromisoformat, default=None,
                         help="restrict to this day (repeatable); default: every day present")
    process.add_argument("--from-day", type=date.fromisoformat, default=None,
                         help="start of an inclusive day range")
    process.add_argument("--to-day", type=date.fromisoformat, default=None,
                         help="end of an inclusive day range")
    _add_pipeline_flags(process)

    export = commands.add_parser("export", help="export one topic's graph")
    export.add_argument("--data-dir", required=True)
    export.add_argument("--day", required=True)
    export.add_argument("--hashtag", required=True)
    export.add_argument("--format", choices=["json", "gexf"], default="json")
    export.add_argument("--out", default="-", help="output file, '-' for stdout")

    serve = commands.add_parser("serve", help="serve the exploration API and web UI")
    serve.add_argument("--bind", default="127.0.0.1:8080")
    serve.add_argument("--data-dir", required=True)
    serve.add_argument("--static-dir", default=None)
    serve.add_argument("--page-size", type=int, default=20)

    verify = commands.add_parser("verify", help="check store/index consistency")
    verify.add_argument("--data-dir", required=True)
    verify.add_argument("--rebuild", action="store_true", help="rebuild the index first")

    report = commands.add_parser("report", help="write figures and topics.csv")
    report.add_argument("--data-dir", required=True)
    report.add_argument("--out-dir", required=True)
    report.add_argument("--day", default=None)
    report.add_argument("--hashtag", default=None)

    return parser


def cmd_gen(args) -> int:
    try:
        truth = generate_scenario(
            args.scenario, args.out,
            hashtag=args.hashtag, day=args.day, seed=args.seed,
            m=args.clique_size, bridge=args.bridge,
            n=args.vertices, p=args.edge_prob,
            p_in=args.p_in, p_out=args.p_out,
        )
    except InvalidScenario as exc:
        log.error("%s", exc)
        return 2
    print(f"wrote {args.out} ({truth['vertices']} users, {truth['edges']} edges)")
    print(f"ground truth: {args.out}.truth.json")
    return 0


def cmd_process(args) -> int:
    params = PipelineParams(
        seed=args.seed,
        balance_eps=args.balance_eps,
        authorities_k=args.authorities_k,
        mode=args.mode,
        walks=args.walks,
        min_users=args.min_users,
        layout=LayoutParams(seed=args.seed),
    )
    if not Path(args.corpus).is_file():
        log.error("corpus not readable: %s", args.corpus)
        return 2
    day_range = None
    if args.from_day or args.to_day:
        day_range = (args.from_day, args.to_day)
    try:
        result = process_corpus(args.corpus, args.data_dir, days=args.day,
                                day_range=day_range, params=params)
    except OSError as exc:
        log.error("I/O failure: %s", exc)
        return 2
    for day, hashtag, score in result.succeeded:
        print(f"{day} #{hashtag}: controversy {score:.3f}")
    for day, hashtag, reason in result.failed:
        print(f"{day} #{hashtag}: skipped ({reason})", file=sys.stderr)
    if result.corpus.malformed:
        print(f"malformed records skipped: {result.corpus.malformed}", file=sys.stderr)
    if result.attempted == 0:
        print("no qualifying topics in corpus", file=sys.stderr)
        return 0
    return 0 if result.succeeded else 2


def cmd_export(args) -> int:
    store = TopicStore(args.data_dir)
    try:
        doc = store.get_topic(args.day, args.hashtag)
    except (TopicNotFound, CorruptRecord) as exc:
        log.error("%s", exc)
        return 1
    graph = from_node_link(doc["layout"])
    payload = to_node_link_json(graph) if args.format == "json" else to_gexf(graph)
    if args.out == "-":
        sys.stdout.write(payload)
    else:
        Path(args.out).write_text(payload, encoding="utf-8")
        print(f"wrote {args.out}")
    return 0


def cmd_serve(args) -> int:
    config = ApiConfig(
        bind=args.bind,
        data_dir=args.data_dir,
        static_dir=args.static_dir,
        page_size=args.page_size,
    )
    serve_forever(config)
    return 0


def cmd_verify(args) -> int:
    store = TopicStore(args.data_dir)
    if args.rebuild:
        count = store.rebuild_index()
        print(f"index rebuilt: {count} topics")
    report = store.verify()
    for problem in report.problems:
        print(f"PROBLEM: {problem}", file=sys.stderr)
    print(f"checked {report.checked} topics: {'ok' if report.ok else 'problems found'}")
    return 0 if report.ok else 1


def cmd_report(args) -> int:
    store = TopicStore(args.data_dir)
    csv_path = write_report(store, args.out_dir, day=args.day, hashtag=args.hashtag)
    print(f"wrote {csv_path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handlers = {
        "gen": cmd_gen,
        "process": cmd_process,
        "export": cmd_export,
        "serve": cmd_serve,
        "verify": cmd_verify,
        "report": cmd_report,
    }
    try:
        return handlers[args.command](args)
    except PolarscopeError as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
