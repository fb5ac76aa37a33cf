"""Command-line interface.

One binary with subcommands for each pipeline stage plus the end-to-end
flow. Commands print machine-readable records (json-lines) by default
and human-oriented tables with --format table. Exit codes: 0 ok, 2
config error, 3 bad input, 4 data-file error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import save_model, train
from .errors import (
    BackendFailure,
    ConfigError,
    DataFileError,
    InputError,
    NoFocus,
    QapipeError,
)
from .evaluation import (
    classify_accuracy,
    evaluate,
    load_dataset,
    render_table,
)
from .pipeline import (
    Pipeline,
    analysis_record,
    ask_record,
    default_config,
    focus_record,
    labeled_pairs,
    load_config,
)
from .retrieval import build_index, load_corpus, save_index

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BAD_INPUT = 3
EXIT_DATA = 4

_EPILOG = (
    "exit codes: 0 ok, 2 config error, 3 bad input, 4 data-file error"
)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        metavar="PATH",
        help="JSON config file mirroring PipelineConfig (default: bundled data)",
    )
    common.add_argument(
        "--output",
        metavar="PATH",
        help="write results to this file instead of stdout (default: stdout)",
    )
    common.add_argument(
        "--format",
        choices=("json-lines", "table"),
        default="json-lines",
        help="output format (default: json-lines)",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qapipe",
        description="Arabic question analysis and answering pipeline",
        epilog=_EPILOG,
    )
    common = _common_parser()
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(
            name, parents=[common], help=help_text, epilog=_EPILOG
        )

    p = add("analyze", "full linguistic analysis of one question")
    p.add_argument("question", nargs="+", help="question text")

    p = add("classify", "predict the question class")
    p.add_argument("question", nargs="+", help="question text")

    p = add("focus", "extract the question focus")
    p.add_argument("question", nargs="+", help="question text")

    p = add("expand", "expanded weighted query terms")
    p.add_argument("question", nargs="+", help="question text")

    p = add("index", "build and save a retrieval index")
    p.add_argument(
        "--corpus",
        required=True,
        metavar="PATH",
        help="corpus directory of .txt files or a JSONL file",
    )
    p.add_argument(
        "--out", required=True, metavar="PATH", help="output index file"
    )

    p = add("train", "train the question classifier")
    p.add_argument(
        "--data",
        required=True,
        metavar="PATH",
        help="JSONL question set with gold classes",
    )
    p.add_argument(
        "--out", required=True, metavar="PATH", help="output model file"
    )
    p.add_argument(
        "--epochs",
        type=int,
        default=None,
        help="training epochs (default: config value, 10)",
    )
    p.add_argument(
        "--seed",
        type=int,
        default=None,
        help="shuffle seed (default: config value, 13)",
    )

    p = add("ask", "answer a question against the configured corpus")
    p.add_argument("question", nargs="+", help="question text")

    p = add("eval", "score a question set and report MRR per class")
    p.add_argument(
        "--data",
        required=True,
        metavar="PATH",
        help="JSONL question set with answer patterns",
    )
    p.add_argument(
        "--mode",
        choices=("end-to-end", "classify"),
        default="end-to-end",
        help="evaluation mode (default: end-to-end)",
    )

    add("repl", "interactive loop: one question per line, one answer record per line")

    p = add("serve", "run the HTTP service")
    p.add_argument("--host", default="127.0.0.1", help="bind host (default: 127.0.0.1)")
    p.add_argument("--port", type=int, default=8000, help="bind port (default: 8000)")

    return parser


def _load_pipeline(args: argparse.Namespace) -> Pipeline:
    config = load_config(args.config) if args.config else default_config()
    return Pipeline(config)


def _emit(args: argparse.Namespace, record: dict, table: str) -> None:
    if args.format == "table":
        text = table if table.endswith("\n") else table + "\n"
    else:
        text = json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _question_text(args: argparse.Namespace) -> str:
    return " ".join(args.question)


def _analysis_table(record: dict) -> str:
    lines = [f"question: {record['question']}"]
    lines.append(f"class: {record['class'] or '-'}")
    focus = record["focus"]
    lines.append(
        f"focus: {focus['text']} (head {focus['head_text']})" if focus else "focus: -"
    )
    lines.append("tokens:")
    for tok in record["tokens"]:
        pro = "+".join(tok["proclitics"]) or "-"
        enc = "+".join(tok["enclitics"]) or "-"
        lines.append(
            f"  {tok['surface']}\t{tok['tag']}\t{pro}|{tok['stem']}|{enc}"
        )
    lines.append("expanded:")
    for term in record["expanded"]:
        src = term["source"] or "-"
        lines.append(f"  {term['term']}\t{term['weight']:g}\t{src}")
    return "\n".join(lines)


def _focus_table(record: dict | None) -> str:
    if record is None:
        return "focus: -"
    lines = [f"focus: {record['text']}", f"head: {record['head_text']}"]
    for mod in record["modifiers"]:
        lines.append(f"  {mod['kind']}: {mod['text']}")
    return "\n".join(lines)


def _ask_table(record: dict) -> str:
    lines = [
        f"question: {record['question']}",
        f"class: {record['class'] or '-'}",
        _focus_table(record["focus"]),
        "answers:",
    ]
    for pos, ans in enumerate(record["answers"], start=1):
        lines.append(
            f"  {pos}. {ans['text']}  [{ans['doc_id']}#{ans['sentence_index']}"
            f" score {ans['score']:.3f}]"
        )
    if not record["answers"]:
        lines.append("  (none)")
    return "\n".join(lines)


def cmd_analyze(args: argparse.Namespace) -> int:
    pipeline = _load_pipeline(args)
    record = analysis_record(pipeline.analyze(_question_text(args)))
    _emit(args, record, _analysis_table(record))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    pipeline = _load_pipeline(args)
    qclass, margin = pipeline.classify_question(_question_text(args))
    record = {
        "question": _question_text(args),
        "class": qclass.label,
        "margin": margin,
    }
    _emit(args, record, f"class: {qclass.label}\nmargin: {margin:g}")
    return EXIT_OK


def cmd_focus(args: argparse.Namespace) -> int:
    pipeline = _load_pipeline(args)
    analysis = pipeline.analyze(_question_text(args))
    record = focus_record(analysis)
    if record is None:
        raise NoFocus("question contains no noun phrase")
    _emit(
        args,
        {"question": analysis.question, "focus": record},
        _focus_table(record),
    )
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    pipeline = _load_pipeline(args)
    analysis = pipeline.analyze(_question_text(args))
    terms = [
        {"term": t.term, "weight": t.weight, "source": t.source}
        for t in analysis.expanded.terms
    ]
    table = "\n".join(
        f"{t['term']}\t{t['weight']:g}\t{t['source'] or '-'}" for t in terms
    )
    _emit(args, {"question": analysis.question, "terms": terms}, table)
    return EXIT_OK


def cmd_index(args: argparse.Namespace) -> int:
    pipeline = _load_pipeline(args)
    corpus = load_corpus(args.corpus)
    index = build_index(corpus, pipeline.stops)
    save_index(index, args.out)
    record = {
        "documents": index.doc_count,
        "terms": len(index.postings),
        "path": str(args.out),
    }
    _emit(
        args,
        record,
        f"indexed {record['documents']} documents,"
        f" {record['terms']} terms -> {args.out}",
    )
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    pipeline = _load_pipeline(args)
    questions = load_dataset(args.data)
    dataset = labeled_pairs(questions)
    seed = args.seed if args.seed is not None else pipeline.config.seed
    epochs = args.epochs if args.epochs is not None else pipeline.config.epochs
    model = train(dataset, seed=seed, epochs=epochs, backend=pipeline.backend)
    save_model(model, args.out)
    record = {
        "examples": len(dataset),
        "labels": len({gold.label for _, gold in dataset}),
        "seed": seed,
        "epochs": epochs,
        "path": str(args.out),
    }
    _emit(
        args,
        record,
        f"trained on {record['examples']} questions"
        f" ({record['labels']} labels) -> {args.out}",
    )
    return EXIT_OK


def cmd_ask(args: argparse.Namespace) -> int:
    pipeline = _load_pipeline(args)
    record = ask_record(pipeline.ask(_question_text(args)))
    _emit(args, record, _ask_table(record))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    pipeline = _load_pipeline(args)
    questions = load_dataset(args.data)
    if args.mode == "classify":
        scores = classify_accuracy(
            lambda text: pipeline.classify_question(text)[0], questions
        )
        confusion = [
            {"gold": gold, "predicted": pred, "count": count}
            for (gold, pred), count in sorted(scores.confusion.items())
        ]
        record = {
            "mode": "classify",
            "total": scores.total,
            "coarse_accuracy": scores.coarse_accuracy,
            "fine_accuracy": scores.fine_accuracy,
            "confusion": confusion,
        }
        table = (
            f"questions: {scores.total}\n"
            f"coarse accuracy: {scores.coarse_accuracy:.2f}\n"
            f"fine accuracy: {scores.fine_accuracy:.2f}"
        )
        _emit(args, record, table)
        return EXIT_OK
    report = evaluate(pipeline.ask_fn, questions)
    record = {
        "mode": report.mode,
        "average_mode": report.average_mode,
        "rows": [
            {"label": r.label, "number": r.number, "mrr": r.mrr}
            for r in report.rows
        ],
        "results": [
            {"qid": r.qid, "coarse": r.coarse, "rank": r.rank, "note": r.note}
            for r in report.results
        ],
    }
    _emit(args, record, render_table(report))
    return EXIT_OK


def cmd_repl(args: argparse.Namespace) -> int:
    pipeline = _load_pipeline(args)
    for line in sys.stdin:
        question = line.strip()
        if not question:
            continue
        try:
            record = ask_record(pipeline.ask(question))
        except QapipeError as exc:
            record = {"question": question, "error": str(exc)}
        sys.stdout.write(
            json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n"
        )
        sys.stdout.flush()
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(pipeline=_load_pipeline(args))
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "analyze": cmd_analyze,
    "classify": cmd_classify,
    "focus": cmd_focus,
    "expand": cmd_expand,
    "index": cmd_index,
    "train": cmd_train,
    "ask": cmd_ask,
    "eval": cmd_eval,
    "repl": cmd_repl,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InputError, NoFocus) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (DataFileError, BackendFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except QapipeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
