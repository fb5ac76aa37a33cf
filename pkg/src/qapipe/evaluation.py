"""Mean-reciprocal-rank evaluation and reporting.

A question scores 1/r where r is the rank of its first correct answer,
and 0 when nothing correct shows up. Reports group questions by coarse
class and add a micro-averaged summary row.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .classify import QuestionClass
from .errors import (
    BadPattern,
    DataFileError,
    EmptyList,
    InputError,
    MissingGoldClass,
    QapipeError,
)
from .textnorm import normalize

COARSE_ORDER = ("HUMAN", "NUMERIC", "LOCATION", "ENTITY", "DESCRIPTION")
AVERAGE_LABEL = "AVERAGE"


@dataclass(frozen=True)
class EvalQuestion:
    qid: str
    text: str
    gold_class: QuestionClass | None
    answer_patterns: tuple[str, ...]


@dataclass(frozen=True)
class QuestionResult:
    qid: str
    coarse: str
    rank: int
    note: str = ""


@dataclass(frozen=True)
class ReportRow:
    label: str
    number: float
    mrr: float


@dataclass(frozen=True)
class EvalReport:
    rows: tuple[ReportRow, ...]
    results: tuple[QuestionResult, ...]
    mode: str
    average_mode: str = "micro"


def mrr(ranks: Sequence[int]) -> float:
    """Mean reciprocal rank; rank 0 means unanswered and contributes 0."""
    if len(ranks) == 0:
        raise EmptyList("cannot average an empty rank list")
    total = 0.0
    for r in ranks:
        if r < 0:
            raise InputError(f"ranks must be non-negative, got {r}")
        if r > 0:
            total += 1.0 / r
    return total / len(ranks)


_ALEF_FOLD = str.maketrans({"آ": "ا", "أ": "ا", "إ": "ا"})


def _normalize_pattern(pattern: str) -> str:
    # Arabic-only folding: regex metacharacters and Latin case are kept.
    chars = [
        ch.translate(_ALEF_FOLD)
        for ch in pattern
        if ch != "ـ" and unicodedata.category(ch) != "Mn"
    ]
    return "".join(chars)


def first_correct_rank(
    answers: Sequence[str], patterns: Sequence[str]
) -> int:
    """Rank (1-based) of the first answer matching any gold pattern.

    Both sides are normalized the way the pipeline normalizes text, so
    diacritics and alef variants never block a match. Returns 0 when no
    answer matches.
    """
    compiled = []
    for pat in patterns:
        try:
            compiled.append(re.compile(_normalize_pattern(pat)))
        except re.error as exc:
            raise BadPattern(f"bad answer pattern {pat!r}: {exc}") from exc
    for pos, answer in enumerate(answers, start=1):
        norm = normalize(answer).text
        if any(rx.search(norm) for rx in compiled):
            return pos
    return 0


def report_from_ranks(
    ranks_by_type: Mapping[str, Sequence[int]],
    results: Sequence[QuestionResult] = (),
    mode: str = "ranks",
) -> EvalReport:
    """Build a report with one row per coarse class plus the average row.

    The average row carries the mean per-class question count. Its MRR
    is the mean of the per-class MRRs when every represented class has
    the same question count, and the micro average over all questions
    otherwise; the report records which rule applied.
    """
    all_ranks: list[int] = []
    rows: list[ReportRow] = []
    for label in COARSE_ORDER:
        ranks = list(ranks_by_type.get(label, ()))
        all_ranks.extend(ranks)
        rows.append(
            ReportRow(
                label=label,
                number=float(len(ranks)),
                mrr=mrr(ranks) if ranks else 0.0,
            )
        )
    unknown = set(ranks_by_type) - set(COARSE_ORDER)
    if unknown:
        raise InputError(f"unknown coarse classes in ranks: {sorted(unknown)}")
    if not all_ranks:
        raise EmptyList("no ranks to report")
    present = [row for row in rows if row.number > 0]
    if len({row.number for row in present}) == 1:
        average_mode = "macro"
        average = sum(row.mrr for row in present) / len(present)
    else:
        average_mode = "micro"
        average = mrr(all_ranks)
    rows.append(
        ReportRow(
            label=AVERAGE_LABEL,
            number=len(all_ranks) / len(COARSE_ORDER),
            mrr=average,
        )
    )
    return EvalReport(
        rows=tuple(rows),
        results=tuple(results),
        mode=mode,
        average_mode=average_mode,
    )


def _fmt_mrr(value: float) -> str:
    text = f"{value:.2f}"
    return text[1:] if text.startswith("0.") else text


def _fmt_number(value: float) -> str:
    return f"{value:g}"


def render_table(report: EvalReport) -> str:
    """Fixed-width text table: Question Type, Number, MRR."""
    header = ("Question Type", "Number", "MRR")
    body = [
        (row.label, _fmt_number(row.number), _fmt_mrr(row.mrr))
        for row in report.rows
    ]
    widths = [
        max(len(header[col]), *(len(line[col]) for line in body))
        for col in range(3)
    ]
    lines = [
        "  ".join(header[col].ljust(widths[col]) for col in range(3)).rstrip()
    ]
    for line in body:
        lines.append(
            "  ".join(line[col].ljust(widths[col]) for col in range(3)).rstrip()
        )
    return "\n".join(lines)


def evaluate(
    ask_fn: Callable[[str], tuple[QuestionClass, Sequence[str]]],
    questions: Sequence[EvalQuestion],
    mode: str = "end-to-end",
) -> EvalReport:
    """Run every question through ask_fn and score the returned answers.

    A per-question failure never aborts the run: the question scores rank
    0 and the error message is recorded in its result note. Questions
    group under their gold coarse class when present, otherwise under the
    predicted one.
    """
    if not questions:
        raise EmptyList("no questions to evaluate")
    ranks_by_type: dict[str, list[int]] = {}
    results: list[QuestionResult] = []
    for q in questions:
        note = ""
        rank = 0
        coarse = q.gold_class.coarse if q.gold_class is not None else None
        try:
            predicted, answers = ask_fn(q.text)
            if coarse is None:
                coarse = predicted.coarse
            rank = first_correct_rank(answers, q.answer_patterns)
        except QapipeError as exc:
            note = str(exc)
            if coarse is None:
                coarse = "DESCRIPTION"
        ranks_by_type.setdefault(coarse, []).append(rank)
        results.append(QuestionResult(qid=q.qid, coarse=coarse, rank=rank, note=note))
    return report_from_ranks(ranks_by_type, results=results, mode=mode)


@dataclass(frozen=True)
class ClassScores:
    total: int
    coarse_accuracy: float
    fine_accuracy: float
    confusion: Mapping[tuple[str, str], int]


def classify_accuracy(
    predict_fn: Callable[[str], QuestionClass],
    questions: Sequence[EvalQuestion],
) -> ClassScores:
    """Coarse and fine accuracy of a classifier over labeled questions."""
    if not questions:
        raise EmptyList("no questions to score")
    coarse_hits = 0
    fine_hits = 0
    confusion: dict[tuple[str, str], int] = {}
    for q in questions:
        if q.gold_class is None:
            raise MissingGoldClass(f"question {q.qid!r} has no gold class")
        pred = predict_fn(q.text)
        key = (q.gold_class.coarse, pred.coarse)
        confusion[key] = confusion.get(key, 0) + 1
        if pred.coarse == q.gold_class.coarse:
            coarse_hits += 1
            if pred.fine == q.gold_class.fine:
                fine_hits += 1
    n = len(questions)
    return ClassScores(
        total=n,
        coarse_accuracy=coarse_hits / n,
        fine_accuracy=fine_hits / n,
        confusion=confusion,
    )


def load_dataset(path: str | Path) -> list[EvalQuestion]:
    """Read a JSONL question set.

    Each line holds {"id": ..., "text": ...} plus optional "class"
    ("COARSE:fine") and "answers" (list of regex patterns).
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataFileError(f"cannot read question set {path}: {exc}") from exc
    questions: list[EvalQuestion] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataFileError(f"{path}:{lineno}: bad JSON: {exc}") from exc
        if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
            raise DataFileError(
                f"{path}:{lineno}: expected an object with 'id' and 'text'"
            )
        gold = None
        if obj.get("class"):
            gold = QuestionClass.parse(str(obj["class"]))
        answers = tuple(str(a) for a in obj.get("answers", ()))
        questions.append(
            EvalQuestion(
                qid=str(obj["id"]),
                text=str(obj["text"]),
                gold_class=gold,
                answer_patterns=answers,
            )
        )
    if not questions:
        raise DataFileError(f"no questions in {path}")
    return questions
