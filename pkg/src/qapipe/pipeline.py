"""End-to-end question answering pipeline.

A Pipeline owns the loaded resources (stop list, synonym lexicon,
gazetteers, tagger backend, classifier model, index, corpus) and exposes
the high-level operations the CLI and the HTTP service both call:
analyze, classify, ask, train, evaluate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .classify import Model, QuestionClass, classify, train
from .errors import ConfigError, EmptyQuestion, MissingGoldClass, NoFocus
from .evaluation import EvalQuestion
from .expansion import ExpandedQuery, expand, load_lexicon
from .extraction import (
    AnswerCandidate,
    Sentence,
    extract_answers,
    load_gazetteers,
    rank_answers,
    segment_sentences,
)
from .focus import Chunk, Focus, chunk_nps, extract_focus
from .retrieval import (
    Index,
    ScoredDoc,
    build_index,
    load_corpus,
    load_index,
    retrieve,
)
from .tagging import (
    HeuristicTagger,
    PretaggedTagger,
    TaggedToken,
    TaggerBackend,
    tag,
)
from .textnorm import load_stop_list, remove_stop_words, tokenize


def _data_root() -> Path:
    return Path(str(resources.files("qapipe").joinpath("data")))


@dataclass(frozen=True)
class PipelineConfig:
    stop_list: Path
    lexicon: Path
    gazetteers: Path
    model: Path | None = None
    index: Path | None = None
    corpus: Path | None = None
    tagger: str = "heuristic"
    k: int = 10
    m: int = 3
    top: int = 5
    syn_weight: float = 0.5
    seed: int = 13
    epochs: int = 10

    def validate(self) -> "PipelineConfig":
        for name in ("stop_list", "lexicon", "gazetteers"):
            path = getattr(self, name)
            if not Path(path).exists():
                raise ConfigError(f"{name} path does not exist: {path}")
        for name in ("k", "m", "top", "epochs"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1")
        if not 0.0 <= self.syn_weight <= 1.0:
            raise ConfigError("syn_weight must lie in [0, 1]")
        if self.tagger != "heuristic" and not self.tagger.startswith("pretagged:"):
            raise ConfigError(
                f"tagger must be 'heuristic' or 'pretagged:<path>', got {self.tagger!r}"
            )
        return self


def default_config() -> PipelineConfig:
    root = _data_root()
    return PipelineConfig(
        stop_list=root / "stopwords.txt",
        lexicon=root / "lexicon.tsv",
        gazetteers=root / "gazetteers",
    )


_CONFIG_PATHS = ("stop_list", "lexicon", "gazetteers", "model", "index", "corpus")
_CONFIG_INTS = ("k", "m", "top", "seed", "epochs")


def load_config(path: str | Path) -> PipelineConfig:
    """Read a JSON config; relative paths resolve against the file."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ConfigError(f"config {path} must hold a JSON object")

    config = default_config()
    base = path.parent
    updates: dict[str, object] = {}
    for key, value in payload.items():
        if key in _CONFIG_PATHS:
            updates[key] = (base / str(value)).resolve() if value else None
        elif key in _CONFIG_INTS:
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"config field {key!r} must be an integer")
            updates[key] = value
        elif key == "syn_weight":
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError("config field 'syn_weight' must be a number")
            updates[key] = float(value)
        elif key == "tagger":
            raw = str(value)
            if raw.startswith("pretagged:"):
                resolved = (base / raw.split(":", 1)[1]).resolve()
                raw = f"pretagged:{resolved}"
            updates[key] = raw
        else:
            raise ConfigError(f"unknown config field {key!r}")
    return replace(config, **updates).validate()


@dataclass(frozen=True)
class QuestionAnalysis:
    question: str
    tagged: tuple[TaggedToken, ...]
    content_terms: tuple[str, ...]
    expanded: ExpandedQuery
    chunks: tuple[Chunk, ...]
    focus: Focus | None
    qclass: QuestionClass | None
    margin: float | None

    def focus_stems(self) -> tuple[str, ...]:
        if self.focus is None:
            return ()
        start, end = self.focus.span
        return tuple(
            tt.stem
            for tt in self.tagged[start:end]
            if tt.stem in self.content_terms
        )


@dataclass(frozen=True)
class AskResult:
    analysis: QuestionAnalysis
    retrieved: tuple[ScoredDoc, ...]
    answers: tuple[AnswerCandidate, ...]


def _make_backend(spec: str) -> TaggerBackend:
    if spec == "heuristic":
        return HeuristicTagger()
    if spec.startswith("pretagged:"):
        return PretaggedTagger.from_file(spec.split(":", 1)[1])
    raise ConfigError(f"unknown tagger backend {spec!r}")


class Pipeline:
    """Loaded pipeline; resources are read once and reused per question."""

    def __init__(self, config: PipelineConfig | None = None):
        self.config = (config or default_config()).validate()
        self.stops = load_stop_list(self.config.stop_list)
        self.lexicon = load_lexicon(self.config.lexicon)
        self.gazetteer = load_gazetteers(self.config.gazetteers)
        self.backend = _make_backend(self.config.tagger)
        self._model: Model | None = None
        self._index: Index | None = None
        self._corpus: dict[str, str] | None = None

    @property
    def model(self) -> Model | None:
        if self._model is None and self.config.model and self.config.model.exists():
            from .classify import load_model

            self._model = load_model(self.config.model)
        return self._model

    def set_model(self, model: Model) -> None:
        self._model = model

    def analyze(self, question: str) -> QuestionAnalysis:
        """Full linguistic analysis of one question.

        Classification fields stay None when no model is loaded; a
        question with no noun phrase gets focus None.
        """
        if not question or not question.strip():
            raise EmptyQuestion("question text is empty")
        tokens = tokenize(question)
        if not tokens:
            raise EmptyQuestion("question contains no words")
        tagged = tuple(tag(tokens, self.backend))
        content_tokens = remove_stop_words(tokens, self.stops)
        content_tagged = tag(content_tokens, self.backend)
        content_terms = tuple(tt.stem for tt in content_tagged)
        expanded = expand(content_tagged, self.lexicon, self.config.syn_weight)
        chunks = tuple(chunk_nps(tagged))
        try:
            focus = extract_focus(tagged, chunks)
        except NoFocus:
            focus = None
        qclass = margin = None
        if self.model is not None:
            qclass, margin = classify(self.model, tagged)
        return QuestionAnalysis(
            question=question,
            tagged=tagged,
            content_terms=content_terms,
            expanded=expanded,
            chunks=chunks,
            focus=focus,
            qclass=qclass,
            margin=margin,
        )

    def classify_question(self, question: str) -> tuple[QuestionClass, float]:
        analysis = self.analyze(question)
        if analysis.qclass is None or analysis.margin is None:
            raise ConfigError("no classifier model configured; train one first")
        return analysis.qclass, analysis.margin

    def _ensure_corpus(self) -> dict[str, str]:
        if self._corpus is None:
            if self.config.corpus is None:
                raise ConfigError("no corpus configured")
            docs = load_corpus(self.config.corpus)
            self._corpus = {doc.doc_id: doc.text for doc in docs}
        return self._corpus

    def ensure_index(self) -> Index:
        if self._index is None:
            if self.config.index is not None and self.config.index.exists():
                self._index = load_index(self.config.index)
            elif self.config.corpus is not None:
                docs = load_corpus(self.config.corpus)
                self._index = build_index(docs, self.stops)
            else:
                raise ConfigError("no index or corpus configured")
        return self._index

    def ask(self, question: str) -> AskResult:
        """Answer one question against the configured corpus."""
        analysis = self.analyze(question)
        if analysis.qclass is None:
            raise ConfigError("no classifier model configured; train one first")
        index = self.ensure_index()
        corpus = self._ensure_corpus()
        ranked = retrieve(index, analysis.expanded, self.config.k)
        sentences: list[Sentence] = []
        for sd in ranked[: self.config.m]:
            text = corpus.get(sd.doc_id)
            if text is None:
                continue
            sentences.extend(
                segment_sentences(sd.doc_id, text, self.stops, self.backend)
            )
        candidates = extract_answers(
            analysis.qclass, analysis.expanded, sentences, self.gazetteer
        )
        answers = rank_answers(candidates, analysis.focus_stems(), self.config.top)
        return AskResult(
            analysis=analysis,
            retrieved=tuple(ranked),
            answers=tuple(answers),
        )

    def train_from_questions(self, questions: Sequence[EvalQuestion]) -> Model:
        """Train the classifier on labeled questions."""
        model = train(
            labeled_pairs(questions),
            seed=self.config.seed,
            epochs=self.config.epochs,
            backend=self.backend,
        )
        self._model = model
        return model

    def ask_fn(self, question: str) -> tuple[QuestionClass, list[str]]:
        """Adapter with the shape the evaluator expects."""
        result = self.ask(question)
        assert result.analysis.qclass is not None
        return result.analysis.qclass, [a.text for a in result.answers]


def labeled_pairs(
    questions: Sequence[EvalQuestion],
) -> list[tuple[str, QuestionClass]]:
    """(text, gold class) training pairs from a labeled question set."""
    pairs: list[tuple[str, QuestionClass]] = []
    for q in questions:
        if q.gold_class is None:
            raise MissingGoldClass(f"question {q.qid!r} has no gold class")
        pairs.append((q.text, q.gold_class))
    return pairs


def analysis_record(analysis: QuestionAnalysis) -> dict:
    """JSON-ready view of an analysis, shared by the CLI and the service."""
    return {
        "question": analysis.question,
        "tokens": [
            {
                "surface": tt.surface,
                "stem": tt.stem,
                "proclitics": list(tt.token.proclitics),
                "enclitics": list(tt.token.enclitics),
                "tag": tt.tag.value,
            }
            for tt in analysis.tagged
        ],
        "content_terms": list(analysis.content_terms),
        "expanded": [
            {"term": t.term, "weight": t.weight, "source": t.source}
            for t in analysis.expanded.terms
        ],
        "chunks": [
            {"start": c.start, "end": c.end, "kind": c.kind.value}
            for c in analysis.chunks
        ],
        "focus": focus_record(analysis),
        "class": analysis.qclass.label if analysis.qclass else None,
        "margin": analysis.margin,
    }


def focus_record(analysis: QuestionAnalysis) -> dict | None:
    if analysis.focus is None:
        return None
    start, end = analysis.focus.span
    surfaces = [tt.surface for tt in analysis.tagged]
    return {
        "span": [start, end],
        "text": " ".join(surfaces[start:end]),
        "head": analysis.focus.head,
        "head_text": surfaces[analysis.focus.head],
        "modifiers": [
            {
                "kind": mod.kind.value,
                "span": list(mod.span),
                "text": " ".join(surfaces[mod.span[0] : mod.span[1]]),
            }
            for mod in analysis.focus.modifiers
        ],
    }


def ask_record(result: AskResult) -> dict:
    return {
        "question": result.analysis.question,
        "class": result.analysis.qclass.label if result.analysis.qclass else None,
        "focus": focus_record(result.analysis),
        "retrieved": [
            {"doc_id": sd.doc_id, "score": sd.score} for sd in result.retrieved
        ],
        "answers": [
            {
                "text": a.text,
                "doc_id": a.doc_id,
                "sentence_index": a.sentence_index,
                "score": a.score,
            }
            for a in result.answers
        ],
    }


def corpus_map(path: str | Path) -> Mapping[str, str]:
    return {doc.doc_id: doc.text for doc in load_corpus(path)}
