"""Answer extraction from retrieved passages.

Extraction strategy is dispatched on the coarse question class: person
and location questions run gazetteer-backed named-entity recognition,
numeric questions run pattern matching keyed by the fine class, and
description or entity questions fall back to whole sentences scored by
weighted term overlap. All candidates then share one ranking function
that mixes in focus-term overlap.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

from .classify import QuestionClass
from .errors import DataFileError, InputError, UnsupportedFineClass
from .expansion import ExpandedQuery
from .tagging import NOUN_TAGS, TaggedToken, TaggerBackend, tag
from .textnorm import (
    StopList,
    normalize,
    remove_stop_words,
    split_sentences,
    tokenize,
)


class EntityKind(str, Enum):
    PERSON = "PERSON"
    LOCATION = "LOCATION"
    ORGANIZATION = "ORGANIZATION"


@dataclass(frozen=True)
class Sentence:
    """A corpus sentence with provenance and its analyzed forms."""

    doc_id: str
    index: int
    text: str
    norm_text: str
    tagged: tuple[TaggedToken, ...]
    content_stems: tuple[str, ...]


@dataclass(frozen=True)
class NamedEntity:
    kind: EntityKind
    start: int
    end: int
    text: str


@dataclass(frozen=True)
class AnswerCandidate:
    text: str
    kind: str  # entity | numeric | sentence
    doc_id: str
    sentence_index: int
    score: float
    host_stems: tuple[str, ...] = ()


@dataclass(frozen=True)
class Gazetteer:
    """Entity lists keyed by stem tuples so lookup survives clitics."""

    entries: Mapping[tuple[str, ...], tuple[EntityKind, ...]]
    max_len: int

    def kinds_for(self, key: tuple[str, ...]) -> tuple[EntityKind, ...]:
        return self.entries.get(key, ())


_GAZETTEER_FILES = {
    "person.txt": EntityKind.PERSON,
    "location.txt": EntityKind.LOCATION,
    "organization.txt": EntityKind.ORGANIZATION,
}

# Title words that promote the following bare noun(s) to a person name.
HONORIFICS = frozenset(
    """دكتور مهندس رئيس ملك ملكة سيد سيدة استاذ بروفيسور رائد قائد امير
    اميرة وزير عالم شيخ""".split()
)

# Prepositions that suggest a place reading for an ambiguous name.
LOCATIVE_PREPOSITIONS = frozenset("في الى من عند قرب نحو ب".split())

# Ambiguity resolution order when a span sits in several gazetteers.
_KIND_PRIORITY = (EntityKind.PERSON, EntityKind.LOCATION, EntityKind.ORGANIZATION)


def load_gazetteers(directory: str | Path) -> Gazetteer:
    """Load person/location/organization lists from a directory.

    Each file holds one entity per line ('#' comments allowed). Entries
    are tokenized and stemmed with the same pipeline used on documents.
    """
    directory = Path(directory)
    entries: dict[tuple[str, ...], list[EntityKind]] = {}
    max_len = 1
    found = False
    for name, kind in _GAZETTEER_FILES.items():
        path = directory / name
        if not path.is_file():
            continue
        found = True
        for lineno, raw in enumerate(
            path.read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key = tuple(tok.stem for tok in tokenize(line))
            if not key:
                raise DataFileError(f"{path}:{lineno}: entry has no tokens")
            kinds = entries.setdefault(key, [])
            if kind not in kinds:
                kinds.append(kind)
            max_len = max(max_len, len(key))
    if not found:
        raise DataFileError(f"no gazetteer files under {directory}")
    frozen = {key: tuple(kinds) for key, kinds in entries.items()}
    return Gazetteer(entries=frozen, max_len=max_len)


def segment_sentences(
    doc_id: str,
    text: str,
    stops: StopList,
    backend: TaggerBackend | None = None,
) -> list[Sentence]:
    """Split a document into analyzed sentences."""
    out: list[Sentence] = []
    for raw in split_sentences(text):
        tokens = tokenize(raw)
        if not tokens:
            continue
        tagged = tuple(tag(tokens, backend))
        content = tuple(t.stem for t in remove_stop_words(tokens, stops))
        out.append(
            Sentence(
                doc_id=doc_id,
                index=len(out),
                text=raw,
                norm_text=normalize(raw).text,
                tagged=tagged,
                content_stems=content,
            )
        )
    return out


def _pick_kind(
    kinds: Sequence[EntityKind], tagged: Sequence[TaggedToken], start: int
) -> EntityKind:
    if len(kinds) == 1:
        return kinds[0]
    if EntityKind.LOCATION in kinds:
        prev_stem = tagged[start - 1].stem if start > 0 else ""
        proclitics = tagged[start].token.proclitics
        if prev_stem in LOCATIVE_PREPOSITIONS or any(
            p in LOCATIVE_PREPOSITIONS for p in proclitics
        ):
            return EntityKind.LOCATION
    for kind in _KIND_PRIORITY:
        if kind in kinds:
            return kind
    return kinds[0]


def ner(tagged: Sequence[TaggedToken], gazetteer: Gazetteer) -> list[NamedEntity]:
    """Gazetteer NER over stems, longest match first, no overlaps.

    A title word (honorific) also promotes the one or two bare nouns that
    follow it to a PERSON span even when they are not listed.
    """
    stems = [tt.stem for tt in tagged]
    n = len(stems)
    candidates: list[tuple[int, int, EntityKind]] = []
    for start in range(n):
        for length in range(min(gazetteer.max_len, n - start), 0, -1):
            key = tuple(stems[start : start + length])
            kinds = gazetteer.kinds_for(key)
            if kinds:
                candidates.append(
                    (start, start + length, _pick_kind(kinds, tagged, start))
                )
                break

    for i, tt in enumerate(tagged):
        if tt.stem in HONORIFICS:
            j = i + 1
            k = j
            while (
                k < n
                and k - j < 2
                and tagged[k].tag in NOUN_TAGS
                and not tagged[k].token.has_article()
            ):
                k += 1
            if k > j:
                candidates.append((j, k, EntityKind.PERSON))

    # longest first, then leftmost, then kind priority; drop overlaps
    candidates.sort(key=lambda c: (-(c[1] - c[0]), c[0], _KIND_PRIORITY.index(c[2])))
    taken: list[tuple[int, int]] = []
    accepted: list[tuple[int, int, EntityKind]] = []
    for start, end, kind in candidates:
        if any(start < t_end and t_start < end for t_start, t_end in taken):
            continue
        taken.append((start, end))
        accepted.append((start, end, kind))
    accepted.sort(key=lambda c: c[0])
    return [
        NamedEntity(
            kind=kind,
            start=start,
            end=end,
            text=" ".join(tagged[idx].surface for idx in range(start, end)),
        )
        for start, end, kind in accepted
    ]


_NUM = r"[0-9٠-٩]+(?:[.,٫][0-9٠-٩]+)?"
_MONTHS = (
    "كانون الثاني|تشرين الاول|تشرين الثاني|كانون الاول|شباط|اذار|نيسان|"
    "ايار|حزيران|تموز|ايلول|اب|"
    "يناير|فبراير|مارس|ابريل|مايو|يونيو|يوليو|اغسطس|سبتمبر|اكتوبر|نوفمبر|ديسمبر"
)
_NUMBER_WORD_ALTS = (
    "احد عشر|اثنا عشر|اثني عشر|واحد|اثنان|اثنين|ثلاثة|اربعة|خمسة|ستة|سبعة|"
    "ثمانية|تسعة|عشرة|عشرون|ثلاثون|اربعون|خمسون|مئة|مائة|الف|مليون|مليار"
)
_CURRENCIES = (
    "دولارات|دولارا|دولار|دنانير|دينارا|دينار|ريالات|ريال|جنيهات|جنيها|جنيه|"
    "يورو|ليرات|ليرة|دراهم|درهم"
)
_DISTANCE_UNITS = (
    "كيلومترات|كيلومترا|كيلومتر|امتار|مترا|متر|اميال|ميلا|ميل|اقدام|قدم|"
    "سنتيمترا|سنتيمتر|كم"
)
_SCALES = r"(?:\s*(?:مليون|مليار|الف|الاف))?"

def _bounded(alternation: str) -> re.Pattern[str]:
    """Compile with word-boundary guards so month or unit names never
    match inside a longer word."""
    return re.compile(rf"(?<!\w)(?:{alternation})(?!\w)")


NUMERIC_PATTERNS: dict[str, re.Pattern[str]] = {
    "count": _bounded(rf"{_NUM}|{_NUMBER_WORD_ALTS}"),
    "date": _bounded(
        rf"{_NUM}\s+(?:{_MONTHS})(?:\s+(?:عام|سنة)?\s*{_NUM})?"
        rf"|(?:{_MONTHS})(?:\s+(?:عام|سنة)?\s*{_NUM})?"
        rf"|(?:عام|سنة)\s+{_NUM}"
        r"|[0-9٠-٩]{3,4}"
    ),
    "money": _bounded(rf"{_NUM}{_SCALES}\s*(?:{_CURRENCIES})"),
    "distance": _bounded(rf"{_NUM}{_SCALES}\s*(?:{_DISTANCE_UNITS})"),
    "speed": _bounded(
        rf"{_NUM}\s*(?:كيلومترا|كيلومتر|كم|مترا|متر|ميلا|ميل)"
        r"(?:/س| في الساعة| في الثانية)"
    ),
    "percent": _bounded(
        rf"{_NUM}\s*(?:٪|%|بالمئة|بالمائة|في المئة|في المائة)"
    ),
    "other": _bounded(rf"{_NUM}|{_NUMBER_WORD_ALTS}"),
}


def extract_numeric(norm_text: str, fine: str) -> list[str]:
    """Matches for a numeric fine class over normalized sentence text."""
    pattern = NUMERIC_PATTERNS.get(fine)
    if pattern is None:
        raise UnsupportedFineClass(f"no numeric pattern for fine class {fine!r}")
    return [m.group(0) for m in pattern.finditer(norm_text)]


def semantic_similarity(
    weights: Mapping[str, float], stems: Sequence[str]
) -> float:
    """Cosine between a weighted query and a sentence's stem counts."""
    if not weights or not stems:
        return 0.0
    counts: dict[str, int] = {}
    for stem in stems:
        counts[stem] = counts.get(stem, 0) + 1
    dot = sum(w * counts.get(t, 0) for t, w in weights.items())
    if dot == 0.0:
        return 0.0
    qnorm = math.sqrt(sum(w * w for w in weights.values()))
    snorm = math.sqrt(sum(c * c for c in counts.values()))
    return dot / (qnorm * snorm)


def extract_answers(
    qclass: QuestionClass,
    query: ExpandedQuery | Mapping[str, float],
    sentences: Sequence[Sentence],
    gazetteer: Gazetteer,
) -> list[AnswerCandidate]:
    """Raw answer candidates for one question, before focus-aware ranking.

    Candidate scores start at the host sentence's similarity to the
    expanded query; what counts as a candidate depends on the coarse
    class.
    """
    weights = query.weights() if isinstance(query, ExpandedQuery) else dict(query)
    wanted_kind = {
        "HUMAN": EntityKind.PERSON,
        "LOCATION": EntityKind.LOCATION,
    }.get(qclass.coarse)
    out: list[AnswerCandidate] = []
    for sent in sentences:
        base = semantic_similarity(weights, sent.content_stems)
        if wanted_kind is not None:
            for ent in ner(sent.tagged, gazetteer):
                if ent.kind is wanted_kind:
                    out.append(
                        AnswerCandidate(
                            text=ent.text,
                            kind="entity",
                            doc_id=sent.doc_id,
                            sentence_index=sent.index,
                            score=base,
                            host_stems=sent.content_stems,
                        )
                    )
        elif qclass.coarse == "NUMERIC":
            for match in extract_numeric(sent.norm_text, qclass.fine):
                out.append(
                    AnswerCandidate(
                        text=match,
                        kind="numeric",
                        doc_id=sent.doc_id,
                        sentence_index=sent.index,
                        score=base,
                        host_stems=sent.content_stems,
                    )
                )
        else:
            if base > 0.0:
                out.append(
                    AnswerCandidate(
                        text=sent.text,
                        kind="sentence",
                        doc_id=sent.doc_id,
                        sentence_index=sent.index,
                        score=base,
                        host_stems=sent.content_stems,
                    )
                )
    return out


def rank_answers(
    candidates: Sequence[AnswerCandidate],
    focus_stems: Sequence[str],
    top: int = 5,
) -> list[AnswerCandidate]:
    """Rank candidates by score plus a focus-overlap bonus, keep the top.

    The bonus is 0.5 times the fraction of distinct focus stems present
    in the candidate's host sentence. Ties order by document id, sentence
    index, then text, so ranking is fully deterministic.
    """
    if top < 1:
        raise InputError(f"top must be at least 1, got {top}")
    focus = set(focus_stems)
    rescored: list[AnswerCandidate] = []
    for cand in candidates:
        bonus = 0.0
        if focus:
            overlap = focus.intersection(cand.host_stems)
            bonus = 0.5 * len(overlap) / len(focus)
        rescored.append(replace(cand, score=cand.score + bonus))
    rescored.sort(key=lambda c: (-c.score, c.doc_id, c.sentence_index, c.text))
    return rescored[:top]
