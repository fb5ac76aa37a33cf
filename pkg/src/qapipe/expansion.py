"""Synonym-based query expansion.

Nouns and adjectives in the analyzed question pull in their lexicon
synonyms at a reduced weight; original terms always keep weight 1.0.
Expansion is single hop: synonyms of synonyms are never added.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DataFileError
from .tagging import ADJ_TAGS, NOUN_TAGS, TaggedToken
from .textnorm import normalize


@dataclass(frozen=True)
class SynonymLexicon:
    """Headword to synonym-tuple mapping, all entries normalized."""

    entries: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def synonyms(self, term: str) -> tuple[str, ...]:
        return self.entries.get(term, ())

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class QueryTerm:
    """One weighted query term.

    ``source`` is None for original question terms and names the
    originating term for synonyms.
    """

    term: str
    weight: float
    source: str | None = None


@dataclass(frozen=True)
class ExpandedQuery:
    terms: tuple[QueryTerm, ...]

    def weights(self) -> dict[str, float]:
        return {t.term: t.weight for t in self.terms}


def load_lexicon(path: str | Path) -> SynonymLexicon:
    """Read a tab-separated synonym file: headword TAB comma-joined synonyms.

    Blank lines and '#' comments are skipped. Duplicate headwords and
    entries without synonyms are data errors.
    """
    entries: dict[str, tuple[str, ...]] = {}
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataFileError(f"cannot read synonym lexicon {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise DataFileError(
                f"{path}:{lineno}: expected 'headword<TAB>synonyms', got {raw!r}"
            )
        head = normalize(parts[0].strip()).text
        syns = tuple(
            normalize(s.strip()).text for s in parts[1].split(",") if s.strip()
        )
        if not head or not syns:
            raise DataFileError(f"{path}:{lineno}: empty headword or synonym list")
        if head in entries:
            raise DataFileError(f"{path}:{lineno}: duplicate headword {head!r}")
        entries[head] = syns
    return SynonymLexicon(entries=entries)


def _expandable_stems(tagged: Sequence[TaggedToken]) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for tt in tagged:
        if tt.tag in NOUN_TAGS or tt.tag in ADJ_TAGS:
            if tt.stem not in seen:
                seen.add(tt.stem)
                out.append(tt.stem)
    return out


def expand(
    tagged: Sequence[TaggedToken],
    lexicon: SynonymLexicon,
    syn_weight: float = 0.5,
) -> ExpandedQuery:
    """Build the weighted term list for a tagged question.

    Every token stem becomes an original term with weight 1.0; noun and
    adjective stems additionally contribute their synonyms at syn_weight.
    When a term appears both as an original and as a synonym, the higher
    weight wins.
    """
    if not 0.0 <= syn_weight <= 1.0:
        raise ValueError(f"syn_weight must lie in [0, 1], got {syn_weight}")
    best: dict[str, QueryTerm] = {}
    order: list[str] = []

    def put(term: str, weight: float, source: str | None) -> None:
        prev = best.get(term)
        if prev is None:
            best[term] = QueryTerm(term, weight, source)
            order.append(term)
        elif weight > prev.weight:
            best[term] = QueryTerm(term, weight, source)

    for tt in tagged:
        put(tt.stem, 1.0, None)
    for stem in _expandable_stems(tagged):
        for syn in lexicon.synonyms(stem):
            put(syn, syn_weight, stem)
    return ExpandedQuery(terms=tuple(best[t] for t in order))


def expansion_terms(query: ExpandedQuery) -> Iterable[QueryTerm]:
    """Only the added synonym terms of an expanded query."""
    return (t for t in query.terms if t.source is not None)
