"""Shallow NP chunking over tag sequences and question-focus extraction.

The chunk grammar is deliberately small: noun runs capture construct-state
chains, trailing adjectives attach to the preceding noun run, a relative
pronoun opens a clause chunk, and a preposition immediately before a noun
phrase is marked as a PP attachment point. One pre-nominal ordinal or
superlative adjective is admitted at the start of an NP (Arabic allows
"first American" order).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import NoFocus
from .tagging import (
    ADJ_TAGS,
    INTERROGATIVES,
    NOUN_TAGS,
    ORDINAL_SUPERLATIVE_ADJ,
    VERB_TAGS,
    PosTag,
    TaggedToken,
)


class ChunkKind(str, Enum):
    NP = "NP"
    PP = "PP"
    RELCL = "RELCL"


class ModifierKind(str, Enum):
    ADJ = "ADJ"
    ADV = "ADV"
    COMP = "COMP"


@dataclass(frozen=True)
class Chunk:
    start: int
    end: int
    kind: ChunkKind

    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class Modifier:
    kind: ModifierKind
    span: tuple[int, int]


@dataclass(frozen=True)
class Focus:
    """The noun phrase a question is asking about.

    ``span`` and ``head`` are token indices into the tagged question;
    modifiers carry adjectives and adverbs inside the span plus clause or
    prepositional completions (COMP).
    """

    span: tuple[int, int]
    head: int
    modifiers: tuple[Modifier, ...]


def _np_start(tagged: Sequence[TaggedToken], i: int) -> bool:
    if tagged[i].tag in NOUN_TAGS:
        return True
    return (
        tagged[i].tag in ADJ_TAGS
        and tagged[i].stem in ORDINAL_SUPERLATIVE_ADJ
        and i + 1 < len(tagged)
        and tagged[i + 1].tag in NOUN_TAGS
    )


def chunk_nps(tagged: Sequence[TaggedToken]) -> list[Chunk]:
    """Find maximal NP, PP-marker and relative-clause chunks, left to right.

    Chunks never overlap, and every noun-family token lands in exactly one
    NP chunk. A PP chunk covers only the preposition; its object is the NP
    chunk that follows it.
    """
    chunks: list[Chunk] = []
    n = len(tagged)
    i = 0
    while i < n:
        if _np_start(tagged, i):
            j = i
            if tagged[j].tag in ADJ_TAGS:
                j += 1
            while j < n and tagged[j].tag in NOUN_TAGS:
                j += 1
            while j < n and tagged[j].tag in ADJ_TAGS:
                j += 1
            chunks.append(Chunk(i, j, ChunkKind.NP))
            i = j
        elif tagged[i].tag is PosTag.WP:
            j = i + 1
            while j < n and not _np_start(tagged, j):
                j += 1
            chunks.append(Chunk(i, j, ChunkKind.RELCL))
            i = j
        elif tagged[i].tag is PosTag.IN and i + 1 < n and _np_start(tagged, i + 1):
            chunks.append(Chunk(i, i + 1, ChunkKind.PP))
            i += 1
        else:
            i += 1
    return chunks


def _chunk_starting_at(chunks: Sequence[Chunk], pos: int) -> Chunk | None:
    for chunk in chunks:
        if chunk.start == pos:
            return chunk
        if chunk.start > pos:
            break
    return None


def extract_focus(tagged: Sequence[TaggedToken], chunks: Sequence[Chunk]) -> Focus:
    """Pick the question focus: first NP after the interrogative word.

    The span extends through attached relative clauses, prepositional
    attachments and bare verb clauses, each recorded as a COMP modifier.
    Raises NoFocus when the question has no noun phrase.
    """
    n = len(tagged)
    wh_pos = -1
    for idx, tt in enumerate(tagged):
        if tt.tag is PosTag.WP or tt.stem in INTERROGATIVES:
            wh_pos = idx
            break

    base = None
    for chunk in chunks:
        if chunk.kind is ChunkKind.NP and chunk.start > wh_pos:
            base = chunk
            break
    if base is None:
        raise NoFocus("question contains no noun phrase")

    head = next(
        idx for idx in range(base.start, base.end) if tagged[idx].tag in NOUN_TAGS
    )

    modifiers: list[Modifier] = []
    end = base.end
    while True:
        nxt = _chunk_starting_at(chunks, end)
        if nxt is not None and nxt.kind in (ChunkKind.RELCL, ChunkKind.PP):
            seg_start = end
            end = nxt.end
            follow = _chunk_starting_at(chunks, end)
            if follow is not None and follow.kind is ChunkKind.NP:
                end = follow.end
            modifiers.append(Modifier(ModifierKind.COMP, (seg_start, end)))
            continue
        if end < n and tagged[end].tag in VERB_TAGS:
            seg_start = end
            j = end
            while j < n and tagged[j].tag in VERB_TAGS:
                j += 1
            follow = _chunk_starting_at(chunks, j)
            if follow is not None and follow.kind is ChunkKind.NP:
                j = follow.end
            end = j
            modifiers.append(Modifier(ModifierKind.COMP, (seg_start, end)))
            continue
        break

    span = (base.start, end)
    # adjective and adverb runs inside the full span
    runs: list[Modifier] = []
    idx = span[0]
    while idx < span[1]:
        if tagged[idx].tag in ADJ_TAGS:
            run_start = idx
            while idx < span[1] and tagged[idx].tag in ADJ_TAGS:
                idx += 1
            runs.append(Modifier(ModifierKind.ADJ, (run_start, idx)))
        elif tagged[idx].tag is PosTag.RB:
            run_start = idx
            while idx < span[1] and tagged[idx].tag is PosTag.RB:
                idx += 1
            runs.append(Modifier(ModifierKind.ADV, (run_start, idx)))
        else:
            idx += 1
    ordered = sorted(runs + modifiers, key=lambda m: m.span)
    return Focus(span=span, head=head, modifiers=tuple(ordered))
