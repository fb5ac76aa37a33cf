"""Unicode normalization, clitic-aware tokenization and stop-word filtering.

Everything downstream (tagging, expansion, retrieval, extraction) operates
on the normalized forms produced here, so questions and corpus documents
always go through the same code path.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataFileError

TATWEEL = "ـ"
ARTICLE = "ال"  # ال

# Folded to bare alef during normalization.
_ALEF_VARIANTS = {
    "آ": "ا",  # آ
    "أ": "ا",  # أ
    "إ": "ا",  # إ
}

CONJUNCTION_PROCLITICS = ("و", "ف")
PREPOSITION_PROCLITICS = ("ب", "ل", "ك")

# Pronominal enclitics, longest first so matching is deterministic.
ENCLITICS = ("هما", "كما", "هم", "هن", "ها", "نا", "كم", "كن", "ه", "ك", "ي")

# Minimum stem length a strip must leave behind.
MIN_STEM = 2

# Closed-class function words that never undergo clitic segmentation.
# Splitting these (e.g. التي into the article plus a two-letter residue)
# would defeat stop-word matching and produce nonsense stems.
NO_SEGMENT = frozenset(
    """
    ما من ماذا متى اين كيف كم لماذا هل اي ايها
    هو هي هم هن هما انا نحن انت انتم انتن انتما
    الذي التي الذين اللذان اللتان اللاتي اللواتي اللائي
    في الى على عن مع حتى منذ عند بعد قبل بين حول خلال ضد دون لدى
    امام خلف فوق تحت نحو عبر
    ثم او لكن بل اذا اذ حيث كما لان كي لو
    قد لقد لم لن لا ليس ان كان كانت يوجد توجد
    هذا هذه ذلك تلك هؤلاء هنا هناك
    الله
    """.split()
)

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class NormalizedText:
    """Normalized text plus a map from normalized back to original offsets.

    ``offset_map[i] == (i, j)`` means normalized character ``i`` came from
    original character ``j``; the map is strictly increasing in both
    coordinates and covers every normalized character.
    """

    text: str
    offset_map: tuple[tuple[int, int], ...]

    def original_index(self, norm_index: int) -> int:
        return self.offset_map[norm_index][1]

    def original_span(self, start: int, end: int) -> tuple[int, int]:
        """Map a normalized [start, end) span back onto the raw string."""
        if start >= end:
            return (0, 0)
        return (self.offset_map[start][1], self.offset_map[end - 1][1] + 1)


@dataclass(frozen=True)
class Token:
    """A surface word split into proclitics, stem and enclitics.

    The concatenation of proclitics, stem and enclitics always equals the
    surface, and ``char_span`` locates the surface in its NormalizedText.
    """

    surface: str
    proclitics: tuple[str, ...]
    stem: str
    enclitics: tuple[str, ...]
    char_span: tuple[int, int]

    def has_article(self) -> bool:
        if ARTICLE in self.proclitics:
            return True
        # ل + ال is written لل: the article survives as a bare ل right
        # after the preposition.
        return any(
            self.proclitics[i] == "ل" and self.proclitics[i + 1] == "ل"
            for i in range(len(self.proclitics) - 1)
        )


@dataclass(frozen=True)
class StopList:
    """Normalized stop-word entries with a category per entry."""

    entries: frozenset[str]
    categories: dict[str, str] = field(default_factory=dict)

    def __contains__(self, term: str) -> bool:
        return term in self.entries


STOP_CATEGORIES = ("preposition", "conjunction", "interrogative", "other")


def normalize(raw: str) -> NormalizedText:
    """Strip diacritics and tatweel, fold alef variants, lowercase Latin.

    Total over any Unicode input; ta-marbuta and alef-maqsura are kept as
    written so lexicon lookups can distinguish them.
    """
    chars: list[str] = []
    offsets: list[tuple[int, int]] = []
    for i, ch in enumerate(raw):
        if ch == TATWEEL or unicodedata.category(ch) == "Mn":
            continue
        ch = _ALEF_VARIANTS.get(ch, ch)
        low = ch.lower()
        if len(low) == 1:
            ch = low
        chars.append(ch)
        offsets.append((len(chars) - 1, i))
    return NormalizedText(text="".join(chars), offset_map=tuple(offsets))


def _strip_proclitics(word: str) -> tuple[list[str], str]:
    proclitics: list[str] = []
    rest = word
    # A conjunction is stripped only when what follows is itself a clitic
    # layer (preposition/article) or a function word; a bare stem that
    # happens to start with و or ف stays whole.
    if rest[0] in CONJUNCTION_PROCLITICS and len(rest) - 1 >= MIN_STEM:
        tail = rest[1:]
        licensed = (
            tail in NO_SEGMENT
            or (tail.startswith(ARTICLE) and len(tail) - 2 >= MIN_STEM)
            or (
                tail[0] in PREPOSITION_PROCLITICS
                and tail[1:].startswith(ARTICLE)
                and len(tail) - 3 >= MIN_STEM
            )
            or (tail.startswith("لل") and len(tail) - 2 >= MIN_STEM)
        )
        if licensed:
            proclitics.append(rest[0])
            rest = tail
    if rest in NO_SEGMENT:
        return proclitics, rest
    if (
        rest[0] in PREPOSITION_PROCLITICS
        and rest[1:].startswith(ARTICLE)
        and len(rest) - 3 >= MIN_STEM
    ):
        proclitics.append(rest[0])
        rest = rest[1:]
    if rest.startswith(ARTICLE) and len(rest) - 2 >= MIN_STEM:
        proclitics.append(ARTICLE)
        rest = rest[2:]
    elif rest.startswith("لل") and len(rest) - 2 >= MIN_STEM:
        # ل + ال contracts to لل in writing; both letters are clitics and
        # the second one is the article.
        proclitics.extend(("ل", "ل"))
        rest = rest[2:]
    return proclitics, rest


def _strip_enclitics(stem: str) -> tuple[str, list[str]]:
    for enc in ENCLITICS:
        if stem.endswith(enc) and len(stem) - len(enc) >= MIN_STEM:
            return stem[: -len(enc)], [enc]
    return stem, []


def segment_word(word: str, span: tuple[int, int] = (0, 0)) -> Token:
    """Segment one normalized word into a Token.

    Strips at most one conjunction, one preposition, the definite article
    and one pronominal enclitic, each only if the remaining stem keeps at
    least MIN_STEM characters. Closed-class function words are never split.
    """
    if word in NO_SEGMENT:
        return Token(word, (), word, (), span)
    proclitics, rest = _strip_proclitics(word)
    if rest in NO_SEGMENT:
        return Token(word, tuple(proclitics), rest, (), span)
    rest, enclitics = _strip_enclitics(rest)
    return Token(word, tuple(proclitics), rest, tuple(enclitics), span)


def tokenize(text: NormalizedText | str) -> list[Token]:
    """Split text on whitespace/punctuation and segment clitics.

    Raw strings are normalized first; punctuation is dropped and char
    spans index into the normalized text.
    """
    if isinstance(text, str):
        text = normalize(text)
    tokens = []
    for m in _WORD_RE.finditer(text.text):
        tokens.append(segment_word(m.group(), (m.start(), m.end())))
    return tokens


def clitic_pieces(token: Token) -> list[str]:
    """Render a token as clitic-separated pieces.

    Conjunction and preposition proclitics become their own pieces; the
    definite article (written ال, or a bare ل in the لل contraction)
    stays attached to the word, which is how segmented Arabic text is
    conventionally displayed.
    """
    lead = list(token.proclitics)
    if token.has_article():
        lead = lead[:-1]
    return lead + [token.surface[len("".join(lead)) :]]


def remove_stop_words(tokens: list[Token], stops: StopList) -> list[Token]:
    """Drop tokens whose stem or surface is a stop entry.

    Surviving tokens also lose any leading conjunction proclitic (the و of
    an attached "and" is itself a stop word); their surface and span are
    rebuilt so the reconstruction invariant keeps holding.
    """
    kept = []
    for tok in tokens:
        if tok.stem in stops or tok.surface in stops:
            continue
        if tok.proclitics and tok.proclitics[0] in CONJUNCTION_PROCLITICS:
            cut = len(tok.proclitics[0])
            tok = Token(
                surface=tok.surface[cut:],
                proclitics=tok.proclitics[1:],
                stem=tok.stem,
                enclitics=tok.enclitics,
                char_span=(tok.char_span[0] + cut, tok.char_span[1]),
            )
        kept.append(tok)
    return kept


def load_stop_list(path: str | Path) -> StopList:
    """Read a stop list: one entry per line, optional TAB-separated category.

    Lines starting with '#' are ignored; entries are stored normalized.
    """
    entries: set[str] = set()
    categories: dict[str, str] = {}
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataFileError(f"cannot read stop list {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entry, _, category = line.partition("\t")
        entry = normalize(entry.strip()).text
        if not entry:
            continue
        category = category.strip() or "other"
        if category not in STOP_CATEGORIES:
            raise DataFileError(
                f"{path}:{lineno}: unknown stop-word category '{category}'"
            )
        entries.add(entry)
        categories[entry] = category
    return StopList(entries=frozenset(entries), categories=categories)


_SENTENCE_TERMINATORS = frozenset(".؟?!؛")


def split_sentences(text: str) -> list[str]:
    """Split raw text into sentences on Arabic and Latin terminators.

    A period between digits (decimals) or after a single-letter token
    (abbreviations like dates written with letter initials) does not end
    a sentence. Empty sentences are dropped.
    """
    sentences: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in _SENTENCE_TERMINATORS:
            if ch == ".":
                prev = text[i - 1] if i > 0 else ""
                nxt = text[i + 1] if i + 1 < n else ""
                if prev.isdigit() and nxt.isdigit():
                    i += 1
                    continue
                j = i - 1
                length = 0
                while j >= 0 and not text[j].isspace() and text[j] not in _SENTENCE_TERMINATORS:
                    length += 1
                    j -= 1
                if length == 1:
                    i += 1
                    continue
            sent = text[start : i + 1].strip()
            if sent:
                sentences.append(sent)
            start = i + 1
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences
