"""POS tagging over segmented tokens.

Backends are pluggable: the default is a deterministic heuristic cascade
that needs no external resources; a passthrough backend replays tags from
a pre-tagged file so outputs of a real statistical tagger can be fed in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Protocol, Sequence

from .errors import BackendFailure, DataFileError
from .textnorm import Token, normalize


class PosTag(str, Enum):
    NN = "NN"
    NNS = "NNS"
    NNP = "NNP"
    DTNN = "DTNN"
    DTNNS = "DTNNS"
    DTNNP = "DTNNP"
    JJ = "JJ"
    DTJJ = "DTJJ"
    RB = "RB"
    VBD = "VBD"
    VBP = "VBP"
    VBN = "VBN"
    IN = "IN"
    CC = "CC"
    WP = "WP"
    PRP = "PRP"
    CD = "CD"
    PUNC = "PUNC"
    UNK = "UNK"


NOUN_TAGS = frozenset(
    {PosTag.NN, PosTag.NNS, PosTag.NNP, PosTag.DTNN, PosTag.DTNNS, PosTag.DTNNP}
)
ADJ_TAGS = frozenset({PosTag.JJ, PosTag.DTJJ})
VERB_TAGS = frozenset({PosTag.VBD, PosTag.VBP, PosTag.VBN})

_DT_BASE = {
    PosTag.DTNN: PosTag.NN,
    PosTag.DTNNS: PosTag.NNS,
    PosTag.DTNNP: PosTag.NNP,
    PosTag.DTJJ: PosTag.JJ,
}


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: PosTag

    @property
    def stem(self) -> str:
        return self.token.stem

    @property
    def surface(self) -> str:
        return self.token.surface


class TaggerBackend(Protocol):
    def tag_tokens(self, tokens: Sequence[Token]) -> list[PosTag]: ...


# Closed-class tables for the heuristic cascade. These are algorithm
# constants, not user data; stop lists and gazetteers stay in files.
INTERROGATIVES = frozenset("ما ماذا من متى اين كيف كم لماذا هل اي ايها".split())
RELATIVES = frozenset("الذي التي الذين اللذان اللتان اللاتي اللواتي اللائي".split())
PREPOSITIONS = frozenset(
    "في الى على عن مع حتى منذ عند لدى بعد قبل بين حول خلال ضد دون عبر نحو امام خلف فوق تحت ب ل ك".split()
)
CONJUNCTIONS = frozenset("و ف ثم او لكن بل اذا اذ حيث لان كي لو".split())
PRONOUNS = frozenset("هو هي هم هن هما انا نحن انت انتم هذا هذه ذلك تلك هؤلاء".split())
ADVERBS = frozenset("جدا ايضا فقط دائما احيانا غالبا تقريبا حاليا بشكل".split())
NUMBER_WORDS = frozenset(
    """واحد اثنان اثنين ثلاثة اربعة خمسة ستة سبعة ثمانية تسعة عشرة عشر عشرون
    ثلاثون اربعون خمسون مئة مائة الف الاف مليون مليار نصف ربع ثلث""".split()
)
# Ordinals and superlatives double as the pre-nominal adjective set used
# by the NP chunker (e.g. "first American").
ORDINAL_SUPERLATIVE_ADJ = frozenset(
    """اول ثاني ثالث رابع خامس سادس اخر اكبر اصغر اكثر اقل افضل اسرع ابطا
    اطول اقصر اعلى ادنى ابرز اهم اقدم احدث اغلى ارخص""".split()
)
PLAIN_ADJECTIVES = frozenset(
    "كبير صغير جديد قديم طويل قصير سريع بطيء مشهور صعب سهل غالي رخيص واسع".split()
)
ADJECTIVE_WORDS = ORDINAL_SUPERLATIVE_ADJ | PLAIN_ADJECTIVES
# Nouns whose written shape would otherwise trip the adjective or verb
# pattern rules (nisba-looking endings, verb-like prefixes).
NOUN_WORDS = frozenset(
    """تقنية قناة جاذبية كمية نوعية هوية تجربة قمر شمس ارض عام سنة شهر يوم
    عدد نسبة تكلفة مسافة عملة لغة لون حيوان كوكب نهر جبل بحر مدينة دولة
    عاصمة رئيس ملك مخترع مؤسس كاتب لاعب جائزة شركة جامعة حرب سوق نبات
    تمثيل توقيت تاريخ""".split()
)
# Bare perfect-tense verbs the affix rules cannot recognize.
VERB_WORDS = frozenset(
    """صعد دخل واجه هبط فاز بلغ وصل ولد صنع شكل وقع كتب درس حكم قاد بنى
    اخترع اكتشف استخدم اسس انتشر ظهر بدا اصبح حدث وجد عاش مات توفي نال
    حصل قام ذهب جاء اخذ اعطى رسم طار سقط نجح كان دار مطر""".split()
)

_DIGIT_RUN = re.compile(r"[0-9٠-٩]+([.,٫][0-9٠-٩]+)?")
_PRESENT_PREFIXES = ("ي", "ت", "ن", "س")


def heuristic_tag_one(token: Token) -> PosTag:
    """Tag one token by a fixed priority cascade.

    Closed-class lookup, then digits/number words, then known-word
    lexicons, then verbal affix patterns, then article-bearing nominal
    suffix rules, then the NN default. Total: always returns a tag.
    """
    stem = token.stem
    if stem in INTERROGATIVES or stem in RELATIVES:
        return PosTag.WP
    if stem in PREPOSITIONS:
        return PosTag.IN
    if stem in CONJUNCTIONS:
        return PosTag.CC
    if stem in PRONOUNS:
        return PosTag.PRP
    if stem in ADVERBS:
        return PosTag.RB
    if _DIGIT_RUN.fullmatch(stem) or stem in NUMBER_WORDS:
        return PosTag.CD

    has_article = token.has_article()
    if not has_article and stem in VERB_WORDS:
        return PosTag.VBP if stem.startswith(_PRESENT_PREFIXES) else PosTag.VBD
    if stem in NOUN_WORDS:
        return PosTag.DTNN if has_article else PosTag.NN
    if stem in ADJECTIVE_WORDS:
        return PosTag.DTJJ if has_article else PosTag.JJ

    if not has_article and len(stem) >= 4:
        if stem.endswith(("تا", "وا")):
            return PosTag.VBD
        if stem.endswith("ت") and not stem.endswith("ات"):
            return PosTag.VBD
        if stem.startswith(_PRESENT_PREFIXES):
            return PosTag.VBP

    if has_article:
        # suffix tests run on the article-stripped written form, so a
        # nisba-final ي misread as a pronominal enclitic still counts
        core = stem + "".join(token.enclitics)
        if core.endswith(("يتين", "يتان", "ية", "ي")):
            return PosTag.DTJJ
        if core.endswith(("ات", "ون", "ين", "تان", "تين")):
            return PosTag.DTNNS
        return PosTag.DTNN
    return PosTag.NN


class HeuristicTagger:
    """Stateless rule-based backend; safe for concurrent use."""

    def tag_tokens(self, tokens: Sequence[Token]) -> list[PosTag]:
        return [heuristic_tag_one(tok) for tok in tokens]


class PretaggedTagger:
    """Replays tags read from a pre-tagged file, keyed by surface form.

    File format: UTF-8 lines "surface TAB tag", blank line between
    sentences. Surfaces are normalized on load; a token whose surface is
    missing from the file raises BackendFailure.
    """

    def __init__(self, mapping: dict[str, PosTag]):
        self._mapping = dict(mapping)

    @classmethod
    def from_file(cls, path: str | Path) -> "PretaggedTagger":
        path = Path(path)
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise DataFileError(f"cannot read pre-tagged file {path}: {exc}") from exc
        mapping: dict[str, PosTag] = {}
        for lineno, line in enumerate(lines, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            surface, sep, tag = line.partition("\t")
            if not sep:
                raise DataFileError(f"{path}:{lineno}: expected 'surface TAB tag'")
            try:
                pos = PosTag(tag.strip())
            except ValueError:
                raise DataFileError(
                    f"{path}:{lineno}: unknown tag '{tag.strip()}'"
                ) from None
            mapping[normalize(surface.strip()).text] = pos
        return cls(mapping)

    def tag_tokens(self, tokens: Sequence[Token]) -> list[PosTag]:
        tags = []
        for tok in tokens:
            try:
                tags.append(self._mapping[tok.surface])
            except KeyError:
                raise BackendFailure(
                    f"no pre-assigned tag for surface '{tok.surface}'"
                ) from None
        return tags


def tag(tokens: Sequence[Token], backend: TaggerBackend | None = None) -> list[TaggedToken]:
    """Tag a token sequence with the given backend (heuristic by default).

    One TaggedToken per input token, order preserved. A DT-prefixed tag on
    a token without the article proclitic is downgraded to its base tag so
    the article/tag consistency invariant always holds.
    """
    backend = backend or HeuristicTagger()
    tags = backend.tag_tokens(tokens)
    if len(tags) != len(tokens):
        raise BackendFailure(
            f"backend returned {len(tags)} tags for {len(tokens)} tokens"
        )
    out = []
    for tok, pos in zip(tokens, tags):
        if pos in _DT_BASE and not tok.has_article():
            pos = _DT_BASE[pos]
        out.append(TaggedToken(tok, pos))
    return out
