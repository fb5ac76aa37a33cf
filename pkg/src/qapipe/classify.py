"""Two-level question classification.

Questions get a coarse class (HUMAN, LOCATION, NUMERIC, DESCRIPTION,
ENTITY) and a fine class underneath it. A single flat averaged-perceptron
model over "COARSE:fine" labels handles both levels at once; the coarse
class is read off the winning fine label.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import (
    EmptyQuestion,
    EmptyTrainingSet,
    IllegalLabel,
    ModelFormatError,
)
from .tagging import (
    INTERROGATIVES,
    NOUN_TAGS,
    PosTag,
    TaggedToken,
    TaggerBackend,
    tag,
)
from .textnorm import tokenize

TAXONOMY: dict[str, tuple[str, ...]] = {
    "HUMAN": ("group", "individual", "title", "description"),
    "LOCATION": ("country", "state", "city", "mountain", "other"),
    "NUMERIC": ("count", "date", "money", "distance", "speed", "percent", "other"),
    "DESCRIPTION": ("definition", "manner", "reason"),
    "ENTITY": ("color", "animal", "technique", "planet", "other"),
}

# accepted on input, stored canonically as NUMERIC
_COARSE_ALIASES = {"NUMBER": "NUMERIC"}

MODEL_VERSION = 1


@dataclass(frozen=True)
class QuestionClass:
    coarse: str
    fine: str

    def __post_init__(self) -> None:
        fines = TAXONOMY.get(self.coarse)
        if fines is None:
            raise IllegalLabel(f"unknown coarse class {self.coarse!r}")
        if self.fine not in fines:
            raise IllegalLabel(f"unknown fine class {self.coarse}:{self.fine}")

    @property
    def label(self) -> str:
        return f"{self.coarse}:{self.fine}"

    @classmethod
    def parse(cls, text: str) -> "QuestionClass":
        coarse, sep, fine = text.partition(":")
        coarse = _COARSE_ALIASES.get(coarse, coarse)
        if not sep:
            raise IllegalLabel(f"expected 'COARSE:fine', got {text!r}")
        return cls(coarse, fine)


def all_labels() -> list[str]:
    return sorted(f"{c}:{f}" for c, fines in TAXONOMY.items() for f in fines)


def extract_features(tagged: Sequence[TaggedToken]) -> dict[str, float]:
    """Sparse feature map for one tagged question.

    Stop words must still be present: the interrogative word is the
    single most discriminative feature.
    """
    if not tagged:
        raise EmptyQuestion("cannot extract features from an empty question")
    feats: dict[str, float] = {}

    def bump(name: str, value: float = 1.0) -> None:
        feats[name] = feats.get(name, 0.0) + value

    stems = [tt.stem for tt in tagged]
    for stem in stems:
        bump(f"uni:{stem}")
    for i in range(min(len(stems), 3) - 1):
        bump(f"bi:{stems[i]}_{stems[i + 1]}")

    wh = next(
        (
            tt.stem
            for tt in tagged
            if tt.tag is PosTag.WP or tt.stem in INTERROGATIVES
        ),
        None,
    )
    bump(f"wh:{wh}" if wh is not None else "wh:none")

    head = next((tt.stem for tt in tagged if tt.tag in NOUN_TAGS), None)
    if head is not None:
        bump(f"head:{head}")

    if any(tt.tag is PosTag.CD for tt in tagged) or any(
        ch.isdigit() for stem in stems for ch in stem
    ):
        bump("has:digit")

    n = len(tagged)
    if n <= 3:
        bump("len:1-3")
    elif n <= 7:
        bump("len:4-7")
    else:
        bump("len:8+")
    return feats


@dataclass(frozen=True)
class Model:
    labels: tuple[str, ...]
    weights: Mapping[str, Mapping[str, float]]
    biases: Mapping[str, float]
    metadata: Mapping[str, object]


def _score(
    weights: Mapping[str, float], bias: float, feats: Mapping[str, float]
) -> float:
    return bias + sum(weights.get(f, 0.0) * v for f, v in feats.items())


def _dataset_digest(data: Sequence[tuple[str, QuestionClass]]) -> str:
    canon = [[text, gold.label] for text, gold in data]
    blob = json.dumps(canon, ensure_ascii=False, sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def train(
    data: Sequence[tuple[str, QuestionClass]],
    *,
    epochs: int = 10,
    seed: int = 13,
    backend: TaggerBackend | None = None,
) -> Model:
    """Train an averaged perceptron over flat fine labels.

    Training is deterministic: epoch shuffles come from a seeded RNG and
    the averaged weights depend only on the data order, the seed and the
    epoch count, so retraining on identical input yields an identical
    model.
    """
    if not data:
        raise EmptyTrainingSet("no training examples")
    if epochs < 1:
        raise EmptyTrainingSet(f"epochs must be at least 1, got {epochs}")
    labels = all_labels()
    label_set = set(labels)
    featurized: list[tuple[dict[str, float], str]] = []
    for text, gold in data:
        if gold.label not in label_set:
            raise IllegalLabel(f"label {gold.label!r} is outside the taxonomy")
        tokens = tokenize(text)
        if not tokens:
            raise EmptyQuestion(f"training question {text!r} contains no words")
        featurized.append((extract_features(tag(tokens, backend)), gold.label))

    weights: dict[str, dict[str, float]] = {lb: {} for lb in labels}
    totals: dict[str, dict[str, float]] = {lb: {} for lb in labels}
    biases: dict[str, float] = {lb: 0.0 for lb in labels}
    bias_totals: dict[str, float] = {lb: 0.0 for lb in labels}
    rng = random.Random(seed)
    step = 1
    indices = list(range(len(featurized)))
    for _ in range(epochs):
        rng.shuffle(indices)
        for idx in indices:
            feats, gold_label = featurized[idx]
            pred = min(
                labels,
                key=lambda lb: (-_score(weights[lb], biases[lb], feats), lb),
            )
            if pred != gold_label:
                for f, v in feats.items():
                    weights[gold_label][f] = weights[gold_label].get(f, 0.0) + v
                    totals[gold_label][f] = (
                        totals[gold_label].get(f, 0.0) + step * v
                    )
                    weights[pred][f] = weights[pred].get(f, 0.0) - v
                    totals[pred][f] = totals[pred].get(f, 0.0) - step * v
                biases[gold_label] += 1.0
                bias_totals[gold_label] += step
                biases[pred] -= 1.0
                bias_totals[pred] -= step
            step += 1

    averaged: dict[str, dict[str, float]] = {}
    avg_biases: dict[str, float] = {}
    for lb in labels:
        row = {}
        for f, w in weights[lb].items():
            avg = w - totals[lb].get(f, 0.0) / step
            if avg != 0.0:
                row[f] = avg
        averaged[lb] = row
        avg_biases[lb] = biases[lb] - bias_totals[lb] / step

    metadata = {
        "data_sha256": _dataset_digest(data),
        "seed": seed,
        "epochs": epochs,
        "examples": len(data),
    }
    return Model(
        labels=tuple(labels),
        weights=averaged,
        biases=avg_biases,
        metadata=metadata,
    )


def classify(
    model: Model, tagged: Sequence[TaggedToken]
) -> tuple[QuestionClass, float]:
    """Score every label for a tagged question and return the winner.

    Ties break toward the lexicographically smallest label; the margin is
    best minus runner-up score (infinite for a single-label model).
    """
    feats = extract_features(tagged)
    scored = sorted(
        (
            (
                -_score(
                    model.weights.get(lb, {}),
                    model.biases.get(lb, 0.0),
                    feats,
                ),
                lb,
            )
            for lb in model.labels
        ),
    )
    best_label = scored[0][1]
    margin = (scored[1][0] - scored[0][0]) if len(scored) > 1 else float("inf")
    return QuestionClass.parse(best_label), margin


def save_model(model: Model, path: str | Path) -> None:
    payload = {
        "version": MODEL_VERSION,
        "labels": list(model.labels),
        "weights": {lb: dict(row) for lb, row in model.weights.items()},
        "biases": dict(model.biases),
        "metadata": dict(model.metadata),
    }
    text = json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=1)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_model(path: str | Path) -> Model:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ModelFormatError(f"cannot read model {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("version") != MODEL_VERSION:
        raise ModelFormatError(
            f"model {path} has unsupported version {payload.get('version')!r}"
        )
    try:
        return Model(
            labels=tuple(payload["labels"]),
            weights=payload["weights"],
            biases=payload["biases"],
            metadata=payload.get("metadata", {}),
        )
    except KeyError as exc:
        raise ModelFormatError(f"model {path} is missing field {exc}") from exc
