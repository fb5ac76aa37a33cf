"""Shared fixtures: bundled resources and a trained question-answering setup."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import pytest

from qapipe.cli import main
from qapipe.expansion import load_lexicon
from qapipe.extraction import load_gazetteers
from qapipe.pipeline import Pipeline, default_config, load_config
from qapipe.textnorm import load_stop_list

TESTS_DIR = Path(__file__).parent
DATA_DIR = TESTS_DIR / "data"
FIXTURES_DIR = TESTS_DIR.parent / "fixtures"


@pytest.fixture(scope="session")
def stops():
    return load_stop_list(default_config().stop_list)


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(default_config().lexicon)


@pytest.fixture(scope="session")
def gazetteer():
    return load_gazetteers(default_config().gazetteers)


@dataclass(frozen=True)
class QaEnv:
    """A trained model and built index over the bundled fixture corpus."""

    root: Path
    config: Path
    model: Path
    index: Path
    questions: Path
    corpus: Path


def write_qa_config(root: Path, **overrides) -> Path:
    payload: dict[str, object] = {
        "corpus": str(FIXTURES_DIR / "corpus"),
        "model": str(root / "model.json"),
        "index": str(root / "index.json"),
        "epochs": 20,
        "seed": 13,
    }
    payload.update(overrides)
    config = root / "config.json"
    config.write_text(
        json.dumps(payload, ensure_ascii=False, indent=1), encoding="utf-8"
    )
    return config


@pytest.fixture(scope="session")
def qa_env(tmp_path_factory) -> QaEnv:
    root = tmp_path_factory.mktemp("qa_env")
    config = write_qa_config(root)
    questions = FIXTURES_DIR / "questions.jsonl"
    rc = main(
        [
            "train",
            "--config",
            str(config),
            "--data",
            str(questions),
            "--out",
            str(root / "model.json"),
            "--output",
            str(root / "train_record.json"),
        ]
    )
    assert rc == 0, "fixture training failed"
    rc = main(
        [
            "index",
            "--config",
            str(config),
            "--corpus",
            str(FIXTURES_DIR / "corpus"),
            "--out",
            str(root / "index.json"),
            "--output",
            str(root / "index_record.json"),
        ]
    )
    assert rc == 0, "fixture indexing failed"
    return QaEnv(
        root=root,
        config=config,
        model=root / "model.json",
        index=root / "index.json",
        questions=questions,
        corpus=FIXTURES_DIR / "corpus",
    )


@pytest.fixture(scope="session")
def fixture_pipeline(qa_env: QaEnv) -> Pipeline:
    return Pipeline(load_config(qa_env.config))
