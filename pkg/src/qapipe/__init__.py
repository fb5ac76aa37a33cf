"""Arabic question analysis and answering pipeline."""

from .classify import (
    Model,
    QuestionClass,
    classify,
    extract_features,
    load_model,
    save_model,
    train,
)
from .errors import QapipeError
from .evaluation import (
    EvalQuestion,
    EvalReport,
    classify_accuracy,
    evaluate,
    first_correct_rank,
    load_dataset,
    mrr,
    render_table,
    report_from_ranks,
)
from .expansion import ExpandedQuery, QueryTerm, SynonymLexicon, expand, load_lexicon
from .extraction import (
    AnswerCandidate,
    EntityKind,
    Gazetteer,
    NamedEntity,
    Sentence,
    extract_answers,
    extract_numeric,
    load_gazetteers,
    ner,
    rank_answers,
    segment_sentences,
    semantic_similarity,
)
from .focus import Chunk, ChunkKind, Focus, Modifier, ModifierKind, chunk_nps, extract_focus
from .pipeline import (
    AskResult,
    Pipeline,
    PipelineConfig,
    QuestionAnalysis,
    default_config,
    load_config,
)
from .retrieval import (
    Document,
    Index,
    ScoredDoc,
    build_index,
    load_corpus,
    load_index,
    retrieve,
    save_index,
    select_passages,
)
from .tagging import (
    HeuristicTagger,
    PosTag,
    PretaggedTagger,
    TaggedToken,
    tag,
)
from .textnorm import (
    NormalizedText,
    StopList,
    Token,
    load_stop_list,
    normalize,
    remove_stop_words,
    split_sentences,
    tokenize,
)

__version__ = "1.0.0"

__all__ = [
    "AnswerCandidate",
    "AskResult",
    "Chunk",
    "ChunkKind",
    "Document",
    "EntityKind",
    "EvalQuestion",
    "EvalReport",
    "ExpandedQuery",
    "Focus",
    "Gazetteer",
    "HeuristicTagger",
    "Index",
    "Model",
    "Modifier",
    "ModifierKind",
    "NamedEntity",
    "NormalizedText",
    "Pipeline",
    "PipelineConfig",
    "PosTag",
    "PretaggedTagger",
    "QapipeError",
    "QueryTerm",
    "QuestionAnalysis",
    "QuestionClass",
    "ScoredDoc",
    "Sentence",
    "StopList",
    "SynonymLexicon",
    "TaggedToken",
    "Token",
    "build_index",
    "classify",
    "classify_accuracy",
    "chunk_nps",
    "default_config",
    "evaluate",
    "expand",
    "extract_answers",
    "extract_features",
    "extract_focus",
    "extract_numeric",
    "first_correct_rank",
    "load_config",
    "load_corpus",
    "load_dataset",
    "load_gazetteers",
    "load_index",
    "load_lexicon",
    "load_model",
    "load_stop_list",
    "mrr",
    "ner",
    "normalize",
    "rank_answers",
    "remove_stop_words",
    "render_table",
    "report_from_ranks",
    "retrieve",
    "save_index",
    "save_model",
    "segment_sentences",
    "select_passages",
    "semantic_similarity",
    "split_sentences",
    "tag",
    "tokenize",
    "train",
]
