"""Request and response models for the HTTP service.

The CLI emits the same record shapes, so clients can switch between the
two transports without reparsing.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class QuestionRequest(BaseModel):
    question: str


class TokenModel(BaseModel):
    surface: str
    stem: str
    proclitics: list[str]
    enclitics: list[str]
    tag: str


class TermModel(BaseModel):
    term: str
    weight: float
    source: str | None = None


class ChunkModel(BaseModel):
    start: int
    end: int
    kind: str


class ModifierModel(BaseModel):
    kind: str
    span: list[int]
    text: str


class FocusModel(BaseModel):
    span: list[int]
    text: str
    head: int
    head_text: str
    modifiers: list[ModifierModel]


class AnalyzeResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    question: str
    tokens: list[TokenModel]
    content_terms: list[str]
    expanded: list[TermModel]
    chunks: list[ChunkModel]
    focus: FocusModel | None
    qclass: str | None = Field(default=None, alias="class")
    margin: float | None = None


class ClassifyResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    question: str
    qclass: str = Field(alias="class")
    margin: float


class FocusResponse(BaseModel):
    question: str
    focus: FocusModel | None


class ExpandResponse(BaseModel):
    question: str
    terms: list[TermModel]


class RetrievedModel(BaseModel):
    doc_id: str
    score: float


class AnswerModel(BaseModel):
    text: str
    doc_id: str
    sentence_index: int
    score: float


class AskResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    question: str
    qclass: str | None = Field(default=None, alias="class")
    focus: FocusModel | None
    retrieved: list[RetrievedModel]
    answers: list[AnswerModel]


class EvalItem(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    text: str
    qclass: str | None = Field(default=None, alias="class")
    answers: list[str] = []


class EvalRequest(BaseModel):
    questions: list[EvalItem]


class ReportRowModel(BaseModel):
    label: str
    number: float
    mrr: float


class QuestionResultModel(BaseModel):
    qid: str
    coarse: str
    rank: int
    note: str = ""


class EvalResponse(BaseModel):
    mode: str
    average_mode: str
    rows: list[ReportRowModel]
    results: list[QuestionResultModel]
    table: str


class HealthResponse(BaseModel):
    status: str
    model_loaded: bool
    corpus_configured: bool
