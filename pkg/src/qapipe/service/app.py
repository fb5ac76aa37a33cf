"""HTTP service exposing the question answering pipeline.

The app wraps one Pipeline instance: resources load once at startup and
every request reuses them. Pipeline errors map onto HTTP statuses (bad
input 400, missing configuration 503, broken data files 500).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..classify import QuestionClass
from ..errors import ConfigError, InputError, NoFocus, QapipeError
from ..evaluation import EvalQuestion, evaluate, render_table
from ..pipeline import (
    Pipeline,
    PipelineConfig,
    analysis_record,
    ask_record,
    focus_record,
)
from . import schemas


def create_app(
    pipeline: Pipeline | None = None,
    config: PipelineConfig | None = None,
) -> FastAPI:
    app = FastAPI(title="qapipe", version="1.0.0")
    app.state.pipeline = pipeline if pipeline is not None else Pipeline(config)

    def _pipe() -> Pipeline:
        return app.state.pipeline

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(NoFocus)
    async def _no_focus(request: Request, exc: NoFocus) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ConfigError)
    async def _config_error(request: Request, exc: ConfigError) -> JSONResponse:
        return JSONResponse(status_code=503, content={"detail": str(exc)})

    @app.exception_handler(QapipeError)
    async def _pipeline_error(request: Request, exc: QapipeError) -> JSONResponse:
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        pipe = _pipe()
        return schemas.HealthResponse(
            status="ok",
            model_loaded=pipe.model is not None,
            corpus_configured=pipe.config.corpus is not None,
        )

    @app.post("/analyze", response_model=schemas.AnalyzeResponse)
    def analyze(req: schemas.QuestionRequest) -> schemas.AnalyzeResponse:
        record = analysis_record(_pipe().analyze(req.question))
        return schemas.AnalyzeResponse.model_validate(record)

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(req: schemas.QuestionRequest) -> schemas.ClassifyResponse:
        qclass, margin = _pipe().classify_question(req.question)
        return schemas.ClassifyResponse.model_validate(
            {"question": req.question, "class": qclass.label, "margin": margin}
        )

    @app.post("/focus", response_model=schemas.FocusResponse)
    def focus(req: schemas.QuestionRequest) -> schemas.FocusResponse:
        analysis = _pipe().analyze(req.question)
        record = focus_record(analysis)
        return schemas.FocusResponse.model_validate(
            {"question": req.question, "focus": record}
        )

    @app.post("/expand", response_model=schemas.ExpandResponse)
    def expand(req: schemas.QuestionRequest) -> schemas.ExpandResponse:
        analysis = _pipe().analyze(req.question)
        terms = [
            {"term": t.term, "weight": t.weight, "source": t.source}
            for t in analysis.expanded.terms
        ]
        return schemas.ExpandResponse.model_validate(
            {"question": req.question, "terms": terms}
        )

    @app.post("/ask", response_model=schemas.AskResponse)
    def ask(req: schemas.QuestionRequest) -> schemas.AskResponse:
        record = ask_record(_pipe().ask(req.question))
        return schemas.AskResponse.model_validate(record)

    @app.post("/eval", response_model=schemas.EvalResponse)
    def run_eval(req: schemas.EvalRequest) -> schemas.EvalResponse:
        questions = [
            EvalQuestion(
                qid=item.id,
                text=item.text,
                gold_class=(
                    QuestionClass.parse(item.qclass) if item.qclass else None
                ),
                answer_patterns=tuple(item.answers),
            )
            for item in req.questions
        ]
        report = evaluate(_pipe().ask_fn, questions)
        return schemas.EvalResponse.model_validate(
            {
                "mode": report.mode,
                "average_mode": report.average_mode,
                "rows": [
                    {"label": r.label, "number": r.number, "mrr": r.mrr}
                    for r in report.rows
                ],
                "results": [
                    {
                        "qid": r.qid,
                        "coarse": r.coarse,
                        "rank": r.rank,
                        "note": r.note,
                    }
                    for r in report.results
                ],
                "table": render_table(report),
            }
        )

    return app
