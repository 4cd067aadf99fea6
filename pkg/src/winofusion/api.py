"""JSON API over the platform engine.

Handlers are synchronous and funnel through the engine's single-writer
lock; given the same config, seed, and request script the responses and
export files are byte-identical run to run.
"""

from __future__ import annotations

from fastapi import Depends, FastAPI, Header, HTTPException
from pydantic import BaseModel, Field

from winofusion.collaboration import (
    LeaseError,
    OpenDraftError,
    QueueEmpty,
    SubmissionInvalid,
)
from winofusion.engine import (
    AuthError,
    PendingQuestionError,
    Platform,
    UnknownWorkerError,
)
from winofusion.schema import SchemaDecodeError


class LoginBody(BaseModel):
    worker_id: str
    key: str = ""


class TestAnswerBody(BaseModel):
    answer: str


class QualificationBody(BaseModel):
    answer: str
    modified: dict | None = None
    selected_answers: dict[str, str] | None = None
    bias_label: str | None = Field(default=None, pattern="^(biased|unbiased)$")


class ReviewBody(BaseModel):
    verdict: str


class CommentBody(BaseModel):
    text: str


class BonusBody(BaseModel):
    worker_id: str
    amount: int


class CorpusBody(BaseModel):
    text: str


class TrainingAnswerBody(BaseModel):
    item_index: int
    answer: str | list[str]


class WorkerBody(BaseModel):
    worker_id: str
    role: str = "qualificator"
    key: str = ""
    trained: bool = False


def create_app(platform: Platform) -> FastAPI:
    app = FastAPI(title="winofusion", version="0.1.0")
    app.state.platform = platform

    def token(authorization: str = Header(default="")) -> str:
        if not authorization.startswith("Bearer "):
            raise HTTPException(status_code=401, detail="missing bearer token")
        return authorization.removeprefix("Bearer ").strip()

    def run(fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except AuthError as exc:
            raise HTTPException(status_code=403, detail=str(exc))
        except UnknownWorkerError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except (PendingQuestionError, OpenDraftError, LeaseError) as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except SubmissionInvalid as exc:
            raise HTTPException(status_code=422, detail={
                "violations": [{"code": v.code, "half": v.half, "detail": v.detail}
                               for v in exc.report.violations]})
        except SchemaDecodeError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except (KeyError, IndexError) as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except PermissionError as exc:
            raise HTTPException(status_code=403, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/login")
    def login(body: LoginBody):
        return run(platform.login, body.worker_id, body.key)

    @app.get("/queue/next")
    def queue_next(tok: str = Depends(token)):
        try:
            return {"empty": False, "draft": run(platform.next_draft, tok)}
        except HTTPException:
            raise
        except QueueEmpty:
            return {"empty": True, "draft": None}

    @app.post("/drafts/{draft_id}/qualification")
    def submit_qualification(draft_id: int, body: QualificationBody,
                             tok: str = Depends(token)):
        result = run(platform.submit_qualification, tok, draft_id, body.answer,
                     modified_record=body.modified,
                     selected_answers=body.selected_answers)
        if body.bias_label is not None:
            result["bias"] = run(platform.vote_bias, tok, draft_id, body.bias_label)
        return result

    @app.post("/drafts/{question_id}/answer-test")
    def answer_test(question_id: str, body: TestAnswerBody,
                    tok: str = Depends(token)):
        session = platform.sessions.get(tok)
        pending = session.pending_test_question if session else None
        if pending is not None and pending.question_id != question_id:
            raise HTTPException(status_code=404,
                                detail=f"no pending test question {question_id!r}")
        return run(platform.answer_test_question, tok, body.answer)

    @app.post("/reviews/{draft_id}")
    def review(draft_id: int, body: ReviewBody, tok: str = Depends(token)):
        return run(platform.review, tok, draft_id, body.verdict)

    @app.get("/reviews")
    def reviews(tok: str = Depends(token)):
        return {"pending": run(platform.pending_reviews, tok)}

    @app.get("/banners")
    def banners(tok: str = Depends(token)):
        return run(platform.banners, tok)

    @app.post("/comments")
    def post_comment(body: CommentBody, tok: str = Depends(token)):
        return run(platform.post_comment, tok, body.text)

    @app.get("/workers/me/stats")
    def worker_stats(tok: str = Depends(token)):
        return run(platform.worker_stats, tok)

    @app.post("/training/start")
    def training_start(tok: str = Depends(token)):
        return run(platform.start_worker_training, tok)

    @app.post("/training/answer")
    def training_answer(body: TrainingAnswerBody, tok: str = Depends(token)):
        return run(platform.answer_training_item, tok, body.item_index, body.answer)

    @app.get("/admin/adaptivity")
    def admin_adaptivity(tok: str = Depends(token)):
        run(platform.worker_stats, tok)  # session check
        return platform.adaptivity_snapshot()

    @app.post("/admin/aggregate")
    def admin_aggregate(tok: str = Depends(token)):
        session = platform.sessions.get(tok)
        if session is None:
            raise HTTPException(status_code=403, detail="unknown session")
        worker = platform.workers[session.worker_id]
        if worker.role != "admin":
            raise HTTPException(status_code=403, detail="admin role required")
        return run(platform.run_aggregation)

    @app.post("/admin/bonus")
    def admin_bonus(body: BonusBody, tok: str = Depends(token)):
        return run(platform.grant_bonus, tok, body.worker_id, body.amount)

    @app.post("/admin/corpus")
    def admin_corpus(body: CorpusBody, tok: str = Depends(token)):
        return run(platform.load_corpus, body.text, token=tok)

    @app.post("/admin/workers")
    def admin_workers(body: WorkerBody, tok: str = Depends(token)):
        session = platform.sessions.get(tok)
        if session is None or platform.workers[session.worker_id].role != "admin":
            raise HTTPException(status_code=403, detail="admin role required")
        return run(platform.provision_worker, body.worker_id, role=body.role,
                   auth_key=body.key, trained=body.trained)

    return app
