"""HTTP/JSON service: guided session endpoints plus a one-shot verify.

Routes:
    POST /sessions                -> 201 {id, phase}
    POST /sessions/{id}/step      -> full session view      {kind, payload}
    GET  /sessions/{id}           -> full session view
    GET  /sessions/{id}/graph     -> text/vnd.graphviz (phase Review or later)
    GET  /sessions/{id}/result    -> verification result (phase Done)
    POST /verify                  -> verification result    {model, formula, policy?}
    POST /parse-check             -> {ok, logic}             {formula}
    GET  /meta/registry           -> registered class and checker descriptors

Error bodies are flat objects {code, message, ...} with optional line/column,
violations and missing_vectors fields.  400 parse/validation, 404 unknown
session, 409 phase mismatch or concurrent mutation.

Environment: AGENTMC_SESSION_STORE (file path; in-memory when unset),
AGENTMC_IDLE_EXPIRY_SECONDS, AGENTMC_EXPLICIT_MAX, AGENTMC_IMPLICIT_MAX,
AGENTMC_BIND (host:port for the agentmc-service entry point).
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from ..errors import (
    NoCapableChecker,
    ParseError,
    UnknownAgent,
    UnknownAtom,
    UnknownModelClass,
    ValidationError,
)
from ..kernel import SelectionPolicy, classify_formula, default_registry, verify
from ..logics import parse_formula
from .store import SessionBusy, SessionStore, UnknownSession
from .wizard import PHASES, PhaseMismatch, WizardError, apply_step, graph_of

_INPUT_ERROR_CODES = {
    ParseError: "parse_error",
    UnknownAtom: "unknown_atom",
    UnknownAgent: "unknown_agent",
    UnknownModelClass: "unknown_model_class",
    NoCapableChecker: "no_capable_checker",
}


def _policy_from_env() -> SelectionPolicy:
    kwargs = {}
    if os.environ.get("AGENTMC_EXPLICIT_MAX"):
        kwargs["explicit_max_states"] = int(os.environ["AGENTMC_EXPLICIT_MAX"])
    if os.environ.get("AGENTMC_IMPLICIT_MAX"):
        kwargs["implicit_max_states"] = int(os.environ["AGENTMC_IMPLICIT_MAX"])
    return SelectionPolicy(**kwargs)


def _store_from_env() -> SessionStore:
    path = os.environ.get("AGENTMC_SESSION_STORE") or None
    idle = float(os.environ.get("AGENTMC_IDLE_EXPIRY_SECONDS", 24 * 60 * 60))
    return SessionStore(path=path, idle_expiry_seconds=idle)


def _validation_body(err: ValidationError) -> dict:
    body = {
        "code": "validation_error",
        "message": str(err),
        "violations": [
            {
                "invariant": v.invariant,
                "subject": v.subject,
                "message": v.message,
                "line": v.line,
            }
            for v in err.violations
        ],
    }
    missing = [
        {"state": v.detail[0], "actions": list(v.detail[1])}
        for v in err.violations
        if v.invariant == "product-closure" and v.detail is not None
    ]
    if missing:
        body["missing_vectors"] = missing
    return body


def create_app(store=None, registry=None, policy=None) -> FastAPI:
    app = FastAPI(title="agentmc service", docs_url=None, redoc_url=None)
    app.state.store = store if store is not None else _store_from_env()
    app.state.registry = registry if registry is not None else default_registry()
    app.state.policy = policy if policy is not None else _policy_from_env()
    # the browser frontend may be served from any origin
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def _err(status: int, code: str, message: str, **extra):
        return JSONResponse(
            status_code=status, content={"code": code, "message": message, **extra}
        )

    @app.exception_handler(WizardError)
    async def _wizard_error(_req: Request, exc: WizardError):
        return _err(exc.status, exc.code, exc.message, **exc.extra)

    @app.exception_handler(UnknownSession)
    async def _unknown_session(_req: Request, exc: UnknownSession):
        return _err(404, "unknown_session", str(exc))

    @app.exception_handler(SessionBusy)
    async def _busy(_req: Request, exc: SessionBusy):
        return _err(409, "conflict", str(exc))

    @app.exception_handler(ParseError)
    async def _parse_error(_req: Request, exc: ParseError):
        extra = {"line": exc.line, "column": exc.column}
        if exc.expected:
            extra["expected"] = list(exc.expected)
        return _err(400, "parse_error", exc.message, **extra)

    @app.exception_handler(ValidationError)
    async def _validation_error(_req: Request, exc: ValidationError):
        body = _validation_body(exc)
        return JSONResponse(status_code=400, content=body)

    @app.exception_handler(UnknownAtom)
    async def _unknown_atom(_req: Request, exc: UnknownAtom):
        return _err(400, "unknown_atom", str(exc))

    @app.exception_handler(UnknownAgent)
    async def _unknown_agent(_req: Request, exc: UnknownAgent):
        return _err(400, "unknown_agent", str(exc))

    @app.exception_handler(UnknownModelClass)
    async def _unknown_model_class(_req: Request, exc: UnknownModelClass):
        return _err(400, "unknown_model_class", str(exc))

    @app.exception_handler(NoCapableChecker)
    async def _no_checker(_req: Request, exc: NoCapableChecker):
        return _err(400, "no_capable_checker", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _bad_body(_req: Request, exc: RequestValidationError):
        return _err(400, "bad_request", "malformed request body")

    @app.post("/sessions", status_code=201)
    async def create_session():
        session = app.state.store.create()
        return {"id": session.id, "phase": session.phase}

    @app.post("/sessions/{session_id}/step")
    async def submit_step(session_id: str, body: dict):
        kind = body.get("kind")
        payload = body.get("payload")
        if not isinstance(kind, str):
            return _err(400, "bad_request", "body needs a string 'kind'")
        lock = app.state.store.claim(session_id)
        try:
            session = app.state.store.get(session_id)
            apply_step(session, kind, payload, app.state.registry, app.state.policy)
            app.state.store.save(session)
            return session.to_view()
        finally:
            lock.release()

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        return app.state.store.get(session_id).to_view()

    @app.get("/sessions/{session_id}/graph")
    async def get_graph(session_id: str):
        session = app.state.store.get(session_id)
        if PHASES.index(session.phase) < PHASES.index("Review"):
            raise PhaseMismatch(
                "graph needs phase Review or later; session is in %s" % session.phase
            )
        return PlainTextResponse(graph_of(session), media_type="text/vnd.graphviz")

    @app.get("/sessions/{session_id}/result")
    async def get_result(session_id: str):
        session = app.state.store.get(session_id)
        if session.phase != "Done" or session.last_result is None:
            raise PhaseMismatch(
                "result needs phase Done; session is in %s" % session.phase
            )
        return session.last_result

    @app.post("/verify")
    async def verify_once(body: dict):
        model = body.get("model")
        formula = body.get("formula")
        if not isinstance(model, str) or not isinstance(formula, str):
            return _err(400, "bad_request", "body needs string 'model' and 'formula'")
        policy = app.state.policy
        if isinstance(body.get("policy"), dict):
            given = body["policy"]
            policy = SelectionPolicy(
                explicit_max_states=int(
                    given.get("explicit_max_states", policy.explicit_max_states)
                ),
                implicit_max_states=int(
                    given.get("implicit_max_states", policy.implicit_max_states)
                ),
            )
        result = verify(app.state.registry, model, formula, policy=policy)
        return result.to_jsonable()

    @app.post("/parse-check")
    async def parse_check(body: dict):
        formula = body.get("formula")
        if not isinstance(formula, str):
            return _err(400, "bad_request", "body needs a string 'formula'")
        logic = classify_formula(parse_formula(formula))
        return {"ok": True, "logic": logic.id}

    @app.get("/meta/registry")
    async def meta_registry():
        reg = app.state.registry
        return {
            "model_classes": [
                {"id": mc.id, "branch": mc.branch.value} for mc in reg.model_classes
            ],
            "logic_classes": [
                {"id": lc.id, "branch": lc.branch.value} for lc in reg.logic_classes
            ],
            "checkers": [
                {
                    "id": c.id,
                    "model_class": c.model_class.id,
                    "logic_class": c.logic_class.id,
                    "method": c.method.value,
                }
                for c in reg.checkers
            ],
        }

    return app


def main(argv=None) -> int:
    import uvicorn

    bind = os.environ.get("AGENTMC_BIND", "127.0.0.1:8000")
    host, _, port = bind.rpartition(":")
    uvicorn.run(create_app(), host=host or "127.0.0.1", port=int(port or 8000))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
