"""Session-based HTTP API over the mutation engine.

Sessions are in-memory; every state response is a pure function of the
recorded history, so replaying the history from the initial seed always
reproduces the current state.
"""

from __future__ import annotations

import itertools
import threading
import time
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from superclusters.models import build_model, model_names
from superclusters.mutation import (
    IllegalMutation,
    Seed,
    even_mutate,
    is_laurent,
    odd_mutate,
)
from superclusters.polytext import format_fraction, format_poly
from superclusters.quiver import (
    QuiverSyntaxError,
    QuiverValidationError,
    parse_quiver,
)
from superclusters.state import seed_state


class CreateSession(BaseModel):
    quiver_text: str | None = None
    model_name: str | None = None


class MutateRequest(BaseModel):
    kind: str  # 'even' | 'odd'
    vertex: str
    mode: str = "algebra"


class Session:
    def __init__(self, sid: str, seed: Seed):
        self.id = sid
        self.history = [{"step": None, "seed": seed}]
        self.cursor = 0
        self.created = time.time()
        self.modified = self.created
        self.lock = threading.Lock()

    @property
    def current(self) -> Seed:
        return self.history[self.cursor]["seed"]

    def algebra_kinds(self):
        return {
            e["step"]["kind"]
            for e in self.history[1 : self.cursor + 1]
            if e["step"] and e["step"]["mode"] == "algebra"
        }

    def state(self):
        return {
            "session_id": self.id,
            **seed_state(self.current),
            "history": [
                e["step"] for e in self.history[1 : self.cursor + 1] if e["step"]
            ],
            "can_undo": self.cursor > 0,
            "can_redo": self.cursor < len(self.history) - 1,
        }


def create_app() -> FastAPI:
    app = FastAPI(title="superclusters")
    sessions: dict[str, Session] = {}
    counter = itertools.count(1)
    registry_lock = threading.Lock()

    def get_session(sid: str) -> Session:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(404, f"no session {sid!r}")
        return session

    @app.get("/api/models")
    def models():
        return {"models": model_names()}

    @app.post("/api/sessions")
    def create(req: CreateSession):
        if (req.quiver_text is None) == (req.model_name is None):
            raise HTTPException(422, "provide exactly one of quiver_text, model_name")
        try:
            if req.model_name is not None:
                seed = build_model(req.model_name)
            else:
                seed = Seed(parse_quiver(req.quiver_text))
        except (KeyError, QuiverSyntaxError, QuiverValidationError, ValueError) as exc:
            raise HTTPException(422, str(exc))
        with registry_lock:
            sid = f"s{next(counter)}"
            session = Session(sid, seed)
            sessions[sid] = session
        return session.state()

    @app.get("/api/sessions/{sid}")
    def show(sid: str):
        return get_session(sid).state()

    @app.post("/api/sessions/{sid}/mutate")
    def mutate(sid: str, req: MutateRequest):
        session = get_session(sid)
        with session.lock:
            seed = session.current
            if req.vertex not in seed.quiver:
                raise HTTPException(409, f"no vertex {req.vertex!r}")
            vertex = seed.quiver.vertex(req.vertex)
            if vertex.frozen:
                raise HTTPException(409, f"vertex {req.vertex!r} is frozen")
            if vertex.parity != req.kind:
                raise HTTPException(
                    409, f"vertex {req.vertex!r} is {vertex.parity}, not {req.kind}"
                )
            if req.mode not in ("algebra", "quiver"):
                raise HTTPException(409, f"unknown mode {req.mode!r}")
            if req.mode == "algebra":
                kinds = session.algebra_kinds() | {req.kind}
                if len(kinds) > 1:
                    raise HTTPException(
                        409,
                        "mixed even/odd sequence not allowed in algebra mode; "
                        "switch to quiver mode to rewire freely",
                    )
            old_value = seed.values[vertex.id]
            try:
                if req.mode == "quiver":
                    from superclusters.quiver import eta_quiver, mu_quiver

                    q = (
                        mu_quiver(seed.quiver, vertex.id)
                        if req.kind == "even"
                        else eta_quiver(seed.quiver, vertex.id)
                    )
                    new_seed = Seed(q, seed.values, seed.ambient)
                else:
                    new_seed = (
                        even_mutate(seed, vertex.id)
                        if req.kind == "even"
                        else odd_mutate(seed, vertex.id)
                    )
            except IllegalMutation as exc:
                raise HTTPException(409, str(exc))
            step = {"kind": req.kind, "vertex": req.vertex, "mode": req.mode}
            session.history = session.history[: session.cursor + 1]
            session.history.append({"step": step, "seed": new_seed})
            session.cursor += 1
            session.modified = time.time()
            response = session.state()
            if req.mode == "algebra":
                new_value = new_seed.values[vertex.id]
                product = (old_value * new_value).normalize()
                response["exchange_relation"] = (
                    f"{req.vertex} * {req.vertex}' = {format_fraction(product)}"
                )
                response["new_value"] = format_fraction(new_value.normalize())
            return response

    @app.post("/api/sessions/{sid}/undo")
    def undo(sid: str):
        session = get_session(sid)
        with session.lock:
            if session.cursor == 0:
                raise HTTPException(409, "nothing to undo")
            session.cursor -= 1
            session.modified = time.time()
            return session.state()

    @app.post("/api/sessions/{sid}/redo")
    def redo(sid: str):
        session = get_session(sid)
        with session.lock:
            if session.cursor >= len(session.history) - 1:
                raise HTTPException(409, "nothing to redo")
            session.cursor += 1
            session.modified = time.time()
            return session.state()

    @app.get("/api/sessions/{sid}/laurent/{vertex}")
    def laurent(sid: str, vertex: str):
        session = get_session(sid)
        seed = session.current
        if vertex not in seed.quiver:
            raise HTTPException(404, f"no vertex {vertex!r}")
        value = seed.values[seed.quiver.vertex(vertex).id]
        cert = is_laurent(value)
        return {
            "vertex": vertex,
            "value": format_fraction(value.normalize()),
            "laurent": cert.laurent,
            "witness": format_poly(cert.witness),
        }

    static_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
