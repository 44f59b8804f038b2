"""Session-oriented HTTP API for interactive growth exploration.

Each session owns a growth state plus a bounded undo stack; mutations on
one session are serialized by a per-session lock while distinct sessions
proceed concurrently.  Every tree reachable through the API comes out of
minimal_growths, so exported logs always replay cleanly.

Set AMOEBA_LOG_DIR to persist each session's log as JSONL, one file per
session, rewritten after every mutation.
"""

from __future__ import annotations

import os
import random
import threading
import uuid
from collections import deque
from dataclasses import dataclass, field

from fastapi import Body, FastAPI
from fastapi.exceptions import HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse

from .engine import (
    BUDGET_EXHAUSTED,
    CONFINING_REACHED,
    DEFAULT_MAX_STEPS,
    DEFAULT_MAX_VERTICES,
    Colony,
    GrowthState,
    SequenceLog,
    classify,
)
from .errors import AmoebaError, MalformedInput
from .model import (
    Amoeba,
    CopyEmbedding,
    copy_status,
    enumerate_copies,
    minimal_growths,
    parse_amoeba,
)
from .serialize import log_to_jsonl, parse_colony
from .trees import Tree, parse_tree

UNDO_DEPTH = 128


@dataclass
class _Session:
    id: str
    ell: int
    amoeba: Amoeba | None
    colony: Colony | None
    state: GrowthState
    undo: deque = field(default_factory=lambda: deque(maxlen=UNDO_DEPTH))
    lock: threading.Lock = field(default_factory=threading.Lock)

    def copies(self, tree: Tree) -> list[tuple[int | None, CopyEmbedding]]:
        """Copies of the session's amoeba (or of every colony member,
        member-tagged) in the given tree, in a stable order.  Callers
        pass the tree so one snapshot serves the whole request."""
        if self.colony is not None:
            out = []
            for mi, member in enumerate(self.colony.members):
                out.extend((mi, c) for c in enumerate_copies(member, tree))
            return out
        return [(None, c) for c in enumerate_copies(self.amoeba, tree)]


def _bad_request(message: str):
    return HTTPException(status_code=400, detail=message)


def create_app(
    max_vertices: int = DEFAULT_MAX_VERTICES, log_dir: str | None = None
) -> FastAPI:
    app = FastAPI(title="amoeba explorer", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, _Session] = {}
    registry_lock = threading.Lock()
    if log_dir is None:
        log_dir = os.environ.get("AMOEBA_LOG_DIR")

    def persist(sess: _Session) -> None:
        if not log_dir:
            return
        os.makedirs(log_dir, exist_ok=True)
        path = os.path.join(log_dir, f"{sess.id}.jsonl")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(log_to_jsonl(sess.state.log))

    def get_session(sid: str) -> _Session:
        with registry_lock:
            sess = sessions.get(sid)
        if sess is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")
        return sess

    def summary(sess: _Session) -> dict:
        tree = sess.state.current
        alive = sum(
            1 for _, c in sess.copies(tree) if not copy_status(c, tree, sess.ell).dead
        )
        doc = {
            "id": sess.id,
            "ell": sess.ell,
            "kind": "colony" if sess.colony is not None else "amoeba",
            "steps": sess.state.step_index,
            "tree": tree.to_json(),
            "vertices": tree.vertex_count,
            "alive_copies": alive,
            "undo_depth": len(sess.undo),
        }
        if sess.amoeba is not None:
            doc["amoeba"] = sess.amoeba.to_json()
        else:
            doc["colony"] = {"members": [m.to_json() for m in sess.colony.members]}
        return doc

    def step_once(sess: _Session, rng: random.Random | None) -> str | None:
        """One auto step under the session lock; None when no alive copy
        is left, an outcome string when a budget blocks the step."""
        tree = sess.state.current
        pairs = sess.copies(tree)
        alive = [
            (mi, c) for mi, c in pairs if not copy_status(c, tree, sess.ell).dead
        ]
        if not alive:
            return None
        mi, c = alive[0] if rng is None else rng.choice(alive)
        gs = minimal_growths(c, tree, sess.ell)
        g = 0 if rng is None else rng.randrange(len(gs.results))
        if gs.results[g].vertex_count > max_vertices:
            return BUDGET_EXHAUSTED
        sess.undo.append(sess.state)
        sess.state = sess.state.apply(c, gs.new_edges[g], member=mi)
        return ""

    @app.post("/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        try:
            if not isinstance(body, dict):
                raise MalformedInput("body must be a JSON object")
            ell = body.get("ell", 1)
            if isinstance(ell, bool) or not isinstance(ell, int) or ell < 1:
                raise MalformedInput("ell must be a positive integer")
            amoeba = colony = None
            if "colony" in body:
                colony = parse_colony(body["colony"])
            elif "amoeba" in body:
                amoeba = parse_amoeba(body["amoeba"])
            else:
                raise MalformedInput("body needs an amoeba or a colony")
            if "start" in body:
                start = parse_tree(body["start"])
            elif amoeba is not None:
                start = amoeba.shape
            else:
                raise MalformedInput("a colony session needs a start tree")
        except AmoebaError as e:
            raise _bad_request(str(e))
        if start.vertex_count > max_vertices:
            raise HTTPException(
                status_code=413,
                detail=f"start tree has {start.vertex_count} vertices, cap is {max_vertices}",
            )
        sess = _Session(
            id=uuid.uuid4().hex,
            ell=ell,
            amoeba=amoeba,
            colony=colony,
            state=GrowthState(
                start, SequenceLog(ell=ell, start=start, amoeba=amoeba, colony=colony)
            ),
        )
        with registry_lock:
            sessions[sess.id] = sess
        persist(sess)
        return summary(sess)

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        return summary(get_session(sid))

    @app.get("/sessions/{sid}/copies")
    def list_copies(sid: str):
        sess = get_session(sid)
        tree = sess.state.current
        out = []
        for i, (mi, c) in enumerate(sess.copies(tree)):
            status = copy_status(c, tree, sess.ell)
            doc = c.to_json()
            doc.update(index=i, dead=status.dead, min_cost=status.min_cost)
            if mi is not None:
                doc["member"] = mi
            out.append(doc)
        return {"copies": out}

    @app.get("/sessions/{sid}/copies/{k}/growths")
    def list_growths(sid: str, k: int):
        sess = get_session(sid)
        tree = sess.state.current
        pairs = sess.copies(tree)
        if not (0 <= k < len(pairs)):
            raise HTTPException(status_code=422, detail=f"copy index {k} out of range")
        _, c = pairs[k]
        status = copy_status(c, tree, sess.ell)
        doc = {
            "copy": k,
            "copy_vertices": sorted(c.vertices),
            "cost": status.min_cost,
            "growths": [],
        }
        if status.dead:
            return doc
        gs = minimal_growths(c, tree, sess.ell)
        doc["growths"] = [
            {
                "index": i,
                "new_edges": [list(e) for e in gs.new_edges[i]],
                "vertices": gs.results[i].vertex_count,
            }
            for i in range(len(gs.results))
        ]
        return doc

    @app.post("/sessions/{sid}/apply")
    def apply_growth(sid: str, body: dict = Body(...)):
        sess = get_session(sid)
        k, g = body.get("copy"), body.get("growth")
        for name, value in (("copy", k), ("growth", g)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise HTTPException(
                    status_code=422, detail=f"{name} must be an integer index"
                )
        with sess.lock:
            tree = sess.state.current
            pairs = sess.copies(tree)
            if not (0 <= k < len(pairs)):
                raise HTTPException(status_code=422, detail=f"copy index {k} out of range")
            mi, c = pairs[k]
            if copy_status(c, tree, sess.ell).dead:
                raise HTTPException(status_code=409, detail=f"copy {k} is dead")
            gs = minimal_growths(c, tree, sess.ell)
            if not (0 <= g < len(gs.results)):
                raise HTTPException(
                    status_code=422, detail=f"growth index {g} out of range"
                )
            if gs.results[g].vertex_count > max_vertices:
                raise HTTPException(
                    status_code=413, detail=f"growth exceeds the {max_vertices}-vertex cap"
                )
            sess.undo.append(sess.state)
            sess.state = sess.state.apply(c, gs.new_edges[g], member=mi)
            persist(sess)
            return summary(sess)

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        sess = get_session(sid)
        with sess.lock:
            if not sess.undo:
                raise HTTPException(status_code=409, detail="already at the start tree")
            sess.state = sess.undo.pop()
            persist(sess)
            return summary(sess)

    @app.post("/sessions/{sid}/auto")
    def auto(sid: str, body: dict = Body(...)):
        sess = get_session(sid)
        steps = body.get("steps")
        if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
            raise _bad_request("steps must be a positive integer")
        strategy = body.get("strategy", "first")
        if strategy not in ("first", "random"):
            raise _bad_request(f"unknown strategy {strategy!r}")
        seed = body.get("seed")
        if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
            raise _bad_request("seed must be an integer")
        rng = random.Random(seed) if strategy == "random" else None
        taken = 0
        outcome = BUDGET_EXHAUSTED
        with sess.lock:
            for _ in range(steps):
                result = step_once(sess, rng)
                if result is None:
                    outcome = CONFINING_REACHED
                    break
                if result == BUDGET_EXHAUSTED:
                    break
                taken += 1
            else:
                # steps used up; the tree may or may not be confining now
                tree_now = sess.state.current
                if all(
                    copy_status(c, tree_now, sess.ell).dead
                    for _, c in sess.copies(tree_now)
                ):
                    outcome = CONFINING_REACHED
            persist(sess)
            doc = summary(sess)
        doc.update(outcome=outcome, steps_taken=taken, reached_confining=outcome == CONFINING_REACHED)
        return doc

    @app.get("/sessions/{sid}/log")
    def export_log(sid: str):
        sess = get_session(sid)
        return PlainTextResponse(
            log_to_jsonl(sess.state.log), media_type="application/x-ndjson"
        )

    @app.post("/sessions/{sid}/classify")
    def classify_session(sid: str, body: dict = Body(default={})):
        sess = get_session(sid)
        if sess.amoeba is None:
            raise _bad_request("classification applies to amoeba sessions")
        max_steps = body.get("max_steps", DEFAULT_MAX_STEPS)
        cap = body.get("max_vertices", DEFAULT_MAX_VERTICES)
        for name, value in (("max_steps", max_steps), ("max_vertices", cap)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise _bad_request(f"{name} must be a positive integer")
        return classify(sess.amoeba, sess.ell, max_steps, cap).to_json()

    app.state.sessions = sessions
    return app
