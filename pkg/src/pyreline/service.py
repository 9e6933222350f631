"""HTTP service for interactive games: a human plays Builder or Arsonist.

Sessions persist as append-only JSON-lines logs; the in-memory registry
is rebuilt from those logs on restart by replaying the creation request
and the human's moves (engine moves re-derive deterministically from
the seed). All operations on one session are serialized by its lock.
"""

from __future__ import annotations

import io
import json
import os
import threading
import uuid

import numpy as np
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from .engine import Game, BuilderMove, _trace_rows
from .errors import (
    BadSchedule,
    MoveError,
    NotYourTurn,
    PyrelineError,
    RoleMismatch,
    ScheduleError,
    StrategyReturnedBurnedVertex,
    UnknownGame,
)
from .schedule import make_schedule
from .strategies import make_arsonist, make_builder

MAX_AUTO_SUBSTEPS = 200  # guard against endless all-burned PASS loops

ROLES = ("builder", "arsonist", "none")


def _error_payload(code: str, message: str, detail=None):
    return {"code": code, "message": message, "detail": detail}


class Session:
    """One interactive game plus its append-only log."""

    def __init__(self, sid: str, request: dict, log_path: str, replaying: bool = False):
        self.id = sid
        self.lock = threading.Lock()
        self.log_path = log_path
        self._replaying = replaying
        self.human_role = request.get("human_role", "none")
        if self.human_role not in ROLES:
            raise RoleMismatch(f"human_role must be one of {ROLES}")
        builder_name = request.get("builder", "path")
        arsonist_name = request.get("arsonist", "greedy")
        if (self.human_role == "builder") != (builder_name == "human"):
            raise RoleMismatch("builder slot must be 'human' exactly when human_role is builder")
        if (self.human_role == "arsonist") != (arsonist_name == "human"):
            raise RoleMismatch("arsonist slot must be 'human' exactly when human_role is arsonist")
        try:
            schedule = make_schedule(request.get("schedule", {"kind": "constant", "value": 1}))
        except ScheduleError as exc:
            raise BadSchedule(str(exc)) from exc
        seed = int(request.get("seed", 0))
        builder = make_builder(builder_name, seed)
        arsonist = make_arsonist(arsonist_name, seed)
        self.game = Game(schedule, builder, arsonist, seed=seed)
        self.request = request
        self.awaiting = None  # "builder-move" | "arsonist-move" | None
        self.required_count = 0
        if not replaying:
            self._log({"type": "create", "request": request})
        self.advance()

    # -- logging ------------------------------------------------------------

    def _log(self, entry: dict):
        if self._replaying:
            return
        with open(self.log_path, "a") as fh:
            fh.write(json.dumps(entry, separators=(",", ":")) + "\n")

    # -- turn driving --------------------------------------------------------

    def advance(self, max_substeps: int = MAX_AUTO_SUBSTEPS):
        """Run engine sub-steps until a human decision point or the cap."""
        game = self.game
        for _ in range(max_substeps):
            if game.phase == "idle":
                self.required_count = game.begin_turn()
            if game.phase == "awaiting-move":
                if self.human_role == "builder" and self.required_count > 0:
                    self.awaiting = "builder-move"
                    return
                if self.human_role == "builder":
                    # a 0-count turn admits only the empty move: no decision
                    move = BuilderMove.empty()
                else:
                    move = game.builder.propose(game, self.required_count)
                game.apply_builder_move(move)
                eu, ev = _move_arrays(move)
                self._log(
                    {
                        "type": "builder-move",
                        "turn": game.current_turn,
                        "by": "engine",
                        "count": move.count,
                        "edges": _edges_jsonable(eu, ev),
                    }
                )
            if game.phase == "moved":
                game.run_spread()
            if game.phase == "spread":
                if game.all_burned():
                    record = game.ignite(None)
                else:
                    if self.human_role == "arsonist":
                        self.awaiting = "arsonist-move"
                        return
                    record = game.ignite(game.arsonist.choose(game))
                self._log(
                    {
                        "type": "turn",
                        "n": record.n,
                        "added": record.added,
                        "vertices": record.vertex_total,
                        "burning": record.burning_total,
                        "source": record.source,
                        "by": "engine",
                    }
                )
        self.awaiting = None  # stalled on the auto cap; /step continues

    def submit_builder_move(self, count: int, edges):
        if self.awaiting != "builder-move":
            raise NotYourTurn("session is not awaiting a builder move")
        move = BuilderMove(count, edges)
        self.game.apply_builder_move(move)  # raises MoveError on bad input
        eu, ev = _move_arrays(move)
        self._log(
            {
                "type": "builder-move",
                "turn": self.game.current_turn,
                "by": "human",
                "count": count,
                "edges": _edges_jsonable(eu, ev),
            }
        )
        self.awaiting = None
        self.advance()

    def submit_ignition(self, vertex: int):
        if self.awaiting != "arsonist-move":
            raise NotYourTurn("session is not awaiting an arsonist move")
        record = self.game.ignite(int(vertex))
        self._log(
            {
                "type": "turn",
                "n": record.n,
                "added": record.added,
                "vertices": record.vertex_total,
                "burning": record.burning_total,
                "source": record.source,
                "by": "human",
            }
        )
        self.awaiting = None
        self.advance()

    def step(self):
        """Advance when no human decision is pending (role none, or stalled)."""
        if self.awaiting is not None:
            raise NotYourTurn(f"session is awaiting {self.awaiting}")
        self._log({"type": "step"})
        self.advance()

    # -- state ------------------------------------------------------------------

    def state(self, since: int = 0) -> dict:
        game = self.game
        graph = game.graph
        total = graph.vertex_count
        burn_turn = game.burn.burn_turn.view()[:total]
        v_prefix, e_prefix = _prefix_counts(graph, since)
        new_ids = np.arange(v_prefix, total)
        newly_burned = np.flatnonzero(burn_turn > since)
        vertex_ids = np.union1d(new_ids, newly_burned)
        eu, ev = graph.edge_arrays()
        burned = game.burn.burned.view()[:total]
        turns = game._trace_vertices.view()
        series_from = max(0, min(since, game.turn))
        bseries = game._trace_burning.view()
        return {
            "game_id": self.id,
            "turn": game.turn,
            "awaiting": self.awaiting,
            "human_role": self.human_role,
            "required_count": self.required_count if self.awaiting == "builder-move" else None,
            "vertex_count": int(total),
            "burning_count": int(game.burn.count),
            "since": since,
            "vertices": [
                {
                    "id": int(v),
                    "gen": graph.generation_of(int(v)),
                    "burning": bool(burned[v]),
                    "burn_turn": int(burn_turn[v]) if burn_turn[v] >= 0 else None,
                }
                for v in vertex_ids
            ],
            "edges": [
                [int(eu[i]), int(ev[i])] for i in range(e_prefix, graph.edge_count)
            ],
            "series": [
                {
                    "n": int(i + 1),
                    "vertices": int(turns[i]),
                    "burning": int(bseries[i]),
                    "density": float(f"{(bseries[i] / turns[i] if turns[i] else 0.0):.10g}"),
                }
                for i in range(series_from, game.turn)
            ],
        }

    def trace_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,added,vertices,burning,density,source\n")
        for n, added, v, b, s in _trace_rows(self.game, subsample=False):
            density = b / v if v else 0.0
            source = "PASS" if s < 0 else str(s)
            buf.write(f"{n},{added},{v},{b},{density:.10g},{source}\n")
        return buf.getvalue()


def _prefix_counts(graph, turn):
    snap = graph.snapshot(turn)
    return snap.vertex_count, snap.edge_count


def _move_arrays(move: BuilderMove):
    from .graph import normalize_edges

    return normalize_edges(move.edges)


def _edges_jsonable(eu, ev):
    return [[int(a), int(b)] for a, b in zip(eu.tolist(), ev.tolist())]


class Registry:
    def __init__(self, data_dir: str):
        self.data_dir = data_dir
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()
        os.makedirs(data_dir, exist_ok=True)
        self._rebuild()

    def _rebuild(self):
        for fname in sorted(os.listdir(self.data_dir)):
            if not fname.endswith(".jsonl"):
                continue
            sid = fname[: -len(".jsonl")]
            path = os.path.join(self.data_dir, fname)
            try:
                self.sessions[sid] = replay_session_log(sid, path)
            except Exception:  # noqa: BLE001 - a corrupt log must not kill the service
                continue

    def create(self, request: dict) -> Session:
        sid = uuid.uuid4().hex[:12]
        path = os.path.join(self.data_dir, f"{sid}.jsonl")
        session = Session(sid, request, path)
        with self.lock:
            self.sessions[sid] = session
        return session

    def get(self, sid: str) -> Session:
        with self.lock:
            try:
                return self.sessions[sid]
            except KeyError:
                raise UnknownGame(f"no session {sid}") from None


def replay_session_log(sid: str, path: str) -> Session:
    """Rebuild a session by replaying its log (human moves only)."""
    with open(path) as fh:
        entries = [json.loads(line) for line in fh if line.strip()]
    if not entries or entries[0]["type"] != "create":
        raise PyrelineError(f"log {path} does not start with a create entry")
    session = Session(sid, entries[0]["request"], path, replaying=True)
    for entry in entries[1:]:
        kind = entry["type"]
        by = entry.get("by")
        if kind == "builder-move" and by == "human":
            session.submit_builder_move(entry["count"], entry["edges"])
        elif kind == "turn" and by == "human":
            session.submit_ignition(entry["source"])
        elif kind == "step":
            session.step()
    session._replaying = False
    return session


def create_app(data_dir: str | None = None) -> FastAPI:
    data_dir = data_dir or os.environ.get("PYRELINE_DATA_DIR", "pyreline-data")
    app = FastAPI(title="pyreline game service")
    origin = os.environ.get("PYRELINE_UI_ORIGIN", "*")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = Registry(data_dir)
    app.state.registry = registry

    @app.exception_handler(PyrelineError)
    async def _handle(request: Request, exc: PyrelineError):
        if isinstance(exc, UnknownGame):
            status = 404
        elif isinstance(exc, (NotYourTurn, StrategyReturnedBurnedVertex)):
            status = 409
        else:
            status = 400
        return JSONResponse(
            status_code=status,
            content=_error_payload(type(exc).__name__, str(exc)),
        )

    @app.post("/api/games")
    async def create_game(request: Request):
        body = await request.json()
        session = registry.create(body)
        with session.lock:
            return {"game_id": session.id, "state": session.state(0)}

    @app.get("/api/games/{sid}")
    async def get_state(sid: str, since: int = 0):
        session = registry.get(sid)
        with session.lock:
            return session.state(since)

    @app.post("/api/games/{sid}/move")
    async def submit_move(sid: str, request: Request):
        session = registry.get(sid)
        body = await request.json()
        with session.lock:
            if "vertex" in body:
                session.submit_ignition(body["vertex"])
            elif "count" in body:
                session.submit_builder_move(int(body["count"]), body.get("edges", []))
            else:
                raise MoveError("move must carry 'vertex' or 'count'+'edges'")
            return session.state(int(body.get("since", 0)))

    @app.post("/api/games/{sid}/step")
    async def step(sid: str):
        session = registry.get(sid)
        with session.lock:
            session.step()
            return session.state(0)

    @app.get("/api/games/{sid}/trace.csv")
    async def trace(sid: str):
        session = registry.get(sid)
        with session.lock:
            return PlainTextResponse(session.trace_csv(), media_type="text/csv")

    @app.get("/api/presets")
    async def list_presets():
        from .scenario import presets

        return {
            name: {
                "schedule": sc.schedule,
                "builder": sc.builder,
                "arsonist": sc.arsonist,
                "turns": sc.turns,
            }
            for name, sc in presets().items()
        }

    return app
