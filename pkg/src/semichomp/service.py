"""JSON-over-HTTP game service.

Sessions live in memory; each one is mutated under its own lock.  The engine
plays the classification strategy when the family theorems provide one, falls
back to an exact solve of the current board, and only if the solver blows its
memo budget picks a heuristic move flagged as such.  Every response carries a
schema version and a reconciliation hash of the present elements.
"""

from __future__ import annotations

import hashlib
import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .decider import smallest_winning_move
from .errors import MemoLimitError, SemichompError, StrategyError
from .families import classify, remove_upset
from .posetgame import FinitePoset, Solver
from .semigroup import NumericalSemigroup, new_semigroup, parse_generators

SCHEMA_VERSION = 1


class CreateGameBody(BaseModel):
    generators: str
    engineSide: str = "none"
    firstMove: Optional[int] = None


class MoveBody(BaseModel):
    element: int


@dataclass
class Session:
    id: str
    generators: list[int]
    S: NumericalSemigroup
    engine_side: str
    board: Optional[list[int]] = None          # ambient after the first move
    position: Optional[frozenset] = None       # present elements
    history: list = field(default_factory=list)
    status: str = "ongoing"
    loser: Optional[str] = None
    strategy: Optional[object] = None
    opening_hint: Optional[int] = None
    certificate: str = "none"
    last_engine_source: Optional[str] = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    # -- game mechanics --------------------------------------------------------

    def window_elements(self) -> list[int]:
        bound = self.S.frobenius + 2 * self.S.multiplicity + 1
        return self.S.elements_upto(max(bound, 12))

    def legal_moves(self) -> list[int]:
        if self.status != "ongoing":
            return []
        if self.position is None:
            return self.window_elements()
        return sorted(self.position)

    def apply(self, player: str, element: int) -> None:
        if element == 0:
            self.history.append({"player": player, "element": 0})
            self.status = "finished"
            self.loser = player
            return
        if self.position is None:
            board = self.S.apery(element).elements
            self.board = list(board)
            self.position = frozenset(board)
        else:
            self.position = remove_upset(self.S, self.position, element)
        self.history.append({"player": player, "element": element})

    def engine_turn(self) -> bool:
        if self.status != "ongoing" or self.engine_side == "none":
            return False
        mover = "A" if len(self.history) % 2 == 0 else "B"
        return mover == self.engine_side

    def engine_move(self) -> int:
        if self.position is None:
            # engine opens the game
            if self.strategy is not None and self.strategy.side == "A":
                mv = self.strategy.first_move()
                self.last_engine_source = self.certificate
                return mv
            if self.opening_hint is not None:
                self.last_engine_source = self.certificate
                return self.opening_hint
            bound = self.S.frobenius + 2 * self.S.multiplicity + 1
            mv = smallest_winning_move(self.S, bound)
            if mv is not None:
                self.last_engine_source = "search"
                return mv
            self.last_engine_source = "heuristic"
            return self.S.multiplicity
        if self.position == frozenset({0}):
            return 0
        opp_last = self.history[-1]["element"] if self.history else None
        if self.strategy is not None:
            try:
                mv = self.strategy.reply(self.position, opp_last)
                self.last_engine_source = self.certificate
                return mv
            except (StrategyError, SemichompError, KeyError):
                pass
        try:
            labels = sorted(self.position)
            poset = FinitePoset.from_leq(labels, self.S.leq)
            outcome = Solver(poset).solve()
            self.last_engine_source = "search"
            if outcome.mover_wins:
                return labels[outcome.winning_moves[0]]
            return max(v for v in labels if v != 0)
        except MemoLimitError:
            self.last_engine_source = "heuristic"
            return max(v for v in self.position if v != 0)

    # -- rendering ---------------------------------------------------------------

    def view(self) -> dict:
        if self.position is None and self.status == "ongoing":
            shown = self.window_elements()
            present = set(shown)
            truncated = True
        else:
            shown = self.board or [0]
            present = set(self.position or [])
            truncated = False
        poset = FinitePoset.from_leq(shown, self.S.leq)
        legal = set(self.legal_moves())
        state_hash = hashlib.sha1(
            ",".join(str(v) for v in sorted(present)).encode()
        ).hexdigest()[:16]
        return {
            "schemaVersion": SCHEMA_VERSION,
            "id": self.id,
            "generators": self.generators,
            "engineSide": self.engine_side,
            "status": self.status,
            "loser": self.loser,
            "history": list(self.history),
            "truncated": truncated,
            "elements": [
                {
                    "value": v,
                    "present": v in present,
                    "legal": v in legal,
                }
                for v in shown
            ],
            "covers": [[lo, hi] for lo, hi in poset.cover_pairs()],
            "stateHash": state_hash,
            "certificate": self.certificate,
            "engineMoveSource": self.last_engine_source,
        }


def create_app() -> FastAPI:
    app = FastAPI(title="semichomp")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}

    def get_session(session_id: str) -> Session:
        sess = sessions.get(session_id)
        if sess is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return sess

    @app.post("/game")
    def create_game(body: CreateGameBody):
        try:
            gens = parse_generators(body.generators)
            S = new_semigroup(gens)
        except SemichompError as err:
            raise HTTPException(status_code=422, detail=str(err))
        if body.engineSide not in ("A", "B", "none"):
            raise HTTPException(status_code=422, detail="engineSide must be A, B or none")
        report = classify(S)
        strategy = report.strategy
        if strategy is not None and strategy.side != body.engineSide:
            strategy = None
        sess = Session(
            id=uuid.uuid4().hex[:12],
            generators=gens,
            S=S,
            engine_side=body.engineSide,
            strategy=strategy,
            opening_hint=report.winning_move if report.winner == "A" else None,
            certificate=report.theorem or "search",
        )
        sessions[sess.id] = sess
        with sess.lock:
            if body.firstMove is not None and body.engineSide != "A":
                _play_human(sess, body.firstMove)
            while sess.engine_turn():
                sess.apply("engine", sess.engine_move())
            return sess.view()

    def _play_human(sess: Session, element: int) -> None:
        if sess.status != "ongoing":
            raise HTTPException(status_code=409, detail="game already finished")
        legal = sess.legal_moves()
        ok = element in legal or (
            sess.position is None and element > 0 and sess.S.contains(element)
        )
        if not ok:
            raise HTTPException(
                status_code=409,
                detail={"error": "illegal move", "legalMoves": legal},
            )
        sess.apply("human", element)

    @app.get("/game/{session_id}")
    def get_game(session_id: str):
        sess = get_session(session_id)
        with sess.lock:
            return sess.view()

    @app.post("/game/{session_id}/move")
    def play_move(session_id: str, body: MoveBody):
        sess = get_session(session_id)
        with sess.lock:
            _play_human(sess, body.element)
            while sess.engine_turn():
                sess.apply("engine", sess.engine_move())
            return sess.view()

    @app.delete("/game/{session_id}")
    def delete_game(session_id: str):
        sess = sessions.pop(session_id, None)
        if sess is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return {"deleted": True, "id": session_id}

    @app.get("/classify")
    def classify_endpoint(gens: str):
        try:
            S = new_semigroup(parse_generators(gens))
        except SemichompError as err:
            raise HTTPException(status_code=422, detail=str(err))
        report = classify(S)
        out = report.record()
        out["schemaVersion"] = SCHEMA_VERSION
        out["semigroup"] = S.record()
        return out

    return app


def serve(port: int = 8077, host: str = "127.0.0.1") -> None:
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
