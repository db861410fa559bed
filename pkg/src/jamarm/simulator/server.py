"""Wire-protocol session server.

Clients connect to ``/ws`` over WebSocket and exchange JSON messages:

    client -> server:
        {"type":"knob","id":1..4,"dir":+1|-1}
        {"type":"button","id":1..4}
        {"type":"pressure","segment":int,"psi":number}
        {"type":"load","point":"tip"|"connector","newtons":number}
        {"type":"reset"}
    server -> client:
        {"type":"state", ...}   after the connect and every processed event
        {"type":"error","reason":...}   for rejected messages (session continues)

Each connection owns an independent session; events are applied strictly in
arrival order.
"""

import json

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from ..actuation import KnobEvent
from .events import LOAD_POINTS, LoadEvent, PressureEvent, ResetEvent
from .serialize import canonical_json
from .session import EventError, SessionConfig, SessionState, snapshot_serialize, step


def client_message_to_event(obj):
    """Translate one client JSON message into a session event."""
    if not isinstance(obj, dict):
        raise ValueError("message must be a JSON object")
    kind = obj.get("type")
    if kind == "knob":
        return KnobEvent(_as_int(obj, "id"), _as_int(obj, "dir"))
    if kind == "button":
        return KnobEvent(_as_int(obj, "id"), button=True)
    if kind == "pressure":
        return PressureEvent(_as_int(obj, "segment"), _as_number(obj, "psi"))
    if kind == "load":
        point = obj.get("point")
        if point not in LOAD_POINTS:
            raise ValueError(f"load point must be one of {LOAD_POINTS}, got {point!r}")
        return LoadEvent(point, _as_number(obj, "newtons"))
    if kind == "reset":
        return ResetEvent()
    raise ValueError(f"unknown message type {kind!r}")


def _as_int(obj, key):
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{key!r} must be an integer, got {value!r}")
    return value


def _as_number(obj, key):
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{key!r} must be a number, got {value!r}")
    return float(value)


def create_app(cfg: SessionConfig = None) -> FastAPI:
    cfg = cfg if cfg is not None else SessionConfig()
    app = FastAPI(title="jamarm teleop simulator")

    @app.websocket("/ws")
    async def teleop(ws: WebSocket):
        await ws.accept()
        state = SessionState.initial(cfg)
        await ws.send_text(snapshot_serialize(state, cfg))
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    event = client_message_to_event(json.loads(raw))
                    state = step(state, event, cfg)
                except (EventError, ValueError) as exc:
                    await ws.send_text(
                        canonical_json({"type": "error", "reason": str(exc)})
                    )
                    continue
                await ws.send_text(snapshot_serialize(state, cfg))
        except WebSocketDisconnect:
            pass

    return app


def serve(cfg: SessionConfig = None, port: int = 8731, host: str = "127.0.0.1"):
    """Run the session server until interrupted."""
    import uvicorn

    uvicorn.run(create_app(cfg), host=host, port=port, log_level="info")
