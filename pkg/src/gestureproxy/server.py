"""Live session protocol over a local websocket, for the browser playground.

One connection drives one DeviceSession. The client opens with a Hello; the
Welcome reply anchors the engine's virtual clock (virtual time 0 at the
handshake) so the client can stamp pointer samples itself. After that the
stream is newline-framed JSON records in both directions (one record per
websocket message is also accepted).

Client -> engine: Hello, PointerBatch, AppSwitch, ScreenOff, Bypass,
ConfigUpdate, Tick. Engine -> client: Welcome, every session output record
(VirtualGesture, Blocked, SchedulerSnapshot, session events), BudgetSummary
after each handled message, and Error for rejected input.

The engine stays authoritative for timing: a server-side timer advances the
virtual clock to flush delayed dispatches; client Tick messages merely nudge
the same path (useful for deterministic tests).
"""

from __future__ import annotations

import asyncio
import json
import time
from dataclasses import replace
from http import HTTPStatus
from pathlib import Path

from .budget import BudgetConfig, BudgetError
from .events import (
    BypassOption,
    InterventionConfig,
    PointerSample,
    SessionEvent,
    TraceError,
    dumps_canonical,
)
from .session import DeviceSession, SessionConfig

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".json": "application/json",
    ".svg": "image/svg+xml",
}


class LiveSession:
    """Protocol state for one connected client."""

    def __init__(self, config: SessionConfig, send):
        self._send = send
        self.config = config
        self.outbox: list[dict] = []
        self.session = DeviceSession(config, self.outbox.append)
        self.origin: float | None = None
        self.started = False

    def virtual_now(self) -> int:
        assert self.origin is not None
        return max(0, int((time.monotonic() - self.origin) * 1000))

    async def handle(self, text: str) -> None:
        for line in text.splitlines():
            line = line.strip()
            if line:
                await self._handle_record(line)

    async def _handle_record(self, line: str) -> None:
        try:
            msg = json.loads(line)
        except json.JSONDecodeError:
            await self._error("invalid JSON")
            return
        kind = msg.get("kind")
        try:
            if kind == "Hello":
                await self._hello()
            elif not self.started:
                await self._error("expected Hello first")
            elif kind == "PointerBatch":
                for obj in msg.get("samples", []):
                    self.session.process(PointerSample.from_json_obj(obj))
            elif kind == "AppSwitch":
                await self._app_switch(msg.get("app_id"))
            elif kind == "ScreenOff":
                self._leave_current()
            elif kind == "Bypass":
                t = self.session.budget.now
                self.session.process(SessionEvent.bypass(t, BypassOption(msg["option"])))
            elif kind == "ConfigUpdate":
                self._config_update(msg)
            elif kind == "Tick":
                self.session.advance_clock(int(msg.get("t", self.virtual_now())))
            else:
                await self._error(f"unknown message kind {kind!r}")
        except (TraceError, BudgetError, ValueError, KeyError) as e:
            await self._error(str(e))
        await self.flush()

    async def _hello(self) -> None:
        self.origin = time.monotonic()
        self.started = True
        await self._send(
            dumps_canonical(
                {
                    "kind": "Welcome",
                    "virtual_time": 0,
                    "config": self.config.to_json_obj(),
                }
            )
        )

    async def _app_switch(self, app_id: str | None) -> None:
        if not app_id:
            await self._error("AppSwitch needs app_id")
            return
        t = max(self.session.budget.now, self.virtual_now())
        self._leave_current(t)
        self.session.process(SessionEvent.app_enter(t, app_id))

    def _leave_current(self, t: int | None = None) -> None:
        t = t if t is not None else max(self.session.budget.now, self.virtual_now())
        if self.session.budget.foreground_app is not None:
            self.session.process(SessionEvent.screen_off(t))
        else:
            self.session.advance_clock(t)

    def _config_update(self, msg: dict) -> None:
        if "intervention" in msg:
            new = InterventionConfig.from_json_obj(msg["intervention"])
            self.session.update_intervention(new)
            self.config = replace(self.config, intervention=new)
        if "budget" in msg:
            new_budget = BudgetConfig.from_json_obj(msg["budget"])
            self.session.budget.config = new_budget
            self.config = replace(self.config, budget=new_budget)

    async def _error(self, message: str) -> None:
        await self._send(dumps_canonical({"kind": "Error", "message": message}))

    async def flush(self) -> None:
        # Drain in place: the DeviceSession sink holds a reference to outbox.
        records = self.outbox[:]
        self.outbox.clear()
        for record in records:
            await self._send(dumps_canonical(record))
        if self.started:
            await self._send(dumps_canonical(self.session.budget_summary()))

    def next_dispatch_at(self) -> int | None:
        queue = self.session.queue
        if len(queue) == 0:
            return None
        return queue.peek_at()


async def _client_loop(ws, config: SessionConfig) -> None:
    live = LiveSession(config, ws.send)

    async def pump() -> None:
        # Wall clock drives the virtual clock between client messages so
        # delayed dispatches fire on time.
        while True:
            await asyncio.sleep(0.02)
            if not live.started:
                continue
            due = live.next_dispatch_at()
            now = live.virtual_now()
            if due is not None and due <= now:
                live.session.advance_clock(now)
                await live.flush()

    pump_task = asyncio.create_task(pump())
    try:
        async for text in ws:
            await live.handle(text)
    finally:
        pump_task.cancel()


def _static_responder(static_dir: str | None):
    root = Path(static_dir) if static_dir else None

    def process_request(connection, request):
        if "Upgrade" in request.headers:
            return None
        if root is None:
            return connection.respond(HTTPStatus.NOT_FOUND, "websocket endpoint only\n")
        name = request.path.split("?", 1)[0].lstrip("/") or "index.html"
        target = (root / name).resolve()
        if not target.is_relative_to(root.resolve()) or not target.is_file():
            return connection.respond(HTTPStatus.NOT_FOUND, "not found\n")
        body = target.read_bytes()
        response = connection.respond(HTTPStatus.OK, "")
        # respond() pre-sets these; Headers is a multidict, so replace them.
        del response.headers["Content-Length"]
        del response.headers["Content-Type"]
        response.body = body
        response.headers["Content-Type"] = _CONTENT_TYPES.get(
            target.suffix, "application/octet-stream"
        )
        response.headers["Content-Length"] = str(len(body))
        return response

    return process_request


async def serve_async(
    config: SessionConfig,
    host: str = "127.0.0.1",
    port: int = 8765,
    static_dir: str | None = None,
):
    import websockets

    return await websockets.serve(
        lambda ws: _client_loop(ws, config),
        host,
        port,
        process_request=_static_responder(static_dir),
    )


def serve_forever(
    config: SessionConfig,
    host: str = "127.0.0.1",
    port: int = 8765,
    static_dir: str | None = None,
) -> None:
    async def run() -> None:
        server = await serve_async(config, host, port, static_dir)
        print(f"session protocol on ws://{host}:{port}")
        await server.wait_closed()

    asyncio.run(run())
