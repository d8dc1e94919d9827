"""Graph-based workflow runtime with shared typed state.

A graph is nodes (handlers returning state deltas) joined by static edges
or per-node routers (conditional edges). Threads execute with per-step
snapshots through a checkpointer, can pause before designated interrupt
nodes for human input, and resume with that input merged into state.

Deltas merge last-writer-wins per key; handlers may only write keys
declared in the state schema.
"""

from __future__ import annotations

import copy
import json
import os
import threading
import urllib.parse
from dataclasses import dataclass, field
from pathlib import Path

END = "__end__"
START = "__start__"

STATUS_RUNNING = "running"
STATUS_INTERRUPTED = "interrupted"
STATUS_FINISHED = "finished"

DEFAULT_CYCLE_BUDGET = 25


class CompileError(Exception):
    """Every structural problem found in a graph definition."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class NodeFailure(Exception):
    def __init__(self, node: str, cause: BaseException):
        self.node = node
        self.cause = cause
        super().__init__(f"node {node!r} failed: {cause}")


class CycleBudgetExceeded(Exception):
    pass


class UnknownThreadError(KeyError):
    pass


class NotInterruptedError(Exception):
    pass


class ThreadBusyError(Exception):
    pass


class ThreadExistsError(Exception):
    pass


@dataclass(frozen=True)
class Snapshot:
    step: int
    node: str
    status: str
    state: dict
    interrupt_node: str | None = None
    ticket_id: str | None = None

    def to_dict(self) -> dict:
        doc = {"step": self.step, "node": self.node, "status": self.status, "state": self.state}
        if self.interrupt_node is not None:
            doc["interrupt_node"] = self.interrupt_node
        if self.ticket_id is not None:
            doc["ticket_id"] = self.ticket_id
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Snapshot":
        return cls(
            step=doc["step"],
            node=doc["node"],
            status=doc["status"],
            state=doc["state"],
            interrupt_node=doc.get("interrupt_node"),
            ticket_id=doc.get("ticket_id"),
        )


@dataclass
class Finished:
    state: dict


@dataclass
class Interrupted:
    ticket_id: str | None
    state: dict
    node: str


# -- checkpointers ---------------------------------------------------------


class InMemoryCheckpointer:
    """Per-thread snapshot log held in memory; suitable for tests."""

    def __init__(self):
        self._threads: dict[str, list[Snapshot]] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def thread_lock(self, thread_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(thread_id, threading.Lock())

    def exists(self, thread_id: str) -> bool:
        return thread_id in self._threads

    def append(self, thread_id: str, snapshot: Snapshot) -> None:
        self._threads.setdefault(thread_id, []).append(snapshot)

    def snapshots(self, thread_id: str) -> list[Snapshot]:
        try:
            return list(self._threads[thread_id])
        except KeyError:
            raise UnknownThreadError(thread_id) from None

    def thread_ids(self) -> list[str]:
        return sorted(self._threads)


class FileCheckpointer(InMemoryCheckpointer):
    """NDJSON snapshot log per thread under <dir>/threads/.

    Thread ids may contain arbitrary characters (the stream bridge uses
    "topic/partition/offset"), so filenames are percent-encoded.
    """

    def __init__(self, directory):
        super().__init__()
        self.directory = Path(directory) / "threads"
        self.directory.mkdir(parents=True, exist_ok=True)
        for path in sorted(self.directory.glob("*.ndjson")):
            thread_id = urllib.parse.unquote(path.stem)
            snaps = [
                Snapshot.from_dict(json.loads(line))
                for line in path.read_text().splitlines()
                if line.strip()
            ]
            if snaps:
                self._threads[thread_id] = snaps

    def _path(self, thread_id: str) -> Path:
        return self.directory / (urllib.parse.quote(thread_id, safe="") + ".ndjson")

    def append(self, thread_id: str, snapshot: Snapshot) -> None:
        with open(self._path(thread_id), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(snapshot.to_dict()) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        super().append(thread_id, snapshot)


# -- graph definition --------------------------------------------------------


@dataclass
class StateGraph:
    """Mutable builder; ``compile()`` validates and freezes it."""

    schema: frozenset = field(default_factory=frozenset)

    def __init__(self, state_keys):
        self.schema = frozenset(state_keys)
        self._nodes: dict[str, object] = {}
        self._edges: dict[str, str] = {}
        self._routers: dict[str, object] = {}
        self._entry: str | None = None

    def add_node(self, name: str, handler) -> "StateGraph":
        if name in self._nodes:
            raise ValueError(f"duplicate node {name!r}")
        if name in (END, START):
            raise ValueError(f"{name!r} is reserved")
        self._nodes[name] = handler
        return self

    def add_edge(self, source: str, target: str) -> "StateGraph":
        self._edges[source] = target
        return self

    def add_conditional_edge(self, source: str, router) -> "StateGraph":
        self._routers[source] = router
        return self

    def set_entry(self, name: str) -> "StateGraph":
        self._entry = name
        return self

    def compile(
        self,
        checkpointer=None,
        interrupt_before=(),
        cycle_budget: int = DEFAULT_CYCLE_BUDGET,
        on_interrupt=None,
    ) -> "CompiledGraph":
        problems = []
        if self._entry is None:
            problems.append("no entry node set")
        elif self._entry not in self._nodes:
            problems.append(f"entry node {self._entry!r} is not defined")
        for source, target in self._edges.items():
            if source not in self._nodes:
                problems.append(f"edge from undefined node {source!r}")
            if target != END and target not in self._nodes:
                problems.append(f"edge from {source!r} targets undefined node {target!r}")
        for source in self._routers:
            if source not in self._nodes:
                problems.append(f"router on undefined node {source!r}")
        for name in self._nodes:
            has_edge, has_router = name in self._edges, name in self._routers
            if has_edge and has_router:
                problems.append(f"node {name!r} has both a static edge and a router")
            if not has_edge and not has_router:
                problems.append(f"node {name!r} has no outgoing route")
        for name in interrupt_before:
            if name not in self._nodes:
                problems.append(f"interrupt names undefined node {name!r}")
        if problems:
            raise CompileError(problems)
        return CompiledGraph(
            schema=self.schema,
            nodes=dict(self._nodes),
            edges=dict(self._edges),
            routers=dict(self._routers),
            entry=self._entry,
            checkpointer=checkpointer if checkpointer is not None else InMemoryCheckpointer(),
            interrupts=frozenset(interrupt_before),
            cycle_budget=cycle_budget,
            on_interrupt=on_interrupt,
        )


class CompiledGraph:
    def __init__(self, schema, nodes, edges, routers, entry, checkpointer, interrupts,
                 cycle_budget, on_interrupt):
        self.schema = schema
        self.nodes = nodes
        self.edges = edges
        self.routers = routers
        self.entry = entry
        self.checkpointer = checkpointer
        self.interrupts = interrupts
        self.cycle_budget = cycle_budget
        self.on_interrupt = on_interrupt

    # -- single node step ----------------------------------------------------

    def _merge(self, node: str, state: dict, delta) -> dict:
        if delta is None:
            return state
        if not isinstance(delta, dict):
            raise NodeFailure(node, TypeError(f"handler returned {type(delta).__name__}, not a delta dict"))
        undeclared = set(delta) - set(self.schema)
        if undeclared:
            raise NodeFailure(
                node, KeyError(f"delta writes undeclared state keys {sorted(undeclared)}")
            )
        merged = dict(state)
        merged.update(delta)
        return merged

    def run_node(self, name: str, state: dict) -> tuple[dict, str]:
        """Execute one node on a state copy; returns (new state, next node)."""
        handler = self.nodes[name]
        try:
            delta = handler(dict(state))
        except NodeFailure:
            raise
        except Exception as exc:
            raise NodeFailure(name, exc) from exc
        merged = self._merge(name, state, delta)
        return merged, self._next_node(name, merged)

    def _next_node(self, name: str, state: dict) -> str:
        if name in self.edges:
            return self.edges[name]
        router = self.routers[name]
        try:
            target = router(dict(state))
        except Exception as exc:
            raise NodeFailure(name, exc) from exc
        if target != END and target not in self.nodes:
            raise NodeFailure(
                name, ValueError(f"router returned unknown target {target!r}")
            )
        return target

    # -- execution -------------------------------------------------------------

    def _execute(self, thread_id: str, state: dict, node: str, step: int,
                 skip_interrupt_for: str | None):
        executed = 0
        while True:
            if node == END:
                return Finished(state)
            if node in self.interrupts and node != skip_interrupt_for:
                ticket_id = None
                if self.on_interrupt is not None:
                    ticket_id = self.on_interrupt(thread_id, node, copy.deepcopy(state))
                step += 1
                # Only reachable before any execution in this invocation:
                # mid-run arrivals at interrupt nodes pause at the bottom.
                self.checkpointer.append(
                    thread_id,
                    Snapshot(step, START, STATUS_INTERRUPTED, copy.deepcopy(state),
                             interrupt_node=node, ticket_id=ticket_id),
                )
                return Interrupted(ticket_id, state, node)
            if executed >= self.cycle_budget:
                raise CycleBudgetExceeded(
                    f"{executed} node executions without reaching {END}"
                )
            skip_interrupt_for = None
            state, nxt = self.run_node(node, state)
            executed += 1
            step += 1
            interrupting = nxt in self.interrupts and nxt != END
            if interrupting:
                ticket_id = None
                if self.on_interrupt is not None:
                    ticket_id = self.on_interrupt(thread_id, nxt, copy.deepcopy(state))
                snapshot = Snapshot(step, node, STATUS_INTERRUPTED, copy.deepcopy(state),
                                    interrupt_node=nxt, ticket_id=ticket_id)
                self.checkpointer.append(thread_id, snapshot)
                return Interrupted(ticket_id, state, nxt)
            status = STATUS_FINISHED if nxt == END else STATUS_RUNNING
            self.checkpointer.append(
                thread_id, Snapshot(step, node, status, copy.deepcopy(state))
            )
            if nxt == END:
                return Finished(state)
            node = nxt

    def invoke(self, initial: dict, thread_id: str):
        """Run a thread from the entry node; returns Finished or Interrupted."""
        undeclared = set(initial) - set(self.schema)
        if undeclared:
            raise KeyError(f"initial state has undeclared keys {sorted(undeclared)}")
        lock = self.checkpointer.thread_lock(thread_id)
        if not lock.acquire(blocking=False):
            raise ThreadBusyError(thread_id)
        try:
            state: dict = {}
            step = 0
            if self.checkpointer.exists(thread_id):
                last = self.checkpointer.snapshots(thread_id)[-1]
                if last.status == STATUS_INTERRUPTED:
                    raise ThreadExistsError(
                        f"thread {thread_id!r} is interrupted; use resume()"
                    )
                # Multi-turn: continue from the final state of the last run.
                state = dict(last.state)
                step = last.step
            state.update(initial)
            return self._execute(thread_id, state, self.entry, step, None)
        finally:
            lock.release()

    def resume(self, thread_id: str, human_input: dict):
        """Merge human input into an interrupted thread and continue."""
        undeclared = set(human_input) - set(self.schema)
        if undeclared:
            raise KeyError(f"human input has undeclared keys {sorted(undeclared)}")
        lock = self.checkpointer.thread_lock(thread_id)
        if not lock.acquire(blocking=False):
            raise ThreadBusyError(thread_id)
        try:
            snapshots = self.checkpointer.snapshots(thread_id)
            last = snapshots[-1]
            if last.status != STATUS_INTERRUPTED:
                raise NotInterruptedError(
                    f"thread {thread_id!r} status is {last.status}"
                )
            state = dict(last.state)
            state.update(human_input)
            return self._execute(
                thread_id, state, last.interrupt_node, last.step, last.interrupt_node
            )
        finally:
            lock.release()

    def state_history(self, thread_id: str) -> list[Snapshot]:
        return self.checkpointer.snapshots(thread_id)

    def get_state(self, thread_id: str) -> Snapshot:
        return self.checkpointer.snapshots(thread_id)[-1]
