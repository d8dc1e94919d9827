import threading
import time

import pytest

from riverbed.workflow import (
    END,
    CompileError,
    CycleBudgetExceeded,
    FileCheckpointer,
    Finished,
    InMemoryCheckpointer,
    Interrupted,
    NodeFailure,
    NotInterruptedError,
    Snapshot,
    StateGraph,
    ThreadBusyError,
    ThreadExistsError,
    UnknownThreadError,
)


def set_key(key, value):
    return lambda state: {key: value}


def linear_graph(checkpointer=None, interrupt_before=()):
    g = StateGraph(["a", "b", "c", "counter"])
    g.add_node("first", set_key("a", 1))
    g.add_node("second", set_key("b", 2))
    g.add_node("third", set_key("c", 3))
    g.add_edge("first", "second")
    g.add_edge("second", "third")
    g.add_edge("third", END)
    g.set_entry("first")
    return g.compile(checkpointer=checkpointer, interrupt_before=interrupt_before)


class TestCompile:
    def test_two_node_graph_compiles(self):
        g = StateGraph(["x"])
        g.add_node("a", set_key("x", 1)).add_node("b", set_key("x", 2))
        g.add_edge("a", "b").add_edge("b", END).set_entry("a")
        assert g.compile().entry == "a"

    def test_edge_to_undefined_node(self):
        g = StateGraph(["x"])
        g.add_node("a", set_key("x", 1)).add_edge("a", "ghost").set_entry("a")
        with pytest.raises(CompileError) as exc:
            g.compile()
        assert any("ghost" in p for p in exc.value.problems)

    def test_dual_routing_rejected(self):
        g = StateGraph(["x"])
        g.add_node("a", set_key("x", 1))
        g.add_edge("a", END)
        g.add_conditional_edge("a", lambda s: END)
        g.set_entry("a")
        with pytest.raises(CompileError) as exc:
            g.compile()
        assert any("both" in p for p in exc.value.problems)

    def test_missing_entry(self):
        g = StateGraph(["x"])
        g.add_node("a", set_key("x", 1)).add_edge("a", END)
        with pytest.raises(CompileError):
            g.compile()

    def test_all_problems_listed(self):
        g = StateGraph(["x"])
        g.add_node("a", set_key("x", 1))
        g.add_edge("a", "ghost")
        g.add_conditional_edge("a", lambda s: END)
        with pytest.raises(CompileError) as exc:
            g.compile(interrupt_before=["phantom"])
        text = " ".join(exc.value.problems)
        assert "ghost" in text and "both" in text and "entry" in text and "phantom" in text


class TestInvoke:
    def test_linear_run(self):
        graph = linear_graph()
        result = graph.invoke({}, "t1")
        assert isinstance(result, Finished)
        assert result.state == {"a": 1, "b": 2, "c": 3}
        history = graph.state_history("t1")
        assert [s.node for s in history] == ["first", "second", "third"]
        assert [s.step for s in history] == [1, 2, 3]
        assert history[-1].status == "finished"

    def test_interrupt_before_node(self):
        graph = linear_graph(interrupt_before=["third"])
        result = graph.invoke({}, "t1")
        assert isinstance(result, Interrupted)
        assert result.node == "third"
        last = graph.get_state("t1")
        assert last.status == "interrupted"
        assert last.interrupt_node == "third"
        assert last.state == {"a": 1, "b": 2}

    def test_router_to_interrupt(self):
        g = StateGraph(["x"])
        g.add_node("start", set_key("x", 0))
        g.add_node("review", set_key("x", 99))
        g.add_conditional_edge("start", lambda s: "review")
        g.add_edge("review", END)
        g.set_entry("start")
        graph = g.compile(interrupt_before=["review"])
        result = graph.invoke({}, "t")
        assert isinstance(result, Interrupted)
        assert result.node == "review"

    def test_cycle_budget_at_25(self):
        g = StateGraph(["counter"])
        g.add_node("loop", lambda s: {"counter": s.get("counter", 0) + 1})
        g.add_conditional_edge("loop", lambda s: "loop")
        g.set_entry("loop")
        graph = g.compile()
        with pytest.raises(CycleBudgetExceeded):
            graph.invoke({}, "t")
        assert graph.get_state("t").state["counter"] == 25

    def test_exactly_budget_length_path_finishes(self):
        g = StateGraph(["counter"])
        g.add_node("loop", lambda s: {"counter": s.get("counter", 0) + 1})
        g.add_conditional_edge(
            "loop", lambda s: END if s["counter"] >= 25 else "loop"
        )
        g.set_entry("loop")
        result = g.compile().invoke({}, "t")
        assert isinstance(result, Finished)
        assert result.state["counter"] == 25

    def test_router_totality(self):
        g = StateGraph(["x"])
        g.add_node("a", set_key("x", 1))
        g.add_conditional_edge("a", lambda s: "nowhere")
        g.set_entry("a")
        graph = g.compile()
        with pytest.raises(NodeFailure) as exc:
            graph.invoke({}, "t")
        assert exc.value.node == "a"

    def test_undeclared_delta_key_is_node_failure(self):
        g = StateGraph(["x"])
        g.add_node("a", lambda s: {"y": 1})
        g.add_edge("a", END)
        g.set_entry("a")
        with pytest.raises(NodeFailure):
            g.compile().invoke({}, "t")

    def test_handler_exception_keeps_prior_snapshots(self):
        g = StateGraph(["x"])
        g.add_node("ok", set_key("x", 1))
        g.add_node("boom", lambda s: 1 / 0)
        g.add_edge("ok", "boom")
        g.add_edge("boom", END)
        g.set_entry("ok")
        graph = g.compile()
        with pytest.raises(NodeFailure) as exc:
            graph.invoke({}, "t")
        assert isinstance(exc.value.cause, ZeroDivisionError)
        history = graph.state_history("t")
        assert [s.node for s in history] == ["ok"]
        assert history[-1].state == {"x": 1}


class TestResume:
    def test_resume_carries_human_input(self):
        graph = linear_graph(interrupt_before=["third"])
        graph.invoke({}, "t")
        result = graph.resume("t", {"a": 42})
        assert isinstance(result, Finished)
        assert result.state == {"a": 42, "b": 2, "c": 3}

    def test_resume_on_finished_thread(self):
        graph = linear_graph()
        graph.invoke({}, "t")
        with pytest.raises(NotInterruptedError):
            graph.resume("t", {})

    def test_resume_unknown_thread(self):
        graph = linear_graph()
        with pytest.raises(UnknownThreadError):
            graph.resume("ghost", {})

    def test_invoke_on_interrupted_thread_rejected(self):
        graph = linear_graph(interrupt_before=["third"])
        graph.invoke({}, "t")
        with pytest.raises(ThreadExistsError):
            graph.invoke({}, "t")

    def test_concurrent_resume_rejected(self):
        release = threading.Event()
        entered = threading.Event()

        def slow(state):
            entered.set()
            release.wait(5)
            return {"c": 3}

        g = StateGraph(["a", "b", "c"])
        g.add_node("first", set_key("a", 1))
        g.add_node("slow", slow)
        g.add_edge("first", "slow")
        g.add_edge("slow", END)
        g.set_entry("first")
        graph = g.compile(interrupt_before=["slow"])
        graph.invoke({}, "t")

        outcome = {}

        def resume_thread():
            outcome["first"] = graph.resume("t", {"b": 2})

        worker = threading.Thread(target=resume_thread)
        worker.start()
        assert entered.wait(5)
        with pytest.raises(ThreadBusyError):
            graph.resume("t", {"b": 9})
        release.set()
        worker.join(5)
        assert isinstance(outcome["first"], Finished)


class TestHistoryAndReplay:
    def test_history_of_interrupted_thread(self):
        graph = linear_graph(interrupt_before=["third"])
        graph.invoke({}, "t")
        history = graph.state_history("t")
        assert history[-1].status == "interrupted"

    def test_replay_reproduces_next_snapshot(self):
        graph = linear_graph()
        graph.invoke({}, "t")
        history = graph.state_history("t")
        for k in range(len(history) - 1):
            nxt = history[k + 1]
            state, _ = graph.run_node(nxt.node, dict(history[k].state))
            assert state == nxt.state

    def test_entry_node_interrupt(self):
        graph = linear_graph(interrupt_before=["first"])
        result = graph.invoke({}, "t")
        assert isinstance(result, Interrupted)
        assert result.node == "first"
        assert graph.state_history("t")[-1].node == "__start__"
        finished = graph.resume("t", {})
        assert isinstance(finished, Finished)
        assert finished.state == {"a": 1, "b": 2, "c": 3}

    def test_multi_turn_invoke_continues_state(self):
        graph = linear_graph()
        graph.invoke({"a": 7}, "t")
        result = graph.invoke({"b": 9}, "t")
        assert isinstance(result, Finished)
        # second turn re-runs the graph over the carried state
        assert result.state == {"a": 1, "b": 2, "c": 3}
        steps = [s.step for s in graph.state_history("t")]
        assert steps == [1, 2, 3, 4, 5, 6]


class TestFileCheckpointer:
    def test_crash_restart_resume(self, tmp_path):
        graph = linear_graph(
            checkpointer=FileCheckpointer(tmp_path), interrupt_before=["third"]
        )
        graph.invoke({}, "orders/0/17")
        # New process: fresh checkpointer over the same directory.
        graph2 = linear_graph(
            checkpointer=FileCheckpointer(tmp_path), interrupt_before=["third"]
        )
        result = graph2.resume("orders/0/17", {"b": 77})
        assert isinstance(result, Finished)
        assert result.state == {"a": 1, "b": 77, "c": 3}
        uninterrupted = linear_graph().invoke({}, "ref")
        assert set(result.state) == set(uninterrupted.state)

    def test_snapshots_survive_reload(self, tmp_path):
        graph = linear_graph(checkpointer=FileCheckpointer(tmp_path))
        graph.invoke({}, "t")
        reloaded = FileCheckpointer(tmp_path)
        assert [s.node for s in reloaded.snapshots("t")] == ["first", "second", "third"]

    def test_unknown_thread(self, tmp_path):
        with pytest.raises(UnknownThreadError):
            FileCheckpointer(tmp_path).snapshots("nope")
