"""Customer-review triage graph: categorize, score sentiment, then either
auto-respond or pause for human review.

The default classifier is a deterministic keyword/lexicon stub so the
whole pipeline runs offline; a chat-completions client implementing the
same interface can be swapped in for real models. Negative or
low-confidence verdicts always escalate: the workflow interrupts before
the human_review node and a review ticket is opened, resolvable through
the HTTP API (which resumes the paused thread).
"""

from __future__ import annotations

import json
import random
import re
import threading
import time
import urllib.error
import urllib.request
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from . import workflow
from .workflow import END, Finished, Interrupted, StateGraph

LABELS = ("positive", "neutral", "negative")
DEFAULT_CONFIDENCE_THRESHOLD = 0.6
DEFAULT_CATEGORIES = ("billing", "technical", "food_quality", "service", "general")

STATE_KEYS = ("query", "category", "sentiment", "confidence", "response", "escalated")


class ClassifierUnavailableError(Exception):
    pass


class MalformedVerdictError(Exception):
    """Remote model kept returning unparseable verdicts; caller escalates."""


class MissingTemplateError(KeyError):
    pass


class UnknownTicketError(KeyError):
    pass


class AlreadyResolvedError(Exception):
    pass


@dataclass(frozen=True)
class SentimentResult:
    label: str
    confidence: float
    classifier_id: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"label {self.label!r} not in {LABELS}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")


# -- lexicon stub ---------------------------------------------------------------

_WORD_RE = re.compile(r"[a-z']+")

CATEGORY_KEYWORDS = {
    "billing": {
        "bill", "billing", "charge", "charged", "refund", "refunded", "payment",
        "card", "invoice", "overcharged", "price", "priced", "fee", "coupon",
        "receipt", "paid",
    },
    "technical": {
        "app", "website", "site", "login", "log", "crash", "crashes", "crashed",
        "error", "bug", "password", "page", "loading", "checkout", "signup",
        "account", "notification", "update",
    },
    "food_quality": {
        "food", "meal", "dish", "pizza", "burger", "soup", "salad", "noodles",
        "sushi", "taste", "tasted", "flavor", "portion", "portions", "sauce",
        "dessert", "coffee", "bread", "rice", "chicken", "steak", "fries",
    },
    "service": {
        "service", "staff", "waiter", "waitress", "server", "manager", "host",
        "hostess", "delivery", "driver", "courier", "reservation", "table",
        "order", "ordered", "wait", "waited",
    },
}

POSITIVE_WORDS = {
    "great", "good", "excellent", "amazing", "wonderful", "fantastic", "love",
    "loved", "lovely", "perfect", "delicious", "friendly", "fresh", "fast",
    "tasty", "awesome", "best", "happy", "helpful", "prompt", "pleasant",
    "quick", "generous", "attentive", "polite", "smooth", "easy", "crisp",
    "warm", "recommend",
}

NEGATIVE_WORDS = {
    "bad", "terrible", "awful", "horrible", "cold", "rude", "slow", "stale",
    "worst", "hate", "hated", "disgusting", "broken", "wrong", "late", "dirty",
    "undercooked", "bland", "soggy", "disappointed", "disappointing",
    "unacceptable", "burnt", "greasy", "missing", "overcharged", "crashed",
    "unhelpful", "ignored", "ridiculous",
}


class LexiconClassifier:
    """Deterministic keyword classifier: same text, same verdict, always."""

    classifier_id = "lexicon-stub-v1"

    def __init__(self, categories=DEFAULT_CATEGORIES):
        self.categories = tuple(categories)

    @staticmethod
    def _tokens(text: str) -> list[str]:
        return _WORD_RE.findall(text.lower())

    def categorize(self, query: str) -> str:
        if not query:
            raise ValueError("query must be non-empty")
        tokens = set(self._tokens(query))
        best, best_hits = "general", 0
        for category in self.categories:
            hits = len(tokens & CATEGORY_KEYWORDS.get(category, set()))
            if hits > best_hits:
                best, best_hits = category, hits
        return best

    def analyze(self, text: str) -> SentimentResult:
        if not text:
            raise ValueError("text must be non-empty")
        tokens = self._tokens(text)
        pos = sum(1 for t in tokens if t in POSITIVE_WORDS)
        neg = sum(1 for t in tokens if t in NEGATIVE_WORDS)
        hits = pos + neg
        if hits == 0:
            return SentimentResult("neutral", 0.5, self.classifier_id)
        score = (pos - neg) / hits
        label = "positive" if score > 0 else "negative" if score < 0 else "neutral"
        return SentimentResult(label, abs(score), self.classifier_id)


# -- remote classifier -----------------------------------------------------------

_SENTIMENT_PROMPT = (
    "You are a sentiment classifier. Reply with exactly one JSON object, "
    'no prose: {"label": "positive|neutral|negative", "confidence": <0..1>}'
)
_CATEGORY_PROMPT = (
    "You classify customer inquiries. Reply with exactly one JSON object, "
    'no prose: {"category": "<one of: %s>"}'
)


class RemoteClassifier:
    """Chat-completions client returning constrained JSON verdicts.

    One retry on a malformed verdict, then MalformedVerdictError so the
    caller can escalate to a human instead of guessing.
    """

    def __init__(self, base_url: str, model: str, api_key: str | None = None,
                 timeout: float = 30.0, categories=DEFAULT_CATEGORIES):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.categories = tuple(categories)
        self.classifier_id = f"remote:{model}"

    def _chat(self, system: str, user: str) -> str:
        body = json.dumps(
            {
                "model": self.model,
                "temperature": 0,
                "messages": [
                    {"role": "system", "content": system},
                    {"role": "user", "content": user},
                ],
            }
        ).encode("utf-8")
        request = urllib.request.Request(
            f"{self.base_url}/chat/completions",
            data=body,
            headers={
                "Content-Type": "application/json",
                **({"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}),
            },
        )
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as response:
                payload = json.loads(response.read().decode("utf-8"))
        except (urllib.error.URLError, OSError, json.JSONDecodeError, TimeoutError) as exc:
            raise ClassifierUnavailableError(str(exc)) from exc
        try:
            return payload["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ClassifierUnavailableError(f"unexpected response shape: {exc}") from exc

    def _verdict(self, system: str, user: str, parse):
        last_error = None
        for _ in range(2):  # one retry on malformed output
            content = self._chat(system, user)
            try:
                return parse(json.loads(content))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                last_error = exc
        raise MalformedVerdictError(str(last_error))

    def analyze(self, text: str) -> SentimentResult:
        if not text:
            raise ValueError("text must be non-empty")

        def parse(doc):
            return SentimentResult(doc["label"], float(doc["confidence"]), self.classifier_id)

        return self._verdict(_SENTIMENT_PROMPT, text, parse)

    def categorize(self, query: str) -> str:
        if not query:
            raise ValueError("query must be non-empty")

        def parse(doc):
            category = doc["category"]
            if category not in self.categories:
                raise ValueError(f"category {category!r} not configured")
            return category

        return self._verdict(_CATEGORY_PROMPT % ", ".join(self.categories), query, parse)


# -- routing and responses ----------------------------------------------------------

def route(state: dict, threshold: float = DEFAULT_CONFIDENCE_THRESHOLD) -> str:
    """Negative sentiment or shaky confidence goes to a human, always."""
    if state["sentiment"] == "negative" or state["confidence"] < threshold:
        return "human_review"
    return "auto_respond"


DEFAULT_TEMPLATES = {
    ("billing", "positive"): "Glad the billing experience worked out — thanks for letting us know!",
    ("billing", "neutral"): "Thanks for the note about your bill; we've logged it for our billing team.",
    ("technical", "positive"): "Happy to hear things are running smoothly — thanks for the report!",
    ("technical", "neutral"): "Thanks for the technical details; our engineers have been notified.",
    ("food_quality", "positive"): "Wonderful — we'll pass the compliments to the kitchen!",
    ("food_quality", "neutral"): "Thanks for the feedback on the food; we've shared it with the kitchen.",
    ("service", "positive"): "Thank you! We'll let the team know you appreciated the service.",
    ("service", "neutral"): "Thanks for the feedback about our service; we've noted it.",
    ("general", "positive"): "Thanks so much for the kind words!",
    ("general", "neutral"): "Thanks for reaching out; we've recorded your feedback.",
}


def auto_respond(category: str, label: str, templates=None) -> str:
    """Template lookup by (category, label); unknown categories are an error."""
    table = DEFAULT_TEMPLATES if templates is None else templates
    if (category, label) in table:
        return table[(category, label)]
    if not any(cat == category for cat, _ in table):
        raise MissingTemplateError(f"no templates for category {category!r}")
    return table[("general", "neutral")]


# -- review tickets ---------------------------------------------------------------


@dataclass
class ReviewTicket:
    ticket_id: str
    thread_id: str
    query: str
    sentiment: SentimentResult
    created_ts: int
    status: str = "pending"
    resolution: dict | None = None
    seq: int = 0

    def to_dict(self) -> dict:
        doc = {
            "ticket_id": self.ticket_id,
            "thread_id": self.thread_id,
            "query": self.query,
            "sentiment": {
                "label": self.sentiment.label,
                "confidence": self.sentiment.confidence,
                "classifier_id": self.sentiment.classifier_id,
            },
            "created_ts": self.created_ts,
            "status": self.status,
        }
        if self.resolution is not None:
            doc["resolution"] = self.resolution
        return doc


class TicketStore:
    """Pending/resolved review tickets; optionally persisted as an
    append-only NDJSON event log."""

    def __init__(self, path=None):
        self._lock = threading.Lock()
        self._tickets: dict[str, ReviewTicket] = {}
        self._seq = 0
        self.path = Path(path) if path is not None else None
        if self.path is not None and self.path.exists():
            self._replay()

    def _replay(self):
        for line in self.path.read_text().splitlines():
            if not line.strip():
                continue
            event = json.loads(line)
            if event["type"] == "created":
                doc = event["ticket"]
                self._seq += 1
                self._tickets[doc["ticket_id"]] = ReviewTicket(
                    ticket_id=doc["ticket_id"],
                    thread_id=doc["thread_id"],
                    query=doc["query"],
                    sentiment=SentimentResult(**doc["sentiment"]),
                    created_ts=doc["created_ts"],
                    seq=self._seq,
                )
            else:
                ticket = self._tickets[event["ticket_id"]]
                ticket.status = "resolved"
                ticket.resolution = event["resolution"]

    def _append_event(self, event: dict):
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event) + "\n")
            fh.flush()

    def create(self, thread_id: str, query: str, sentiment: SentimentResult) -> ReviewTicket:
        with self._lock:
            self._seq += 1
            ticket = ReviewTicket(
                ticket_id=f"rt-{uuid.uuid4().hex[:12]}",
                thread_id=thread_id,
                query=query,
                sentiment=sentiment,
                created_ts=int(time.time() * 1000),
                seq=self._seq,
            )
            self._tickets[ticket.ticket_id] = ticket
            self._append_event({"type": "created", "ticket": ticket.to_dict()})
            return ticket

    def get(self, ticket_id: str) -> ReviewTicket:
        with self._lock:
            try:
                return self._tickets[ticket_id]
            except KeyError:
                raise UnknownTicketError(ticket_id) from None

    def list(self, status: str | None = None) -> list[ReviewTicket]:
        with self._lock:
            tickets = [
                t for t in self._tickets.values() if status is None or t.status == status
            ]
        return sorted(tickets, key=lambda t: (t.created_ts, t.seq), reverse=True)

    def resolve(self, ticket_id: str, response: str, reviewer: str,
                sentiment_override: str | None = None) -> ReviewTicket:
        if not response:
            raise ValueError("response must be non-empty")
        if sentiment_override is not None and sentiment_override not in LABELS:
            raise ValueError(f"sentiment_override {sentiment_override!r} not in {LABELS}")
        with self._lock:
            try:
                ticket = self._tickets[ticket_id]
            except KeyError:
                raise UnknownTicketError(ticket_id) from None
            if ticket.status == "resolved":
                raise AlreadyResolvedError(ticket_id)
            ticket.status = "resolved"
            ticket.resolution = {
                "sentiment_override": sentiment_override,
                "response": response,
                "reviewer": reviewer,
                "resolved_ts": int(time.time() * 1000),
            }
            self._append_event(
                {"type": "resolved", "ticket_id": ticket_id, "resolution": ticket.resolution}
            )
            return ticket


# -- graph assembly -----------------------------------------------------------------


def build_sentiment_graph(
    classifier=None,
    checkpointer=None,
    on_interrupt=None,
    threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
    templates=None,
):
    classifier = classifier or LexiconClassifier()

    def categorize_node(state):
        return {"category": classifier.categorize(state["query"])}

    def analyze_node(state):
        try:
            verdict = classifier.analyze(state["query"])
        except MalformedVerdictError:
            # Retry already happened inside the classifier; escalate by
            # reporting an unusable verdict that routes to human review.
            return {"sentiment": "neutral", "confidence": 0.0}
        return {"sentiment": verdict.label, "confidence": verdict.confidence}

    def auto_respond_node(state):
        return {
            "response": auto_respond(state["category"], state["sentiment"], templates),
            "escalated": False,
        }

    def human_review_node(state):
        delta = {"escalated": True}
        if not state.get("response"):
            delta["response"] = "A specialist will follow up on your request shortly."
        return delta

    graph = StateGraph(STATE_KEYS)
    graph.add_node("categorize", categorize_node)
    graph.add_node("analyze", analyze_node)
    graph.add_node("auto_respond", auto_respond_node)
    graph.add_node("human_review", human_review_node)
    graph.add_edge("categorize", "analyze")
    graph.add_conditional_edge("analyze", lambda state: route(state, threshold))
    graph.add_edge("auto_respond", END)
    graph.add_edge("human_review", END)
    graph.set_entry("categorize")
    return graph.compile(
        checkpointer=checkpointer,
        interrupt_before=("human_review",),
        on_interrupt=on_interrupt,
    )


# -- queue bridge and resolution --------------------------------------------------


class SentimentService:
    """Wires queued review records into workflow threads and resumes them
    when a reviewer resolves the corresponding ticket."""

    def __init__(
        self,
        broker,
        topic: str,
        group: str = "sentiment",
        classifier=None,
        store: TicketStore | None = None,
        checkpointer=None,
        results_sink=None,
        sample_rate: float = 1.0,
        seed: int = 0,
        threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
        review_text_key: str = "review_text",
    ):
        self.broker = broker
        self.topic = topic
        self.group = group
        self.store = store if store is not None else TicketStore()
        self.classifier = classifier or LexiconClassifier()
        self.sample_rate = sample_rate
        self.review_text_key = review_text_key
        self.results_sink = results_sink
        self._rng = random.Random(seed)
        self._pending_threads: dict[str, str] = {}  # ticket_id -> thread_id
        self.errors: list[tuple[str, str]] = []
        self.skipped = 0

        def on_interrupt(thread_id, node, state):
            ticket = self.store.create(
                thread_id,
                state.get("query", ""),
                SentimentResult(
                    state.get("sentiment", "neutral"),
                    state.get("confidence", 0.0),
                    getattr(self.classifier, "classifier_id", "unknown"),
                ),
            )
            self._pending_threads[ticket.ticket_id] = thread_id
            return ticket.ticket_id

        self.graph = build_sentiment_graph(
            classifier=self.classifier,
            checkpointer=checkpointer,
            on_interrupt=on_interrupt,
            threshold=threshold,
        )
        broker.create_topic(topic)

    def _write_result(self, thread_id: str, state: dict):
        if self.results_sink is None:
            return
        line = json.dumps(
            {
                "thread_id": thread_id,
                "category": state.get("category"),
                "sentiment": state.get("sentiment"),
                "confidence": state.get("confidence"),
                "response": state.get("response"),
                "escalated": state.get("escalated", False),
            }
        )
        self.results_sink.write(line + "\n")
        if hasattr(self.results_sink, "flush"):
            self.results_sink.flush()

    def process_available(self, max_records: int = 1000) -> dict:
        """Drain up to max_records queued reviews into workflow invocations."""
        from . import logschema

        messages = self.broker.poll(self.group, self.topic, max_records=max_records)
        finished = interrupted = 0
        offsets: dict[int, int] = {}
        for message in messages:
            offsets[message.partition] = max(
                offsets.get(message.partition, 0), message.offset + 1
            )
            if self.sample_rate <= 0.0 or self._rng.random() >= self.sample_rate:
                self.skipped += 1
                continue
            record = logschema.parse_payload(message.payload)
            text = record.object.attrs.get(self.review_text_key)
            if not text:
                self.skipped += 1
                continue
            thread_id = f"{message.topic}/{message.partition}/{message.offset}"
            try:
                result = self.graph.invoke({"query": text}, thread_id)
            except Exception as exc:  # keep the stream alive, record the casualty
                self.errors.append((thread_id, repr(exc)))
                continue
            if isinstance(result, Finished):
                finished += 1
                self._write_result(thread_id, result.state)
            else:
                interrupted += 1
        if offsets:
            self.broker.commit(self.group, self.topic, offsets)
        return {"polled": len(messages), "finished": finished, "interrupted": interrupted}

    # -- review API backing ----------------------------------------------------

    def list_tickets(self, status: str | None = None) -> list[dict]:
        return [t.to_dict() for t in self.store.list(status)]

    def get_ticket(self, ticket_id: str) -> dict:
        return self.store.get(ticket_id).to_dict()

    def resolve_ticket(self, ticket_id: str, response: str, reviewer: str,
                       sentiment_override: str | None = None) -> dict:
        """Resolve the ticket, resume its paused thread, return final state."""
        ticket = self.store.resolve(ticket_id, response, reviewer, sentiment_override)
        human_input = {"response": response}
        if sentiment_override is not None:
            human_input["sentiment"] = sentiment_override
        result = self.graph.resume(ticket.thread_id, human_input)
        if not isinstance(result, Finished):  # pragma: no cover - linear tail
            raise RuntimeError(f"thread {ticket.thread_id} did not finish on resume")
        self._write_result(ticket.thread_id, result.state)
        return {"ticket": ticket.to_dict(), "final_state": result.state}
