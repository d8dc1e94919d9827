"""Bundled data: 200 labeled restaurant-review lines for demo and tests."""

from __future__ import annotations

import json
from importlib import resources


def load_reviews() -> list[dict]:
    """Rows of {review_text, category, label, confidence, escalate}."""
    text = (
        resources.files(__package__).joinpath("reviews_fixture.ndjson").read_text("utf-8")
    )
    return [json.loads(line) for line in text.splitlines() if line.strip()]
