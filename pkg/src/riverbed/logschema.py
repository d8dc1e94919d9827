"""Eight-domain log record: parsing, validation, enrichment, serialization.

Wire format is UTF-8 JSON, one object per line, with the domain keys
``app, device, user, event, object, time, geo, result``. Validation
reports every violated field, not just the first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

DEFAULT_EVENT_FAMILIES = frozenset(
    {"browse", "error", "play", "search", "comment", "share"}
)
CUSTOM_PREFIX = "custom:"

MALFORMED_SYNTAX = "malformed_syntax"
MISSING_DOMAIN = "missing_domain"
FIELD_INVARIANT = "field_invariant"

_DOMAIN_KEYS = ("app", "device", "user", "event", "object", "time", "geo", "result")


@dataclass(frozen=True)
class Violation:
    kind: str
    field: str
    message: str


class ValidationError(ValueError):
    """Carries every violation found in one candidate record."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{v.field}: {v.message}" for v in self.violations))

    @property
    def kind(self) -> str:
        return self.violations[0].kind


@dataclass(frozen=True)
class AppDomain:
    app_id: str
    version: str = ""
    app_type: str = ""


@dataclass(frozen=True)
class DeviceDomain:
    os: str = ""
    resolution: str = ""
    model: str = ""
    user_agent: str | None = None


@dataclass(frozen=True)
class UserDomain:
    device_id: str
    user_id: str = ""


@dataclass(frozen=True)
class EventDomain:
    event_name: str


@dataclass(frozen=True)
class ObjectDomain:
    attrs: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TimeDomain:
    start_ts: int
    end_ts: int


@dataclass(frozen=True)
class GeoDomain:
    ip: str | None = None
    latitude: float | None = None
    longitude: float | None = None
    network_type: str = ""


@dataclass(frozen=True)
class ResultDomain:
    code: str = ""
    detail: str | None = None


@dataclass(frozen=True)
class LogRecord:
    app: AppDomain
    device: DeviceDomain
    user: UserDomain
    event: EventDomain
    object: ObjectDomain
    time: TimeDomain
    geo: GeoDomain
    result: ResultDomain


def is_ipv4(value) -> bool:
    if not isinstance(value, str):
        return False
    parts = value.split(".")
    if len(parts) != 4:
        return False
    for part in parts:
        if not part or len(part) > 3 or not part.isdigit() or int(part) > 255:
            return False
    return True


def event_family(event_name: str, registry=DEFAULT_EVENT_FAMILIES) -> str:
    """Routing family for an event name; custom events collapse to 'custom'."""
    if event_name in registry:
        return event_name
    if event_name.startswith(CUSTOM_PREFIX):
        return "custom"
    raise ValueError(f"unregistered event name {event_name!r}")


def _str(value, default=""):
    return value if isinstance(value, str) else default


def _opt_str(value):
    return value if isinstance(value, str) and value != "" else None


def validate(raw: bytes | str, registry=DEFAULT_EVENT_FAMILIES) -> LogRecord:
    """Parse and validate one serialized record.

    Raises ValidationError listing every violated field; the error kinds
    are malformed_syntax (unparseable), missing_domain, field_invariant.
    """
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ValidationError(
                [Violation(MALFORMED_SYNTAX, "<record>", f"not UTF-8: {exc}")]
            ) from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            [Violation(MALFORMED_SYNTAX, "<record>", f"invalid JSON: {exc.msg}")]
        ) from None
    if not isinstance(doc, dict):
        raise ValidationError(
            [Violation(MALFORMED_SYNTAX, "<record>", "record is not a JSON object")]
        )

    violations = []
    for key in _DOMAIN_KEYS:
        if key not in doc:
            violations.append(Violation(MISSING_DOMAIN, key, "required domain absent"))
        elif not isinstance(doc[key], dict):
            violations.append(
                Violation(FIELD_INVARIANT, key, "domain must be a JSON object")
            )
    if violations:
        raise ValidationError(violations)

    def bad(fieldname, message):
        violations.append(Violation(FIELD_INVARIANT, fieldname, message))

    app = doc["app"]
    app_id = _str(app.get("app_id"))
    if not app_id:
        bad("app.app_id", "must be a non-empty string")

    user = doc["user"]
    device_id = _str(user.get("device_id"))
    if not device_id:
        bad("user.device_id", "must be a non-empty string")

    event = doc["event"]
    event_name = _str(event.get("event_name"))
    if not event_name:
        bad("event.event_name", "must be a non-empty string")
    elif event_name not in registry and not event_name.startswith(CUSTOM_PREFIX):
        bad("event.event_name", f"not registered and not {CUSTOM_PREFIX}*")

    obj = doc["object"]
    attrs = {}
    for k, v in obj.items():
        if not isinstance(k, str) or not isinstance(v, str):
            bad(f"object.{k}", "attributes must map string to string")
        else:
            attrs[k] = v

    time_dom = doc["time"]
    start_ts, end_ts = time_dom.get("start_ts"), time_dom.get("end_ts")
    if not isinstance(start_ts, int) or isinstance(start_ts, bool) or start_ts <= 0:
        bad("time.start_ts", "must be a positive unix-millisecond integer")
    if not isinstance(end_ts, int) or isinstance(end_ts, bool) or end_ts <= 0:
        bad("time.end_ts", "must be a positive unix-millisecond integer")
    elif isinstance(start_ts, int) and not isinstance(start_ts, bool) and end_ts < start_ts:
        bad("time.end_ts", "must be >= time.start_ts")

    geo = doc["geo"]
    ip = geo.get("ip")
    if ip is not None and not is_ipv4(ip):
        bad("geo.ip", "must be an IPv4 dotted quad")
    latitude, longitude = geo.get("latitude"), geo.get("longitude")
    for name, value in (("latitude", latitude), ("longitude", longitude)):
        if value is not None and not isinstance(value, (int, float)):
            bad(f"geo.{name}", "must be a decimal number")

    if violations:
        raise ValidationError(violations)

    return LogRecord(
        app=AppDomain(app_id, _str(app.get("version")), _str(app.get("app_type"))),
        device=DeviceDomain(
            _str(doc["device"].get("os")),
            _str(doc["device"].get("resolution")),
            _str(doc["device"].get("model")),
            _opt_str(doc["device"].get("user_agent")),
        ),
        user=UserDomain(device_id, _str(user.get("user_id"))),
        event=EventDomain(event_name),
        object=ObjectDomain(attrs),
        time=TimeDomain(start_ts, end_ts),
        geo=GeoDomain(
            ip,
            float(latitude) if latitude is not None else None,
            float(longitude) if longitude is not None else None,
            _str(geo.get("network_type")),
        ),
        result=ResultDomain(_str(doc["result"].get("code")), _opt_str(doc["result"].get("detail"))),
    )


def enrich(record: LogRecord, remote_ip: str, user_agent: str) -> LogRecord:
    """Fill absent geo.ip / device.user_agent from the transport; never overwrite."""
    geo = record.geo
    device = record.device
    if geo.ip is None and remote_ip:
        geo = replace(geo, ip=remote_ip)
    if device.user_agent is None and user_agent:
        device = replace(device, user_agent=user_agent)
    if geo is record.geo and device is record.device:
        return record
    return replace(record, geo=geo, device=device)


def to_dict(record: LogRecord) -> dict:
    doc = {
        "app": {
            "app_id": record.app.app_id,
            "version": record.app.version,
            "app_type": record.app.app_type,
        },
        "device": {
            "os": record.device.os,
            "resolution": record.device.resolution,
            "model": record.device.model,
        },
        "user": {"device_id": record.user.device_id, "user_id": record.user.user_id},
        "event": {"event_name": record.event.event_name},
        "object": dict(record.object.attrs),
        "time": {"start_ts": record.time.start_ts, "end_ts": record.time.end_ts},
        "geo": {"network_type": record.geo.network_type},
        "result": {"code": record.result.code},
    }
    if record.device.user_agent is not None:
        doc["device"]["user_agent"] = record.device.user_agent
    if record.geo.ip is not None:
        doc["geo"]["ip"] = record.geo.ip
    if record.geo.latitude is not None:
        doc["geo"]["latitude"] = record.geo.latitude
    if record.geo.longitude is not None:
        doc["geo"]["longitude"] = record.geo.longitude
    if record.result.detail is not None:
        doc["result"]["detail"] = record.result.detail
    return doc


def serialize(record: LogRecord) -> str:
    """One compact JSON line (no trailing newline)."""
    return json.dumps(to_dict(record), separators=(",", ":"), ensure_ascii=False)


def from_dict(doc: dict) -> LogRecord:
    """Fast path for payloads already validated at ingest."""
    geo = doc["geo"]
    device = doc["device"]
    return LogRecord(
        app=AppDomain(doc["app"]["app_id"], doc["app"].get("version", ""), doc["app"].get("app_type", "")),
        device=DeviceDomain(
            device.get("os", ""),
            device.get("resolution", ""),
            device.get("model", ""),
            device.get("user_agent"),
        ),
        user=UserDomain(doc["user"]["device_id"], doc["user"].get("user_id", "")),
        event=EventDomain(doc["event"]["event_name"]),
        object=ObjectDomain(doc["object"]),
        time=TimeDomain(doc["time"]["start_ts"], doc["time"]["end_ts"]),
        geo=GeoDomain(
            geo.get("ip"),
            geo.get("latitude"),
            geo.get("longitude"),
            geo.get("network_type", ""),
        ),
        result=ResultDomain(doc["result"].get("code", ""), doc["result"].get("detail")),
    )


def parse_payload(payload: bytes) -> LogRecord:
    return from_dict(json.loads(payload))
