import json



def make_record_doc(
    event_name="browse",
    ip="10.0.0.1",
    start_ts=1_735_689_600_000,
    end_ts=None,
    device_id="dev-1",
    user_agent="UA/1.0",
    attrs=None,
):
    doc = {
        "app": {"app_id": "demo-app", "version": "1.0", "app_type": "web"},
        "device": {"os": "linux", "resolution": "1920x1080", "model": "generic"},
        "user": {"device_id": device_id, "user_id": "u-1"},
        "event": {"event_name": event_name},
        "object": attrs if attrs is not None else {"url": "/home"},
        "time": {"start_ts": start_ts, "end_ts": end_ts if end_ts is not None else start_ts + 1000},
        "geo": {"network_type": "wifi"},
        "result": {"code": "ok"},
    }
    if ip is not None:
        doc["geo"]["ip"] = ip
    if user_agent is not None:
        doc["device"]["user_agent"] = user_agent
    return doc


def record_line(**kwargs) -> str:
    return json.dumps(make_record_doc(**kwargs), separators=(",", ":"))


