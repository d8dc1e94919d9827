import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from riverbed import logschema
from riverbed.logschema import (
    FIELD_INVARIANT,
    MALFORMED_SYNTAX,
    MISSING_DOMAIN,
    ValidationError,
    enrich,
    event_family,
    serialize,
    validate,
)

from helpers import make_record_doc, record_line


class TestValidate:
    def test_well_formed(self):
        record = validate(record_line(event_name="browse", ip="10.0.0.1"))
        assert record.event.event_name == "browse"
        assert record.geo.ip == "10.0.0.1"

    def test_missing_time_domain(self):
        doc = make_record_doc()
        del doc["time"]
        with pytest.raises(ValidationError) as exc:
            validate(json.dumps(doc))
        assert exc.value.kind == MISSING_DOMAIN
        assert exc.value.violations[0].field == "time"

    def test_end_before_start(self):
        line = record_line(start_ts=2_000, end_ts=1_000)
        with pytest.raises(ValidationError) as exc:
            validate(line)
        assert exc.value.kind == FIELD_INVARIANT
        assert exc.value.violations[0].field == "time.end_ts"

    def test_unparseable(self):
        with pytest.raises(ValidationError) as exc:
            validate(b"{nope")
        assert exc.value.kind == MALFORMED_SYNTAX

    def test_all_violations_reported(self):
        doc = make_record_doc(ip="999.1.2.3", start_ts=5, end_ts=1)
        doc["app"]["app_id"] = ""
        doc["user"]["device_id"] = ""
        with pytest.raises(ValidationError) as exc:
            validate(json.dumps(doc))
        fields = {v.field for v in exc.value.violations}
        assert {"app.app_id", "user.device_id", "geo.ip", "time.end_ts"} <= fields

    def test_custom_event_accepted(self):
        record = validate(record_line(event_name="custom:checkout"))
        assert record.event.event_name == "custom:checkout"

    def test_unregistered_event_rejected(self):
        with pytest.raises(ValidationError):
            validate(record_line(event_name="checkout"))

    def test_zero_padded_ip_accepted(self):
        record = validate(record_line(ip="192.168.001.001"))
        assert record.geo.ip == "192.168.001.001"

    @pytest.mark.parametrize("ip", ["1.2.3", "1.2.3.4.5", "a.b.c.d", "256.1.1.1", ""])
    def test_bad_ips_rejected(self, ip):
        with pytest.raises(ValidationError):
            validate(record_line(ip=ip))

    def test_absent_ip_allowed(self):
        record = validate(record_line(ip=None))
        assert record.geo.ip is None


class TestEnrich:
    def test_fills_missing_ip(self):
        record = validate(record_line(ip=None))
        assert enrich(record, "1.2.3.4", "UA/2.0").geo.ip == "1.2.3.4"

    def test_never_overwrites_ip(self):
        record = validate(record_line(ip="9.9.9.9"))
        assert enrich(record, "1.2.3.4", "UA/2.0").geo.ip == "9.9.9.9"

    def test_fills_missing_user_agent(self):
        record = validate(record_line(user_agent=None))
        assert enrich(record, "1.2.3.4", "UA/1.0").device.user_agent == "UA/1.0"

    def test_idempotent(self):
        record = validate(record_line(ip=None, user_agent=None))
        once = enrich(record, "1.2.3.4", "UA/1.0")
        assert enrich(once, "1.2.3.4", "UA/1.0") == once


names = st.text(
    alphabet=st.characters(whitelist_categories=("Ll", "Lu", "Nd"), max_codepoint=0x2FF),
    min_size=1,
    max_size=12,
)
octet = st.integers(min_value=0, max_value=255)


@st.composite
def record_docs(draw):
    event = draw(
        st.one_of(
            st.sampled_from(sorted(logschema.DEFAULT_EVENT_FAMILIES)),
            names.map(lambda s: f"custom:{s}"),
        )
    )
    start = draw(st.integers(min_value=1, max_value=2**49))
    doc = make_record_doc(
        event_name=event,
        start_ts=start,
        end_ts=start + draw(st.integers(min_value=0, max_value=10**7)),
        device_id=draw(names),
        ip=draw(st.one_of(st.none(), st.tuples(octet, octet, octet, octet).map(
            lambda t: ".".join(map(str, t))))),
        user_agent=draw(st.one_of(st.none(), names)),
        attrs=draw(st.dictionaries(names, names, max_size=4)),
    )
    return doc


@given(record_docs())
def test_roundtrip(doc):
    record = validate(json.dumps(doc))
    assert validate(serialize(record)) == record


@given(record_docs(), st.data())
def test_mutated_records_never_slip_through(doc, data):
    # Break exactly one invariant; validate must reject.
    mutation = data.draw(
        st.sampled_from(
            ["drop_domain", "empty_app_id", "empty_device_id", "bad_ip", "time_flip", "bad_event"]
        )
    )
    if mutation == "drop_domain":
        del doc[data.draw(st.sampled_from(sorted(doc)))]
    elif mutation == "empty_app_id":
        doc["app"]["app_id"] = ""
    elif mutation == "empty_device_id":
        doc["user"]["device_id"] = ""
    elif mutation == "bad_ip":
        doc["geo"]["ip"] = "300.300.300.300"
    elif mutation == "time_flip":
        doc["time"]["end_ts"] = doc["time"]["start_ts"] - 1
    elif mutation == "bad_event":
        doc["event"]["event_name"] = "not-registered"
    with pytest.raises(ValidationError):
        validate(json.dumps(doc))


def test_event_family_routing():
    assert event_family("browse") == "browse"
    assert event_family("custom:promo") == "custom"
    with pytest.raises(ValueError):
        event_family("bogus")


def test_parse_payload_matches_validate():
    line = record_line()
    assert logschema.parse_payload(line.encode()) == validate(line)
