import json
import math

import pytest

from sswalk.errors import SchemaError
from sswalk.scenario import dumps_scenario, load_scenario, spec_from_dict, spec_to_dict

BASE = {
    "shift": {"p": 0.5, "q_re": math.sqrt(3) / 2},
    "coin": {"kind": "step", "limit_minus": {"a": 0.9}, "limit_plus": {"a": 0.0}},
}


def doc(**coin):
    d = json.loads(json.dumps(BASE))
    d["coin"].update(coin)
    return d


def test_defaults():
    spec = spec_from_dict(BASE)
    assert spec.shift.q == pytest.approx(math.sqrt(3) / 2)
    assert spec.coin.limit_minus.b == pytest.approx(math.sqrt(0.19))
    assert spec.coin.breakpoints[0][0] == 0


def test_roundtrip_all_kinds():
    docs = [
        BASE,
        doc(breakpoints=[{"x": 3}]),
        doc(kind="multistep", breakpoints=[{"x": -2, "a": 0.4, "b_im": math.sqrt(0.84)}, {"x": 1, "a": 0.0}]),
        doc(kind="tanh", width=4.0, phi=0.3),
    ]
    for d in docs:
        spec = spec_from_dict(d)
        assert load_scenario(dumps_scenario(spec)) == spec
        assert spec_from_dict(spec_to_dict(spec)) == spec


def test_load_from_file(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(BASE))
    assert load_scenario(str(path)) == load_scenario(path) == spec_from_dict(BASE)


@pytest.mark.parametrize(
    "bad, where",
    [
        ({**BASE, "extra": 1}, "extra"),
        ({"shift": BASE["shift"]}, "coin"),
        ({**BASE, "shift": {"p": 0.5, "q_re": 0.8, "theta": 0}}, "theta"),
        (doc(kind="zigzag"), "kind"),
        (doc(breakpoints=[{"x": 0}, {"x": 2}]), "breakpoints"),
        (doc(width=2.0), "width"),
        (doc(kind="tanh"), "width"),
        (doc(kind="multistep", breakpoints=[{"x": 0}]), "breakpoints"),
        (doc(breakpoints=[{"x": 0.5}]), "x"),
    ],
)
def test_schema_errors(bad, where):
    with pytest.raises(SchemaError, match=where):
        spec_from_dict(bad)


def test_normalization_error_is_reported_as_schema_error():
    with pytest.raises(SchemaError, match="shift"):
        spec_from_dict({**BASE, "shift": {"p": 0.5, "q_re": 0.5}})


def test_bad_json_text():
    with pytest.raises(SchemaError):
        load_scenario("{not json")


def test_tanh_limits_take_phase():
    spec = spec_from_dict(doc(kind="tanh", width=4.0, phi=0.3))
    assert spec.coin.limit_plus.b == pytest.approx(complex(math.cos(0.3), math.sin(0.3)))
