"""Smoke test for the `gkm` extension module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml --features extension-module`.
"""

import json

import gkm


def main():
    a2 = gkm.Gkm("A2")
    assert len(a2) == 6 and a2.rank == 2
    assert a2.elements() == ["e", "1", "2", "1,2", "2,1", "1,2,1"]
    assert a2.billey("1", "1,2,1") == "a1 + a2"

    s1, s2 = a2.schubert("1"), a2.schubert("2")
    assert a2.expand(s1 * s2) == [("1,2", "1"), ("2,1", "1")]
    assert a2.expand(a2.schubert("2,1") * s2) == [("2,1", "a2"), ("1,2,1", "1")]
    assert a2.expand_parabolic(a2.schubert("1,2"), "2") == [("1", "2", "1"), ("2,1", "e", "-1")]
    assert a2.class_from_json(s2.to_json()) == s2
    assert (s1 + s2 - s2) == s1

    cert = json.loads(a2.certify("2"))
    assert cert["status"] == "ok"
    assert cert["closed_form"] == "a1^3*a2^3*(a1 + a2)^3"

    assert a2.character("2", "PB") == {"e": "2", "2": "0"}
    assert a2.character("2", "GB") == {"e": "6", "2": "0"}

    ok, report = a2.verify("springer", "2")
    assert ok and json.loads(report)[0]["literal_multiple_holds"] is False

    try:
        a2.billey("3", "1")
    except ValueError as e:
        assert "3" in str(e)
    else:
        raise AssertionError("expected ValueError")

    report = json.loads(gkm.catalogue('{"systems": ["A1", "E8"], "checks": ["billey"]}'))
    assert report["ok"] and report["systems"][1]["status"] == "skipped"
    print("gkm smoke test passed")


if __name__ == "__main__":
    main()
