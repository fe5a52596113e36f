"""End-to-end tests for the command-line interface.

Every JSON output is validated against the schema shipped inside the
package, several outputs are pinned byte-for-byte, and all documented
exit codes (0 success, 2 invalid input, 3 undetermined verdict) are
exercised.
"""

from __future__ import annotations

import io
import json
from contextlib import redirect_stdout
from pathlib import Path

import pytest
from jsonschema import Draft7Validator

from immorder import cli
from test_order import FROZEN_COMBINED_EDGES
from immorder.order import parse_dot_edges

SCHEMA_DIR = Path(cli.__file__).parent / "schemas"


def load_schema(name: str) -> dict:
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())


def run_cli(*argv: str):
    """Run the dispatcher in-process; return (exit_code, stdout_text)."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.run(list(argv))
    return code, buf.getvalue()


def run_json(*argv: str, schema: str, expect_code: int = 0):
    code, out = run_cli(*argv)
    assert code == expect_code, out
    payload = json.loads(out)
    Draft7Validator(load_schema(schema)).validate(payload)
    return payload, out


S4 = {"group": "trivial"}
CP2 = {"group": "trivial", "w2": "inf"}
M2 = {"group": "cyclic", "n": 2, "w2": "1"}
Z4_E12 = {"group": "Z4", "w2": "e12"}


def payload_file(tmp_path: Path, name: str, obj: dict) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


# ---------------------------------------------------------------------------
# schemas themselves


def test_every_schema_is_valid_draft7():
    files = sorted(SCHEMA_DIR.glob("*.schema.json"))
    assert len(files) == 13
    for f in files:
        Draft7Validator.check_schema(json.loads(f.read_text()))


# ---------------------------------------------------------------------------
# homology


def test_homology_twisted_cyclic():
    payload, out = run_json(
        "homology", "--group", "Z/8", "--twist", "w", "--coeff", "Z",
        "--degree", "4", schema="homology",
    )
    assert out == '{"coeff":"Z","degree":4,"group":"Z/8","result":"Z/2","twist":"w"}\n'


def test_homology_untwisted_cyclic_vanishes():
    payload, _ = run_json(
        "homology", "--group", "Z/6", "--degree", "4", schema="homology",
    )
    assert payload["result"] == "0"
    assert payload["twist"] == "0"


def test_homology_rank4_free_abelian():
    payload, out = run_json(
        "homology", "--group", "Z4", "--coeff", "Z", "--degree", "2",
        schema="homology",
    )
    assert out == '{"coeff":"Z","degree":2,"group":"Z4","result":"Z^6","twist":"0"}\n'


def test_homology_mod2_coefficients():
    payload, _ = run_json(
        "homology", "--group", "Z/4", "--coeff", "Z2", "--degree", "3",
        schema="homology",
    )
    assert payload["result"] == "Z/2"


def test_homology_rejects_twist_on_rank4():
    code, out = run_cli("homology", "--group", "Z4", "--twist", "w", "--degree", "2")
    assert code == 2
    Draft7Validator(load_schema("error")).validate(json.loads(out))


# ---------------------------------------------------------------------------
# sq2w


def test_sq2w_cyclic():
    payload, out = run_json(
        "sq2w", "--group", "Z/4", "--w1", "t", "--w2", "0", schema="sq2w",
    )
    assert out == (
        '{"degree":2,"group":"Z/4","values":[{"value":"s^2","x":"s"}],'
        '"w1":"t","w2":"0"}\n'
    )


def test_sq2w_rank4_symplectic_twist():
    payload, _ = run_json(
        "sq2w", "--group", "Z4", "--w2", "e12+e34", schema="sq2w",
    )
    values = {row["x"]: row["value"] for row in payload["values"]}
    assert len(values) == 6
    assert values["e1e2"] == "e1e2e3e4"
    assert values["e3e4"] == "e1e2e3e4"
    for x in ("e1e3", "e1e4", "e2e3", "e2e4"):
        assert values[x] == "0"


def test_sq2w_rejects_other_degrees():
    code, out = run_cli("sq2w", "--group", "Z/4", "--degree", "3")
    assert code == 2
    Draft7Validator(load_schema("error")).validate(json.loads(out))


# ---------------------------------------------------------------------------
# realizable


def test_realizable_nonorientable_cyclic():
    payload, out = run_json(
        "realizable", "--group", "Z/8", "--w1", "1", "--w2", "1",
        schema="realizable",
    )
    assert out == (
        '{"ambient":"Z/2","generator":1,"group":"Z/8","kind":"Determined",'
        '"modulus":2,"subgroup":"all","w1":1,"w2":"1"}\n'
    )


def test_realizable_rank4_upper_bound():
    payload, _ = run_json(
        "realizable", "--group", "Z4", "--w1", "0", "--w2", "0",
        schema="realizable",
    )
    assert payload["kind"] == "UpperBound"
    assert payload["modulus"] == 0


def test_realizable_rank4_determined_even_subgroup():
    payload, _ = run_json(
        "realizable", "--group", "Z4", "--w1", "0", "--w2", "e12+e34",
        schema="realizable",
    )
    assert payload["kind"] == "Determined"
    assert payload["subgroup"] == "2Z"


# ---------------------------------------------------------------------------
# leq


def test_leq_s4_below_everything(tmp_path):
    a = payload_file(tmp_path, "a.json", S4)
    b = payload_file(tmp_path, "b.json", CP2)
    payload, out = run_json("leq", a, b, schema="leq")
    assert out == '{"answer":true,"trace":["s4-minimum"]}\n'


def test_leq_false_with_trace(tmp_path):
    a = payload_file(tmp_path, "a.json", CP2)
    b = payload_file(tmp_path, "b.json", S4)
    payload, _ = run_json("leq", a, b, schema="leq")
    assert payload["answer"] is False
    assert payload["trace"]


def test_leq_stdin_payload(tmp_path, monkeypatch):
    b = payload_file(tmp_path, "b.json", M2)
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(S4)))
    payload, _ = run_json("leq", "-", b, schema="leq")
    assert payload["answer"] is True


def test_leq_rejects_two_stdin_payloads(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(S4)))
    code, out = run_cli("leq", "-", "-")
    assert code == 2
    assert "at most one" in json.loads(out)["error"]


def test_leq_undetermined_exits_3(tmp_path):
    a = payload_file(tmp_path, "a.json", M2)
    b = payload_file(tmp_path, "b.json", Z4_E12)
    payload, _ = run_json("leq", a, b, schema="leq", expect_code=3)
    assert payload["answer"] == "undetermined"
    assert payload["reason"]


def test_leq_missing_file_exits_2(tmp_path):
    b = payload_file(tmp_path, "b.json", S4)
    code, out = run_cli("leq", str(tmp_path / "nope.json"), b)
    assert code == 2
    Draft7Validator(load_schema("error")).validate(json.loads(out))


def test_leq_malformed_json_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    b = payload_file(tmp_path, "b.json", S4)
    assert run_cli("leq", str(bad), b)[0] == 2


def test_leq_unknown_payload_key_exits_2(tmp_path):
    a = payload_file(tmp_path, "a.json", {"group": "trivial", "spin": True})
    b = payload_file(tmp_path, "b.json", S4)
    code, out = run_cli("leq", a, b)
    assert code == 2
    assert "spin" in json.loads(out)["error"]


# ---------------------------------------------------------------------------
# order-graph


def test_order_graph_combined_dot_matches_frozen_figure():
    code, out = run_cli(
        "order-graph", "--family", "cyclic", "--max-exp", "2", "--combined",
    )
    assert code == 0
    assert out.startswith("digraph immersion_order")
    assert parse_dot_edges(out) == FROZEN_COMBINED_EDGES


def test_order_graph_json():
    payload, out = run_json(
        "order-graph", "--max-exp", "1", "--format", "json",
        schema="order_graph",
    )
    assert out == (
        '{"edges":[["M_1","CP2"],["S4","M_1"]],'
        '"nodes":[{"label":"S4","name":"S4"},{"label":"CP2","name":"CP2"},'
        '{"label":"M(2)","name":"M_1"}]}\n'
    )


def test_order_graph_rejects_bad_inputs():
    assert run_cli("order-graph", "--max-exp", "-1")[0] == 2
    assert run_cli("order-graph", "--family", "dihedral", "--max-exp", "1")[0] == 2


# ---------------------------------------------------------------------------
# model-cohomology


def test_model_cohomology_pinned_values():
    expected = {
        ("3", "ZZ2w"): "Z/4",
        ("3", "Z"): "Z/8",
        ("3", "Z2"): "Z/2",
        ("1", "ZZ2w"): "0",
    }
    for (k, coeff), group in expected.items():
        payload, _ = run_json(
            "model-cohomology", "--k", k, "--coeff", coeff,
            schema="model_cohomology",
        )
        assert payload["group"] == group, (k, coeff)


def test_model_cohomology_output_bytes():
    _, out = run_json(
        "model-cohomology", "--k", "3", "--coeff", "ZZ2w",
        schema="model_cohomology",
    )
    assert out == '{"coeff":"ZZ2w","group":"Z/4","k":3}\n'


# ---------------------------------------------------------------------------
# shift


def test_shift_frozen_output():
    payload, out = run_json("shift", "--group", "Z/4", schema="shift")
    assert out == (
        '{"classes":[[1],[1],[1],[1]],"group":"Z/4",'
        '"groups":["Z/2","Z/2","Z/2","Z/2"],"input_multiple":1,"w":"w"}\n'
    )


def test_shift_rejects_odd_order_twist():
    code, out = run_cli("shift", "--group", "Z/3", "--w", "w")
    assert code == 2
    Draft7Validator(load_schema("error")).validate(json.loads(out))


# ---------------------------------------------------------------------------
# fibered


def test_fibered_worked_example():
    payload, out = run_json(
        "fibered", "--relator", "aaaBAAAbbaaababb", "--phi", "a=-1,b=1",
        schema="fibered",
    )
    assert out == '{"fibered":true,"max":1,"max_index":9,"min":-4,"min_index":4}\n'


def test_fibered_negative_case_carries_reason():
    payload, _ = run_json(
        "fibered", "--relator", "abab", "--phi", "a=-1,b=1", schema="fibered",
    )
    assert payload["fibered"] is False
    assert "minimum" in payload["reason"]


def test_fibered_rejects_character_not_killing_relator():
    code, out = run_cli("fibered", "--relator", "ab", "--phi", "a=1,b=1")
    assert code == 2
    Draft7Validator(load_schema("error")).validate(json.loads(out))


def test_fibered_rejects_malformed_phi():
    assert run_cli("fibered", "--relator", "abAB", "--phi", "a=1")[0] == 2
    assert run_cli("fibered", "--relator", "abAB", "--phi", "a=x,b=1")[0] == 2


# ---------------------------------------------------------------------------
# abelianization / integral-lift


M313 = "<a,b|aaaBAAAbbaaababb,aaabAAbbaaaBABAAAB>"


def test_abelianization_worked_example():
    payload, out = run_json(
        "abelianization", "--presentation", M313, schema="abelianization",
    )
    assert out == (
        '{"abelianization":"Z + Z/4",'
        '"presentation":"<a,b|aaaBAAAbbaaababb,aaabAAbbaaaBABAAAB>"}\n'
    )


def test_integral_lift_pinned_table():
    expected = {"a=0,b=1": False, "a=1,b=0": False, "a=1,b=1": True, "a=0,b=0": True}
    for w1, exists in expected.items():
        payload, _ = run_json(
            "integral-lift", "--presentation", M313, "--w1", w1,
            schema="integral_lift",
        )
        assert payload["lift_exists"] is exists, w1


def test_integral_lift_output_bytes():
    _, out = run_json(
        "integral-lift", "--presentation", M313, "--w1", "a=0,b=1",
        schema="integral_lift",
    )
    assert out == '{"lift_exists":false,"w1":{"a":0,"b":1}}\n'


def test_integral_lift_rejects_non_bits():
    assert run_cli("integral-lift", "--presentation", M313, "--w1", "a=2,b=0")[0] == 2


def test_abelianization_rejects_bad_presentation():
    code, out = run_cli("abelianization", "--presentation", "<a,c|ab>")
    assert code == 2
    Draft7Validator(load_schema("error")).validate(json.loads(out))


# ---------------------------------------------------------------------------
# chain-verify


def test_chain_verify_worked_example():
    payload, out = run_json(
        "chain-verify", "--source", "6", "--target", "2", schema="chain_verify",
    )
    assert out == (
        '{"augmentation":3,"candidate":[3,0,0,0],"exists":true,"index":3,'
        '"source_k":6,"target_k":2,"witness":[3,0,0,0]}\n'
    )


def test_chain_verify_rejects_even_index():
    code, out = run_cli("chain-verify", "--source", "4", "--target", "2")
    assert code == 2
    Draft7Validator(load_schema("error")).validate(json.loads(out))


# ---------------------------------------------------------------------------
# dispatcher behaviour


def test_help_exits_zero():
    code, out = run_cli("--help")
    assert code == 0
    assert "usage" in out.lower()


def test_missing_subcommand_exits_2():
    code, out = run_cli()
    assert code == 2
    Draft7Validator(load_schema("error")).validate(json.loads(out))


def test_unknown_subcommand_exits_2():
    code, out = run_cli("frobnicate")
    assert code == 2
    Draft7Validator(load_schema("error")).validate(json.loads(out))


def test_bad_group_string_exits_2():
    code, out = run_cli("homology", "--group", "Q8", "--degree", "2")
    assert code == 2
    assert "Q8" in json.loads(out)["error"]


JSON_INVOCATIONS = [
    ("homology", "--group", "Z/8", "--twist", "w", "--coeff", "Z", "--degree", "4"),
    ("sq2w", "--group", "Z4", "--w2", "e12+e34"),
    ("realizable", "--group", "Z/8", "--w1", "1", "--w2", "1"),
    ("order-graph", "--max-exp", "2", "--combined", "--format", "json"),
    ("model-cohomology", "--k", "4", "--coeff", "Z"),
    ("shift", "--group", "Z/8", "--seed", "3"),
    ("fibered", "--relator", "aaaBAAAbbaaababb", "--phi", "a=-1,b=1"),
    ("abelianization", "--presentation", M313),
    ("integral-lift", "--presentation", M313, "--w1", "a=1,b=1"),
    ("chain-verify", "--source", "10", "--target", "2"),
]


@pytest.mark.parametrize("argv", JSON_INVOCATIONS, ids=lambda a: a[0])
def test_json_output_is_byte_deterministic(argv):
    code1, out1 = run_cli(*argv)
    code2, out2 = run_cli(*argv)
    assert code1 == code2 == 0
    assert out1.encode() == out2.encode()
    assert out1.endswith("\n")
    json.loads(out1)  # single well-formed JSON document


def test_dot_output_is_byte_deterministic():
    argv = ("order-graph", "--max-exp", "2", "--combined")
    assert run_cli(*argv) == run_cli(*argv)
