import json
import subprocess
import sys

import jsonschema
import pytest

from ordspace import schemas
from ordspace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_homeo_yes(capsys):
    code, out, _ = run(capsys, "homeo", "seg[w] x seg[w]", "seg[w] xl seg[w]")
    assert code == 0
    assert out.splitlines()[0] == "Yes((2,1))"


def test_homeo_no_discreteness(capsys):
    code, out, _ = run(capsys, "homeo", "w x w", "w xl w")
    assert code == 1
    assert out.startswith("No(discreteness)")
    assert "<1,0>" in out


def test_homeo_unknown_exits_zero(capsys):
    code, out, _ = run(capsys, "homeo", "w xl seg[w]", "w xl w")
    assert code == 0 and out.startswith("Unknown")


def test_certify_convseq(capsys):
    code, out, _ = run(capsys, "certify", "convseq", "--depth", "5")
    assert code == 0
    assert "PASS" in out.splitlines()[0]


def test_certify_corrupted_fails(capsys):
    code, out, _ = run(capsys, "certify", "convseq", "--corrupt")
    assert code == 1 and "FAIL" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "parse", "rev(w x w)")
    assert code == 2
    assert "position 4" in err and err.splitlines()[-1] == "    ^"


def test_not_in_class_exit_code(capsys):
    code, _, err = run(capsys, "decompose", "omit(seg[w^2], limit & !{w, w^2})")
    assert code == 2 and "witness: w^2" in err


def test_unsupported_is_a_class_error(capsys):
    code, _, err = run(capsys, "invariants", "L[w1]")
    assert code == 2 and err.startswith("error:")


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["certify", "no-such-map"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2


@pytest.mark.parametrize("argv", [
    ["parse", "seg[w] xl seg[w]"],
    ["invariants", "seg[w] x seg[w]"],
    ["invariants", "w xl w"],
    ["homeo", "w x w", "w xl w"],
    ["homeo", "seg[w^2]", "L[w]"],
    ["certify", "convseq", "--depth", "3", "--basis-max", "3"],
    ["demo", "zlike"],
    ["demo", "decompose"],
    ["decompose", "omit(seg[w*3], limit & !{w, w*2, w*3})"],
    ["embed", "omit(seg[w*3], limit & !{w, w*2, w*3})"],
    ["enumerate", "seg[w] xl seg[2]"],
    ["dot", "seg[w] x seg[w]"],
])
def test_json_output_validates(capsys, argv):
    code, payload = run_json(capsys, *argv)
    assert code in (0, 1)
    jsonschema.validate(payload, schemas.BY_COMMAND[argv[0]])


def test_json_errors_validate(capsys):
    code, payload = run_json(capsys, "parse", "seg[")
    assert code == 2
    jsonschema.validate(payload, schemas.ERROR)
    assert payload["position"] == 4


def test_flags_after_or_before_verb(capsys):
    a = run_json(capsys, "--depth", "2", "enumerate", "seg[w]")[1]
    b = run_json(capsys, "enumerate", "seg[w]", "--depth", "2")[1]
    assert a == b and a["depth"] == 2


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "cfg.yaml"
    cfg.write_text("depth: 2\nformat: json\n")
    code, out, _ = run(capsys, "--config", str(cfg), "enumerate", "seg[w]")
    assert code == 0 and json.loads(out)["depth"] == 2
    code, out, _ = run(capsys, "--config", str(cfg), "enumerate", "seg[w]", "--depth", "3")
    assert json.loads(out)["depth"] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"colour": "red"}')
    code, _, err = run(capsys, "--config", str(bad), "parse", "w")
    assert code == 2 and "unknown config keys" in err


def test_dot_output_is_a_digraph(capsys):
    code, out, _ = run(capsys, "dot", "seg[w] x seg[w]", "--depth", "2", "--basis-max", "3")
    assert code == 0
    assert out.startswith("digraph cb {") and out.rstrip().endswith("}")
    assert '"<w,w>"' in out and "rank=same" in out


@pytest.mark.parametrize("cid", ["convseq", "lgamma-square", "decompose", "embed", "zlike"])
def test_demos_pass(capsys, cid):
    code, out, _ = run(capsys, "demo", cid)
    assert code == 0 and "FAIL" not in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ordspace", "parse", "L[w]"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "L[w]"
