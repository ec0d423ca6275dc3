import json
from pathlib import Path

import pytest
from hypothesis import given, settings

from meridional import descriptor
from meridional.cli import main

from strategies import assemblies

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_valid(capsys):
    code, out, _ = run(capsys, "validate", FIXTURES / "valid" / "BC.txt")
    assert code == 0 and out.strip() == "valid; genus 1, boundary 2"


def test_validate_reports_condition(capsys):
    code, out, _ = run(capsys, "validate", FIXTURES / "violations" / "2.8.1_2.txt")
    assert code == 1 and out.startswith("2.8.1(2)")


def test_truncated_file(capsys, tmp_path):
    text = (FIXTURES / "valid" / "BC.txt").read_text().splitlines()
    bad = tmp_path / "cut.txt"
    bad.write_text("\n".join(text[:3]))
    assert run(capsys, "validate", bad)[0] == 2
    assert run(capsys, "validate", tmp_path / "missing.txt")[0] == 2


def test_invariants_of_d(capsys):
    code, out, _ = run(capsys, "invariants", FIXTURES / "valid" / "D.txt")
    assert code == 0 and out.splitlines()[0] == "components: 1, genus 1, boundary 4"


def test_trace_then_recognize(capsys, tmp_path):
    code, out, _ = run(capsys, "trace", FIXTURES / "valid" / "CAC.txt")
    assert code == 0
    path = tmp_path / "cac.trace"
    path.write_text(out)
    code, out, _ = run(capsys, "recognize", path, "--bottom", "disks", "--top", "disks")
    assert code == 0 and out.splitlines()[0] == "types: C A C"


def test_recognize_errors(capsys, tmp_path):
    path = tmp_path / "t.trace"
    path.write_text("meridional-trace 1\ninitial 2 2,3 1\n1 S1\nfinal 4 2,3 0\n")
    assert run(capsys, "recognize", path, "--bottom", "annuli", "--top", "annuli")[0] == 1
    path.write_text("nonsense\n")
    assert run(capsys, "recognize", path, "--bottom", "annuli", "--top", "annuli")[0] == 2


def test_search_lens_genus_zero(capsys):
    code, out, _ = run(capsys, "search", "--manifold", "L(5,2)", "--genus", "0", "--boundary", "2")
    assert code == 0
    assert descriptor.parse(out).types == ("E",)


def test_search_not_found(capsys):
    code, _, err = run(capsys, "search", "--manifold", "S3", "--genus", "0", "--boundary", "2")
    assert code == 1 and "piece grammar" in err


def test_json_mode_is_stable(capsys):
    first = run(capsys, "--json", "invariants", FIXTURES / "valid" / "CAC.txt")[1]
    second = run(capsys, "--json", "invariants", FIXTURES / "valid" / "CAC.txt")[1]
    assert first == second
    assert json.loads(first)["components"][0]["genus"] == 1


def test_json_descriptor_input(capsys, tmp_path):
    a = descriptor.parse((FIXTURES / "valid" / "E.txt").read_text())
    path = tmp_path / "e.json"
    path.write_text(json.dumps(descriptor.to_dict(a)))
    assert run(capsys, "validate", path)[:2] == (0, "valid; genus 0, boundary 2\n")


@pytest.mark.parametrize("text", [
    "meridional-descriptor 2\nmanifold S3\nr 1\ngamma 2,3\npiece D\n",
    "manifold S3\nr 1\ngamma 2,3\npiece D\n",
    "meridional-descriptor 1\nmanifold S3\nr 1\ngamma 2,3\npiece D\n  colour blue\n",
    "meridional-descriptor 1\nmanifold S3\nr 1\ngamma 2,3\npiece G\n",
    "meridional-descriptor 1\nmanifold S3\nr 1\ngamma 2,3\nwidth 4\npiece D\n",
    "meridional-descriptor 1\nmanifold S3\nr 1\ngamma 2,3\npiece D\n  crossing 1 0 2 x\n",
    "meridional-descriptor 1\nmanifold S3\nr 1\ngamma 2,3\n",
])
def test_descriptor_rejects(text):
    with pytest.raises(descriptor.DescriptorError):
        descriptor.parse(text)


@settings(max_examples=100, deadline=None)
@given(assemblies())
def test_descriptor_round_trips(a):
    assert descriptor.parse(descriptor.serialize(a)) == a
    assert descriptor.from_dict(json.loads(json.dumps(descriptor.to_dict(a)))) == a
