import json
import subprocess
import sys

import pytest

from subpower import ReesStructure, SmpInstance, catalog, check_witness
from subpower.cli import load_instance, main
from subpower.smp import instance_to_json


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def b2_instances(tmp_path, b2):
    S = b2.semigroup
    member = instance_to_json(SmpInstance(S, [(0, 1), (2, 3)], (0, 4)), "brandt_b2")
    non_member = instance_to_json(SmpInstance(S, [(0, 0)], (1, 1)), "brandt_b2")
    return write_json(tmp_path / "m.json", member), write_json(tmp_path / "n.json", non_member)


def test_solve_exit_codes(b2_instances, capsys):
    member, non_member = b2_instances
    code, out, _ = run(["solve", member], capsys)
    assert code == 0 and out.startswith("member") and "witness: 0 0" in out
    code, out, _ = run(["solve", non_member], capsys)
    assert code == 1 and out.startswith("not a member")


def test_solve_json(b2_instances, capsys):
    code, out, _ = run(["solve", b2_instances[0], "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["member"] and data["witness"] == [0, 0] and data["method"] == "closure"


def test_solve_budget_exhaustion(tmp_path, capsys, b21):
    S = b21.semigroup
    gens = [tuple((i * 7 + j * 3) % 6 for j in range(8)) for i in range(4)]
    path = write_json(tmp_path / "big.json", instance_to_json(SmpInstance(S, gens, (4,) * 7 + (5,)), "brandt_b2_1"))
    code, _, err = run(["solve", path, "--budget", "10"], capsys)
    assert code == 2 and "budget exceeded" in err


def test_solve_one_block_route(tmp_path, capsys):
    R = ReesStructure([[1, 0], [0, 0]])
    S = R.semigroup
    a = (R.name_index(1, 1), R.name_index(1, 2))
    inst = instance_to_json(SmpInstance(S, [a], (R.name_index(1, 1), S.zero)), R.to_json())
    code, out, _ = run(["solve", write_json(tmp_path / "ob.json", inst), "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["method"] == "one_block"
    assert check_witness(SmpInstance(S, [a], (R.name_index(1, 1), S.zero)), data["witness"])


def test_solve_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["solve", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"semigroup": "brandt_b2", "generators": [[0, 9]], "target": [0, 0]}))
    assert run(["solve", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"semigroup": "brandt_b2", "n": 3, "generators": [[0, 1]], "target": [0, 0]}))
    assert run(["solve", str(bad)], capsys)[0] == 2
    assert run(["solve", str(tmp_path / "missing.json")], capsys)[0] == 2


@pytest.mark.parametrize(
    "name,klass",
    [
        ("brandt_b2", "NP_COMPLETE"),
        ("brandt_b2_1", "PSPACE_COMPLETE"),
        ("full_transformation:3", "PSPACE_COMPLETE"),
        ("cyclic_group:2", "IN_PSPACE_UNKNOWN"),
        ("rees:11,11", "PTIME"),
    ],
)
def test_classify(name, klass, capsys):
    code, out, _ = run(["classify", name, "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["class"] == klass
    assert set(data) == {"class", "theorem", "evidence"}


def test_classify_text_and_errors(capsys):
    code, out, _ = run(["classify", "brandt_b2"], capsys)
    assert code == 0 and out.splitlines()[0] == "NP_COMPLETE"
    assert run(["classify", "no_such_thing"], capsys)[0] == 2


def test_reduce_sat(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 1 1\n1 0\n")
    out_path = tmp_path / "inst.json"
    code, _, err = run(["reduce-sat", str(cnf), "--verify", "--out", str(out_path)], capsys)
    assert code == 0 and "verified" in err
    data = json.loads(out_path.read_text())
    assert len(data["generators"]) == 2 and data["n"] == 2 and data["semigroup"] == "brandt_b2"
    code, out, _ = run(["solve", str(out_path)], capsys)
    assert code == 0


def test_reduce_sat_bad_triple(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 1 1\n1 0\n")
    code, _, err = run(["reduce-sat", str(cnf), "--triple", "[1,1]", "[1,1]", "[1,1]"], capsys)
    assert code == 2 and "error" in err
    code, _, _ = run(["reduce-sat", str(cnf), "--semigroup", "cyclic_group:2"], capsys)
    assert code == 2


def test_reduce_q3sat(tmp_path, capsys):
    f = tmp_path / "f.q3"
    f.write_text("q3sat 1 1\n2 2 2\n")
    code, out, err = run(["reduce-q3sat", str(f), "--verify"], capsys)
    assert code == 0 and "verified" in err
    data = json.loads(out)
    assert data["n"] == 5 and len(data["generators"]) == 9
    path = write_json(tmp_path / "i.json", data)
    assert run(["solve", path], capsys)[0] == 0


def test_reduce_q3sat_lifted_roundtrip(tmp_path, capsys):
    f = tmp_path / "f.q3"
    f.write_text("q3sat 1 1\n1 1 1\n")
    out_path = tmp_path / "i.json"
    code, _, _ = run(["reduce-q3sat", str(f), "--semigroup", "a2_1", "--out", str(out_path)], capsys)
    assert code == 0
    inst, _ = load_instance(str(out_path))
    assert inst.semigroup.size == 36
    assert run(["reduce-q3sat", str(f), "--triple", "0", "0", "0"], capsys)[0] == 2


def test_greens(capsys):
    code, out, _ = run(["greens", "brandt_b2", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and sorted(len(c) for c in data["J"]) == [1, 4]
    code, out, _ = run(["greens", "brandt_b2"], capsys)
    assert "J-classes: 2  sizes [4, 1]" in out


def test_shorten(capsys):
    code, out, _ = run(["shorten", "1 2 1 2 1", "--k", "2"], capsys)
    assert code == 0 and out.strip() == "1 2 1"
    code, out, _ = run(["shorten", "3"], capsys)
    assert out.strip() == "3"
    assert run(["shorten", "1 5", "--k", "2"], capsys)[0] == 2


def test_catalog(capsys, tmp_path):
    code, out, _ = run(["catalog"], capsys)
    assert code == 0 and "brandt_b2" in out
    out_path = tmp_path / "b21.json"
    assert run(["catalog", "brandt_b2_1", "--json", "--out", str(out_path)], capsys)[0] == 0
    data = json.loads(out_path.read_text())
    assert data["pspace_triple"] == list(catalog("brandt_b2_1").pspace_triple)


def test_semigroup_json_file(tmp_path, capsys, b2):
    path = write_json(tmp_path / "s.json", b2.semigroup.to_json())
    code, out, _ = run(["classify", path, "--json"], capsys)
    # a bare table carries no Rees structure, so only the general bounds apply
    assert code == 0 and json.loads(out)["class"] == "NP_HARD_IN_PSPACE"


def test_bad_budget(b2_instances, capsys):
    assert run(["solve", b2_instances[0], "--budget", "0"], capsys)[0] == 2


def test_module_entry_point(b2_instances):
    proc = subprocess.run(
        [sys.executable, "-m", "subpower", "solve", b2_instances[1]], capture_output=True, text=True
    )
    assert proc.returncode == 1 and "not a member" in proc.stdout
