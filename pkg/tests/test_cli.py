import json

import pytest

from fscheme.cli import ring_from_spec, run

RINGS = {
    "z6": {"kind": "zmod", "n": 6},
    "z12": {"kind": "zmod", "n": 12},
    "m2": {"kind": "matrix", "base": {"kind": "zmod", "n": 2}, "n": 2},
    "v": {"kind": "product", "factors": [{"kind": "zmod", "n": 2}, {"kind": "zmod", "n": 2}]},
    "ut": {"kind": "triangular", "base": {"kind": "zmod", "n": 2}, "n": 2},
    "c2": {"kind": "group_algebra", "base": {"kind": "zmod", "n": 2}, "cyclic": 2},
    "z2t": {"kind": "tables", "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 1]],
            "zero": 0, "one": 1, "label": "F2"},
}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, doc in RINGS.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        out[name] = str(p)
    return out


def call(capsys, *argv):
    code = run(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_ring_specs():
    assert ring_from_spec(RINGS["z6"]).order == 6
    assert ring_from_spec(RINGS["m2"]).order == 16
    assert ring_from_spec(RINGS["c2"]).order == 4
    assert ring_from_spec(RINGS["z2t"]).label == "F2"
    assert ring_from_spec(7).order == 7


def test_classify_m2(files, capsys):
    code, out, _ = call(capsys, "classify", files["m2"])
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["command"] == "classify"
    assert doc["self_localized"] and doc["simple"] and doc["jacobson_radical"] == [0]


def test_spec_and_localize(files, capsys):
    code, out, _ = call(capsys, "spec", files["z6"])
    assert code == 0 and [p["members"] for p in json.loads(out)["primes"]] == [[0, 3], [0, 2, 4]]
    code, out, _ = call(capsys, "localize", files["z6"], "--set", "1,2,4")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 3 and doc["kernel"] == [0, 3]


def test_fullspec_json_and_dot(files, capsys):
    code, out, _ = call(capsys, "fullspec", files["z6"])
    assert code == 0 and len(json.loads(out)["points"]) == 3
    code, out, _ = call(capsys, "fullspec", files["z6"], "--dot")
    assert code == 0 and out.startswith("digraph")
    assert out.count("[label=") == 3 and out.count("->") == 2 and "gold" in out


def test_locus_sheaf_stalk_compare(files, capsys):
    code, out, _ = call(capsys, "locus", files["z6"], "--ideal", "2")
    assert code == 0 and json.loads(out)["locus"] == [1]
    code, out, _ = call(capsys, "sheaf-check", files["z6"])
    assert code == 0 and json.loads(out)["sheaf"]
    code, out, _ = call(capsys, "stalk", files["z6"], "--point", "1,3,5")
    assert code == 0 and json.loads(out)["order"] == 2
    code, out, _ = call(capsys, "compare-spec", files["z12"])
    assert code == 0 and json.loads(out)["ok"]


def test_morphism(files, capsys):
    pairs = ",".join(f"{k}:{k % 6}" for k in range(12))
    code, out, _ = call(capsys, "morphism", files["z12"], files["z6"], "--map", pairs)
    doc = json.loads(out)
    assert code == 0 and doc["continuous"] and all(doc["local_at"])


def test_bad_morphism_is_domain_error(files, capsys):
    pairs = ",".join(f"{k}:{k % 2}" for k in range(6))
    code, out, _ = call(capsys, "morphism", files["z6"], files["z6"], "--map", pairs)
    assert code == 1 and "error" in json.loads(out)


def test_free_reduce(files, capsys):
    code, out, _ = call(capsys, "free-loc", "reduce", files["z6"], "--invert", "2",
                        "--expr", "x2*a2")
    doc = json.loads(out)
    assert code == 0 and doc["normal_form"] == "1" and doc["command"] == "free-loc reduce"
    # an exhausted budget is an inconclusive answer, not an error
    code, out, _ = call(capsys, "free-loc", "reduce", files["z6"], "--invert", "2",
                        "--expr", "x2*x2*x2", "--max-steps", "0")
    doc = json.loads(out)
    assert code == 0 and not doc["normal"] and doc["normal_form"] == "x2*x2*x2"


def test_graded(files, capsys):
    code, out, _ = call(capsys, "graded", "correspond", files["v"], "--sigma", "0,2,1,3")
    doc = json.loads(out)
    assert code == 0 and not doc["bijection"] and doc["projective_points"] == 1
    code, out, _ = call(capsys, "graded", "twistlaw", files["v"], "--sigma", "0,2,1,3",
                        "--window", "4")
    assert code == 0 and json.loads(out)["twist_law"]


def test_domain_errors_exit_1(files, capsys):
    code, out, _ = call(capsys, "spec", files["ut"])
    doc = json.loads(out)
    assert code == 1 and doc["error"] == "NonCommutativeError" and "commutative" in doc["message"]


@pytest.mark.parametrize("argv", [
    ["localize", "{z6}", "--set", "9"],
    ["classify", "/no/such/file.json"],
    ["graded", "correspond", "{v}", "--sigma", "0,1"],
    ["free-loc", "reduce", "{z6}", "--invert", "2", "--expr", "a2 +"],
])
def test_usage_errors_exit_2(files, capsys, argv):
    code, out, err = call(capsys, *[a.format(**files) for a in argv])
    assert code == 2 and out == ""
    doc = json.loads(err)
    assert doc["error"] == "usage" and doc["message"]


def test_bad_ring_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"kind": "tables", "add": [[0, 1], [1, 0]], "mul": [[0, 1], [1, 0]],
                             "zero": 0, "one": 1}))
    code, _, err = call(capsys, "classify", str(p))
    assert code in (1, 2)
    p.write_text(json.dumps({"kind": "nope"}))
    assert call(capsys, "classify", str(p))[0] == 2


def test_argparse_errors(capsys):
    assert run(["nonsense"]) == 2
    assert run([]) == 2
    capsys.readouterr()


def test_output_is_deterministic(files, capsys):
    first = call(capsys, "fullspec", files["z12"])[1]
    second = call(capsys, "fullspec", files["z12"])[1]
    assert first == second
    a = call(capsys, "classify", files["m2"])[1]
    assert a == call(capsys, "classify", files["m2"])[1]


def test_corpus_list(capsys):
    code, out, _ = call(capsys, "corpus", "list")
    labels = [r["label"] for r in json.loads(out)["rings"]]
    assert code == 0 and "Z/6" in labels and len(labels) == 19
    assert sum(not r["commutative"] for r in json.loads(out)["rings"]) >= 2
