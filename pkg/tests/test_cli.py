"""CLI surface: exit codes, formats, and round trips."""

import json

from orient4.cli import main


def write_spec(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def c1_doc():
    return {"center_multiplicity": 2,
            "branches": [{"multiplicity": 2, "leaf_multiplicities": [2]},
                         {"multiplicity": 2, "leaf_multiplicities": [2]},
                         {"multiplicity": 2, "leaf_multiplicities": []}]}


def c0_doc():
    return {"center_multiplicity": 3,
            "branches": [{"multiplicity": 2, "leaf_multiplicities": [2, 3]},
                         {"multiplicity": 2, "leaf_multiplicities": [2]},
                         {"multiplicity": 2, "leaf_multiplicities": []}]}


def gap_doc():
    return {"center_multiplicity": 4,
            "branches": [{"multiplicity": 2, "leaf_multiplicities": [2]}] * 4
            + [{"multiplicity": 3, "leaf_multiplicities": [2]}] * 3}


def test_classify_c1_exits_zero(tmp_path, capsys):
    path = write_spec(tmp_path, c1_doc())
    assert main(["classify", path]) == 0
    out = capsys.readouterr().out
    assert "C1 (orientation number 5), rule Prop3.2" in out


def test_classify_json(tmp_path, capsys):
    path = write_spec(tmp_path, c0_doc())
    assert main(["classify", path, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "C0"
    assert doc["orientation_number"] == 4
    assert doc["rule"] == "Prop3.5"


def test_classify_gap_reports_bounds(tmp_path, capsys):
    path = write_spec(tmp_path, gap_doc())
    assert main(["classify", path, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "UnknownGap"
    assert doc["gap_detail"]["necessary_bound_holds"] is True
    assert doc["gap_detail"]["sufficient_bound_holds"] is False


def test_construct_refusals(tmp_path, capsys):
    assert main(["construct", write_spec(tmp_path, c1_doc())]) == 1
    assert "rule Prop3.2" in capsys.readouterr().err
    assert main(["construct", write_spec(tmp_path, gap_doc())]) == 1
    assert "open case" in capsys.readouterr().err


def test_construct_verify_roundtrip(tmp_path, capsys):
    spec_path = write_spec(tmp_path, c0_doc())
    assert main(["construct", spec_path]) == 0
    edges = capsys.readouterr().out
    edge_path = tmp_path / "edges.txt"
    edge_path.write_text(edges)
    assert main(["verify", spec_path, str(edge_path)]) == 0
    out = capsys.readouterr().out
    assert "diameter 4" in out and "strong" in out and "edges match" in out


def test_construct_output_is_byte_stable(tmp_path, capsys):
    spec_path = write_spec(tmp_path, c0_doc())
    main(["construct", spec_path, "--explain"])
    first = capsys.readouterr().out
    main(["construct", spec_path, "--explain"])
    assert capsys.readouterr().out == first


def test_construct_dot(tmp_path, capsys):
    spec_path = write_spec(tmp_path, c0_doc())
    assert main(["construct", spec_path, "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph")


def test_construct_json_explains(tmp_path, capsys):
    spec_path = write_spec(tmp_path, c0_doc())
    assert main(["construct", spec_path, "--json", "--explain"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["diameter"] == 4
    assert doc["strong"] is True
    assert doc["explain"]["case"].startswith("P35")


def test_malformed_input_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["classify", str(bad)]) == 2
    capsys.readouterr()
    missing = write_spec(tmp_path, {"center_multiplicity": 2}, "m.json")
    assert main(["classify", missing]) == 2
    capsys.readouterr()
    invalid = write_spec(tmp_path, {
        "center_multiplicity": 1,
        "branches": [{"multiplicity": 2, "leaf_multiplicities": [2]},
                     {"multiplicity": 2, "leaf_multiplicities": [2]}]},
        "i.json")
    assert main(["classify", invalid]) == 2


def test_oracle_cli(tmp_path, capsys):
    spec_path = write_spec(tmp_path, {
        "center_multiplicity": 2,
        "branches": [{"multiplicity": 2, "leaf_multiplicities": [2]},
                     {"multiplicity": 2, "leaf_multiplicities": [2]}]})
    assert main(["oracle", spec_path, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["orientation_number"] == 4
    assert doc["orientations_examined"] == 1 << 16


def test_oracle_budget_refusal_exit_one(tmp_path, capsys):
    spec_path = write_spec(tmp_path, {
        "center_multiplicity": 3,
        "branches": [{"multiplicity": 3, "leaf_multiplicities": [3, 3]},
                     {"multiplicity": 3, "leaf_multiplicities": [3, 3]}]})
    assert main(["oracle", spec_path]) == 1
    assert "refused" in capsys.readouterr().err


def test_oracle_bipartite(capsys):
    assert main(["oracle", "--bipartite", "2", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["orientation_number"] == 4


def test_construct_verify_roundtrip_over_corpus(tmp_path, capsys):
    corpus = [
        {"center_multiplicity": 2,
         "branches": [{"multiplicity": 4, "leaf_multiplicities": [2, 2]},
                      {"multiplicity": 4, "leaf_multiplicities": [2]},
                      {"multiplicity": 2, "leaf_multiplicities": []}]},
        {"center_multiplicity": 4,
         "branches": [{"multiplicity": 3, "leaf_multiplicities": [2]}] * 6
         + [{"multiplicity": 5, "leaf_multiplicities": [3]}] * 2},
        {"center_multiplicity": 5,
         "branches": [{"multiplicity": 2, "leaf_multiplicities": [2]}] * 6
         + [{"multiplicity": 3, "leaf_multiplicities": [2]}] * 7},
        {"center_multiplicity": 3,
         "branches": [{"multiplicity": 2, "leaf_multiplicities": [2]},
                      {"multiplicity": 3, "leaf_multiplicities": [4]},
                      {"multiplicity": 6, "leaf_multiplicities": [2, 2]},
                      {"multiplicity": 2, "leaf_multiplicities": []}]},
    ]
    for i, doc in enumerate(corpus):
        spec_path = write_spec(tmp_path, doc, f"spec{i}.json")
        assert main(["construct", spec_path]) == 0
        edges = capsys.readouterr().out
        edge_path = tmp_path / f"edges{i}.txt"
        edge_path.write_text(edges)
        assert main(["verify", spec_path, str(edge_path)]) == 0
        assert "diameter 4" in capsys.readouterr().out


def test_sperner_subcommands(capsys):
    assert main(["sperner", "kappa", "--n", "6", "--r", "3", "--m", "13"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["sperner", "squashed", "--n", "5", "--k", "3"]) == 0
    out = capsys.readouterr().out.split()
    assert out[:4] == ["123", "124", "134", "234"]
    assert main(["sperner", "shadow", "--n", "5", "--k", "3", "--m", "4"]) == 0
    assert "|shadow| = 6" in capsys.readouterr().out
