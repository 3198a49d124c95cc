import json

import pytest

from prakit.cli import main, parse_tuple, split_top_level
from prakit.errors import SpecError
from prakit.groups import build_group

REPORT_KEYS = {"command", "group", "params", "results", "seed", "wall_time", "version", "schema_version"}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_split_top_level():
    assert split_top_level("(1,0),(0,1)") == ["(1,0)", "(0,1)"]
    assert split_top_level("[[1,1],[0,1]];[[0,1],[4,0]]") == ["[[1,1],[0,1]]", "[[0,1],[4,0]]"]
    assert split_top_level("(1 2)(3 4), (1 2 3)") == ["(1 2)(3 4)", "(1 2 3)"]
    for bad in ("(1,0", "(1,0)),(", "(1,0),,(0,1)"):
        with pytest.raises(SpecError):
            split_top_level(bad)


def test_parse_tuple_per_family():
    assert len(parse_tuple(build_group("sym:4"), "(1 2 3),(1 2),()")) == 3
    G = build_group("psl2:5")
    t = parse_tuple(G, "[[1,1],[0,1]];[[0,1],[4,0]]")
    assert [G.format_element(g) for g in t] == ["[[1,1],[0,1]]", "[[0,1],[4,0]]"]
    assert parse_tuple(build_group("ab:5"), "1,2,3") == (1, 2, 3)


def test_components_commands(capsys):
    code, r = run(capsys, "components", "psl2:5", "3", "--extended")
    assert code == 0 and set(r) == REPORT_KEYS
    assert r["results"]["component_count"] == 1
    code, r = run(capsys, "components", "ab:5,5", "2", "--extended")
    assert r["results"]["component_count"] == 2
    code, r = run(capsys, "components", "ab:2", "1")
    assert r["results"]["component_count"] == 1


def test_components_csv(capsys, tmp_path):
    out = tmp_path / "h.csv"
    code, _ = run(capsys, "components", "ab:5,5", "2", "--extended", "--out", str(out))
    assert code == 0
    assert out.read_text().splitlines() == ["size,count", "240,2"]


def test_connect_not_connected_exit_3(capsys):
    code, r = run(capsys, "connect", "ab:5,5", "2", "(1,0),(0,1)", "(2,0),(0,1)")
    assert code == 3 and r["results"]["connected"] is False


def test_connect_and_verify_round_trip(capsys):
    code, r = run(capsys, "connect", "alt:5", "3", "(1 2 3),(1 2 3 4 5),()", "(),(1 2 3 4 5),(1 2 3)")
    assert code == 0
    word = "\n".join(r["results"]["word"])
    code, v = run(capsys, "verify", "alt:5", "(1 2 3),(1 2 3 4 5),()", word,
                  "--expect", "(),(1 2 3 4 5),(1 2 3)")
    assert code == 0 and v["results"]["matches"] and v["results"]["replays"]


def test_verify_rejects_wrong_endpoint(capsys):
    code, v = run(capsys, "verify", "ab:5", "1,1", "R- 1 2", "--expect", "1,1")
    assert code == 3 and v["results"]["matches"] is False


def test_redundant_and_verify(capsys, tmp_path):
    code, r = run(capsys, "redundant", "psl2:5", "[[1,1],[0,1]];[[0,1],[4,0]];[[2,0],[0,3]]")
    assert code == 0 and r["results"]["found"]
    f = tmp_path / "w.json"
    f.write_text(json.dumps(r["results"]["word"]))
    code, v = run(capsys, "verify", "psl2:5", "[[1,1],[0,1]];[[0,1],[4,0]];[[2,0],[0,3]]", "--word-file", str(f))
    assert code == 0 and v["results"]["end"] == r["results"]["end"]


def test_canonical(capsys):
    code, r = run(capsys, "canonical", "alt:5", "(1 2 3),(1 2 3 4 5),(1 2)(3 4)",
                  "--gammas", "(1 2 3),(1 2 3 4 5)")
    assert code == 0 and r["results"]["end"] == ["()", "(1 2 3)", "(1 2 3 4 5)"]


def test_gaschuetz_command(capsys):
    code, r = run(capsys, "gaschuetz", "ab:2,2", "(1,1)", "(1,0);(1,0)")
    assert code == 0 and r["results"] == {"m": [0, 1], "verified": True}
    code, _ = run(capsys, "gaschuetz", "alt:5", "()", "()")
    assert code == 1


def test_greedy_command(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"p": 3, "matrices": [[[0, 2], [1, 0]], [[1, 1], [0, 1]]]}))
    code, r = run(capsys, "greedy", str(f), "2")
    assert code == 0 and r["results"]["w_target"] == 0
    code, r = run(capsys, "greedy", str(f), "2", "--subspace")
    assert code == 0 and r["results"]["w_path"][0] == 9


def test_group_info(capsys):
    code, r = run(capsys, "group-info", "alt:5", "--aut")
    res = r["results"]
    assert (res["order"], res["d"], res["class_count"], res["aut_order"]) == (60, 2, 5, 120)


def test_walk_same_seed_identical_modulo_wall_time(capsys):
    args = ("walk", "alt:5", "3", "--burnin", "10000", "--samples", "20000", "--seed", "42")
    _, a = run(capsys, *args)
    _, b = run(capsys, *args)
    a.pop("wall_time")
    b.pop("wall_time")
    assert json.dumps(a) == json.dumps(b)
    assert a["seed"] == 42 and 0 <= a["results"]["tv"] <= 1


def test_walk_generates_and_reports_seed(capsys, tmp_path):
    dump = tmp_path / "s.txt"
    code, r = run(capsys, "walk", "ab:5", "2", "--samples", "50", "--dump", str(dump))
    assert code == 0 and isinstance(r["seed"], int)
    assert len(dump.read_text().split()) == 50


def test_tsystems_check(capsys, tmp_path):
    code, r = run(capsys, "tsystems", "ab:5,5", "2", "--check")
    assert code == 0
    assert (r["results"]["component_count"], r["results"]["tsystem_count"]) == (2, 1)
    assert r["results"]["check"]["consistent"]


def test_exit_codes(capsys):
    assert main(["components", "psl2:5", "9"]) == 2
    assert main(["components", "foo:3", "1"]) == 1
    with pytest.raises(SystemExit) as e:
        main(["components"])
    assert e.value.code == 1
    assert main(["connect", "ab:5", "2", "1", "1,2"]) == 1


def test_config_defaults_and_flags_win(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"walk": {"burnin": 7, "samples": 30, "seed": 5}}))
    _, r = run(capsys, "--config", str(cfg), "walk", "ab:5", "2")
    assert (r["params"]["burn_in"], r["params"]["samples"], r["seed"]) == (7, 30, 5)
    _, r = run(capsys, "--config", str(cfg), "walk", "ab:5", "2", "--samples", "40")
    assert r["params"]["samples"] == 40


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("PRAKIT_THREADS", "1")
    _, r = run(capsys, "components", "ab:5", "1")
    assert r["params"]["threads"] == 1
