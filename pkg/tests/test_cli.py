import io
import json

import pytest

from morphrec.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text)


def test_rec_one_sided_period_doubling():
    code, rep = call_json("rec", "--mode", "one-sided", "-m", "a:ab,b:aa")
    assert code == 0
    assert rep["verdict"]["status"] == "recognizable"


def test_rec_one_sided_anti_fibonacci():
    code, rep = call_json("rec", "--mode", "one-sided", "-m", "a:ba,b:a")
    assert code == 0
    v = rep["verdict"]
    assert v["status"] == "not_recognizable"
    assert v["witnesses"][0]["certified_depth"] == 1024


def test_witness_json_schema():
    code, rep = call_json("witness", "-m", "a:ba,b:aa", "--depth", "512")
    w = rep["witnesses"][0]
    assert {k: w[k] for k in ("u", "u_prime", "v", "k", "k_prime", "certified_depth")} == \
        {"u": "a", "u_prime": "b", "v": "a", "k": 1, "k_prime": 1, "certified_depth": 512}
    assert w["x"] == {"prefix": "", "self_similar": {"head": "a", "power": 1}}


def test_analyze_identity():
    code, rep = call_json("analyze", "-m", "a:a")
    assert code == 0
    assert rep["complexity"]["p"] == [1] * 10
    assert rep["periodic_points"] == ["a"]


def test_global_flags_before_command():
    code, rep = call_json("-m", "a:ab,b:a", "language", "-n", "3")
    assert code == 0 and rep["words"]["3"] == ["aab", "aba", "baa", "bab"]


def test_morphism_file(tmp_path):
    f = tmp_path / "fib.txt"
    f.write_text("a -> ab\nb -> a\n")
    code, rep = call_json("periodic", "-m", f"@{f}")
    assert code == 0 and rep["periodic_points"] == []


def test_special_and_tower_and_eigen():
    _, rep = call_json("special", "-m", "a:ab,b:a", "-n", "4")
    assert all(len(v) == 1 for v in rep["special"].values())
    _, rep = call_json("tower", "-m", "a:ab,b:aa")
    assert rep["scope"] == 1 and len(rep["windows"]) == 4
    _, rep = call_json("eigen", "-m", "a:ab,b:ba", "--j", "1", "--len", "4096")
    assert rep["report"] == {"lambda": {"j": 1, "h": 2}, "sample_len": 4096, "passed": True,
                             "max_defect_gap": 0, "scope": 2}


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["rec"],
    ["rec", "-m", "a:ab,a:b"],
    ["rec", "-m", "@/nonexistent/file"],
    ["rec", "--mode", "sideways", "-m", "a:a"],
    ["eigen", "-m", "a:ab,b:a"],
])
def test_usage_errors(argv, capsys):
    code, _ = call(*argv)
    assert code == 2


def test_strict_unknown_exits_one():
    code, _ = call("rec", "-m", "a:ab,b:ba", "--max-scope", "1", "--strict")
    assert code == 1
    code, _ = call("rec", "-m", "a:ab,b:ba", "--max-scope", "1")
    assert code == 0


def test_deterministic_output():
    assert call("rec", "--mode", "one-sided", "-m", "a:abac,b:ab,c:c", "--json") == \
        call("rec", "--mode", "one-sided", "-m", "a:abac,b:ab,c:c", "--json")


def test_human_output():
    code, text = call("rec", "-m", "a:ab,b:a")
    assert code == 0 and "status" in text and "recognizable" in text
