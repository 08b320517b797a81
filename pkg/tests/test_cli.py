import io
import json
from math import sqrt

import pytest

from streamzeros import parse_poly
from streamzeros.cli import format_word, parse_matrix, parse_word, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_inverse_json_matches_closed_form():
    code, out, _ = call("inverse", "z^2-3z+1", "--window", "-5..5")
    assert code == 0
    data = json.loads(out)
    wp, wm = (3 + sqrt(5)) / 2, (3 - sqrt(5)) / 2
    want = [-wm ** (-n - 1) / sqrt(5) if n < 0 else -wp ** (-n - 1) / sqrt(5) for n in range(-5, 6)]
    assert all(abs(a - b) < 1e-12 for a, b in zip(data["values"], want))
    assert data["exact"][4] == "-sqrt(5)/5"


def test_saut_json():
    code, out, _ = call("saut", "z^2-3z+1")
    data = json.loads(out)
    assert code == 0
    assert data["class"] == "infinite_cyclic"
    assert data["generator"] == [[-1, 1], [-1, 2]]
    assert (data["pell"]["D"], data["pell"]["w"], data["pell"]["v"]) == (5, 1, 1)


def test_negative_leading_poly_is_not_an_option():
    code, out, _ = call("saut", "-3z^2+1")
    assert code == 0 and json.loads(out)["pell"]["w"] == 4


def test_entropy_table():
    code, out, _ = call("entropy", "-3z^2+1", "--grid", "16", "--word-len", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["n", "count", "estimate", "exact", "gap"]
    assert lines[-1].split()[1] == "81"


def test_entropy_thread_independent():
    a = call("entropy", "z^2-3z+1", "--grid", "64", "--word-len", "6", "--threads", "1")[1]
    b = call("entropy", "z^2-3z+1", "--grid", "64", "--word-len", "6", "--threads", "3")[1]
    assert a == b


def test_repeat_runs_identical():
    assert call("inverse", "z^3-z-1")[1] == call("inverse", "z^3-z-1")[1]


def test_encode_decode_roundtrip():
    code, out, _ = call("encode", "z^2-3z+1", "0,1/2", "--periodic-orbit")
    word = json.loads(out)["word"]
    assert word == "(-1,1,-1)"
    code, out, _ = call("decode", "z^2-3z+1", word)
    assert json.loads(out)["values"] == ["0", "1/2", "1/2"]


def test_orbit_csv():
    code, out, _ = call("orbit", "-3z^2+1", "1/4,0", "--steps", "4", "--output", "csv")
    assert out.splitlines() == ["index,value", "0,1/4", "1,0", "2,3/4", "3,0", "4,1/4", "5,0"]


def test_admissible():
    assert json.loads(call("admissible", "z^2-3z+1", "(1,1,1)")[1])["verdict"] == "no"
    assert json.loads(call("admissible", "z^2-3z+1", "(-1,-1,1)")[1])["verdict"] == "yes"


def test_algebra_commands():
    assert json.loads(call("resultant", "z-2", "z-3")[1])["delta"] == 1
    data = json.loads(call("bezout", "z^2-3z+1", "z-1")[1])
    p, q = parse_poly("z^2-3z+1"), parse_poly("z-1")
    assert parse_poly(data["A"]) * p + parse_poly(data["B"]) * q == parse_poly(str(data["delta"]))
    data = json.loads(call("dim", "z^2-3z+1", "--grid", "5")[1])
    assert data["dim"] == 2 and data["check_dim"] and not data["check_dim_plus_1"]
    data = json.loads(call("common-zeros", "z-1", "z+1")[1])
    assert data["zeros"] == [["0"], ["1/2"]]
    data = json.loads(call("decompose", "z-2", "z-3", "1/5,2/5")[1])
    assert data["verified"]


def test_pell_and_cf():
    assert json.loads(call("pell", "12")[1]) == {"D": 12, "w": 4, "v": 1, "sign": 4}
    data = json.loads(call("cf", "(3+sqrt(5))/2")[1])
    assert data["text"] == "[2;(1)]"
    assert parse_matrix(json.dumps(data["matrices"]["period"])).rows == ((1, 1), (1, 0))


def test_out_file(tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = call("pell", "5", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["v"] == 1


def test_exit_codes():
    assert call("inverse", "z-1")[0] == 1
    assert call("inverse", "z^^2")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("inverse", "z-2", "--window", "3..1")[0] == 2
    assert call("saut", "z^2+z+1")[0] == 1


def test_word_grammar_roundtrip():
    for text in ("(-1,-1,1)", "0,1,-2@5", "(1)@-3"):
        assert format_word(parse_word(text)) == text


def test_float_digits():
    out = call("inverse", "z-3", "--window", "0..0")[1]
    assert "-0.33333333333333331" in out
