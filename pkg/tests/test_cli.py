import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from c2cobordism.cli import ParseError, main, parse, render
from c2cobordism.cli import parser as P


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# parser -------------------------------------------------------------------------------

def test_parse_examples():
    assert parse("RPs(3,0) * RPs(2,1)") == P.Mul(P.RPs(3, 0), P.RPs(2, 1))
    assert parse("u*(d(1,0) + x(2))") == P.Mul(P.U(), P.Add(P.D(1, 0), P.X(2)))
    assert parse("x(2) + d(1,0)*a^2") == P.Add(P.X(2), P.Mul(P.D(1, 0), P.Pow(P.A(), 2)))
    assert parse("Gamma(d(1,0))^2") == P.Pow(P.Gamma(P.D(1, 0)), 2)


@pytest.mark.parametrize("text, pos, msg", [
    ("d(1)", 0, "d expects 2 arguments"),
    ("x(2,3)", 0, "x expects 1 argument"),
    ("x(2) +", 6, "unexpected end"),
    ("2", 0, "only the literals"),
    ("d(1,0) - 1", 7, "'-' is not supported"),
    ("foo", 0, "unknown name"),
    ("u ^ a", 4, "exponent"),
    ("(u", 2, "expected ')'"),
    ("u $", 2, "unexpected character"),
    ("", 0, "empty"),
])
def test_parse_errors(text, pos, msg):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.pos == pos
    assert msg in info.value.message


def ast():
    leaves = st.one_of(
        st.sampled_from([P.Const(0), P.Const(1), P.A(), P.U()]),
        st.builds(P.RPs, st.integers(1, 9), st.integers(0, 9)),
        st.builds(P.D, st.integers(1, 9), st.integers(0, 9)),
        st.builds(P.X, st.integers(1, 12)),
    )
    return st.recursive(leaves, lambda kids: st.one_of(
        st.builds(P.Add, kids, kids),
        st.builds(P.Mul, kids, kids),
        st.builds(P.Pow, kids, st.integers(0, 5)),
        st.builds(P.Gamma, kids),
    ), max_leaves=12)


@settings(max_examples=200, deadline=None)
@given(ast())
def test_parse_render_round_trip(node):
    assert parse(render(node)) == node


# commands -----------------------------------------------------------------------------

def test_eval_examples():
    assert run("eval", "RPs(2,0)", "--show", "phi")[:2] == (0, "d1 + d0^2\n")
    assert run("eval", "RPs(1,0)")[:2] == (0, "0\n")
    assert run("eval", "u*d(1,0)", "--show", "normal")[:2] == (0, "x(2)*u + d(1,1)*a\n")


def test_eval_views():
    assert run("eval", "d(1,0)", "--show", "restrict")[1] == "x(2)\n"
    code, out, _ = run("eval", "d(1,0)", "--show", "gamma-series", "2")
    assert code == 0 and out.splitlines()[0] == "Gamma^0: x(2)"
    code, out, _ = run("eval", "d(1,0)^2", "--show", "hfp", "3")
    assert code == 0 and out.startswith("x(2)^2")
    assert run("eval", "Gamma(d(1,0))")[1] == "d(1,1)\n"
    assert run("eval", "a*u", "--show", "phi")[1] == "d0\n"
    # the degree-6 relation (c(1,1) = 0 since Omega_3 = 0) normalizes to zero
    assert run("eval", "(d(1,0) + x(2))*d(1,2) + d(1,1)^2")[1] == "0\n"
    assert run("eval", "(d(1,0) + x(2))*d(1,2) + d(1,1)*(d(1,1) + x(2))")[1] == "x(2)*d(1,1)\n"


def test_eval_json():
    code, out, _ = run("--format", "json", "eval", "u*d(1,0)")
    rec = json.loads(out)
    assert code == 0 and rec["s"] == 1 and rec["t"] == 3
    assert rec["result"] == "x(2)*u + d(1,1)*a"


@pytest.mark.parametrize("argv, code", [
    (("eval", "d(1)"), 1),
    (("eval", "x(3)"), 1),
    (("eval", "u + a*x(2)"), 1),
    (("eval", "Gamma(u)"), 1),
    (("eval", "u", "--show", "hfp", "2"), 1),
    (("eval", "d(1,0)", "--show", "hfp"), 1),
    (("eval", "d(1,0)", "--show", "bogus"), 1),
    (("eval", "d(5,5)"), 3),
    (("eval", "d(4,0)*d(5,0)"), 3),
    (("table", "--ring", "c2", "--max-degree", "11"), 3),
    (("--N", "1", "table", "--ring", "omega"), 1),
    (("table",), 1),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_table_omega():
    code, out, _ = run("--N", "4", "table", "--ring", "omega", "--max-degree", "4")
    assert code == 0
    assert [int(l.split("dim=")[1]) for l in out.splitlines()] == [1, 0, 1, 0, 2]


def test_table_c2():
    code, out, _ = run("--format", "json", "table", "--ring", "c2", "--max-degree", "3")
    recs = [json.loads(l) for l in out.splitlines()]
    assert code == 0
    assert recs[1] == {"ring": "c2", "degree": 1, "presented": 0, "image": 0, "match": True}
    assert recs[2]["presented"] == 2 and recs[2]["match"]


def test_table_phi_and_ext():
    code, out, _ = run("--N", "4", "table", "--ring", "phi")
    assert code == 0 and out.splitlines()[2] == "phi degree=2 dim=3"
    code, out, _ = run("table", "--ring", "ext", "--sigma-weight", "1", "--max-degree", "2")
    assert code == 0
    assert out.splitlines()[2] == "ext s=1 degree=2 dim=2 phi_rank=2 phi_injective=true"


def test_output_is_deterministic():
    a = run("table", "--ring", "c2", "--max-degree", "6")
    b = run("table", "--ring", "c2", "--max-degree", "6")
    assert a == b


def test_verify_suites():
    code, out, _ = run("verify", "--suite", "fgl")
    assert code == 0 and out.startswith("PASS fgl")
    code, out, _ = run("verify", "--suite", "completeness", "--max-degree", "8")
    assert code == 0
    assert "degree 8: presented 49, image 49" in out
    code, out, _ = run("verify", "--suite", "reciprocal")
    assert code == 2 and "FAIL negative-pattern -- c[2,-1] = b2 is nonzero" in out


def test_cache_commands(tmp_path):
    path = str(tmp_path / "t.cache")
    assert run("--N", "6", "cache", "save", path)[0] == 0
    code, out, _ = run("cache", "load", path)
    assert code == 0 and "N=6" in out
    assert run("--N", "6", "--cache", path, "verify", "--suite", "fgl")[0] == 0
    v0 = tmp_path / "v0.cache"
    v0.write_text(open(path).read().replace("v1", "v0", 1))
    code, _, err = run("cache", "load", str(v0))
    assert code == 1 and "version" in err
    assert run("cache", "load", str(tmp_path / "absent"))[0] == 1


def test_corrupted_cache_fails_omega_with_degree(tmp_path):
    path = tmp_path / "t.cache"
    assert run("cache", "save", str(path))[0] == 0
    bad = tmp_path / "bad.cache"
    bad.write_text("".join(l for l in path.read_text().splitlines(keepends=True)
                           if not l.startswith("a 2 3 ")))
    code, out, _ = run("--cache", str(bad), "verify", "--suite", "omega")
    assert code == 2
    assert "FAIL omega -- degree 4:" in out
    code, _, err = run("--cache", str(bad), "table", "--ring", "omega")
    assert code == 2 and "validation" in err


def test_cache_env_default(tmp_path, monkeypatch):
    path = tmp_path / "env.cache"
    monkeypatch.setenv("C2COB_CACHE", str(path))
    assert run("--N", "4", "table", "--ring", "omega")[0] == 0
    assert path.exists()
