import json

import pytest
from hypothesis import given, settings, strategies as st

from mouldlab.cli import (BinOp, Call, Let, Name, Neg, Num, ParseError, Str, Zeta, main,
                          parse_expr)
from mouldlab.exactalg import mpq, ratfun_equal
from mouldlab.library import build_That01
from mouldlab.mouldcore import Mould, dar_inv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestParse:
    def test_valid(self):
        assert parse_expr("fay(darinv(That01))") == Call("fay", (Call("darinv", (Name("That01"),)),))
        assert parse_expr("dari(U[2],U[4])") == Call("dari", (Name("U", 2), Name("U", 4)))

    def test_precedence(self):
        e = parse_expr("U[2] + 1/2*U[4]")
        assert isinstance(e, BinOp) and e.op == "+"
        assert e.right == BinOp("*", Num(mpq(1, 2)), Name("U", 4))

    def test_let(self):
        e = parse_expr("let x = U[2] in mu(x, x)")
        assert isinstance(e, Let) and e.name == "x"

    def test_unclosed(self):
        with pytest.raises(ParseError) as info:
            parse_expr("mu(U[2]")
        assert info.value.pos == len("mu(U[2]")

    def test_bad_token(self):
        with pytest.raises(ParseError):
            parse_expr("mu(U[2]) $")


idents = st.sampled_from(["x", "y", "That01", "U1", "C04", "a"])
funcs = st.sampled_from(["mu", "lu", "dar", "swap", "dari", "fay", "pushu"])
leaves = st.one_of(
    st.builds(Num, st.fractions(min_value=0, max_value=50, max_denominator=9).map(
        lambda f: mpq(f.numerator, f.denominator))),
    st.builds(Zeta, st.integers(2, 9)),
    st.builds(Name, idents),
    st.builds(Name, st.just("U"), st.integers(1, 12)),
    st.builds(Str, st.sampled_from(["ab - ba", "aab"])),
)
exprs = st.recursive(leaves, lambda sub: st.one_of(
    st.builds(BinOp, st.sampled_from(["+", "-", "*"]), sub, sub),
    st.builds(Neg, sub),
    st.builds(Call, funcs, st.lists(sub, min_size=1, max_size=3).map(tuple)),
    st.builds(Let, st.sampled_from(["x", "y"]), sub, sub),
), max_leaves=12)


@settings(max_examples=200, deadline=None)
@given(exprs)
def test_round_trip(e):
    assert parse_expr(str(e)) == e


class TestEval:
    def test_That01(self, capsys):
        code, out, _ = run(capsys, "eval", "That01", "--max-depth", "2")
        assert code == 0
        assert "(1/12)*u1 - (1/12)*u2" in out

    def test_thm34(self, capsys):
        code, out, _ = run(capsys, "eval", "thm34corr(5)")
        assert code == 0 and "z5" in out and "z3" in out

    def test_fay_zero(self, capsys):
        code, out, _ = run(capsys, "eval", "fay(darinv(That01))", "--max-depth", "6", "--format", "json")
        assert code == 0
        assert Mould.from_json(json.loads(out)).is_zero()

    def test_json_reload(self, capsys):
        code, out, _ = run(capsys, "eval", "darinv(That01)", "--max-depth", "4", "--format", "json")
        M = Mould.from_json(json.loads(out))
        ref = dar_inv(build_That01(4))
        assert all(ratfun_equal(M[r], ref[r]) for r in range(1, 5))

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "m.txt"
        code, out, _ = run(capsys, "eval", "U[4]", "--out", str(path))
        assert code == 0 and not out
        assert "u1^4" in path.read_text()

    def test_ma(self, capsys):
        code, out, _ = run(capsys, "eval", 'ma("aab - 2aba + baa")', "--max-depth", "2")
        assert code == 0 and "u1^2" in out

    @pytest.mark.parametrize("argv", [
        ["eval", "mu(U[2]"],
        ["eval", "mu(U[2], 3)"],
        ["eval", "nosuch(U[2])"],
        ["eval", "swap(swap(U[2])) + swap(U[2])"],
        ["eval", "U[2]", "--max-depth", "0"],
        ["eval", "U[2]", "--format", "xml"],
        ["report", "--suite", "other"],
        ["frobnicate"],
        [],
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and err


class TestCheck:
    def test_fay(self, capsys):
        assert run(capsys, "check", "fay", "That01", "--max-depth", "8")[0] == 0

    def test_krv(self, capsys):
        code, out, _ = run(capsys, "check", "krv", "delta(dari(U[2],U[4]))", "--format", "json")
        assert code == 0
        assert "constants" not in json.loads(out)

    def test_krv_nontrivial(self, capsys):
        assert run(capsys, "check", "krv", "dari(U[4],U[6])")[0] == 0
        assert run(capsys, "check", "krv", "delta(dari(U[4],U[6]))")[0] == 1

    def test_alternal_fails(self, capsys):
        code, out, _ = run(capsys, "check", "alternal", "mu(U[2],U[2])", "--format", "json")
        assert code == 1
        w = json.loads(out)["witnesses"][0]
        assert w["depth"] == 2 and "u1^2*u2^2" in w["residue"]

    def test_text_witness(self, capsys):
        code, out, _ = run(capsys, "check", "alternal", "mu(U[2],U[2])")
        assert code == 1 and "witness" in out

    def test_equiv_inapplicable(self, capsys):
        code, _, err = run(capsys, "check", "equiv", "mu(U[2],U[2])")
        assert code == 1 and "alternal" in err

    def test_equiv(self, capsys):
        assert run(capsys, "check", "equiv", "deltainv(dari(U[4],U[6]))")[0] == 0


class TestReport:
    def test_deterministic(self, capsys, tmp_path, monkeypatch):
        paths = []
        for threads in ("1", "0"):
            monkeypatch.setenv("MOULDLAB_THREADS", threads)
            p = tmp_path / ("r%s.json" % threads)
            code, _, _ = run(capsys, "report", "--suite", "acceptance", "--seed", "7",
                             "--max-depth", "3", "--format", "json", "--out", str(p))
            assert code == 0
            paths.append(p)
        assert paths[0].read_bytes() == paths[1].read_bytes()
        data = json.loads(paths[0].read_text())
        assert "timings" not in data and data["partial"]

    def test_partial(self, capsys):
        code, out, _ = run(capsys, "report", "--max-depth", "2")
        assert code == 0 and "partial coverage" in out

    def test_timings(self, capsys):
        code, out, _ = run(capsys, "report", "--max-depth", "2", "--format", "json", "--timings")
        assert code == 0 and "total" in json.loads(out)["timings"]

