import random

import pytest

from mouldlab.errors import AlphabetMismatch, MouldlabError, NotInKernel
from mouldlab.exactalg import mpq
from mouldlab.library import build_That01, build_U1
from mouldlab.mouldcore import MouldA, generator_a, mu
from mouldlab.ncseries import (NCSeries, ab_to_c, build_t01_nc, c_to_ab, ma_map, ma_with_a,
                               nc_arith, parse_ab, partial_a)

from conftest import same

a = NCSeries.letter("a")
b = NCSeries.letter("b")


def c(*idx, coeff=1):
    return NCSeries("c", {tuple(idx): coeff})


def random_c(rng, mw=8):
    terms = {}
    for _ in range(4):
        w = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3)))
        terms[w] = mpq(rng.randint(-5, 5), rng.randint(1, 3))
    return NCSeries("c", terms, mw)


class TestArith:
    def test_bracket_self(self):
        f = a * b + b.scale(3)
        assert nc_arith("bracket", f, f).is_zero()

    def test_mul(self):
        assert nc_arith("mul", a, b).terms == {("a", "b"): 1}

    def test_bracket(self):
        assert nc_arith("bracket", a, b) == a * b - b * a

    def test_truncation(self):
        x = NCSeries.letter("a", 3)
        assert (x * x * x * x).is_zero()

    def test_alphabets(self):
        with pytest.raises(AlphabetMismatch):
            a + c(1)


class TestRewrite:
    # c_1 = b and c_{i+1} = [c_i, a]
    def test_commutator(self):
        assert ab_to_c(a * b - b * a) == c(2, coeff=-1)

    def test_depth1_weight3(self):
        f = parse_ab("aab - 2aba + baa")
        assert ab_to_c(f) == c(3)

    def test_not_in_kernel(self):
        with pytest.raises(NotInKernel):
            ab_to_c(a)
        assert not partial_a(a * b).is_zero()

    def test_round_trip(self, rng):
        for _ in range(10):
            f = random_c(rng)
            assert ab_to_c(c_to_ab(f)) == f


class TestMa:
    def test_word(self):
        M = ma_map(c(2, 1, 3), 3)
        assert same(M[3], "u1*u3**2")

    def test_letter(self):
        assert same(ma_map(c(1), 2)[1], "1")

    def test_multiplicative(self):
        rng = random.Random(3)
        for _ in range(5):
            f, g = random_c(rng, 20), random_c(rng, 20)
            assert ma_map(f * g, 6) == mu(ma_map(f, 6), ma_map(g, 6))

    def test_t01_low_weights(self):
        t = build_t01_nc(4)
        assert t.homogeneous(1) == -a
        assert t.homogeneous(2) == (b * a - a * b).scale(mpq(1, 2))
        assert ma_with_a(t.homogeneous(2) + t.homogeneous(1), 1) == MouldA(-1, build_U1(1).scale(mpq(-1, 2)))

    def test_t01(self):
        lhs = ma_with_a(build_t01_nc(9), 8)
        rhs = generator_a(8).scale(-1) + build_U1(8).scale(mpq(-1, 2)) + build_That01(8)
        assert lhs == rhs


class TestParser:
    @pytest.mark.parametrize("text,expected", [
        ("ab - ba", a * b - b * a),
        ("1/2*[a,[a,b]]", a.bracket(a.bracket(b)).scale(mpq(1, 2))),
        ("2 aab", (a * a * b).scale(2)),
        ("(a + b)*(a - b)", (a + b) * (a - b)),
    ])
    def test_parse(self, text, expected):
        assert parse_ab(text) == expected

    def test_error(self):
        for bad in ("a + ", "a*", "[a,b", "(a"):
            with pytest.raises(MouldlabError):
                parse_ab(bad)
