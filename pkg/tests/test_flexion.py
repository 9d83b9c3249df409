import pytest

from mouldlab.errors import BadEmptyValue, InvalidDecomposition, OrderInsufficient
from mouldlab.exactalg import Poly, mpq
from mouldlab.flexion import (arat_apply, dari_bracket, darit_apply, darit_exp_apply,
                              decompositions, flexion_substitution, mu_exp, mu_log)
from mouldlab.library import build_That01, build_U, build_U1
from mouldlab.mouldcore import Mould, MouldA, dar_inv, delta, generator_a, lu
from mouldlab.properties import random_mould

from conftest import same

# frozen oracle values (independent sympy expansion of the flexion sums)
DARIT_DELTA_U2_THAT01_3 = ("-u1**3*u3/12 + u1**2*u2*u3/12 + u1*u2**3/12 - u1*u2**2*u3/6"
                           " + u1*u2*u3**2/12 - u1*u3**3/12 + u2**3*u3/12")
DARI_U4_U6_2 = ("-2*u1**7*u2**2 - 7*u1**6*u2**3 - 5*u1**5*u2**4 + 5*u1**4*u2**5"
                " + 7*u1**3*u2**6 + 2*u1**2*u2**7")


def _apply(vectors, names=("u1", "u2", "u3", "u4", "u5")):
    out = []
    for v in vectors:
        out.append(" + ".join("%d*%s" % (c, names[k]) for k, c in enumerate(v) if c) or "0")
    return out


class TestDecompositions:
    def test_count(self):
        for r in range(1, 6):
            assert len(list(decompositions(r))) == r * (r + 1) // 2 - 1

    def test_middle(self):
        d = (1, 2)
        assert _apply(flexion_substitution("a_ceil_c", d, 3)) == ["1*u1 + 1*u2", "1*u3"]
        assert _apply(flexion_substitution("a_floor_c", d, 3)) == ["1*u1", "1*u2 + 1*u3"]

    def test_empty_a(self):
        d = (0, 2)
        assert _apply(flexion_substitution("a_ceil_c", d, 3)) == ["1*u3"]
        assert _apply(flexion_substitution("a_floor_c", d, 3)) == ["1*u1 + 1*u2 + 1*u3"]

    def test_empty_c(self):
        d = (1, 3)
        assert _apply(flexion_substitution("a_ceil_c", d, 3)) == ["1*u1 + 1*u2 + 1*u3"]
        assert _apply(flexion_substitution("a_floor_c", d, 3)) == ["1*u1"]

    def test_invalid(self):
        with pytest.raises(InvalidDecomposition):
            flexion_substitution("a_ceil_c", (2, 2), 3)


class TestArat:
    def test_depth1_pair(self):
        M = build_U(2, 2)
        Q = build_U(3, 2)
        # b = u1 with c = u2, and b = u2 with a = u1
        expected = "(u2**3 - (u1+u2)**3)*u1**2 + ((u1+u2)**3 - u1**3)*u2**2"
        assert same(arat_apply(M, Q)[2], expected)

    def test_kills_depth1_constants(self, rng):
        M = random_mould(rng, 4)
        Q = Mould({1: Poly.const(5, 1)}, 4)
        assert arat_apply(M, Q).is_zero()


class TestDarit:
    def test_generator(self, rng):
        N = random_mould(rng, 4)
        assert darit_apply(N, generator_a(4)) == MouldA(0, N)

    def test_U1(self, rng):
        N = random_mould(rng, 4)
        assert darit_apply(N, build_U1(4)).is_zero()

    def test_oracle_depth3(self):
        out = darit_apply(delta(build_U(2, 3)), build_That01(3))
        assert same(out[3], DARIT_DELTA_U2_THAT01_3)

    def test_dari_antisymmetric(self, rng):
        A = random_mould(rng, 3)
        assert dari_bracket(A, A).is_zero()

    def test_dari_U4_U6(self):
        assert same(dari_bracket(build_U(4, 3), build_U(6, 3))[2], DARI_U4_U6_2)

    def test_dari_bilinear(self, rng):
        A, B, C = (random_mould(rng, 3) for _ in range(3))
        assert dari_bracket(A.scale(3) + B, C) == dari_bracket(A, C).scale(3) + dari_bracket(B, C)

    def test_dari_jacobi(self):
        for gens in ((2, 4, 6), (4, 6, 8)):
            A, B, C = (build_U(k, 4) for k in gens)
            j = (dari_bracket(A, dari_bracket(B, C)) + dari_bracket(B, dari_bracket(C, A))
                 + dari_bracket(C, dari_bracket(A, B)))
            assert j.is_zero()


class TestExponentials:
    def test_order_zero(self, rng):
        N = random_mould(rng, 3)
        R = random_mould(rng, 3)
        assert darit_exp_apply(N, R, order=0) == R

    def test_generator_expansion(self):
        N = build_U(4, 3) + build_U(6, 3)
        E = darit_exp_apply(N, generator_a(3))
        # N lives in depth 1 and each Darit raises depth by one
        N2 = darit_apply(N, N)
        N3 = darit_apply(N, N2)
        expected = generator_a(3) + MouldA(0, N + N2.scale(mpq(1, 2)) + N3.scale(mpq(1, 6)))
        assert E == expected

    def test_unstable(self):
        N = build_U(4, 4)
        R = build_U(2, 4)
        with pytest.raises(OrderInsufficient):
            darit_exp_apply(N, R, order=1, require_stable=True)

    def test_bad_empty(self):
        with pytest.raises(BadEmptyValue):
            darit_exp_apply(Mould({}, 3, empty=1), build_U(2, 3))

    def test_automorphism_of_lu(self, rng):
        N = random_mould(rng, 3)
        X, Y = random_mould(rng, 3), random_mould(rng, 3)
        lhs = darit_exp_apply(N, lu(X, Y))
        rhs = lu(darit_exp_apply(N, X), darit_exp_apply(N, Y))
        assert lhs == rhs

    def test_mu_exp_zero(self):
        assert mu_exp(Mould({}, 4)) == Mould.unit(4)

    def test_log_exp(self, rng):
        for _ in range(5):
            P = random_mould(rng, 4)
            assert mu_log(mu_exp(P)) == P

    def test_dar_commutes_with_exp(self, rng):
        P = random_mould(rng, 4)
        assert dar_inv(mu_exp(P)) == mu_exp(dar_inv(P))

    def test_empty_values(self):
        with pytest.raises(BadEmptyValue):
            mu_exp(Mould.unit(3))
        with pytest.raises(BadEmptyValue):
            mu_log(Mould({}, 3))
