import random

import pytest

from mouldlab.errors import HypothesisViolation, Infeasible
from mouldlab.exactalg import Poly, Scalar, mpq
from mouldlab.flexion import darit_apply, darit_exp_apply, mu_exp
from mouldlab.library import (CorrectionSpec, bernoulli, build_const_mould_C, build_That01,
                              build_U, build_U1, exp_fay_correction, grouplike_fay_propagate,
                              random_polynomial_mould, strict_family, synthesize_corrected_mould,
                              thm32_correction, thm34_correction)
from mouldlab.checks import verify_equivalences
from mouldlab.mouldcore import Mould, dar, dar_inv, delta, delta_inv, fay_operator

from conftest import same

Z3 = Scalar.zeta(3, mpq(1, 3))

# frozen from an independent sympy evaluation of the odd-depth formula
THM34_R7 = ("(720*u2*u3*u4*u5*u6*u7*z7*(u2+u3+u4+u5+u6+u7)"
            " + 60*u4*u5*z5*(-u2*u3*(u6-u7) + u6*u7*(u2-u3))"
            " + z3*(-u2*u3*(-u4+3*u5-3*u6+u7) + u6*u7*(-u2+3*u3-3*u4+u5)))"
            " / (720*u2*u3*u4*u5*u6*u7)")
THAT01_4 = "-u1/720 + u2/240 - u3/240 + u4/720"
THAT01_6 = "u1/30240 - u2/6048 + u3/3024 - u4/3024 + u5/6048 - u6/30240"


def brute(M, R):
    return fay_operator(dar_inv(darit_apply(delta(M), R)))


def even_R(seed, d=4):
    rng = random.Random(seed)
    return dar(random_polynomial_mould(rng, [1, 2], max_degree=2, max_depth=d, parity1="odd"))


@pytest.fixture(scope="module")
def planted():
    return synthesize_corrected_mould([2, 3], {2: 3, 3: 4}, {3: Z3}, seed=1, max_depth=4)


class TestBuilders:
    def test_bernoulli(self):
        assert bernoulli(0) == 1
        assert bernoulli(1) == mpq(-1, 2)
        assert bernoulli(2) == mpq(1, 6)
        assert bernoulli(4) == mpq(-1, 30)
        assert bernoulli(12) == mpq(-691, 2730)
        assert all(bernoulli(n) == 0 for n in range(3, 20, 2))
        with pytest.raises(ValueError):
            bernoulli(-1)

    def test_U(self):
        U = build_U(4, 3)
        assert same(U[1], "u1**4") and not U[2] and not U[3]
        assert same(build_U1(3)[1], "-u1")
        assert delta_inv(build_U(6, 3)) == build_U(4, 3)

    def test_That01(self):
        T = build_That01(6)
        assert not T[1] and not T[3] and not T[5]
        assert same(T[2], "(u1 - u2)/12")
        assert same(T[4], THAT01_4)
        assert same(T[6], THAT01_6)

    def test_C(self):
        C = build_const_mould_C(7)
        assert C[3] == Z3
        assert C[5] == Scalar.zeta(5, mpq(1, 5))
        assert C[4] == 0 and C[1] == 0
        with pytest.raises(ValueError):
            CorrectionSpec({1: 1})


class TestThm34:
    def test_table(self):
        assert not thm34_correction(2) and not thm34_correction(4)
        assert same(thm34_correction(3), "z3*(u2+u3)")
        assert same(thm34_correction(5),
                    "z5*(u2+u3+u4+u5) + z3*((u2-u3)/(12*u2*u3) - (u4-u5)/(12*u4*u5))")

    def test_depth7(self):
        assert same(thm34_correction(7), THM34_R7)

    def test_even_vanish(self):
        assert all(not thm34_correction(r) for r in (6, 8))


class TestThm32:
    def test_strict_That01(self):
        _, M, _ = strict_family(3)[0]
        M = Mould(M.comps, 4)
        R = build_That01(4)
        C = thm32_correction(M, {}, R, Mould({}, 4))
        assert C.is_zero() and brute(M, R).is_zero()

    def test_zero_inputs(self, planted):
        # That01' has no depth-1 part, so the constant terms drop out
        out = thm32_correction(planted, {}, build_That01(4), Mould({}, 4))
        assert out == brute(planted, build_That01(4))

    @pytest.mark.parametrize("seed", [5, 6, 7])
    def test_oracle(self, planted, seed):
        R = even_R(seed)
        CR = fay_operator(dar_inv(R))
        assert thm32_correction(planted, {3: Z3}, R, CR) == brute(planted, R)

    def test_constants_matter(self, planted):
        R = even_R(5)
        CR = fay_operator(dar_inv(R))
        assert thm32_correction(planted, {}, R, CR)[4] != brute(planted, R)[4]

    def test_literal_convention_disagrees(self, planted):
        R = even_R(5)
        CR = fay_operator(dar_inv(R))
        lit = thm32_correction(planted, {3: Z3}, R, CR, convention="literal")
        assert lit[4] != brute(planted, R)[4]

    def test_verify(self, planted):
        R = even_R(5)
        CR = fay_operator(dar_inv(R))
        thm32_correction(planted, {3: Z3}, R, CR, verify=True)
        with pytest.raises(HypothesisViolation):
            thm32_correction(planted, {}, R, CR, verify=True)
        odd = Mould({1: Poly.from_terms({(1,): 1}, 1)}, 4)
        with pytest.raises(HypothesisViolation):
            thm32_correction(planted, {3: Z3}, odd, Mould({}, 4), verify=True)


class TestPropagation:
    def test_order_zero(self, planted):
        R = even_R(3)
        CR = fay_operator(dar_inv(R))
        steps, total = grouplike_fay_propagate(delta(planted), {3: Z3}, R, CR, order=0)
        assert steps == [CR] and total == CR

    def test_strict(self):
        _, M, _ = strict_family(3)[0]
        N = delta(Mould(M.comps, 4))
        steps, total = grouplike_fay_propagate(N, {}, build_That01(4), Mould({}, 4))
        assert all(s.is_zero() for s in steps)

    def test_matches_brute(self, planted):
        N = delta(planted)
        R = even_R(4)
        CR = fay_operator(dar_inv(R))
        _, total = grouplike_fay_propagate(N, {3: Z3}, R, CR, order=4)
        E = darit_exp_apply(N, R, order=4)
        assert total == fay_operator(dar_inv(E))


class TestExpFay:
    def test_zero(self):
        assert exp_fay_correction(Mould({}, 3), Mould({}, 3)).is_zero()

    def test_random(self):
        rng = random.Random(11)
        for _ in range(3):
            P = dar(random_polynomial_mould(rng, [1, 2, 3], max_degree=2, max_depth=3))
            CP = fay_operator(dar_inv(P))
            assert exp_fay_correction(P, CP) == fay_operator(mu_exp(dar_inv(P)))

    def test_depth2_display(self):
        P = dar(Mould({1: Poly.from_terms({(2,): 1, (0,): 3}, 1)}, 2))
        G = dar_inv(P)[1]
        out = exp_fay_correction(P, fay_operator(dar_inv(P)))[2] - fay_operator(dar_inv(P))[2]
        g = G.to_str("u").replace("u1", "(%s)").replace("^", "**")
        expected = "(%s)/2" % " + ".join("(%s)*(%s)" % (g.replace("(%s)", "(%s)" % a), g.replace("(%s)", "(%s)" % b))
                                         for a, b in (("u1", "u2"), ("-u1", "u1+u2"), ("u2", "-u1-u2")))
        assert same(out, expected)


class TestSynthesis:
    def test_strict(self):
        M = synthesize_corrected_mould([2, 3], {2: 7, 3: 8}, {}, seed=0)
        assert verify_equivalences(M, CorrectionSpec(), "strict").ok

    def test_planted(self, planted):
        assert verify_equivalences(planted, CorrectionSpec({3: Z3})).ok

    def test_deterministic(self):
        a = synthesize_corrected_mould([2, 3], {2: 3, 3: 4}, {3: Z3}, seed=9)
        b = synthesize_corrected_mould([2, 3], {2: 3, 3: 4}, {3: Z3}, seed=9)
        assert a == b

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            synthesize_corrected_mould([2], {2: 2}, {}, seed=0)
        with pytest.raises(Infeasible):
            synthesize_corrected_mould([2], {2: 3}, {3: Z3}, seed=0)


def test_strict_family():
    fam = strict_family(4, 14)
    assert len(fam) == 6
    assert sorted(w for _, _, w in fam) == [9, 11, 12, 13, 14, 14]
    assert isinstance(fam[0][1], Mould)
