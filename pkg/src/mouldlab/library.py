"""Named moulds, closed-form correction formulas and the model-mould
synthesizer."""

import random
from functools import lru_cache
from math import comb, factorial

from .errors import HypothesisViolation, Infeasible
from .exactalg import Poly, RatFun, Scalar, mpq, ratfun_sum, sum_form, variable_form
from .mouldcore import Mould, dar_inv, delta_inv, fay_operator


@lru_cache(maxsize=None)
def bernoulli(n):
    """B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return mpq(1)
    if n > 1 and n % 2:
        return mpq(0)
    s = sum(comb(n + 1, k) * bernoulli(k) for k in range(n))
    return -s / (n + 1)


def build_U(k, max_depth=5):
    """U_k(u1) = u1^k in depth 1, zero elsewhere."""
    return Mould({1: Poly.from_terms({(k,): 1}, 1)}, max_depth)


def build_U1(max_depth=5):
    return Mould({1: Poly.from_terms({(1,): -1}, 1)}, max_depth)


def that01_component(r):
    c = bernoulli(r) / factorial(r)
    if not c:
        return RatFun.zero(r)
    terms = {}
    for i in range(1, r + 1):
        e = [0] * r
        e[i - 1] = 1
        terms[tuple(e)] = c * (-1) ** (i - 1) * comb(r - 1, i - 1)
    return RatFun.from_poly(Poly.from_terms(terms, r))


def build_That01(max_depth=5):
    comps = {r: that01_component(r) for r in range(2, max_depth + 1)}
    return Mould(comps, max_depth)


class CorrectionSpec:
    """Constant mould (c_r); c_0 = c_1 = 0 and absent entries are zero."""

    def __init__(self, constants=None):
        out = {}
        for r, c in (constants or {}).items():
            c = Scalar.coerce(c)
            if r < 2 and c:
                raise ValueError("c_0 and c_1 must vanish")
            if c:
                out[r] = c
        self.constants = out

    def __getitem__(self, r):
        return self.constants.get(r, Scalar(0))

    def is_zero(self):
        return not self.constants

    def __eq__(self, other):
        if isinstance(other, dict):
            other = CorrectionSpec(other)
        return isinstance(other, CorrectionSpec) and self.constants == other.constants

    def __repr__(self):
        return "CorrectionSpec(%s)" % ", ".join("c%d=%s" % (r, c) for r, c in sorted(self.constants.items()))

    def to_json(self):
        return {str(r): c.to_json() for r, c in sorted(self.constants.items())}


def build_const_mould_C(max_depth=15):
    return CorrectionSpec({r: Scalar.zeta(r, mpq(1, r)) for r in range(3, max_depth + 1, 2)})


# ---------------------------------------------------------------- correction formulas

def thm32_component(M, constants, Q, CQ, r, convention="oracle"):
    """Depth-r correction of P' for P = Darit(delta M).R, with Q = R' and CQ = F(Q).

    convention "oracle": the flexion sums run over all decompositions with a
    nonempty (an empty c leaves CQ(a) in the second sum).  "literal" drops the
    decompositions with |a| = 1 and those with c empty from the second sum.
    """
    from .flexion import flexion_substitution
    terms = []
    lo = 1 if convention == "oracle" else 2
    for i in range(lo, r):
        for j in range(i + 1, r + 1):
            mb = M.comps.get(j - i)
            q = CQ.comps.get(r - (j - i))
            if mb is None or q is None:
                continue
            mb = mb.shift(i, r)
            terms.append(q.substitute(flexion_substitution("a_ceil_c", (i, j), r), r) * mb)
            if convention == "literal" and j == r:
                continue
            terms.append(-(q.substitute(flexion_substitution("a_floor_c", (i, j), r), r) * mb))
    for i in range(2, r):
        c = constants[i]
        q = Q.comps.get(r - i)
        if not c or q is None:
            continue
        terms.append(q.shift(i, r).scale(-i * c))
        terms.append(q.shift(1, r).scale(i * c))
    return ratfun_sum(terms, r)


def thm32_correction(M, constants, R, C_Rprime, convention="oracle", verify=False):
    """Fay correction C_{P'} of P = Darit(delta M).R from the closed formula."""
    if not isinstance(constants, CorrectionSpec):
        constants = CorrectionSpec(constants)
    if verify:
        from .checks import check_alternal, check_circ_neutral, check_push_invariant
        from .mouldcore import swap
        circ_rep = check_circ_neutral(swap(M), "corrected")
        ok = check_alternal(M).holds and check_push_invariant(M).holds and circ_rep.holds
        ok = ok and all(circ_rep.constants.get(r, Scalar(0)) == constants[r] for r in range(2, M.max_depth + 1))
        if not ok:
            raise HypothesisViolation("M does not satisfy the hypotheses for the given constants")
        if 1 in R.comps and R.comps[1] != R.comps[1].substitute([[-1]], 1):
            raise HypothesisViolation("R must be even in depth 1")
    d = min(M.max_depth, R.max_depth, C_Rprime.max_depth)
    Q = dar_inv(R)
    comps = {r: thm32_component(M, constants, Q, C_Rprime, r, convention) for r in range(2, d + 1)}
    return Mould(comps, d)


def thm34_correction(r, That01prime=None):
    if r < 2:
        raise ValueError("r must be >= 2")
    if r % 2 == 0:
        return RatFun.zero(r)
    if That01prime is None:
        That01prime = dar_inv(build_That01(max(r - 1, 2)))
    tail = Poly.linear([0] + [1] * (r - 1)).scale(Scalar.zeta(r))
    terms = [RatFun.from_poly(tail)]
    for i in range(3, r - 1, 2):
        t = That01prime.comps.get(r - i)
        if t is None:
            continue
        z = Scalar.zeta(i)
        terms.append(t.shift(1, r).scale(z))
        terms.append(t.shift(i, r).scale(-z))
    return ratfun_sum(terms, r)


def grouplike_fay_propagate(N, constants, R, C_Rprime, order=None):
    """Iterate the closed formula along exp(Darit(N)).R.

    Returns (per-step corrections, weighted sum of corrections / n!).
    """
    from .flexion import darit_apply
    if order is None:
        order = min(N.max_depth, R.max_depth)
    M = delta_inv(N)
    steps = [C_Rprime]
    Rn, Cn = R, C_Rprime
    for n in range(1, order + 1):
        Cn = thm32_correction(M, constants, Rn, Cn)
        Rn = darit_apply(N, Rn)
        steps.append(Cn)
    total = steps[0]
    for n, c in enumerate(steps[1:], 1):
        total = total + c.scale(mpq(1, factorial(n)))
    return steps, total


def exp_fay_correction(P, C_Pprime):
    """Fay correction of mu_exp(P'), from C_{P'} and the products P''."""
    if P.empty:
        raise ValueError("P must have empty value 0")
    return C_Pprime + fay_operator(partial_products(dar_inv(P)))


def partial_products(Pp):
    """P''(w) = sum_{n>=2} 1/n! sum over splittings of w into n nonempty words."""
    from .flexion import mu_power_series
    coeffs = [mpq(0), mpq(0)] + [mpq(1, factorial(n)) for n in range(2, Pp.max_depth + 1)]
    return mu_power_series(Pp, coeffs)


# ---------------------------------------------------------------- model-mould synthesis

def _monomials(r, d):
    if r == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in _monomials(r - 1, d - e):
            yield (e,) + rest


def _poly_rows(polys, keyspace=None):
    """Coefficient rows: one row per monomial, one column per polynomial."""
    rows = {}
    for col, p in enumerate(polys):
        for z, q in p.comps.items():
            for k, c in q.items():
                rows.setdefault((z, k), {})[col] = c
    return list(rows.values())


def _swap_cyclic_value(exps, point):
    """sum_k swap(m / delta)(rot^k point) for the monomial m with exponents exps."""
    r = len(point)
    total = mpq(0)
    for k in range(r):
        w = point[k:] + point[:k]
        x = [w[r - 1]] + [w[r - 1 - m] - w[r - m] for m in range(1, r)]
        den = w[0]
        val = mpq(1)
        for xi, e in zip(x, exps):
            den *= xi
            if e:
                val *= xi ** e
        total += val / den
    return total


def _good_point(rng, r):
    while True:
        p = [mpq(rng.randint(-60, 60)) for _ in range(r)]
        ok = True
        for k in range(r):
            w = p[k:] + p[:k]
            x = [w[r - 1]] + [w[r - 1 - m] - w[r - m] for m in range(1, r)]
            if w[0] == 0 or any(xi == 0 for xi in x):
                ok = False
                break
        if ok:
            return p


def solve_affine(rows, ncols, rhs):
    """Solve rows . x = rhs exactly; returns (particular, nullspace basis) or None."""
    from sympy.polys.domains import QQ
    from sympy.polys.matrices import DomainMatrix

    def q(x):
        x = mpq(x)
        return QQ(int(x.numerator), int(x.denominator))

    m = len(rows)
    dense = [[q(row.get(c, 0)) for c in range(ncols)] + [q(b)] for row, b in zip(rows, rhs)]
    if not dense:
        dense = [[QQ(0)] * (ncols + 1)]
        m = 1
    aug = DomainMatrix(dense, (m, ncols + 1), QQ)
    red, pivots = aug.rref()
    if ncols in pivots:
        return None
    red = red.to_list()
    particular = [mpq(0)] * ncols
    for row_i, col in enumerate(pivots):
        v = red[row_i][ncols]
        particular[col] = mpq(int(v.numerator), int(v.denominator))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [mpq(0)] * ncols
        vec[fcol] = mpq(1)
        for row_i, col in enumerate(pivots):
            v = red[row_i][fcol]
            vec[col] = -mpq(int(v.numerator), int(v.denominator))
        basis.append(vec)
    return particular, basis


def _depth_component(r, d, targets, rng, n_points):
    """Numerator F of degree d with F/delta alternal, push-invariant and with
    cyclic sum of its swap equal to -r*c for each zeta part c of targets."""
    from .mouldcore import push_u_matrix, shuffle_sum
    monos = list(_monomials(r, d))
    basis = [Poly.from_terms({e: 1}, r) for e in monos]
    n = len(basis)
    rows = []
    for i in range(1, r // 2 + 1):
        rows += _poly_rows([shuffle_sum(RatFun.from_poly(b), i).num for b in basis])
    P = push_u_matrix(r)
    rows += _poly_rows([b.substitute(P, r) - b for b in basis])
    base_rhs = [mpq(0)] * len(rows)
    circ_rows = []
    if r >= 2:
        for _ in range(n_points):
            pt = _good_point(rng, r)
            circ_rows.append({c: v for c, v in enumerate(_swap_cyclic_value(e, pt) for e in monos) if v})
    out = {}
    for z, c in targets.items():
        sol = solve_affine(rows + circ_rows, n, base_rhs + [-r * c] * len(circ_rows))
        if sol is None:
            return None
        out[z] = sol
    return monos, out


def synthesize_corrected_mould(depth_profile, weight_profile, planted_constants=None, seed=0,
                               max_depth=None, free_scale=True):
    """Model mould M (u side) with M alternal, push-invariant and swap(M) + C
    circ-neutral, C the planted constants.

    depth_profile lists the depths carrying a component; weight_profile maps
    each depth r to the total degree of delta(M) there (r + 1 for M of
    degree 0, which is what a nonzero c_r needs).  Raises Infeasible when the
    affine system has no solution or only the zero solution.
    """
    from .checks import check_alternal, check_circ_neutral, check_push_invariant
    from .mouldcore import swap
    if not isinstance(planted_constants, CorrectionSpec):
        planted_constants = CorrectionSpec(planted_constants)
    if isinstance(weight_profile, int):
        weight_profile = {r: weight_profile for r in depth_profile}
    if max_depth is None:
        max_depth = max(list(depth_profile) + list(planted_constants.constants) + [1])
    rng = random.Random(seed)
    for r in planted_constants.constants:
        if r not in depth_profile:
            raise Infeasible("planted constant at depth %d outside the depth profile" % r)
    comps = {}
    for r in sorted(depth_profile):
        d = weight_profile[r]
        c = planted_constants[r]
        targets = dict(c.terms)
        targets.setdefault((), mpq(0))
        n_points = 0
        while True:
            n_points = max(2 * n_points, 8) if r >= 2 else 0
            got = _depth_component(r, d, targets, rng, n_points)
            if got is None:
                raise Infeasible("no solution at depth %d, degree %d" % (r, d))
            monos, sols = got
            F = Poly.zero(r)
            for z, (part, null) in sols.items():
                vec = list(part)
                if free_scale:
                    for b in null:
                        k = rng.randint(-3, 3) or 1
                        vec = [x + k * y for x, y in zip(vec, b)]
                zs = Scalar({z: 1})
                F = F + Poly.from_terms({e: x for e, x in zip(monos, vec) if x}, r).scale(zs)
            comp = RatFun(F).div_forms([variable_form(i, r) for i in range(r)] + [sum_form(0, r - 1, r)])
            if r < 2:
                break
            trial = Mould({r: comp}, r)
            rep = check_circ_neutral(swap(trial), "corrected")
            if rep.holds and rep.constants.get(r, Scalar(0)) == c:
                break
            if n_points > 64 * len(monos):
                raise Infeasible("sampled circ constraints do not converge at depth %d" % r)
        if comp:
            comps[r] = comp
    M = Mould(comps, max_depth)
    if M.is_zero():
        raise Infeasible("only the zero mould satisfies the constraints")
    if not (check_alternal(M).holds and check_push_invariant(M).holds):
        raise Infeasible("solution failed exact verification")
    return M


# ---------------------------------------------------------------- instance generators

def strict_family(max_depth=4, max_weight=14, generators=(2, 4, 6, 8)):
    """Distinct nonzero M = delta^-1 of iterated dari brackets of the U_k.

    Brackets are left-nested, [U_k, X], starting from [U_i, U_j] with i < j.
    The weight of an instance is the total degree of delta(M).  Returns a
    list of (label, M, weight).
    """
    from .flexion import dari_bracket
    gens = {k: build_U(k, max_depth) for k in generators}
    out = []
    seen = []
    level = []
    for a in generators:
        for b in generators:
            if a < b:
                level.append(("[U%d,U%d]" % (a, b), dari_bracket(gens[a], gens[b])))
    for depth in range(2, max_depth + 1):
        nxt = []
        for label, F in level:
            if F.is_zero():
                continue
            w = max(f.degree() for f in F.comps.values())
            if w > max_weight:
                continue
            if not any(F == G for G in seen):
                seen.append(F)
                out.append((label, delta_inv(F), w))
            if depth < max_depth:
                for k in generators:
                    nxt.append(("[U%d,%s]" % (k, label), dari_bracket(gens[k], F)))
        level = nxt
    return out


def random_polynomial_mould(rng, depths, max_degree=3, max_depth=None, parity1=None, nterms=4):
    """Polynomial u-mould with small random rational coefficients.

    parity1 = "even" or "odd" forces that parity on the depth-1 part.
    """
    want = {"even": 0, "odd": 1}.get(parity1)
    comps = {}
    for r in depths:
        terms = {}
        for _ in range(nterms):
            e = [0] * r
            for _ in range(rng.randint(0, max_degree)):
                e[rng.randrange(r)] += 1
            if r == 1 and want is not None and e[0] % 2 != want:
                e[0] += 1
            terms[tuple(e)] = mpq(rng.randint(-9, 9), rng.randint(1, 6))
        p = Poly.from_terms({e: c for e, c in terms.items() if c}, r)
        if p:
            comps[r] = p
    return Mould(comps, max_depth or max(depths))
