"""Flexion calculus: word decompositions, arat, Darit, the Dari bracket and
exponentials.

A decomposition of w = (x_1..x_r) is a pair (i, j) with a = x_1..x_i,
b = x_{i+1}..x_j and c = x_{j+1}..x_r.
"""

from math import factorial

from .errors import BadEmptyValue, InvalidDecomposition, OrderInsufficient
from .exactalg import mpq, ratfun_sum
from .mouldcore import (Mould, MouldA, _need, _same_side, as_moulda, dar,
                        dar_inv, delta_inv, mu)


def decompositions(r):
    """All (i, j) with b nonempty and ac nonempty."""
    for i in range(r):
        for j in range(i + 1, r + 1):
            if i == 0 and j == r:
                continue
            yield i, j


def _e(k, r):
    row = [0] * r
    row[k] = 1
    return row


def _span(lo, hi, r, sign=1):
    """sign * (x_lo + ... + x_hi), 0-based inclusive."""
    return [sign if lo <= k <= hi else 0 for k in range(r)]


def _diff(k, m, r):
    row = [0] * r
    row[k] += 1
    row[m] -= 1
    return row


def flexion_substitution(kind, d, r):
    """Argument list (integer vectors over r variables) for one flexion factor.

    kinds: ``a_ceil_c`` is a⌉c (last letter of a absorbs b), ``a_floor_c`` is
    a⌈c (first letter of c absorbs b), ``left_floor_b`` is ⌊b and
    ``right_floor_b`` is b⌋ on the v side.
    """
    i, j = d
    if not (0 <= i < j <= r):
        raise InvalidDecomposition("need 0 <= i < j <= r, got %r with r=%d" % (d, r))
    if kind == "a_ceil_c":
        if i == 0:
            return [_e(k, r) for k in range(j, r)]
        return [_e(k, r) for k in range(i - 1)] + [_span(i - 1, j - 1, r)] + [_e(k, r) for k in range(j, r)]
    if kind == "a_floor_c":
        if j == r:
            return [_e(k, r) for k in range(i)]
        return [_e(k, r) for k in range(i)] + [_span(i, j, r)] + [_e(k, r) for k in range(j + 1, r)]
    if kind == "left_floor_b":
        if i == 0:
            return [_e(k, r) for k in range(i, j)]
        return [_diff(k, i - 1, r) for k in range(i, j)]
    if kind == "right_floor_b":
        if j == r:
            return [_e(k, r) for k in range(i, j)]
        return [_diff(k, j, r) for k in range(i, j)]
    raise ValueError("unknown flexion kind %r" % kind)


def arat_component(M, Q, r):
    terms = []
    for i, j in decompositions(r):
        mb = M.comps.get(j - i)
        q = Q.comps.get(r - (j - i))
        if mb is None or q is None:
            continue
        left = q.substitute(flexion_substitution("a_ceil_c", (i, j), r), r)
        right = q.substitute(flexion_substitution("a_floor_c", (i, j), r), r)
        diff = left - right
        if diff:
            terms.append(diff * mb.shift(i, r))
    return ratfun_sum(terms, r)


def arat_apply(M, Q):
    _same_side(M, Q)
    _need(M, "u")
    d = min(M.max_depth, Q.max_depth)
    comps = {r: arat_component(M, Q, r) for r in range(2, d + 1)}
    return Mould(comps, d, "u")


def darit_apply(N, R):
    """Darit(N).R = dar arat(delta^-1 N) dar^-1 R, and Darit(N).a = N."""
    wrapped = isinstance(R, MouldA)
    R = as_moulda(R)
    _same_side(N, R.body)
    body = dar(arat_apply(delta_inv(N), dar_inv(R.body)))
    if R.a_coeff:
        body = body + N.scale(R.a_coeff).truncate(body.max_depth)
    body = body.with_empty(0)
    return MouldA(0, body) if wrapped else body


def dari_bracket(A, B):
    return darit_apply(A, B) - darit_apply(B, A)


def _is_zero(X):
    if isinstance(X, MouldA):
        return not X.a_coeff and X.body.is_zero()
    return X.is_zero()


def darit_exp_apply(N, R, order=None, require_stable=None):
    """sum_{n <= order} Darit(N)^n R / n!.

    With no order, iterates until the next term vanishes at the truncation.
    When stability is required (the default without an explicit order) a
    nonzero term of order + 1 raises OrderInsufficient.
    """
    if N.empty:
        raise BadEmptyValue("N must have no depth-0 part")
    if require_stable is None:
        require_stable = order is None
    if order is None:
        order = min(N.max_depth, R.max_depth)
    total = R
    term = R
    for n in range(1, order + 2):
        term = darit_apply(N, term)
        if _is_zero(term):
            return total
        if n == order + 1:
            if require_stable:
                raise OrderInsufficient("series not stable at order %d" % order)
            return total
        total = total + term.scale(mpq(1, factorial(n)))
    return total


def mu_power_series(X, coeffs):
    """sum_n coeffs[n] X^n with X^0 the unit mould."""
    total = Mould.unit(X.max_depth, X.side).scale(coeffs[0])
    power = Mould.unit(X.max_depth, X.side)
    for c in coeffs[1:]:
        power = mu(power, X)
        if power.is_zero():
            break
        if c:
            total = total + power.scale(c)
    return total


def mu_exp(P):
    if P.empty:
        raise BadEmptyValue("mu_exp needs empty value 0")
    n = P.max_depth
    return mu_power_series(P, [mpq(1, factorial(k)) for k in range(n + 1)])


def mu_log(G):
    if G.empty != 1:
        raise BadEmptyValue("mu_log needs empty value 1")
    X = G.with_empty(0)
    n = G.max_depth
    return mu_power_series(X, [mpq(0)] + [mpq((-1) ** (k + 1), k) for k in range(1, n + 1)])
