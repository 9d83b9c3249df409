"""Moulds and their elementary operators.

A mould is a family of rational functions, one per depth, plus a value on the
empty word.  Components above ``max_depth`` are unknown rather than zero, so
every operation truncates at the minimum ``max_depth`` of its inputs.
"""

from itertools import combinations

from .errors import SideMismatch
from .exactalg import (Poly, RatFun, Scalar, mpq, ratfun_sum, sum_form,
                       variable_form)


class Mould:
    __slots__ = ("empty", "comps", "max_depth", "side")

    def __init__(self, comps=None, max_depth=5, side="u", empty=0):
        if side not in ("u", "v"):
            raise ValueError("side must be 'u' or 'v'")
        self.empty = Scalar.coerce(empty)
        self.max_depth = max_depth
        self.side = side
        out = {}
        for r, f in (comps or {}).items():
            if r < 1 or r > max_depth:
                continue
            if isinstance(f, Poly):
                f = RatFun.from_poly(f)
            if f.arity != r:
                raise ValueError("component at depth %d has arity %d" % (r, f.arity))
            if f:
                out[r] = f
        self.comps = out

    @classmethod
    def zero(cls, max_depth=5, side="u"):
        return cls({}, max_depth, side)

    @classmethod
    def unit(cls, max_depth=5, side="u"):
        return cls({}, max_depth, side, empty=1)

    def __getitem__(self, r):
        if r > self.max_depth:
            raise IndexError("depth %d beyond truncation %d" % (r, self.max_depth))
        f = self.comps.get(r)
        return f if f is not None else RatFun.zero(r)

    def depths(self):
        return sorted(self.comps)

    def min_depth(self):
        return min(self.comps) if self.comps else None

    def is_zero(self):
        return not self.comps and not self.empty

    def truncate(self, d):
        return Mould({r: f for r, f in self.comps.items() if r <= d}, min(d, self.max_depth), self.side, self.empty)

    def with_empty(self, value):
        return Mould(self.comps, self.max_depth, self.side, value)

    def _other(self, other):
        if isinstance(other, MouldA):
            raise TypeError("use MouldA arithmetic for the generator a")
        if other.side != self.side:
            raise SideMismatch("side %s vs %s" % (self.side, other.side))

    def __add__(self, other):
        if isinstance(other, MouldA):
            return as_moulda(self) + other
        self._other(other)
        d = min(self.max_depth, other.max_depth)
        comps = {}
        for r in set(self.comps) | set(other.comps):
            if r > d:
                continue
            a = self.comps.get(r)
            b = other.comps.get(r)
            comps[r] = a if b is None else b if a is None else a + b
        return Mould(comps, d, self.side, self.empty + other.empty)

    def __neg__(self):
        return Mould({r: -f for r, f in self.comps.items()}, self.max_depth, self.side, -self.empty)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = Scalar.coerce(s)
        return Mould({r: f.scale(s) for r, f in self.comps.items()}, self.max_depth, self.side, self.empty * s)

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, MouldA):
            return as_moulda(self) == other
        if not isinstance(other, Mould) or other.side != self.side:
            return NotImplemented if not isinstance(other, Mould) else False
        d = min(self.max_depth, other.max_depth)
        if self.empty != other.empty:
            return False
        for r in set(self.comps) | set(other.comps):
            if r <= d and not (self[r] == other[r]):
                return False
        return True

    __hash__ = None

    def map(self, fn, side=None):
        """Apply fn(r, RatFun) to each stored component."""
        return Mould({r: fn(r, f) for r, f in self.comps.items()}, self.max_depth, side or self.side, self.empty)

    def lines(self):
        out = ["0: %s" % self.empty] if self.empty else []
        for r in self.depths():
            out.append("%d: %s" % (r, self.comps[r].to_str(self.side)))
        return out

    def __str__(self):
        return "\n".join(self.lines()) or "0"

    __repr__ = __str__

    def to_json(self):
        return {
            "empty_value": self.empty.to_json(),
            "side": self.side,
            "max_depth": self.max_depth,
            "components": {str(r): f.to_json() for r, f in sorted(self.comps.items())},
        }

    @classmethod
    def from_json(cls, data):
        comps = {int(r): RatFun.from_json(c, int(r)) for r, c in data["components"].items()}
        return cls(comps, data["max_depth"], data["side"], Scalar.from_json(data["empty_value"]))


class MouldA:
    """q*a + body, an element of ARI extended by the generator a."""

    __slots__ = ("a_coeff", "body")

    def __init__(self, a_coeff, body):
        self.a_coeff = mpq(a_coeff)
        self.body = body

    @property
    def max_depth(self):
        return self.body.max_depth

    @property
    def side(self):
        return self.body.side

    def __add__(self, other):
        other = as_moulda(other)
        return MouldA(self.a_coeff + other.a_coeff, self.body + other.body)

    __radd__ = __add__

    def __neg__(self):
        return MouldA(-self.a_coeff, -self.body)

    def __sub__(self, other):
        return self + (-as_moulda(other))

    def scale(self, s):
        s = Scalar.coerce(s)
        return MouldA(self.a_coeff * s.rational(), self.body.scale(s))

    def __eq__(self, other):
        if not isinstance(other, (Mould, MouldA)):
            return NotImplemented
        other = as_moulda(other)
        return self.a_coeff == other.a_coeff and self.body == other.body

    __hash__ = None

    def __str__(self):
        head = "%s*a" % self.a_coeff if self.a_coeff != 1 else "a"
        if not self.a_coeff:
            return str(self.body)
        return head + ("\n" + str(self.body) if not self.body.is_zero() else "")

    __repr__ = __str__


def generator_a(max_depth=5):
    return MouldA(1, Mould.zero(max_depth))


def as_moulda(x):
    if isinstance(x, MouldA):
        return x
    return MouldA(0, x)


def _same_side(A, B):
    if A.side != B.side:
        raise SideMismatch("side %s vs %s" % (A.side, B.side))


def _need(A, side):
    if A.side != side:
        raise SideMismatch("operation needs a %s-side mould, got %s-side" % (side, A.side))


# ---------------------------------------------------------------- linear / products

def mould_linear(op, A, B):
    if op == "add":
        return A + B
    if op == "scale":
        return A.scale(B)
    raise ValueError("unknown op %r" % op)


def mu(A, B):
    _same_side(A, B)
    d = min(A.max_depth, B.max_depth)
    comps = {}
    ea, eb = A.empty, B.empty
    for r in range(1, d + 1):
        terms = []
        if ea and r in B.comps:
            terms.append(B.comps[r].scale(ea))
        if eb and r in A.comps:
            terms.append(A.comps[r].scale(eb))
        for i in range(1, r):
            fa = A.comps.get(i)
            fb = B.comps.get(r - i)
            if fa is None or fb is None:
                continue
            terms.append(fa.shift(0, r).mul_disjoint(fb.shift(i, r)))
        if terms:
            comps[r] = ratfun_sum(terms, r)
    return Mould(comps, d, A.side, ea * eb)


def lu(A, B):
    if isinstance(A, MouldA) or isinstance(B, MouldA):
        A = as_moulda(A)
        B = as_moulda(B)
        out = lu(A.body, B.body)
        if B.a_coeff:
            out = out + dur(A.body).scale(B.a_coeff)
        if A.a_coeff:
            out = out - dur(B.body).scale(A.a_coeff)
        return out
    return mu(A, B) - mu(B, A)


# ---------------------------------------------------------------- weight operators

def _dar_forms(r):
    return [variable_form(i, r) for i in range(r)]


def dar(A):
    _need(A, "u")
    return A.map(lambda r, f: f.mul_forms(_dar_forms(r)))


def dar_inv(A):
    _need(A, "u")
    return A.map(lambda r, f: f.div_forms(_dar_forms(r)))


def dur(A):
    _need(A, "u")
    return A.map(lambda r, f: f.mul_forms([sum_form(0, r - 1, r)]))


def dur_inv(A):
    _need(A, "u")
    return A.map(lambda r, f: f.div_forms([sum_form(0, r - 1, r)]))


def delta(A):
    _need(A, "u")
    return A.map(lambda r, f: f.mul_forms(_dar_forms(r) + [sum_form(0, r - 1, r)]))


def delta_inv(A):
    _need(A, "u")
    return A.map(lambda r, f: f.div_forms(_dar_forms(r) + [sum_form(0, r - 1, r)]))


def weight_ops(op, A):
    return {"dar": dar, "dar_inv": dar_inv, "dur": dur, "dur_inv": dur_inv,
            "delta": delta, "delta_inv": delta_inv}[op](A)


# ---------------------------------------------------------------- substitutions

def _matmul(P, Q):
    n = len(Q[0])
    return [[sum(P[i][k] * Q[k][j] for k in range(len(Q))) for j in range(n)] for i in range(len(P))]


def _matpow(P, p):
    r = len(P)
    out = [[int(i == j) for j in range(r)] for i in range(r)]
    for _ in range(p):
        out = _matmul(out, P)
    return out


def push_u_matrix(r):
    m = [[-1] * r]
    for k in range(1, r):
        row = [0] * r
        row[k - 1] = 1
        m.append(row)
    return m


def push_v_matrix(r):
    m = []
    row = [0] * r
    row[r - 1] = -1
    m.append(row)
    for k in range(1, r):
        row = [0] * r
        row[k - 1] = 1
        row[r - 1] -= 1
        m.append(row)
    return m


def circ_matrix(r):
    m = []
    for k in range(r):
        row = [0] * r
        row[(k + 1) % r] = 1
        m.append(row)
    return m


def swap_u_to_v_matrix(r):
    """swapA(v) = A(v_r, v_{r-1} - v_r, ..., v_1 - v_2)."""
    m = []
    row = [0] * r
    row[r - 1] = 1
    m.append(row)
    for k in range(1, r):
        row = [0] * r
        row[r - 1 - k] = 1
        row[r - k] = -1
        m.append(row)
    return m


def swap_v_to_u_matrix(r):
    """swapB(u) = B(u_1 + ... + u_r, u_1 + ... + u_{r-1}, ..., u_1)."""
    return [[1 if j < r - k else 0 for j in range(r)] for k in range(r)]


def _apply_matrix(A, mat_of_r, side=None):
    return A.map(lambda r, f: f.substitute(mat_of_r(r), r), side)


def push_u(A, power=1):
    _need(A, "u")
    return _apply_matrix(A, lambda r: _matpow(push_u_matrix(r), power % (r + 1)))


def push_v(B, power=1):
    _need(B, "v")
    return _apply_matrix(B, lambda r: _matpow(push_v_matrix(r), power % (r + 1)))


def circ(B, power=1):
    _need(B, "v")
    return _apply_matrix(B, lambda r: _matpow(circ_matrix(r), power % r))


def swap(A):
    if A.side == "u":
        return _apply_matrix(A, swap_u_to_v_matrix, "v")
    return _apply_matrix(A, swap_v_to_u_matrix, "u")


def substitute_component(f, images):
    """Evaluate the RatFun f (arity len(images)) at linear images over a common arity."""
    n = len(images[0]) if images else 0
    return f.substitute(images, n)


# ---------------------------------------------------------------- shuffles

def shuffles(x, y):
    """All interleavings of the sequences x and y, as tuples (with multiplicity)."""
    n = len(x) + len(y)
    for pos in combinations(range(n), len(x)):
        out = [None] * n
        it = iter(x)
        for p in pos:
            out[p] = next(it)
        it = iter(y)
        for i in range(n):
            if out[i] is None:
                out[i] = next(it)
        yield tuple(out)


def shuffle_sum(f, i):
    """f(sh((x_1..x_i),(x_{i+1}..x_r))) for a depth-r RatFun f."""
    r = f.arity
    terms = []
    for w in shuffles(tuple(range(i)), tuple(range(i, r))):
        images = []
        for k in w:
            row = [0] * r
            row[k] = 1
            images.append(row)
        terms.append(f.substitute(images, r))
    return ratfun_sum(terms, r)


# ---------------------------------------------------------------- Fay operator

def fay_images(r):
    """Substitution matrices of the r+1 terms of the Fay operator in depth r."""
    def e(k):
        row = [0] * r
        row[k] = 1
        return row

    def bar(i, sign=1):
        return [sign if j < i else 0 for j in range(r)]

    out = [[e(k) for k in range(r)]]
    if r == 1:
        out.append([bar(1, -1)])
        return out
    out.append([e(k) for k in range(1, r)] + [bar(r, -1)])
    for i in range(1, r):
        out.append([e(k) for k in range(1, i)] + [bar(i, -1), bar(i + 1)] + [e(k) for k in range(i + 1, r)])
    return out


def fay_component(f):
    r = f.arity
    return ratfun_sum([f.substitute(m, r) for m in fay_images(r)], r)


def fay_operator(B):
    _need(B, "u")
    return B.map(lambda r, f: fay_component(f)).with_empty(0)
