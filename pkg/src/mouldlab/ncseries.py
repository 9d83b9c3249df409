"""Truncated noncommutative series in the letters a, b or in c_1, c_2, ...

Convention: c_1 = b and c_{i+1} = [c_i, a].  Under it the ma map sends
[a, b] = -c_2 to -u1, and sends [f, a] to dur(ma f).
"""

from math import factorial

from .errors import AlphabetMismatch, NotInKernel
from .exactalg import Poly, RatFun, Scalar, mpq
from .library import bernoulli
from .mouldcore import Mould, MouldA


class NCSeries:
    __slots__ = ("alphabet", "terms", "max_weight")

    def __init__(self, alphabet, terms=None, max_weight=12):
        if alphabet not in ("ab", "c"):
            raise ValueError("alphabet must be 'ab' or 'c'")
        self.alphabet = alphabet
        self.max_weight = max_weight
        out = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            c = Scalar.coerce(c)
            if c and self.weight(w) <= max_weight:
                out[w] = c
        self.terms = out

    def weight(self, word):
        return len(word) if self.alphabet == "ab" else sum(word)

    @classmethod
    def letter(cls, x, max_weight=12):
        if x in ("a", "b"):
            return cls("ab", {(x,): 1}, max_weight)
        return cls("c", {(int(x),): 1}, max_weight)

    @classmethod
    def one(cls, alphabet, max_weight=12):
        return cls(alphabet, {(): 1}, max_weight)

    def _other(self, other):
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("%s vs %s" % (self.alphabet, other.alphabet))
        return min(self.max_weight, other.max_weight)

    def __add__(self, other):
        mw = self._other(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, Scalar(0)) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCSeries(self.alphabet, out, mw)

    def __neg__(self):
        return NCSeries(self.alphabet, {w: -c for w, c in self.terms.items()}, self.max_weight)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = Scalar.coerce(s)
        return NCSeries(self.alphabet, {w: c * s for w, c in self.terms.items()}, self.max_weight)

    def __mul__(self, other):
        if not isinstance(other, NCSeries):
            return self.scale(other)
        mw = self._other(other)
        out = {}
        for w1, c1 in self.terms.items():
            k1 = self.weight(w1)
            for w2, c2 in other.terms.items():
                if k1 + other.weight(w2) > mw:
                    continue
                w = w1 + w2
                s = out.get(w, Scalar(0)) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NCSeries(self.alphabet, out, mw)

    def __rmul__(self, s):
        return self.scale(s)

    def bracket(self, other):
        return self * other - other * self

    def __eq__(self, other):
        return (isinstance(other, NCSeries) and self.alphabet == other.alphabet
                and self.terms == other.terms)

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def homogeneous(self, weight):
        return NCSeries(self.alphabet, {w: c for w, c in self.terms.items() if self.weight(w) == weight},
                        self.max_weight)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (self.weight(w), w)):
            c = self.terms[w]
            word = "".join(w) if self.alphabet == "ab" else "*".join("c%d" % i for i in w)
            word = word or "1"
            cs = str(c)
            if cs == "1":
                parts.append(word)
            elif cs == "-1":
                parts.append("-" + word)
            else:
                parts.append("(%s)*%s" % (cs, word))
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    __repr__ = __str__


def nc_arith(op, f, g):
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "bracket":
        return f.bracket(g)
    raise ValueError("unknown op %r" % op)


def partial_a(f):
    """The derivation a -> 1, b -> 0."""
    if f.alphabet != "ab":
        raise AlphabetMismatch("partial_a needs the ab alphabet")
    out = {}
    for w, c in f.terms.items():
        for k, x in enumerate(w):
            if x == "a":
                v = w[:k] + w[k + 1:]
                out[v] = out.get(v, Scalar(0)) + c
    return NCSeries("ab", out, f.max_weight)


def c_letter_ab(i, max_weight=12):
    x = NCSeries.letter("b", max_weight)
    a = NCSeries.letter("a", max_weight)
    for _ in range(i - 1):
        x = x.bracket(a)
    return x


def c_to_ab(f):
    """Expand a c-alphabet series in the letters a, b."""
    if f.alphabet != "c":
        raise AlphabetMismatch("c_to_ab needs the c alphabet")
    mw = f.max_weight
    cache = {}
    total = NCSeries("ab", {}, mw)
    for w, coeff in f.terms.items():
        x = NCSeries.one("ab", mw)
        for i in w:
            if i not in cache:
                cache[i] = c_letter_ab(i, mw)
            x = x * cache[i]
        total = total + x.scale(coeff)
    return total


def _b_initial_key(word):
    """(m_1, ..., m_r) for a word b a^m_1 b a^m_2 ..."""
    key = []
    for x in word:
        if x == "b":
            key.append(0)
        else:
            key[-1] += 1
    return tuple(key)


def ab_to_c(f):
    """Rewrite f (with partial_a f = 0) in the c letters, by unitriangular elimination."""
    if f.alphabet != "ab":
        raise AlphabetMismatch("ab_to_c needs the ab alphabet")
    if not partial_a(f).is_zero():
        raise NotInKernel("partial_a(f) is nonzero")
    mw = f.max_weight
    rest = f
    out = {}
    cache = {}
    while True:
        cands = [w for w in rest.terms if w and w[0] == "b"]
        if not cands:
            break
        w = min(cands, key=lambda w: (len(w), w.count("b"), _b_initial_key(w)))
        key = tuple(m + 1 for m in _b_initial_key(w))
        coeff = rest.terms[w]
        out[key] = coeff
        if key not in cache:
            cache[key] = c_to_ab(NCSeries("c", {key: 1}, mw))
        rest = rest - cache[key].scale(coeff)
    if not rest.is_zero():
        raise NotInKernel("residual words without leading b: %s" % rest)
    return NCSeries("c", out, mw)


def ma_map(f, max_depth=None):
    """c_{a1}...c_{ar} -> u1^(a1-1) ... ur^(ar-1)."""
    if f.alphabet != "c":
        raise AlphabetMismatch("ma needs the c alphabet")
    if max_depth is None:
        max_depth = f.max_weight
    by_depth = {}
    empty = Scalar(0)
    for w, c in f.terms.items():
        if not w:
            empty = c
            continue
        by_depth.setdefault(len(w), {})[tuple(i - 1 for i in w)] = c
    comps = {r: RatFun.from_poly(Poly.from_terms(t, r)) for r, t in by_depth.items() if r <= max_depth}
    return Mould(comps, max_depth, "u", empty)


def ma_with_a(f, max_depth=None):
    """ma on q*a + (element of the kernel), returned as a MouldA."""
    q = f.terms.get(("a",), Scalar(0))
    g = f - NCSeries("ab", {("a",): q}, f.max_weight) if q else f
    return MouldA(q.rational() if q else 0, ma_map(ab_to_c(g), max_depth))


def ad_power(x, y, n):
    for _ in range(n):
        y = x.bracket(y)
    return y


def build_t01_nc(max_weight=9):
    """sum_n B_n/n! ad(b)^n(-a), truncated at max_weight."""
    if max_weight < 2:
        raise ValueError("max_weight must be >= 2")
    a = NCSeries.letter("a", max_weight)
    b = NCSeries.letter("b", max_weight)
    total = NCSeries("ab", {}, max_weight)
    term = -a
    for n in range(max_weight):
        c = bernoulli(n) / factorial(n)
        if c:
            total = total + term.scale(c)
        term = b.bracket(term)
    return total


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, text, max_weight):
        self.s = text
        self.i = 0
        self.mw = max_weight

    def error(self, msg):
        from .errors import MouldlabError
        raise MouldlabError("%s at position %d in %r" % (msg, self.i, self.s))

    def peek(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1
        return self.s[self.i] if self.i < len(self.s) else ""

    def parse(self):
        e = self.expr()
        if self.peek():
            self.error("unexpected %r" % self.peek())
        return e

    def expr(self):
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.s[self.i] == "-" else 1
            self.i += 1
        e = self.term().scale(sign)
        while self.peek() in ("+", "-") and self.peek():
            op = self.s[self.i]
            self.i += 1
            t = self.term()
            e = e + t if op == "+" else e - t
        return e

    def number(self):
        start = self.i
        while self.i < len(self.s) and (self.s[self.i].isdigit() or self.s[self.i] == "/"):
            self.i += 1
        return mpq(self.s[start:self.i])

    def term(self):
        coeff = mpq(1)
        if self.peek().isdigit():
            coeff = self.number()
            if self.peek() == "*":
                self.i += 1
        factors = []
        while self.peek() in ("a", "b", "[", "(") and self.peek():
            factors.append(self.factor())
            if self.peek() == "*":
                self.i += 1
                if self.peek() not in ("a", "b", "[", "(") or not self.peek():
                    self.error("expected a factor")
        if not factors:
            if coeff != 1 or self.s[self.i - 1:self.i].isdigit():
                return NCSeries.one("ab", self.mw).scale(coeff)
            self.error("expected a term")
        out = factors[0]
        for f in factors[1:]:
            out = out * f
        return out.scale(coeff)

    def factor(self):
        ch = self.peek()
        if ch in ("a", "b"):
            self.i += 1
            return NCSeries.letter(ch, self.mw)
        if ch == "(":
            self.i += 1
            e = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.i += 1
            return e
        self.i += 1
        x = self.expr()
        if self.peek() != ",":
            self.error("expected ','")
        self.i += 1
        y = self.expr()
        if self.peek() != "]":
            self.error("expected ']'")
        self.i += 1
        return x.bracket(y)


def parse_ab(text, max_weight=12):
    """Parse e.g. ``ab - ba``, ``1/2*[a,[a,b]]`` into an ab-alphabet series."""
    return _Parser(text, max_weight).parse()
