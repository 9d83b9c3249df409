"""Exact coefficient ring, sparse polynomials and rational functions whose
denominators are products of integer linear forms.

Coefficients live in Q[z3, z5, ...] with the zeta symbols treated as free
commuting variables.  A zeta monomial is a sorted tuple of ``(index, exponent)``
pairs; ``()`` is the monomial 1.
"""

import re
from collections import Counter
from fractions import Fraction
from math import gcd

from .errors import ArityMismatch, DenominatorVanishes
from .kernels import (MASK, ONE, SHIFT, mpq, p_add, p_add_into, p_div_linear,
                      p_mul, p_mul_linear, p_scale, p_shift, p_substitute)


def to_mpq(x):
    if isinstance(x, type(ONE)):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    return mpq(x)


def zmul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def zstr(z):
    return "*".join("z%d" % i if e == 1 else "z%d^%d" % (i, e) for i, e in z)


def qstr(q):
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def _zkey_order(z):
    return (sum(e for _, e in z), z)


# ---------------------------------------------------------------- Scalar

class Scalar:
    """Element of Q[z3, z5, ...]; immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self.terms = value.terms
        elif isinstance(value, dict):
            self.terms = {z: to_mpq(c) for z, c in value.items() if c}
        else:
            q = to_mpq(value)
            self.terms = {(): q} if q else {}
        self._hash = None

    @classmethod
    def zeta(cls, index, coeff=1):
        if index < 3 or index % 2 == 0:
            raise ValueError("only odd zeta symbols z3, z5, ... exist")
        return cls({((index, 1),): coeff})

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, Scalar) else cls(x)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_rational(self):
        return all(z == () for z in self.terms)

    def rational(self):
        if not self.is_rational():
            raise ValueError("scalar %s is not rational" % self)
        return self.terms.get((), mpq(0))

    def __add__(self, other):
        other = Scalar.coerce(other)
        out = dict(self.terms)
        for z, c in other.terms.items():
            s = out.get(z, 0) + c
            if s:
                out[z] = s
            else:
                out.pop(z, None)
        return _scalar(out)

    __radd__ = __add__

    def __neg__(self):
        return _scalar({z: -c for z, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        other = Scalar.coerce(other)
        out = {}
        for za, ca in self.terms.items():
            for zb, cb in other.terms.items():
                z = zmul(za, zb)
                s = out.get(z, 0) + ca * cb
                if s:
                    out[z] = s
                else:
                    out.pop(z, None)
        return _scalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = to_mpq(other) if not isinstance(other, Scalar) else other.rational()
        return _scalar({z: c / q for z, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _zkey_order(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for z, c in self.sorted_terms():
            if not z:
                body = qstr(abs(c))
            elif abs(c) == 1:
                body = zstr(z)
            elif c.denominator == 1:
                body = "%s*%s" % (qstr(abs(c)), zstr(z))
            else:
                body = "(%s)*%s" % (qstr(abs(c)), zstr(z))
            parts.append(("- " if c < 0 else "+ ", body))
        s = " ".join(sign + body for sign, body in parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__

    def to_json(self):
        return [[[list(p) for p in z], qstr(c)] for z, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data):
        return cls({tuple(tuple(p) for p in z): mpq(c) for z, c in data})


def _scalar(terms):
    s = Scalar.__new__(Scalar)
    s.terms = terms
    s._hash = None
    return s


ZERO = Scalar(0)


def scalar_arith(op, a, b=None):
    a = Scalar.coerce(a)
    if op == "neg":
        return -a
    b = Scalar.coerce(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError("unknown scalar op %r" % op)


# ---------------------------------------------------------------- keys

def pack(exps):
    k = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MASK:
            raise ValueError("exponent out of range: %r" % (exps,))
        k |= e << (SHIFT * i)
    return k


def unpack(key, arity):
    return tuple((key >> (SHIFT * i)) & MASK for i in range(arity))


def _lin(coeffs):
    return [(1 << (SHIFT * i), c) for i, c in enumerate(coeffs) if c]


# ---------------------------------------------------------------- LinearForm

class LinearForm:
    """Nonzero integer linear form, content 1, first nonzero entry positive."""

    __slots__ = ("coeffs", "lin", "lead", "_hash")

    def __init__(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        s, form = normalize_form(coeffs)
        if s != 1:
            raise ValueError("linear form %r is not normalized" % (coeffs,))
        self._set(coeffs)

    def _set(self, coeffs):
        self.coeffs = coeffs
        self.lin = _lin(coeffs)
        self.lead = next(i for i, c in enumerate(coeffs) if c)
        self._hash = hash(coeffs)

    @property
    def arity(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (sum(1 for c in self.coeffs if c), tuple(-c for c in self.coeffs))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return _linear_str(self.coeffs)

    __repr__ = __str__


def _linear_str(coeffs, var="u"):
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        name = "%s%d" % (var, i + 1)
        body = name if abs(c) == 1 else "%d*%s" % (abs(c), name)
        parts.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def normalize_form(coeffs):
    """Return (s, form) with coeffs = s * form and form normalized."""
    coeffs = tuple(int(c) for c in coeffs)
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g == 0:
        raise DenominatorVanishes("zero linear form")
    first = next(c for c in coeffs if c)
    s = g if first > 0 else -g
    norm = tuple(c // s for c in coeffs)
    f = LinearForm.__new__(LinearForm)
    f._set(norm)
    return s, f


def variable_form(i, arity):
    v = [0] * arity
    v[i] = 1
    return normalize_form(v)[1]


def sum_form(lo, hi, arity):
    """The form u_lo + ... + u_hi (0-based, inclusive)."""
    v = [0] * arity
    for i in range(lo, hi + 1):
        v[i] = 1
    return normalize_form(v)[1]


# ---------------------------------------------------------------- Poly

class Poly:
    """Sparse polynomial in ``arity`` variables with Scalar coefficients.

    Stored as ``{zeta monomial: {packed exponent: mpq}}``.
    """

    __slots__ = ("arity", "comps", "_hash")

    def __init__(self, arity, comps=None):
        self.arity = arity
        self.comps = {z: p for z, p in (comps or {}).items() if p}
        self._hash = None

    @classmethod
    def _raw(cls, arity, comps):
        p = cls.__new__(cls)
        p.arity = arity
        p.comps = comps
        p._hash = None
        return p

    @classmethod
    def zero(cls, arity):
        return cls._raw(arity, {})

    @classmethod
    def const(cls, value, arity):
        s = Scalar.coerce(value)
        return cls._raw(arity, {z: {0: c} for z, c in s.terms.items()})

    @classmethod
    def var(cls, i, arity):
        return cls._raw(arity, {(): {1 << (SHIFT * i): ONE}})

    @classmethod
    def from_terms(cls, terms, arity):
        """Build from ``{exponent tuple: Scalar-like}``."""
        comps = {}
        for exps, c in terms.items():
            if len(exps) != arity:
                raise ArityMismatch("exponent %r for arity %d" % (exps, arity))
            k = pack(exps)
            for z, q in Scalar.coerce(c).terms.items():
                d = comps.setdefault(z, {})
                s = d.get(k, 0) + q
                if s:
                    d[k] = s
                else:
                    d.pop(k, None)
        return cls(arity, comps)

    @classmethod
    def linear(cls, coeffs):
        return cls._raw(len(coeffs), {(): {k: mpq(c) for k, c in _lin(coeffs)}})

    def terms(self):
        """Dict ``{exponent tuple: Scalar}``."""
        out = {}
        for z, p in self.comps.items():
            for k, c in p.items():
                e = unpack(k, self.arity)
                out.setdefault(e, {})[z] = c
        return {e: _scalar(t) for e, t in out.items()}

    def is_zero(self):
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def nterms(self):
        return sum(len(p) for p in self.comps.values())

    def _check(self, other):
        if self.arity != other.arity:
            raise ArityMismatch("arity %d vs %d" % (self.arity, other.arity))

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.arity)
        self._check(other)
        out = dict(self.comps)
        for z, p in other.comps.items():
            q = out.get(z)
            s = p if q is None else p_add(q, p)
            if s:
                out[z] = s
            else:
                out.pop(z, None)
        return Poly._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.arity, {z: p_scale(p, -ONE) for z, p in self.comps.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.arity)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out = {}
        for za, pa in self.comps.items():
            for zb, pb in other.comps.items():
                prod = p_mul(pa, pb)
                z = zmul(za, zb)
                q = out.get(z)
                if q is None:
                    out[z] = prod
                else:
                    p_add_into(q, prod, ONE)
        return Poly._raw(self.arity, {z: p for z, p in out.items() if p})

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        s = Scalar.coerce(s)
        if len(s.terms) == 1 and () in s.terms:
            c = s.terms[()]
            return Poly._raw(self.arity, {z: p_scale(p, c) for z, p in self.comps.items()})
        out = {}
        for zs, c in s.terms.items():
            for z, p in self.comps.items():
                zz = zmul(zs, z)
                q = out.get(zz)
                if q is None:
                    out[zz] = p_scale(p, c)
                else:
                    p_add_into(q, p, c)
        return Poly._raw(self.arity, {z: p for z, p in out.items() if p})

    def mul_form(self, form):
        return Poly._raw(self.arity, {z: p_mul_linear(p, form.lin) for z, p in self.comps.items()})

    def div_form(self, form):
        out = {}
        for z, p in self.comps.items():
            q = p_div_linear(p, form.lin, form.lead)
            if q is None:
                return None
            out[z] = q
        return Poly._raw(self.arity, out)

    def substitute(self, images, out_arity):
        """images[i]: integer coefficient vector (length out_arity) of the image of x_i."""
        if len(images) != self.arity:
            raise ArityMismatch("need %d images, got %d" % (self.arity, len(images)))
        lins = [_lin(v) for v in images]
        return Poly._raw(out_arity, {z: q for z, q in
                                     ((z, p_substitute(p, self.arity, lins)) for z, p in self.comps.items()) if q})

    def shift(self, offset, new_arity):
        return Poly._raw(new_arity, {z: p_shift(p, offset) for z, p in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, RatFun):
                return NotImplemented
            other = Poly.const(other, self.arity)
        return self.arity == other.arity and self.comps == other.comps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset((z, frozenset(p.items())) for z, p in self.comps.items())))
        return self._hash

    def degrees(self):
        """Set of total degrees occurring."""
        out = set()
        for p in self.comps.values():
            for k in p:
                out.add(sum(unpack(k, self.arity)))
        return out

    def constant_term(self):
        return _scalar({z: p[0] for z, p in self.comps.items() if 0 in p})

    def is_constant(self):
        return all(list(p) == [0] for p in self.comps.values())

    def rational_content(self):
        """Positive rational c with self/c having coprime integer coefficients."""
        num = 0
        den = 1
        for p in self.comps.values():
            for c in p.values():
                num = gcd(num, int(c.numerator))
                den = den * int(c.denominator) // gcd(den, int(c.denominator))
        return mpq(num, den) if num else ONE

    def to_str(self, var="u"):
        return _poly_str(self, var)

    def __str__(self):
        return _poly_str(self, "u")

    __repr__ = __str__


def _mono_str(key, arity, var):
    parts = []
    for i, e in enumerate(unpack(key, arity)):
        if e == 1:
            parts.append("%s%d" % (var, i + 1))
        elif e:
            parts.append("%s%d^%d" % (var, i + 1, e))
    return "*".join(parts)


def _grlex(key, arity):
    e = unpack(key, arity)
    return (-sum(e), tuple(-x for x in e))


def _qpoly_terms(p, arity, var):
    out = []
    for k in sorted(p, key=lambda k: _grlex(k, arity)):
        c = p[k]
        m = _mono_str(k, arity, var)
        a = abs(c)
        if not m:
            body = qstr(a)
        elif a == 1:
            body = m
        elif a.denominator == 1:
            body = "%s*%s" % (qstr(a), m)
        else:
            body = "(%s)*%s" % (qstr(a), m)
        out.append((c < 0, body))
    return out


def _join(terms):
    s = " ".join(("- " if neg else "+ ") + body for neg, body in terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:] if s else "0"


def _poly_str(poly, var):
    if not poly.comps:
        return "0"
    pieces = []
    for z in sorted(poly.comps, key=_zkey_order):
        terms = _qpoly_terms(poly.comps[z], poly.arity, var)
        if not z:
            pieces.extend(terms)
        elif len(terms) == 1:
            neg, body = terms[0]
            pieces.append((neg, zstr(z) if body == "1" else "%s*%s" % (zstr(z), body)))
        else:
            pieces.append((False, "%s*(%s)" % (zstr(z), _join(terms))))
    return _join(pieces)


def poly_arith(op, a, b):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError("unknown poly op %r" % op)


def divide_by_linear_form(p, form):
    """p / form as a Poly, or None (NotDivisible)."""
    if not isinstance(form, LinearForm):
        s, form = normalize_form(form)
        q = p.div_form(form)
        return None if q is None else q.scale(mpq(1, s))
    return p.div_form(form)


# ---------------------------------------------------------------- RatFun

def _cancel(num, den):
    if not num.comps:
        return num, ()
    if not den:
        return num, ()
    keep = []
    for f, m in sorted(Counter(den).items(), key=lambda t: t[0].sort_key()):
        k = 0
        while k < m:
            q = num.div_form(f)
            if q is None:
                break
            num = q
            k += 1
        keep.extend([f] * (m - k))
    return num, tuple(keep)


class RatFun:
    """num / prod(den) with den a sorted tuple of LinearForms (a multiset)."""

    __slots__ = ("num", "den", "arity", "_hash")

    def __init__(self, num, den=(), normalize=True):
        if not isinstance(num, Poly):
            raise TypeError("numerator must be a Poly")
        den = tuple(den)
        for f in den:
            if f.arity != num.arity:
                raise ArityMismatch("form %s in arity %d" % (f, num.arity))
        if normalize:
            num, den = _cancel(num, den)
        self.num = num
        self.den = tuple(sorted(den, key=LinearForm.sort_key))
        self.arity = num.arity
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        r.arity = num.arity
        r._hash = None
        return r

    @classmethod
    def zero(cls, arity):
        return cls._raw(Poly.zero(arity), ())

    @classmethod
    def const(cls, value, arity):
        return cls._raw(Poly.const(value, arity), ())

    @classmethod
    def from_poly(cls, p):
        return cls._raw(p, ())

    @classmethod
    def from_vectors(cls, num, vectors):
        """num / prod(vectors) with raw integer coefficient vectors."""
        scale = 1
        den = []
        for v in vectors:
            s, f = normalize_form(v)
            scale *= s
            den.append(f)
        if scale != 1:
            num = num.scale(mpq(1, scale))
        return cls(num, den)

    def is_zero(self):
        return not self.num.comps

    def __bool__(self):
        return bool(self.num.comps)

    def is_polynomial(self):
        return not self.den

    def is_constant(self):
        return not self.den and self.num.is_constant()

    def constant_value(self):
        return self.num.constant_term()

    def _check(self, other):
        if self.arity != other.arity:
            raise ArityMismatch("arity %d vs %d" % (self.arity, other.arity))

    def __add__(self, other):
        if not isinstance(other, RatFun):
            other = _as_ratfun(other, self.arity)
        self._check(other)
        return ratfun_sum([self, other], self.arity)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFun):
            other = _as_ratfun(other, self.arity)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            other = RatFun._raw(other, ())
        if not isinstance(other, RatFun):
            return self.scale(other)
        self._check(other)
        if not self.num.comps or not other.num.comps:
            return RatFun.zero(self.arity)
        if not self.den and not other.den:
            return RatFun._raw(self.num * other.num, ())
        return RatFun(self.num * other.num, self.den + other.den)

    def __rmul__(self, other):
        return self.scale(other)

    def mul_disjoint(self, other):
        """Product of factors in disjoint variable sets (no cancellation possible)."""
        return RatFun._raw(self.num * other.num,
                           tuple(sorted(self.den + other.den, key=LinearForm.sort_key)))

    def scale(self, s):
        s = Scalar.coerce(s)
        if not s.terms:
            return RatFun.zero(self.arity)
        num = self.num.scale(s)
        if len(s.terms) == 1:
            return RatFun._raw(num, self.den)
        return RatFun(num, self.den)

    def mul_forms(self, forms):
        """Multiply by a product of LinearForms, cancelling first."""
        if not self.num.comps:
            return self
        den = list(self.den)
        num = self.num
        for f in forms:
            try:
                den.remove(f)
            except ValueError:
                num = num.mul_form(f)
        return RatFun._raw(num, tuple(den))

    def div_forms(self, forms):
        if not self.num.comps:
            return self
        num, extra = _cancel(self.num, tuple(forms))
        return RatFun._raw(num, tuple(sorted(self.den + extra, key=LinearForm.sort_key)))

    def substitute(self, images, out_arity):
        if len(images) != self.arity:
            raise ArityMismatch("need %d images, got %d" % (self.arity, len(images)))
        num = self.num.substitute(images, out_arity)
        if not self.den:
            return RatFun._raw(num, ())
        scale = 1
        den = []
        for f in self.den:
            v = [0] * out_arity
            for i, c in enumerate(f.coeffs):
                if c:
                    for j, d in enumerate(images[i]):
                        if d:
                            v[j] += c * d
            if not any(v):
                raise DenominatorVanishes("form %s maps to zero" % f)
            s, g = normalize_form(v)
            scale *= s
            den.append(g)
        if scale != 1:
            num = num.scale(mpq(1, scale))
        return RatFun(num, den)

    def shift(self, offset, new_arity):
        den = []
        for f in self.den:
            v = [0] * new_arity
            v[offset:offset + f.arity] = f.coeffs
            g = LinearForm.__new__(LinearForm)
            g._set(tuple(v))
            den.append(g)
        return RatFun._raw(self.num.shift(offset, new_arity), tuple(sorted(den, key=LinearForm.sort_key)))

    def zeta_parts(self):
        """{zeta monomial: RatFun over Q}, each part normalized on its own."""
        out = {}
        for z, p in self.num.comps.items():
            out[z] = RatFun(Poly._raw(self.arity, {(): p}), self.den)
        return out

    def degree(self):
        """Homogeneous degree, or None when the numerator is not homogeneous."""
        ds = self.num.degrees()
        if len(ds) != 1:
            return None if ds else 0
        return ds.pop() - len(self.den)

    def __eq__(self, other):
        if isinstance(other, Poly):
            other = RatFun._raw(other, ())
        elif not isinstance(other, RatFun):
            try:
                other = _as_ratfun(other, self.arity)
            except (TypeError, ValueError):
                return NotImplemented
        return ratfun_equal(self, other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def to_str(self, var="u"):
        parts = sorted(self.zeta_parts().items(), key=lambda t: _zkey_order(t[0]))
        if not parts:
            return "0"
        pieces = []
        for z, rf in parts:
            body = _qratfun_str(rf, var)
            if not z:
                pieces.append(body)
            elif body == "1":
                pieces.append(zstr(z))
            elif body == "-1":
                pieces.append("-" + zstr(z))
            elif _MONOMIAL.match(body):
                neg = body.startswith("-")
                pieces.append("%s%s*%s" % ("-" if neg else "", zstr(z), body.lstrip("-")))
            else:
                pieces.append("%s*(%s)" % (zstr(z), body))
        s = pieces[0]
        for p in pieces[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def __str__(self):
        return self.to_str("u")

    __repr__ = __str__

    def to_json(self):
        terms = []
        for z, p in sorted(self.num.comps.items(), key=lambda t: _zkey_order(t[0])):
            for k in sorted(p, key=lambda k: _grlex(k, self.arity)):
                terms.append({"u": list(unpack(k, self.arity)), "z": [list(t) for t in z], "q": qstr(p[k])})
        return {"num_terms": terms, "den_forms": [list(f.coeffs) for f in self.den]}

    @classmethod
    def from_json(cls, data, arity):
        comps = {}
        for t in data["num_terms"]:
            z = tuple(tuple(x) for x in t["z"])
            d = comps.setdefault(z, {})
            k = pack(t["u"])
            s = d.get(k, 0) + mpq(t["q"])
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return cls.from_vectors(Poly(arity, comps), data["den_forms"])


_MONOMIAL = re.compile(r"^-?[a-z]\d+(\^\d+)?(\*[a-z]\d+(\^\d+)?)*$")


def _qratfun_str(rf, var):
    """Render a RatFun with rational coefficients only."""
    if not rf.den:
        return _poly_str(rf.num, var)
    c = rf.num.rational_content()
    body = rf.num.scale(1 / c)
    terms = _qpoly_terms(body.comps.get((), {}), rf.arity, var)
    numer = _join(terms)
    if len(terms) > 1:
        numer = "(%s)" % numer
    if c.numerator != 1:
        numer = "%d*%s" % (c.numerator, numer)
    dparts = []
    if c.denominator != 1:
        dparts.append(str(c.denominator))
    for f, m in sorted(Counter(rf.den).items(), key=lambda t: t[0].sort_key()):
        fs = _linear_str(f.coeffs, var)
        if sum(1 for x in f.coeffs if x) > 1:
            fs = "(%s)" % fs
        dparts.append(fs if m == 1 else "%s^%d" % (fs, m))
    dstr = "*".join(dparts)
    if len(dparts) > 1:
        dstr = "(%s)" % dstr
    return "%s/%s" % (numer, dstr)


def _as_ratfun(x, arity):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, Poly):
        return RatFun._raw(x, ())
    return RatFun.const(x, arity)


def ratfun_equal(a, b):
    if a.arity != b.arity:
        raise ArityMismatch("arity %d vs %d" % (a.arity, b.arity))
    if a.den == b.den:
        return a.num == b.num
    da = Counter(a.den)
    db = Counter(b.den)
    na = a.num
    for f, m in (db - da).items():
        for _ in range(m):
            na = na.mul_form(f)
    nb = b.num
    for f, m in (da - db).items():
        for _ in range(m):
            nb = nb.mul_form(f)
    return na == nb


def ratfun_sum(items, arity):
    """Sum of RatFuns over the least common multiple of their denominators."""
    items = [r for r in items if r.num.comps]
    if not items:
        return RatFun.zero(arity)
    for r in items:
        if r.arity != arity:
            raise ArityMismatch("arity %d vs %d" % (r.arity, arity))
    if len(items) == 1:
        return items[0]
    lcm = Counter()
    for r in items:
        for f, m in Counter(r.den).items():
            if m > lcm[f]:
                lcm[f] = m
    acc = {}
    for r in items:
        missing = lcm - Counter(r.den)
        num = r.num
        for f, m in missing.items():
            for _ in range(m):
                num = num.mul_form(f)
        for z, p in num.comps.items():
            q = acc.get(z)
            if q is None:
                acc[z] = dict(p)
            else:
                p_add_into(q, p, ONE)
    total = Poly(arity, acc)
    return RatFun(total, tuple(lcm.elements()))
