"""Predicates on moulds and the three-way equivalence harness.

Every predicate looks at depths r >= 2 only.  Corrected-mode predicates read a
constant c_r off a residue that must have an exact prescribed shape.
"""

from .errors import Inapplicable, NotConstant
from .exactalg import Poly, RatFun, Scalar, ratfun_sum
from .mouldcore import (_need, dar_inv, delta, delta_inv, fay_component,
                        push_u, shuffle_sum, swap)


class CheckReport:
    def __init__(self, prop, side="u"):
        self.property = prop
        self.side = side
        self.depths = {}
        self.witnesses = []
        self.constants = {}
        self.notes = {}

    def record(self, r, holds, residue=None, constant=None, witness=None, shape=None):
        entry = {"verdict": "holds" if holds else "fails"}
        if shape is not None:
            entry["shape"] = shape
        if residue is not None and residue:
            entry["residue"] = residue
        if constant is not None:
            entry["constant"] = constant
            if constant:
                self.constants[r] = constant
        prev = self.depths.get(r)
        if prev is None or prev["verdict"] == "holds":
            self.depths[r] = entry
        if not holds:
            w = dict(witness or {})
            w["depth"] = r
            w["residue"] = residue
            self.witnesses.append(w)

    @property
    def holds(self):
        return all(e["verdict"] == "holds" for e in self.depths.values())

    def __bool__(self):
        return self.holds

    def verdicts(self):
        return {r: e["verdict"] for r, e in sorted(self.depths.items())}

    def to_json(self):
        def enc(x):
            if isinstance(x, RatFun):
                return x.to_str(self.side)
            if isinstance(x, Scalar):
                return str(x)
            return x
        depths = {}
        for r, e in sorted(self.depths.items()):
            depths[str(r)] = {k: enc(v) for k, v in e.items()}
        out = {
            "property": self.property,
            "holds": self.holds,
            "depths": depths,
            "witnesses": [{k: enc(v) for k, v in w.items()} for w in self.witnesses],
        }
        if self.constants:
            out["constants"] = {str(r): str(c) for r, c in sorted(self.constants.items())}
        if self.notes:
            out["notes"] = {k: enc(v) for k, v in self.notes.items()}
        return out

    def __repr__(self):
        return "CheckReport(%s, holds=%s, constants=%s)" % (self.property, self.holds, self.constants)


def _depths(A):
    return range(2, A.max_depth + 1)


def check_alternal(A):
    rep = CheckReport("alternal", A.side)
    for r in _depths(A):
        f = A.comps.get(r)
        if f is None:
            rep.record(r, True)
            continue
        ok = True
        for i in range(1, r):
            res = shuffle_sum(f, i)
            if res:
                ok = False
                rep.record(r, False, res, witness={"shuffle": [list(range(1, i + 1)), list(range(i + 1, r + 1))]})
        if ok:
            rep.record(r, True)
    return rep


def check_push_invariant(A):
    _need(A, "u")
    rep = CheckReport("push_invariant", A.side)
    P = push_u(A)
    for r in _depths(A):
        res = P[r] - A[r]
        rep.record(r, not res, res, witness={"power": 1})
    if 1 in A.comps:
        f = A.comps[1]
        rep.notes["depth1_parity"] = "even" if f == f.substitute([[-1]], 1) else "not even"
    return rep


def _extract(rep, r, res, mode, witness, raise_errors):
    if mode == "strict":
        rep.record(r, not res, res, witness=witness)
        return
    if not res:
        rep.record(r, True, constant=Scalar(0))
        return
    if res.is_constant():
        rep.record(r, True, res, constant=res.constant_value() / (-r), shape="constant")
        return
    if raise_errors:
        raise NotConstant("depth %d residue %s is not constant" % (r, res))
    rep.record(r, False, res, witness=dict(witness, error="NotConstant"))


def _cyclic_sum(f):
    r = f.arity
    terms = []
    for k in range(r):
        images = []
        for m in range(r):
            row = [0] * r
            row[(m + k) % r] = 1
            images.append(row)
        terms.append(f.substitute(images, r))
    return ratfun_sum(terms, r)


def check_circ_neutral(B, mode="strict", raise_errors=False):
    _need(B, "v")
    rep = CheckReport("circ_neutral[%s]" % mode, "v")
    for r in _depths(B):
        f = B.comps.get(r)
        res = _cyclic_sum(f) if f is not None else RatFun.zero(r)
        _extract(rep, r, res, mode, {"rotations": list(range(r))}, raise_errors)
    return rep


def check_first_alternality(B, mode="strict", raise_errors=False):
    _need(B, "v")
    rep = CheckReport("first_alternality[%s]" % mode, "v")
    for r in _depths(B):
        f = B.comps.get(r)
        res = shuffle_sum(f, 1) if f is not None else RatFun.zero(r)
        _extract(rep, r, res, mode, {"shuffle": [[1], list(range(2, r + 1))]}, raise_errors)
    return rep


def tail_sum(r):
    """u_2 + ... + u_r as a polynomial in r variables."""
    return Poly.linear([0] + [1] * (r - 1))


def classify_fay_residue(res):
    """('zero', None) | ('tail', c_r) | ('linear', None) | ('general', None)."""
    r = res.arity
    if not res:
        return "zero", Scalar(0)
    if res.den or res.num.degrees() != {1}:
        return "general", None
    terms = res.num.terms()
    k = terms.get(tuple([0] + [1 if i == 1 else 0 for i in range(1, r)]))
    if k is not None and res == RatFun.from_poly(tail_sum(r).scale(k)):
        return "tail", k / (-r)
    return "linear", None


def fay_defect(A, mode="corrected"):
    """Fay residue F(dar^-1 A) per depth, classified."""
    _need(A, "u")
    rep = CheckReport("fay[%s]" % mode, "u")
    Ap = dar_inv(A)
    for r in range(1, A.max_depth + 1):
        f = Ap.comps.get(r)
        res = fay_component(f) if f is not None else RatFun.zero(r)
        if r == 1:
            rep.notes["depth1_residue"] = res
            continue
        shape, c = classify_fay_residue(res)
        if shape == "zero":
            rep.record(r, True, constant=Scalar(0) if mode == "corrected" else None, shape=shape)
        elif shape == "tail" and mode == "corrected":
            rep.record(r, True, res, constant=c, shape=shape)
        else:
            rep.record(r, False, res, witness={"shape": shape}, shape=shape)
    return rep


def fay_residue(A):
    """Mould of Fay residues F(dar^-1 A), all depths >= 1."""
    from .mouldcore import fay_operator
    return fay_operator(dar_inv(A))


def _constants_agree(reports):
    base = reports[0].constants
    return all(r.constants == base for r in reports[1:])


def check_krv_ell(F):
    _need(F, "u")
    rep = CheckReport("krv_ell", "u")
    M = delta_inv(F)
    alt = check_alternal(M)
    push = check_push_invariant(M)
    circ_rep = check_circ_neutral(swap(M), "corrected")
    fay = fay_defect(F, "corrected")
    polynomial = all(f.is_polynomial() for f in F.comps.values())
    for r in _depths(F):
        ok = all(x.depths.get(r, {"verdict": "holds"})["verdict"] == "holds" for x in (alt, push, circ_rep))
        rep.record(r, ok, constant=circ_rep.constants.get(r, Scalar(0)))
    rep.witnesses = alt.witnesses + push.witnesses + circ_rep.witnesses
    rep.notes["polynomial"] = polynomial
    rep.notes["subchecks"] = {"alternal": alt.holds, "push_invariant": push.holds, "circ_neutral": circ_rep.holds}
    rep.notes["fay_route"] = fay.holds
    rep.notes["routes_agree"] = (fay.holds == circ_rep.holds) and (not rep.holds or _constants_agree([circ_rep, fay]))
    rep.sub = {"alternal": alt, "push_invariant": push, "circ_neutral": circ_rep, "fay": fay}
    return rep


class EquivalenceReport:
    def __init__(self, fay, first_alt, circ_rep, expected=None):
        self.fay = fay
        self.first_alternality = first_alt
        self.circ_neutral = circ_rep
        self.expected = expected
        self.reports = (fay, first_alt, circ_rep)

    @property
    def verdicts_agree(self):
        v = [r.verdicts() for r in self.reports]
        return v[0] == v[1] == v[2]

    @property
    def constants_agree(self):
        return _constants_agree(list(self.reports))

    @property
    def constants(self):
        return dict(self.fay.constants)

    @property
    def all_hold(self):
        return all(r.holds for r in self.reports)

    @property
    def matches_expected(self):
        if self.expected is None:
            return True
        return all(self.expected[r] == self.constants.get(r, Scalar(0)) for r in range(2, self.fay_max_depth + 1))

    @property
    def fay_max_depth(self):
        return max(self.fay.depths) if self.fay.depths else 1

    @property
    def ok(self):
        return self.verdicts_agree and self.constants_agree and self.all_hold and self.matches_expected

    def to_json(self):
        return {
            "property": "equivalences",
            "verdicts_agree": self.verdicts_agree,
            "constants_agree": self.constants_agree,
            "all_hold": self.all_hold,
            "constants": {str(r): str(c) for r, c in sorted(self.constants.items())},
            "conditions": [r.to_json() for r in self.reports],
        }


def verify_equivalences(M, C=None, mode="corrected"):
    """Evaluate the three equivalent conditions on an alternal push-invariant M."""
    _need(M, "u")
    if not check_alternal(M).holds or not check_push_invariant(M).holds:
        raise Inapplicable("M must be alternal and push-invariant")
    S = swap(M)
    fay = fay_defect(delta(M), mode)
    fa = check_first_alternality(S, mode)
    cr = check_circ_neutral(S, mode)
    return EquivalenceReport(fay, fa, cr, C)
