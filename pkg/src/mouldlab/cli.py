"""Command-line front end: an expression language over the library, property
checks and the acceptance report.

Exit codes: 0 success, 1 property failure, 2 usage or parse error.
"""

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from . import checks
from .errors import Inapplicable, MouldlabError
from .exactalg import RatFun, Scalar, mpq
from .flexion import (arat_apply, dari_bracket, darit_apply, darit_exp_apply,
                      mu_exp, mu_log)
from .library import (build_const_mould_C, build_That01, build_U, build_U1,
                      thm32_correction, thm34_correction)
from .mouldcore import (Mould, MouldA, as_moulda, circ, dar, dar_inv, delta,
                        delta_inv, dur, dur_inv, fay_operator, generator_a, lu,
                        mu, push_u, push_v, swap)


class ParseError(MouldlabError):
    def __init__(self, msg, pos, text=""):
        super().__init__("%s at position %d" % (msg, pos))
        self.pos = pos
        self.text = text

    def caret(self):
        return "%s\n%s^" % (self.text, " " * self.pos)


class EvalError(MouldlabError):
    def __init__(self, msg, span=None):
        if span is not None:
            msg = "%s (at %d-%d)" % (msg, span[0], span[1])
        super().__init__(msg)
        self.span = span


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class Num:
    value: object
    span: tuple = field(default=None, compare=False)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Zeta:
    index: int
    span: tuple = field(default=None, compare=False)

    def __str__(self):
        return "z%d" % self.index


@dataclass(frozen=True)
class Str:
    text: str
    span: tuple = field(default=None, compare=False)

    def __str__(self):
        return '"%s"' % self.text


@dataclass(frozen=True)
class Name:
    ident: str
    index: object = None
    span: tuple = field(default=None, compare=False)

    def __str__(self):
        return self.ident if self.index is None else "%s[%d]" % (self.ident, self.index)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    span: tuple = field(default=None, compare=False)

    def __str__(self):
        return "%s(%s)" % (self.func, ", ".join(str(a) for a in self.args))


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    span: tuple = field(default=None, compare=False)

    def __str__(self):
        p = _prec(self)
        return "%s %s %s" % (_wrap(self.left, p), self.op, _wrap(self.right, p + 1))


@dataclass(frozen=True)
class Neg:
    operand: object
    span: tuple = field(default=None, compare=False)

    def __str__(self):
        return "-" + _wrap(self.operand, 3)


@dataclass(frozen=True)
class Let:
    name: str
    value: object
    body: object
    span: tuple = field(default=None, compare=False)

    def __str__(self):
        return "let %s = %s in %s" % (self.name, self.value, self.body)


def _prec(node):
    if isinstance(node, Let):
        return 0
    if isinstance(node, BinOp):
        return 2 if node.op == "*" else 1
    if isinstance(node, Neg):
        return 3
    return 4


def _wrap(node, need):
    return "(%s)" % node if _prec(node) < need else str(node)


# ---------------------------------------------------------------- parser

TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<str>"[^"]*")
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[\[\](),*+\-/=])
""", re.X)


def tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r" % text[pos], pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), m.start()))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        where = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError("%s, found %s" % (msg, where), tok[2], self.text)

    def expect(self, value):
        t = self.peek()
        if t[1] != value or t[0] == "str":
            self.fail("expected %r" % value)
        return self.next()

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return e

    def expr(self):
        t = self.peek()
        if t[0] == "ident" and t[1] == "let":
            self.next()
            name = self.next()
            if name[0] != "ident":
                self.fail("expected a name", name)
            self.expect("=")
            value = self.expr()
            t2 = self.peek()
            if t2[1] != "in":
                self.fail("expected 'in'")
            self.next()
            body = self.expr()
            return Let(name[1], value, body, (t[2], self.peek()[2]))
        left = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.next()
            right = self.term()
            left = BinOp(op[1], left, right, (left.span[0], self.peek()[2]))
        return left

    def term(self):
        left = self.unary()
        while self.peek()[1] == "*" and self.peek()[0] == "op":
            self.next()
            right = self.unary()
            left = BinOp("*", left, right, (left.span[0], self.peek()[2]))
        return left

    def unary(self):
        t = self.peek()
        if t[1] == "-" and t[0] == "op":
            self.next()
            operand = self.unary()
            return Neg(operand, (t[2], self.peek()[2]))
        return self.atom()

    def atom(self):
        t = self.next()
        start = t[2]
        if t[0] == "num":
            value = mpq(int(t[1]))
            if self.peek()[1] == "/":
                self.next()
                d = self.next()
                if d[0] != "num":
                    self.fail("expected a denominator", d)
                if int(d[1]) == 0:
                    raise ParseError("zero denominator", d[2], self.text)
                value = mpq(int(t[1]), int(d[1]))
            return Num(value, (start, self.peek()[2]))
        if t[0] == "str":
            return Str(t[1][1:-1], (start, self.peek()[2]))
        if t[0] == "ident":
            m = re.fullmatch(r"z(\d+)", t[1])
            if m:
                return Zeta(int(m.group(1)), (start, self.peek()[2]))
            if self.peek()[1] == "(":
                self.next()
                args = []
                if self.peek()[1] != ")":
                    args.append(self.expr())
                    while self.peek()[1] == ",":
                        self.next()
                        args.append(self.expr())
                self.expect(")")
                return Call(t[1], tuple(args), (start, self.peek()[2]))
            if self.peek()[1] == "[":
                self.next()
                k = self.next()
                if k[0] != "num":
                    self.fail("expected an integer index", k)
                self.expect("]")
                return Name(t[1], int(k[1]), (start, self.peek()[2]))
            return Name(t[1], None, (start, self.peek()[2]))
        if t[1] == "(":
            e = self.expr()
            self.expect(")")
            return e
        self.i -= 1
        self.fail("expected an expression")


def parse_expr(text):
    return Parser(text).parse()


# ---------------------------------------------------------------- evaluation

class Env:
    def __init__(self, max_depth=5, max_weight=14):
        self.max_depth = max_depth
        self.max_weight = max_weight


def _as_int(v, node):
    if isinstance(v, Scalar) and v.is_rational() and v.rational().denominator == 1:
        return int(v.rational())
    raise EvalError("expected an integer", node.span)


def _mould(v, node, allow_a=False):
    if isinstance(v, Mould):
        return v
    if allow_a and isinstance(v, MouldA):
        return v
    if isinstance(v, MouldA) and not v.a_coeff:
        return v.body
    raise EvalError("expected a mould, got %s" % type(v).__name__, node.span)


def _constants_of(M):
    rep = checks.check_circ_neutral(swap(M), "corrected")
    return rep.constants


def _thm34(env, args):
    if args:
        r = args[0]
        return Mould({r: thm34_correction(r)}, max(r, env.max_depth))
    return Mould({r: thm34_correction(r) for r in range(2, env.max_depth + 1)}, env.max_depth)


def _unary(fn):
    return lambda env, a: fn(a[0])


# name -> (min args, max args, argument kinds, implementation)
# kinds: m mould, M mould or mould with a, i integer, s ab-string
FUNCTIONS = {
    "mu": (2, None, "m", lambda env, a: _fold(mu, a)),
    "lu": (2, 2, "M", lambda env, a: lu(a[0], a[1])),
    "dar": (1, 1, "m", _unary(dar)),
    "darinv": (1, 1, "m", _unary(dar_inv)),
    "dur": (1, 1, "m", _unary(dur)),
    "durinv": (1, 1, "m", _unary(dur_inv)),
    "delta": (1, 1, "m", _unary(delta)),
    "deltainv": (1, 1, "m", _unary(delta_inv)),
    "pushu": (1, 2, "mi", lambda env, a: push_u(*a)),
    "pushv": (1, 2, "mi", lambda env, a: push_v(*a)),
    "circ": (1, 2, "mi", lambda env, a: circ(*a)),
    "swap": (1, 1, "m", _unary(swap)),
    "fay": (1, 1, "m", _unary(fay_operator)),
    "arat": (2, 2, "m", lambda env, a: arat_apply(a[0], a[1])),
    "darit": (2, 2, "mM", lambda env, a: darit_apply(a[0], a[1])),
    "dari": (2, 2, "m", lambda env, a: dari_bracket(a[0], a[1])),
    "expdarit": (2, 3, "mMi", lambda env, a: darit_exp_apply(*a)),
    "expmu": (1, 1, "m", _unary(mu_exp)),
    "logmu": (1, 1, "m", _unary(mu_log)),
    "thm32corr": (2, 2, "m", lambda env, a: thm32_correction(a[0], _constants_of(a[0]), a[1],
                                                              fay_operator(dar_inv(a[1])))),
    "thm34corr": (0, 1, "i", _thm34),
    "ma": (1, 1, "s", lambda env, a: _ma(env, a[0])),
}

BUILDERS = {"U1", "That01", "C04", "a", "U"}


def _fold(fn, args):
    out = args[0]
    for x in args[1:]:
        out = fn(out, x)
    return out


def _ma(env, text):
    from .ncseries import ma_with_a, parse_ab
    out = ma_with_a(parse_ab(text, env.max_weight), env.max_depth)
    return out.body if not out.a_coeff else out


def _builder(node, env):
    d = env.max_depth
    if node.ident == "U":
        if node.index is None or node.index < 1:
            raise EvalError("U needs a positive index, e.g. U[2]", node.span)
        if node.index == 1:
            return build_U1(d)
        return build_U(node.index, d)
    if node.index is not None:
        raise EvalError("%s takes no index" % node.ident, node.span)
    if node.ident == "U1":
        return build_U1(d)
    if node.ident == "That01":
        return build_That01(d)
    if node.ident == "a":
        return generator_a(d)
    C = build_const_mould_C(d)
    return Mould({r: RatFun.const(c, r) for r, c in C.constants.items()}, d)


def evaluate(node, env, scope=None):
    scope = scope or {}
    try:
        return _eval(node, env, scope)
    except EvalError:
        raise
    except MouldlabError as exc:
        raise EvalError("%s: %s" % (type(exc).__name__, exc), getattr(node, "span", None))


def _eval(node, env, scope):
    if isinstance(node, Num):
        return Scalar(node.value)
    if isinstance(node, Zeta):
        if node.index < 2:
            raise EvalError("zeta index must be >= 2", node.span)
        return Scalar.zeta(node.index)
    if isinstance(node, Str):
        return node.text
    if isinstance(node, Name):
        if node.index is None and node.ident in scope:
            return scope[node.ident]
        if node.ident in BUILDERS:
            return _builder(node, env)
        raise EvalError("unknown name %r" % node.ident, node.span)
    if isinstance(node, Let):
        value = _eval(node.value, env, scope)
        inner = dict(scope)
        inner[node.name] = value
        return _eval(node.body, env, inner)
    if isinstance(node, Neg):
        v = _eval(node.operand, env, scope)
        return -v
    if isinstance(node, BinOp):
        x = _eval(node.left, env, scope)
        y = _eval(node.right, env, scope)
        return _binop(node, x, y)
    if isinstance(node, Call):
        return _call(node, env, scope)
    raise EvalError("cannot evaluate %r" % (node,))


def _binop(node, x, y):
    if node.op == "*":
        if isinstance(x, Scalar) and isinstance(y, Scalar):
            return x * y
        if isinstance(x, Scalar) and isinstance(y, (Mould, MouldA)):
            return y.scale(x)
        if isinstance(y, Scalar) and isinstance(x, (Mould, MouldA)):
            return x.scale(y)
        raise EvalError("'*' multiplies a scalar and a mould; use mu(...) for mould products", node.span)
    if isinstance(x, Scalar) != isinstance(y, Scalar):
        raise EvalError("cannot add a scalar and a mould", node.span)
    if isinstance(x, MouldA) or isinstance(y, MouldA):
        x, y = as_moulda(x), as_moulda(y)
    return x + y if node.op == "+" else x - y


def _call(node, env, scope):
    spec = FUNCTIONS.get(node.func)
    if spec is None:
        raise EvalError("unknown function %r" % node.func, node.span)
    lo, hi, kinds, impl = spec
    n = len(node.args)
    if n < lo or (hi is not None and n > hi):
        want = "%d" % lo if lo == hi else "%d..%s" % (lo, hi if hi is not None else "")
        raise EvalError("%s takes %s arguments, got %d" % (node.func, want, n), node.span)
    args = []
    for k, arg in enumerate(node.args):
        kind = kinds[min(k, len(kinds) - 1)]
        v = _eval(arg, env, scope)
        if kind == "i":
            v = _as_int(v, arg)
        elif kind == "s":
            if not isinstance(v, str):
                raise EvalError("expected a quoted ab-word expression", arg.span)
        else:
            v = _mould(v, arg, allow_a=(kind == "M"))
        args.append(v)
    try:
        return impl(env, args)
    except MouldlabError as exc:
        raise EvalError("%s: %s" % (type(exc).__name__, exc), node.span)


# ---------------------------------------------------------------- rendering

def render_value(v, fmt):
    if fmt == "json":
        if isinstance(v, Mould):
            return v.to_json()
        if isinstance(v, MouldA):
            return {"a": str(v.a_coeff), "mould": v.body.to_json()}
        return {"scalar": str(v)}
    return str(v)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _write(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------- commands

PROPERTIES = ("alternal", "push", "circneutral", "firstalt", "fay", "krv", "equiv")


def run_check(prop, value, mode):
    if isinstance(value, MouldA):
        if value.a_coeff:
            raise EvalError("property checks need a mould without the generator a")
        value = value.body
    if not isinstance(value, Mould):
        raise EvalError("property checks need a mould")
    if prop == "alternal":
        return checks.check_alternal(value)
    if prop == "push":
        return checks.check_push_invariant(value if value.side == "u" else swap(value))
    if prop in ("circneutral", "firstalt"):
        B = swap(value) if value.side == "u" else value
        fn = checks.check_circ_neutral if prop == "circneutral" else checks.check_first_alternality
        return fn(B, mode)
    if prop == "fay":
        return checks.fay_defect(value, mode)
    if prop == "krv":
        return checks.check_krv_ell(value)
    return checks.verify_equivalences(value, None, mode)


def _report_holds(rep):
    return rep.ok if isinstance(rep, checks.EquivalenceReport) else rep.holds


def cmd_eval(args):
    env = Env(args.max_depth, args.max_weight)
    v = evaluate(parse_expr(args.expr), env)
    out = render_value(v, args.format)
    _write(_dump(out) if args.format == "json" else out, args.out)
    return 0


def cmd_check(args):
    env = Env(args.max_depth, args.max_weight)
    v = evaluate(parse_expr(args.expr), env)
    try:
        rep = run_check(args.property, v, args.mode)
    except Inapplicable as exc:
        print("mouldlab: %s" % exc, file=sys.stderr)
        return 1
    holds = _report_holds(rep)
    data = rep.to_json()
    if args.format == "json":
        _write(_dump(data), args.out)
    else:
        lines = ["%s: %s" % (data["property"], "holds" if holds else "fails")]
        if isinstance(rep, checks.CheckReport):
            for r, e in sorted(rep.depths.items()):
                extra = " c%d = %s" % (r, e["constant"]) if "constant" in e else ""
                lines.append("  depth %d: %s%s" % (r, e["verdict"], extra))
        else:
            lines.append("  verdicts agree: %s, constants agree: %s" % (rep.verdicts_agree, rep.constants_agree))
            if rep.constants:
                lines.append("  constants: " + ", ".join("c%d = %s" % (r, c) for r, c in sorted(rep.constants.items())))
        if not holds:
            lines.append("witness: " + json.dumps(data.get("witnesses", data.get("conditions")), sort_keys=True))
        _write("\n".join(lines), args.out)
    return 0 if holds else 1


def cmd_report(args):
    from .acceptance import run_suite
    if args.suite != "acceptance":
        raise UsageError("unknown suite %r" % args.suite)
    report, timings = run_suite(seed=args.seed, max_depth=args.max_depth, max_weight=args.max_weight)
    if args.timings:
        report["timings"] = {str(k): round(v, 3) for k, v in timings.items()}
    if args.format == "json":
        text = _dump(report)
    else:
        lines = []
        for c in report["criteria"]:
            lines.append("[%s] %2d %s%s" % ("PASS" if c["passed"] else "FAIL", c["id"], c["name"],
                                            " (partial)" if c.get("partial") else ""))
            lines.append("       " + c["detail"])
        lines.append("overall: %s%s" % ("PASS" if report["passed"] else "FAIL",
                                        " (partial coverage)" if report["partial"] else ""))
        text = "\n".join(lines)
    _write(text, args.out)
    print("report finished in %.1fs" % timings["total"], file=sys.stderr)
    return 0 if report["passed"] else 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-depth", type=int, default=5)
    common.add_argument("--max-weight", type=int, default=14)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mode", choices=("strict", "corrected"), default="strict")

    p = _Parser(prog="mouldlab", description="Exact mould calculus toolkit.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    e = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    e.add_argument("expr")
    c = sub.add_parser("check", parents=[common], help="check a property of a mould")
    c.add_argument("property", choices=PROPERTIES)
    c.add_argument("expr")
    r = sub.add_parser("report", parents=[common], help="run the acceptance suite")
    r.add_argument("--suite", default="acceptance")
    r.add_argument("--timings", action="store_true", help="include per-criterion timings in the report")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return 2
        if args.max_depth < 1 or args.max_weight < 2:
            raise UsageError("--max-depth must be >= 1 and --max-weight >= 2")
        os.environ.setdefault("MOULDLAB_THREADS", "0")
        from .acceptance import thread_count
        thread_count()
        return {"eval": cmd_eval, "check": cmd_check, "report": cmd_report}[args.command](args)
    except ParseError as exc:
        print("mouldlab: parse error: %s\n%s" % (exc, exc.caret()), file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print("mouldlab: %s" % exc, file=sys.stderr)
        return 2
    except MouldlabError as exc:
        print("mouldlab: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
