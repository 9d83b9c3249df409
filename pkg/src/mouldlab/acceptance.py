"""The acceptance suite, shared by ``mouldlab report`` and the test-suite.

Each criterion is a function ``(ctx) -> dict`` returning at least ``passed``
and ``detail``.  Results depend only on the seed and the truncation, never on
scheduling; timings are kept out of the deterministic part of the report.
"""

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor

from .checks import classify_fay_residue, verify_equivalences
from .exactalg import Poly, RatFun, Scalar, mpq, ratfun_equal, variable_form
from .flexion import darit_apply, darit_exp_apply, mu_exp
from .library import (CorrectionSpec, build_That01, build_U1, exp_fay_correction,
                      random_polynomial_mould, strict_family,
                      synthesize_corrected_mould, thm34_correction, thm32_correction)
from .mouldcore import (Mould, dar, dar_inv, delta, fay_operator, generator_a)
from .ncseries import build_t01_nc, ma_with_a

NOMINAL_DEPTH = 5
TIME_BUDGET = 600.0

DISCLOSURE = (
    "Not reproduced: any quantity built from the true elliptic generating "
    "series or the elliptic associator, i.e. the correction formulas applied "
    "to e(tau) and A(tau), and the displayed depth-4 values that presuppose "
    "their depth-1 parts.  Criteria 2-7 check the same formulas at formula "
    "level and against brute-force oracles instead."
)


class Context:
    def __init__(self, seed=0, max_depth=NOMINAL_DEPTH, max_weight=14):
        self.seed = seed
        self.max_depth = max_depth
        self.max_weight = max_weight
        self.partial = False

    def depth(self, nominal):
        """Depth actually used for a criterion whose nominal depth is given."""
        scale = min(1.0, self.max_depth / NOMINAL_DEPTH)
        d = max(2, min(nominal, int(nominal * scale)))
        if d < nominal:
            self.partial = True
        return d

    def rng(self, tag):
        return random.Random("%d:%s" % (self.seed, tag))


def _corrected_profiles(ctx):
    z3 = Scalar.zeta(3, mpq(1, 3))
    z5 = Scalar.zeta(5, mpq(1, 5))
    profiles = [
        ("c3=z3/3", [2, 3], {2: 3, 3: 4}, {3: z3}),
        ("c3=z3/3,depth1", [1, 2, 3], {1: 2, 2: 3, 3: 4}, {3: z3}),
        ("c3=2/7,c5=z5/5", [3, 4, 5], {3: 4, 4: 5, 5: 6}, {3: Scalar(mpq(2, 7)), 5: z5}),
    ]
    d = ctx.depth(5)
    out = []
    for k, (label, prof, w, consts) in enumerate(profiles):
        prof = [r for r in prof if r <= d]
        consts = {r: c for r, c in consts.items() if r <= d}
        if not prof:
            continue
        M = synthesize_corrected_mould(prof, w, consts, seed=ctx.seed * 101 + k, max_depth=d)
        out.append((label, M, CorrectionSpec(consts)))
    return out


def _even_R(ctx, tag, max_depth):
    """Random R = dar Q, even in depth 1 (so Q is odd there)."""
    rng = ctx.rng(tag)
    Q = random_polynomial_mould(rng, [1, 2], max_degree=2, max_depth=max_depth, parity1="odd")
    return dar(Q)


def _mould_str(m):
    return "; ".join(m.lines()) if not m.is_zero() else "0"


# ---------------------------------------------------------------- criteria

def crit1(ctx):
    d = ctx.depth(10)
    F = fay_operator(dar_inv(build_That01(d)))
    nonzero = [r for r in range(2, d + 1) if F[r]]
    return {"passed": not nonzero,
            "detail": "F(That01') over depths 2..%d; nonzero at %s" % (d, nonzero or "none")}


def _expected_thm34(r):
    if r in (2, 4):
        return RatFun.zero(r)
    if r == 3:
        return RatFun.from_poly(Poly.linear([0, 1, 1]).scale(Scalar.zeta(3)))
    tail = RatFun.from_poly(Poly.linear([0, 1, 1, 1, 1]).scale(Scalar.zeta(5)))

    def piece(i):
        num = Poly.linear([1 if k == i else -1 if k == i + 1 else 0 for k in range(5)])
        return RatFun(num.scale(mpq(1, 12))).div_forms([variable_form(i, 5), variable_form(i + 1, 5)])
    return tail + (piece(1) - piece(3)).scale(Scalar.zeta(3))


def crit2(ctx):
    rs = [r for r in (2, 3, 4, 5) if r <= max(ctx.depth(5), 2)]
    got = {r: thm34_correction(r) for r in rs}
    bad = [r for r in rs if not ratfun_equal(got[r], _expected_thm34(r))]
    return {"passed": not bad,
            "detail": "; ".join("r=%d: %s" % (r, got[r]) for r in rs)}


def crit3(ctx):
    d = ctx.depth(4)
    fam = strict_family(d, ctx.max_weight)
    rows = []
    ok = len(fam) >= 6 or ctx.partial
    for label, M, w in fam:
        rep = verify_equivalences(M, None, "strict")
        good = rep.all_hold and rep.verdicts_agree
        ok = ok and good
        rows.append("%s(w=%d):%s" % (label, w, "ok" if good else "FAIL"))
    return {"passed": ok and bool(fam), "detail": "%d instances; %s" % (len(fam), ", ".join(rows))}


def crit4(ctx):
    rows = []
    ok = True
    inst = _corrected_profiles(ctx)
    for label, M, C in inst:
        rep = verify_equivalences(M, C, "corrected")
        shapes_ok = True
        res = fay_operator(dar_inv(delta(M)))
        for r in range(2, M.max_depth + 1):
            shape, c = classify_fay_residue(res[r])
            if shape not in ("zero", "tail") or c != C[r]:
                shapes_ok = False
        good = rep.ok and shapes_ok
        ok = ok and good
        rows.append("%s: constants %s %s" % (label, {r: str(c) for r, c in sorted(rep.constants.items())},
                                              "ok" if good else "FAIL"))
    has_z3 = ctx.depth(5) < 3 or any(C[3] == Scalar.zeta(3, mpq(1, 3)) for _, _, C in inst)
    return {"passed": ok and has_z3 and (len(inst) >= 3 or ctx.partial), "detail": "; ".join(rows)}


def _brute_fay(N, R):
    return fay_operator(dar_inv(darit_apply(N, R)))


def crit5(ctx):
    d = ctx.depth(4)
    strict = strict_family(d, ctx.max_weight)[:2]
    pairs = []
    for label, M, _ in strict:
        pairs.append((label, M.truncate(d), CorrectionSpec()))
    for label, M, C in _corrected_profiles(ctx)[:2]:
        pairs.append((label, M.truncate(d), C))
    rows = []
    ok = True
    count = 0
    for label, M, C in pairs:
        for rname, R in (("That01", build_That01(d)), ("evenR", _even_R(ctx, label, d))):
            CR = fay_operator(dar_inv(R))
            formula = thm32_correction(M, C, R, CR)
            brute = _brute_fay(delta(M), R)
            good = all(ratfun_equal(formula[r], brute[r]) for r in range(2, d + 1))
            ok = ok and good
            count += 1
            rows.append("%s/%s:%s" % (label, rname, "ok" if good else "FAIL"))
    return {"passed": ok and (count >= 5 or ctx.partial), "detail": "%d pairs; %s" % (count, ", ".join(rows))}


def crit6(ctx):
    d = ctx.depth(5)
    label, M, _ = strict_family(min(d, 4), ctx.max_weight)[0]
    M = Mould(M.comps, d)
    E = darit_exp_apply(delta(M), build_That01(d), order=d)
    F = fay_operator(dar_inv(E))
    nonzero = [r for r in range(2, d + 1) if F[r]]
    return {"passed": not nonzero,
            "detail": "M=%s, depths 2..%d, nonzero at %s" % (label, d, nonzero or "none")}


def _three_product(G):
    """1/2 [G(u1)G(u2) + G(-u1)G(u1+u2) + G(u2)G(-u1-u2)] for a depth-1 G."""
    def at(vec):
        return G.substitute([vec], 2)
    t = at([1, 0]) * at([0, 1]) + at([-1, 0]) * at([1, 1]) + at([0, 1]) * at([-1, -1])
    return t.scale(mpq(1, 2))


def crit7(ctx):
    d = ctx.depth(4)
    rng = ctx.rng("crit7")
    rows = []
    ok = True
    for k in range(3):
        P = dar(random_polynomial_mould(rng, range(1, d + 1), max_degree=2, max_depth=d))
        Pp = dar_inv(P)
        CP = fay_operator(Pp)
        formula = exp_fay_correction(P, CP)
        brute = fay_operator(mu_exp(Pp))
        good = all(ratfun_equal(formula[r], brute[r]) for r in range(1, d + 1))
        G = Pp[1]
        sym = ratfun_equal(formula[2] - CP[2], _three_product(G))
        ok = ok and good and sym
        rows.append("P%d: oracle %s, depth-2 display %s" % (k, "ok" if good else "FAIL", "ok" if sym else "FAIL"))
    return {"passed": ok, "detail": "; ".join(rows)}


def crit8(ctx):
    from .properties import run_property_suite
    results = run_property_suite(seed=ctx.seed, instances=20, max_depth=min(ctx.depth(4), 4))
    bad = [name for name, (passed, n) in results.items() if not passed or n < 20]
    return {"passed": not bad,
            "detail": "%d properties x 20 instances; failing: %s" % (len(results), bad or "none")}


def crit9(ctx):
    w = 9 if ctx.max_depth >= NOMINAL_DEPTH else max(3, 2 * ctx.max_depth - 1)
    if w < 9:
        ctx.partial = True
    lhs = ma_with_a(build_t01_nc(w), w - 1)
    rhs = generator_a(w - 1).scale(-1) + build_U1(w - 1).scale(mpq(-1, 2)) + build_That01(w - 1)
    return {"passed": lhs == rhs, "detail": "through weight %d: %s" % (w, "match" if lhs == rhs else "MISMATCH")}


def crit10(ctx, elapsed=None):
    out = {"passed": True, "detail": DISCLOSURE}
    if elapsed is not None:
        out["passed"] = elapsed < TIME_BUDGET
        out["within_budget"] = out["passed"]
    return out


CRITERIA = [
    (1, "Fay relations of That01' vanish (depths 2..10)", crit1),
    (2, "odd-depth zeta correction table for r = 2..5", crit2),
    (3, "strict three-way equivalence on the dari-bracket family", crit3),
    (4, "corrected three-way equivalence on synthesized moulds", crit4),
    (5, "Darit correction formula vs brute-force Fay defect", crit5),
    (6, "strict propagation along exp(Darit)", crit6),
    (7, "group-like exponential Fay correction", crit7),
    (8, "operator-algebra property suite", crit8),
    (9, "noncommutative t01 cross-check through weight 9", crit9),
    (10, "non-reproducibility disclosure and runtime budget", crit10),
]


def _run_one(args):
    cid, seed, max_depth, max_weight = args
    ctx = Context(seed, max_depth, max_weight)
    fn = dict((c, f) for c, _, f in CRITERIA)[cid]
    t = time.perf_counter()
    try:
        res = fn(ctx)
    except Exception as exc:
        res = {"passed": False, "detail": "error: %s: %s" % (type(exc).__name__, exc)}
    res["partial"] = ctx.partial
    return cid, res, time.perf_counter() - t


def thread_count():
    raw = os.environ.get("MOULDLAB_THREADS", "0").strip() or "0"
    n = int(raw)
    if n < 0:
        raise ValueError("MOULDLAB_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def run_suite(seed=0, max_depth=NOMINAL_DEPTH, max_weight=14, only=None, workers=None):
    """Run the criteria; returns (report dict, timings dict)."""
    ids = [c for c, _, _ in CRITERIA if c != 10 and (only is None or c in only)]
    jobs = [(c, seed, max_depth, max_weight) for c in ids]
    workers = thread_count() if workers is None else workers
    t0 = time.perf_counter()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
            done = list(ex.map(_run_one, jobs))
    else:
        done = [_run_one(j) for j in jobs]
    elapsed = time.perf_counter() - t0
    results = {cid: res for cid, res, _ in done}
    timings = {cid: t for cid, _, t in done}
    if only is None or 10 in only:
        results[10] = crit10(Context(seed, max_depth, max_weight), elapsed)
        results[10]["partial"] = False
        timings[10] = 0.0
    names = dict((c, n) for c, n, _ in CRITERIA)
    criteria = []
    for cid in sorted(results):
        res = dict(results[cid])
        entry = {"id": cid, "name": names[cid], "passed": bool(res.pop("passed"))}
        entry.update(res)
        criteria.append(entry)
    report = {
        "suite": "acceptance",
        "seed": seed,
        "max_depth": max_depth,
        "max_weight": max_weight,
        "partial": any(c.get("partial") for c in criteria),
        "passed": all(c["passed"] for c in criteria),
        "criteria": criteria,
    }
    timings["total"] = elapsed
    return report, timings
