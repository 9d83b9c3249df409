"""Pure-Python sparse polynomial kernels.

A polynomial over Q is a dict mapping a packed exponent key to a nonzero
``gmpy2.mpq``.  Variable ``i`` occupies bits ``[SHIFT*i, SHIFT*(i+1))`` of the
key, so monomial multiplication is integer addition.  The compiled module
``_ckernels`` implements the same functions with the same signatures.
"""

from gmpy2 import mpq

SHIFT = 16
MASK = (1 << SHIFT) - 1
ONE = mpq(1)


def p_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    get = out.get
    for k, c in b.items():
        s = get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def p_add_into(out, b, scale):
    """out += scale * b, in place."""
    get = out.get
    for k, c in b.items():
        c = c * scale
        s = get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]


def p_scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def p_mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            s = get(k)
            if s is None:
                out[k] = ca * cb
            else:
                out[k] = s + ca * cb
    return {k: v for k, v in out.items() if v}


def p_mul_linear(a, lin):
    """Multiply by a linear form given as a list of (key, int coefficient)."""
    out = {}
    get = out.get
    for kl, cl in lin:
        for ka, ca in a.items():
            k = ka + kl
            s = get(k)
            if s is None:
                out[k] = ca * cl
            else:
                out[k] = s + ca * cl
    return {k: v for k, v in out.items() if v}


def p_div_linear(a, lin, lead):
    """Exact division by a linear form, or None when it does not divide.

    ``lin`` is a list of (key, coefficient) pairs; ``lead`` is the index of the
    variable whose coefficient is used as pivot.
    """
    if not a:
        return {}
    sh = SHIFT * lead
    unit = 1 << sh
    clead = None
    rest = []
    for k, c in lin:
        if k == unit:
            clead = c
        else:
            rest.append((k, c))
    buckets = {}
    for k, c in a.items():
        e = (k >> sh) & MASK
        bucket = buckets.get(e)
        if bucket is None:
            buckets[e] = {k: c}
        else:
            bucket[k] = c
    q = {}
    top = max(buckets)
    for e in range(top, 0, -1):
        bucket = buckets.get(e)
        if not bucket:
            continue
        low = buckets.get(e - 1)
        if low is None:
            low = buckets[e - 1] = {}
        get = low.get
        for k, c in bucket.items():
            t = c / clead
            qk = k - unit
            q[qk] = t
            for kr, cr in rest:
                kk = qk + kr
                s = get(kk)
                if s is None:
                    low[kk] = -t * cr
                else:
                    s = s - t * cr
                    if s:
                        low[kk] = s
                    else:
                        del low[kk]
    if buckets.get(0):
        return None
    return q


def p_substitute(a, arity, images):
    """Compose with linear images; images[i] is a list of (key, coefficient)."""
    if not a:
        return {}
    one = {0: ONE}
    powers = [[one] for _ in range(arity)]

    def power(i, e):
        pw = powers[i]
        while len(pw) <= e:
            pw.append(p_mul_linear(pw[-1], images[i]))
        return pw[e]

    def rec(terms, var):
        if var == arity:
            s = 0
            for c in terms.values():
                s += c
            return {0: s} if s else {}
        sh = SHIFT * var
        groups = {}
        for k, c in terms.items():
            e = (k >> sh) & MASK
            g = groups.get(e)
            if g is None:
                groups[e] = {k: c}
            else:
                g[k] = c
        out = {}
        for e, g in groups.items():
            inner = rec(g, var + 1)
            if not inner:
                continue
            if e:
                inner = p_mul(inner, power(var, e))
            p_add_into(out, inner, ONE)
        return out

    return rec(a, 0)


def p_shift(a, offset):
    """Rename variable i to variable i + offset."""
    if not offset:
        return dict(a)
    sh = SHIFT * offset
    return {k << sh: v for k, v in a.items()}

