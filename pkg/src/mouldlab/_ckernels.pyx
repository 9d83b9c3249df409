# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the sparse polynomial kernels in _pykernels."""

from gmpy2 import mpq

SHIFT = 16
MASK = (1 << SHIFT) - 1
ONE = mpq(1)


cpdef dict p_add(dict a, dict b):
    cdef dict out
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


cpdef p_add_into(dict out, dict b, scale):
    for k, c in b.items():
        c = c * scale
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]


cpdef dict p_scale(dict a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


cdef dict _prune(dict out):
    return {k: v for k, v in out.items() if v}


cpdef dict p_mul(dict a, dict b):
    cdef dict out = {}
    cdef list ai
    if len(a) < len(b):
        a, b = b, a
    ai = list(a.items())
    for kb, cb in b.items():
        for ka, ca in ai:
            k = ka + kb
            s = out.get(k)
            if s is None:
                out[k] = ca * cb
            else:
                out[k] = s + ca * cb
    return _prune(out)


cpdef dict p_mul_linear(dict a, list lin):
    cdef dict out = {}
    cdef list ai = list(a.items())
    for kl, cl in lin:
        for ka, ca in ai:
            k = ka + kl
            s = out.get(k)
            if s is None:
                out[k] = ca * cl
            else:
                out[k] = s + ca * cl
    return _prune(out)


cpdef p_div_linear(dict a, list lin, int lead):
    cdef int sh = SHIFT * lead
    cdef long e, top
    cdef dict buckets = {}
    cdef dict q = {}
    cdef dict bucket, low
    cdef list rest = []
    if not a:
        return {}
    unit = (<object>1) << sh
    clead = None
    for k, c in lin:
        if k == unit:
            clead = c
        else:
            rest.append((k, c))
    for k, c in a.items():
        e = (k >> sh) & MASK
        bucket = buckets.get(e)
        if bucket is None:
            buckets[e] = {k: c}
        else:
            bucket[k] = c
    top = max(buckets)
    for e in range(top, 0, -1):
        bucket = buckets.get(e)
        if not bucket:
            continue
        low = buckets.get(e - 1)
        if low is None:
            low = {}
            buckets[e - 1] = low
        for k, c in bucket.items():
            t = c / clead
            qk = k - unit
            q[qk] = t
            for kr, cr in rest:
                kk = qk + kr
                s = low.get(kk)
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


cdef class _Substituter:
    cdef int arity
    cdef list images
    cdef list powers

    def __init__(self, int arity, list images):
        self.arity = arity
        self.images = images
        self.powers = [[{0: ONE}] for _ in range(arity)]

    cdef dict power(self, int i, long e):
        cdef list pw = self.powers[i]
        while len(pw) <= e:
            pw.append(p_mul_linear(pw[len(pw) - 1], self.images[i]))
        return pw[e]

    cdef dict rec(self, dict terms, int var):
        cdef dict groups = {}
        cdef dict out = {}
        cdef dict g, inner
        cdef int sh
        cdef long e
        if var == self.arity:
            s = 0
            for c in terms.values():
                s += c
            return {0: s} if s else {}
        sh = SHIFT * var
        for k, c in terms.items():
            e = (k >> sh) & MASK
            g = groups.get(e)
            if g is None:
                groups[e] = {k: c}
            else:
                g[k] = c
        for e, g in groups.items():
            inner = self.rec(g, var + 1)
            if not inner:
                continue
            if e:
                inner = p_mul(inner, self.power(var, e))
            p_add_into(out, inner, ONE)
        return out


cpdef dict p_substitute(dict a, int arity, list images):
    if not a:
        return {}
    return _Substituter(arity, images).rec(a, 0)


cpdef dict p_shift(dict a, int offset):
    if not offset:
        return dict(a)
    sh = SHIFT * offset
    return {k << sh: v for k, v in a.items()}
