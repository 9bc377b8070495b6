# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled permutation kernels.

Same contracts and the same raw keys as _kernels_py. The byte-key paths run
as C loops; composition stays on bytes.translate, which is already C. The
tuple fallback for degrees above 256 delegates to the pure module, so both
backends always agree on every input.
"""

from tigroups import _kernels_py as _py

BACKEND = "c"

IDENTITY_256 = bytes(range(256))


def key_from_images(images, degree):
    if degree <= 256:
        return bytes(images) + IDENTITY_256[degree:]
    return tuple(images)


def identity_key(degree):
    if degree <= 256:
        return IDENTITY_256
    return tuple(range(degree))


def compose(a, b):
    """a then b."""
    if type(a) is bytes:
        return a.translate(b)
    return _py.compose(a, b)


def inverse(a):
    if type(a) is not bytes:
        return _py.inverse(a)
    cdef const unsigned char[:] av = a
    cdef bytearray out = bytearray(256)
    cdef unsigned char[:] ov = out
    cdef int i
    for i in range(256):
        ov[av[i]] = <unsigned char> i
    return bytes(out)


def conjugate(x, g):
    """g^-1 * x * g in one pass: the result maps g[i] to g[x[i]]."""
    if type(x) is not bytes:
        return _py.conjugate(x, g)
    cdef const unsigned char[:] xv = x
    cdef const unsigned char[:] gv = g
    cdef bytearray out = bytearray(256)
    cdef unsigned char[:] ov = out
    cdef int i
    for i in range(256):
        ov[gv[i]] = gv[xv[i]]
    return bytes(out)


def power(a, n):
    if n < 0:
        a = inverse(a)
        n = -n
    result = identity_key(len(a))
    while n:
        if n & 1:
            result = compose(result, a)
        a = compose(a, a)
        n >>= 1
    return result


cdef long long _gcd(long long a, long long b):
    while b:
        a, b = b, a % b
    return a


def perm_order(a):
    if type(a) is not bytes:
        return _py.perm_order(a)
    cdef const unsigned char[:] av = a
    cdef unsigned char seen[256]
    cdef long long result = 1
    cdef long long length
    cdef int i, j
    for i in range(256):
        seen[i] = 0
    for i in range(256):
        if seen[i] or av[i] == i:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = av[j]
            length += 1
        result = result // _gcd(result, length) * length
    return result


def orbit_transversal(gens, root):
    """BFS orbit of a point. Returns {point: key mapping root to point} in
    discovery order, deterministic for a fixed generator order."""
    trans = {root: identity_key(len(gens[0]))}
    queue = [root]
    for p in queue:
        tp = trans[p]
        for g in gens:
            q = g[p]
            if q not in trans:
                trans[q] = compose(tp, g)
                queue.append(q)
    return trans


def orbit_points(gens, root):
    seen = {root}
    queue = [root]
    for p in queue:
        for g in gens:
            q = g[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def sift(x, bases, tinvs):
    """Reduce x through transversal levels.

    Returns (residue, levels consumed). Membership means full consumption
    with an identity residue.
    """
    cdef Py_ssize_t i, n = len(bases)
    for i in range(n):
        t = tinvs[i].get(x[bases[i]])
        if t is None:
            return x, i
        x = compose(x, t)
    return x, n


def closure_keys(gen_keys, cap):
    """Every product of the generators, or None once past cap elements."""
    cdef Py_ssize_t limit = cap
    seen = {identity_key(len(gen_keys[0]))}
    queue = list(seen)
    for x in queue:
        for g in gen_keys:
            y = compose(x, g)
            if y not in seen:
                if len(seen) >= limit:
                    return None
                seen.add(y)
                queue.append(y)
    return seen


def conjugate_set(keys, g, ginv):
    return frozenset(compose(compose(ginv, k), g) for k in keys)


def conjugacy_partition(keys, gen_keys):
    """Partition keys (closed under the generators' conjugation) into
    conjugacy classes. Classes come out ordered by least member, each class
    sorted."""
    pairs = [(g, inverse(g)) for g in gen_keys]
    remaining = set(keys)
    classes = []
    for root in sorted(keys):
        if root not in remaining:
            continue
        cls = {root}
        queue = [root]
        for x in queue:
            for g, ginv in pairs:
                y = compose(compose(ginv, x), g)
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        remaining -= cls
        classes.append(sorted(cls))
    return classes


def elements_from_chain(levels):
    """Yield every group element key exactly once.

    levels[i] is the list of level-i transversal keys in increasing point
    order; the yielded order is lexicographic in those per-level positions,
    outermost level varying slowest. About one compose per element.
    """
    if not levels:
        return
    k = len(levels)
    idx = [0] * k
    partial = [None] * (k + 1)
    partial[0] = identity_key(len(levels[0][0]))
    i = 0
    while True:
        while i < k:
            partial[i + 1] = compose(levels[i][idx[i]], partial[i])
            i += 1
        yield partial[k]
        i = k - 1
        while i >= 0 and idx[i] == len(levels[i]) - 1:
            idx[i] = 0
            i -= 1
        if i < 0:
            return
        idx[i] += 1
