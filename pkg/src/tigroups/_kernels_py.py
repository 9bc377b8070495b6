"""Pure-Python permutation kernels.

Raw representation, shared with the optional compiled backend: a permutation
on up to 256 points is a 256-byte ``bytes`` object whose entry i is the image
of point i, padded with fixed points above the degree. The padding makes every
key a valid ``bytes.translate`` table, so composition runs at C speed even
here. Degrees above 256 fall back to tuples of ints; the two kinds never mix
inside one group.

Composition is left to right everywhere: compose(a, b)[i] = b[a[i]].
"""

from math import lcm

BACKEND = "python"

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
    return tuple(b[v] for v in a)


def inverse(a):
    if type(a) is bytes:
        r = bytearray(256)
        for i, v in enumerate(a):
            r[v] = i
        return bytes(r)
    r = [0] * len(a)
    for i, v in enumerate(a):
        r[v] = i
    return tuple(r)


def conjugate(x, g):
    """g^-1 * x * g in one pass: the result maps g[i] to g[x[i]]."""
    if type(x) is bytes:
        r = bytearray(256)
        for i in range(256):
            r[g[i]] = g[x[i]]
        return bytes(r)
    r = [0] * len(x)
    for i in range(len(x)):
        r[g[i]] = g[x[i]]
    return tuple(r)


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


def perm_order(a):
    seen = bytearray(len(a))
    result = 1
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            length += 1
        result = lcm(result, length)
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
    for i, b in enumerate(bases):
        t = tinvs[i].get(x[b])
        if t is None:
            return x, i
        x = compose(x, t)
    return x, len(bases)


def closure_keys(gen_keys, cap):
    """Every product of the generators, or None once past cap elements."""
    seen = {identity_key(len(gen_keys[0]))}
    queue = list(seen)
    for x in queue:
        for g in gen_keys:
            y = compose(x, g)
            if y not in seen:
                if len(seen) >= cap:
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
