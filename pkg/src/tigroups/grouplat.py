"""Subgroup lattice computations: normalizers, closures, Sylow and Hall
subgroups, normal structure, chief series, quotients and isomorphism tests.

Scale policy: everything here is exact. Operations that must touch every
element stream through the stabilizer chain and respect bounds.enum;
operations that must hold an element set in memory additionally respect
MATERIALIZE_CAP. Structural operations (closures, commutators, series) work
on chains only and scale to any order the chain handles. Oversized requests
raise BoundExceeded rather than degrade.
"""

from collections import Counter
from dataclasses import dataclass
from math import gcd

from tigroups import kernels
from tigroups.arith import factorint, is_prime, pi_part, prime_set
from tigroups.errors import BoundExceeded, InvalidInput
from tigroups.permcore import (
    DEFAULT_BOUNDS,
    MATERIALIZE_CAP,
    Bounds,
    Permutation,
    PermutationGroup,
    build_chain,
)

# Regular-ish quotient images get real permutation degrees; past this index
# the relabeled action is too wide to be useful.
QUOTIENT_INDEX_BOUND = 20000

# Safety valve for subgroup sweeps on hostile inputs (think large elementary
# abelian groups, where the class count stays small but the subgroup count
# explodes). The order gate is bounds.subgroups; this one is not configurable.
_CLASS_CAP = 20000


def _gen_pairs(G):
    return [(g, kernels.inverse(g)) for g in G.gen_keys]


def _material_cap(bounds):
    return min(bounds.enum, MATERIALIZE_CAP)


def _chain_key_set(chain):
    if not chain.base:
        return frozenset((kernels.identity_key(chain.degree),))
    return frozenset(kernels.elements_from_chain(chain.sorted_transversals()))


def _reduce_keys(degree, keys_sorted, target_order=None):
    """Greedy generating subset of a known subgroup's element keys, scanned
    in the given order. Deterministic."""
    gens = []
    chain = build_chain(degree, gens)
    for k in keys_sorted:
        if not chain.contains_key(k):
            gens.append(k)
            chain = build_chain(degree, gens)
            if target_order is not None and chain.order == target_order:
                break
    return gens, chain


def _group_from_key_set(G, keys):
    gens, _ = _reduce_keys(G.degree, sorted(keys), target_order=len(keys))
    return G.subgroup_from_keys(gens)


def trivial_subgroup(G):
    return PermutationGroup([], degree=G.degree, parent=G)


def closure(G, elems):
    """Subgroup of G generated by the given permutations."""
    elems = list(elems)
    for x in elems:
        if x not in G:
            raise InvalidInput("closure element %r lies outside the group" % (x,))
    return G.subgroup(elems)


def join(G, A, B):
    return PermutationGroup(list(A.generators) + list(B.generators), degree=G.degree, parent=G)


def intersection(A, B, parent=None, bounds=DEFAULT_BOUNDS):
    """A meet B, by filtering the smaller group's elements."""
    if A.degree != B.degree:
        raise InvalidInput("degree mismatch: %d vs %d" % (A.degree, B.degree))
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    gens = []
    chain = build_chain(small.degree, gens)
    for k in small.iter_element_keys(bounds.enum):
        if chain.contains_key(k) or not big.contains_key(k):
            continue
        gens.append(k)
        chain = build_chain(small.degree, gens)
    return PermutationGroup.from_keys(gens, small.degree, parent=parent)


def _grow_filtered(G, seed_keys, accept, bounds):
    """Subgroup of G of all elements passing `accept`, provided they form
    one. Streams G once; membership in the partial result short-circuits."""
    gens = []
    chain = build_chain(G.degree, gens)
    for k in seed_keys:
        if not chain.contains_key(k):
            gens.append(k)
            chain = build_chain(G.degree, gens)
    for k in G.iter_element_keys(bounds.enum):
        if chain.contains_key(k):
            continue
        if not accept(k):
            continue
        gens.append(k)
        chain = build_chain(G.degree, gens)
        if chain.order == G.order():
            break
    return G.subgroup_from_keys(gens)


def normalizer(G, H, bounds=DEFAULT_BOUNDS):
    """N_G(H). H need not be contained in G."""
    if G.degree != H.degree:
        raise InvalidInput("degree mismatch: %d vs %d" % (G.degree, H.degree))
    cached = G._cache.get(("normalizer", H.gen_keys))
    if cached is not None:
        return cached
    hgens = H.gen_keys
    if not hgens:
        return G

    def accept(k):
        ki = kernels.inverse(k)
        return all(H.contains_key(kernels.compose(kernels.compose(ki, h), k)) for h in hgens)

    seed = hgens if all(G.contains_key(h) for h in hgens) else ()
    N = _grow_filtered(G, seed, accept, bounds)
    G._cache[("normalizer", H.gen_keys)] = N
    return N


def centralizer(G, target, bounds=DEFAULT_BOUNDS):
    """C_G(x) for a permutation or C_G(H) for a group."""
    if isinstance(target, Permutation):
        tkeys = (target.key,)
        tdeg = target.degree
    elif isinstance(target, PermutationGroup):
        tkeys = target.gen_keys
        tdeg = target.degree
    else:
        raise InvalidInput("centralizer target must be a Permutation or PermutationGroup")
    if G.degree != tdeg:
        raise InvalidInput("degree mismatch: %d vs %d" % (G.degree, tdeg))
    if not tkeys:
        return G

    def accept(k):
        return all(kernels.compose(k, t) == kernels.compose(t, k) for t in tkeys)

    seed = [t for t in tkeys if accept(t) and G.contains_key(t)]
    return _grow_filtered(G, seed, accept, bounds)


def core(G, H, bounds=DEFAULT_BOUNDS):
    """Largest normal subgroup of G contained in H: the intersection of the
    conjugates of H, reached by intersecting with conjugates until stable."""
    if not H.is_subgroup_of(G):
        raise InvalidInput("core is defined for subgroups of G")
    K = frozenset(H.element_key_set(bounds.enum))
    pairs = _gen_pairs(G)
    changed = True
    while changed:
        changed = False
        for g, gi in pairs:
            Kg = kernels.conjugate_set(K, g, gi)
            if Kg != K:
                K = K & Kg
                changed = True
    return _group_from_key_set(G, K)


def normal_closure(G, seed, bounds=DEFAULT_BOUNDS):
    """Smallest normal subgroup of G containing the seed group or
    permutations. Chain-based; never enumerates elements."""
    if isinstance(seed, PermutationGroup):
        seed_keys = list(seed.gen_keys)
    else:
        seed_keys = [x.key for x in seed]
    idk = kernels.identity_key(G.degree)
    gens = []
    for k in seed_keys:
        if k != idk and k not in gens:
            gens.append(k)
    chain = build_chain(G.degree, gens)
    pairs = _gen_pairs(G)
    queue = list(gens)
    for x in queue:
        for g, gi in pairs:
            y = kernels.compose(kernels.compose(gi, x), g)
            if not chain.contains_key(y):
                gens.append(y)
                chain = build_chain(G.degree, gens)
                queue.append(y)
    return G.subgroup_from_keys(gens)


def commutator(G, A, B, bounds=DEFAULT_BOUNDS):
    """[A, B] inside G: the normal closure in <A, B> of the generator
    commutators."""
    idk = kernels.identity_key(G.degree)
    comms = []
    for a in A.gen_keys:
        ai = kernels.inverse(a)
        for b in B.gen_keys:
            k = kernels.compose(
                kernels.compose(ai, kernels.inverse(b)), kernels.compose(a, b)
            )
            if k != idk and k not in comms:
                comms.append(k)
    J = PermutationGroup.from_keys(
        tuple(A.gen_keys) + tuple(B.gen_keys), G.degree, parent=G
    )
    N = normal_closure(J, [Permutation._from_key(k, G.degree) for k in comms], bounds)
    return G.subgroup_from_keys(N.gen_keys)


def derived_series(G, bounds=DEFAULT_BOUNDS):
    """[G, G', G'', ...] down to the first repeated (perfect) term or the
    trivial group, whichever comes first."""
    series = [G]
    cur = G
    while cur.order() > 1:
        nxt = commutator(G, cur, cur, bounds)
        if nxt.order() == cur.order():
            break
        series.append(nxt)
        cur = nxt
    return series


def is_solvable(G, bounds=DEFAULT_BOUNDS):
    return derived_series(G, bounds)[-1].order() == 1


def is_perfect(G, bounds=DEFAULT_BOUNDS):
    return commutator(G, G, G, bounds).order() == G.order()


def _p_element_key(k, p):
    """p-part of an element: the power of order the p-part of its order."""
    n = kernels.perm_order(k)
    m = n
    while m % p == 0:
        m //= p
    return kernels.power(k, m)


def sylow(G, p, bounds=DEFAULT_BOUNDS):
    """A Sylow p-subgroup, grown by normalizer climbing. Deterministic."""
    if not is_prime(p):
        raise InvalidInput("%r is not prime" % (p,))
    n = G.order()
    target = 1
    while n % p == 0:
        target *= p
        n //= p
    if target == 1:
        return trivial_subgroup(G)
    seed = None
    for k in G.iter_element_keys(bounds.enum):
        if kernels.perm_order(k) % p == 0:
            seed = _p_element_key(k, p)
            break
    P = G.subgroup_from_keys([seed])
    while P.order() < target:
        N = normalizer(G, P, bounds)
        for k in N.iter_element_keys(bounds.enum):
            if kernels.perm_order(k) % p != 0:
                continue
            y = _p_element_key(k, p)
            if not P.contains_key(y):
                # P is normal in N, so adding a p-element of N keeps a p-group
                P = G.subgroup_from_keys(tuple(P.gen_keys) + (y,))
                break
        else:
            raise RuntimeError("normalizer of a non-Sylow p-subgroup gained no p-element")
    return P


def is_hall_in(H, G):
    """Whether |H| is coprime to its index in G."""
    if not H.is_subgroup_of(G):
        raise InvalidInput("is_hall_in expects a subgroup of G")
    h = H.order()
    return gcd(h, G.order() // h) == 1


def hall(G, pi, bounds=DEFAULT_BOUNDS):
    """A Hall pi-subgroup, or None if G provably has none.

    Tries the join of Sylow subgroups first, then sweeps subgroup classes.
    None is only returned after a completed sweep, so the order gate of
    subgroups_up_to_conjugacy applies whenever a real search is needed.
    """
    pi = frozenset(pi)
    for p in pi:
        if not is_prime(p):
            raise InvalidInput("%r is not prime" % (p,))
    n = G.order()
    target = pi_part(n, pi)
    if target == 1:
        return trivial_subgroup(G)
    if target == n:
        return G
    if n > bounds.subgroups:
        raise BoundExceeded(
            "hall search limited to order %d, group has order %d"
            % (bounds.subgroups, n),
            bound=bounds.subgroups, needed=n,
        )
    keys = ()
    for p in sorted(pi & prime_set(n)):
        keys = keys + sylow(G, p, bounds).gen_keys
    J = G.subgroup_from_keys(keys)
    if J.order() == target:
        return J
    for S in subgroups_up_to_conjugacy(G, bounds):
        if S.order() == target:
            return S
    return None


@dataclass(frozen=True)
class ConjugacyClass:
    rep: Permutation
    size: int
    keys: tuple

    @property
    def element_order(self):
        return self.rep.order()


def conjugacy_classes(G, bounds=DEFAULT_BOUNDS):
    """Conjugacy classes ordered by element order, ties broken by least
    member; the identity class comes first. Requires materializing the
    group."""
    cached = G._cache.get("conjugacy_classes")
    if cached is not None:
        return cached
    keys = G.element_key_set(bounds.enum)
    parts = kernels.conjugacy_partition(keys, G.gen_keys)
    parts = sorted(parts, key=lambda cls: (kernels.perm_order(cls[0]), cls[0]))
    out = []
    for cls in parts:
        out.append(
            ConjugacyClass(
                rep=Permutation._from_key(cls[0], G.degree),
                size=len(cls),
                keys=tuple(cls),
            )
        )
    G._cache["conjugacy_classes"] = out
    return out


def _subgroup_orbit_tagged(fs, tag, pairs):
    """Orbit of a subgroup's element set under conjugation, carrying a tag
    key conjugated in step (used to keep a generator per orbit member)."""
    nodes = [(fs, tag)]
    seen = {fs}
    for node_fs, node_tag in nodes:
        for g, gi in pairs:
            img = kernels.conjugate_set(node_fs, g, gi)
            if img not in seen:
                seen.add(img)
                nodes.append((img, kernels.compose(kernels.compose(gi, node_tag), g)))
    return nodes


def _canon_key(fs):
    return tuple(sorted(fs))


def subgroups_up_to_conjugacy(G, bounds=DEFAULT_BOUNDS):
    """One representative per conjugacy class of subgroups, sorted by order
    then by canonical element set.

    Classes are found by joining known class representatives with conjugates
    of cyclic subgroups; since every subgroup is a join of cyclic ones, the
    sweep is complete.
    """
    cached = G._cache.get("subgroup_classes")
    if cached is not None:
        return cached
    degree = G.degree
    n = G.order()
    if n > bounds.subgroups:
        raise BoundExceeded(
            "subgroup sweep limited to order %d, group has order %d"
            % (bounds.subgroups, n),
            bound=bounds.subgroups, needed=n,
        )
    pairs = _gen_pairs(G)
    idk = kernels.identity_key(degree)

    class_fs = []
    class_gens = []
    seen = {}

    def register(fs):
        idx = seen.get(fs)
        if idx is not None:
            return idx, False
        if len(class_fs) >= _CLASS_CAP:
            raise BoundExceeded(
                "more than %d subgroup classes" % (_CLASS_CAP,),
                bound=_CLASS_CAP,
            )
        orbit = [fs]
        orb_seen = {fs}
        for node in orbit:
            for g, gi in pairs:
                img = kernels.conjugate_set(node, g, gi)
                if img not in orb_seen:
                    orb_seen.add(img)
                    orbit.append(img)
        canon = min(orbit, key=_canon_key)
        gens, _ = _reduce_keys(degree, sorted(canon), target_order=len(canon))
        idx = len(class_fs)
        class_fs.append(canon)
        class_gens.append(tuple(gens))
        for member in orbit:
            seen[member] = idx
        return idx, True

    register(frozenset((idk,)))
    queue = []
    cyclic_members = []
    for cls in conjugacy_classes(G, bounds):
        x = cls.rep.key
        if x == idk:
            continue
        fs = frozenset(kernels.power(x, e) for e in range(kernels.perm_order(x)))
        idx = seen.get(fs)
        if idx is None:
            for member_fs, member_gen in _subgroup_orbit_tagged(fs, x, pairs):
                cyclic_members.append((member_fs, member_gen))
            idx, fresh = register(fs)
            queue.append(idx)

    pos = 0
    while pos < len(queue):
        idx = queue[pos]
        pos += 1
        base_fs = class_fs[idx]
        base_gens = class_gens[idx]
        if len(base_fs) == n:
            continue
        for member_fs, member_gen in cyclic_members:
            if member_gen in base_fs:
                continue
            chain = build_chain(degree, list(base_gens) + [member_gen])
            if chain.order > n:
                raise RuntimeError("join escaped the ambient group")
            jfs = _chain_key_set(chain)
            jidx, fresh = register(jfs)
            if fresh:
                queue.append(jidx)

    order_idx = sorted(range(len(class_fs)), key=lambda i: (len(class_fs[i]), _canon_key(class_fs[i])))
    out = [G.subgroup_from_keys(class_gens[i]) for i in order_idx]
    G._cache["subgroup_classes"] = out
    return out


def _normal_sets(G, bounds):
    """All normal subgroups as (element frozenset, generator tuple), sorted.
    Normal subgroups are exactly the joins of normal closures of elements."""
    cached = G._cache.get("normal_sets")
    if cached is not None:
        return cached
    degree = G.degree
    idk = kernels.identity_key(degree)
    atoms = {}
    for cls in conjugacy_classes(G, bounds):
        if cls.rep.key == idk:
            continue
        N = normal_closure(G, [cls.rep], bounds)
        fs = _chain_key_set(N.chain)
        if fs not in atoms:
            atoms[fs] = N.gen_keys
    normals = {frozenset((idk,)): ()}
    normals.update(atoms)
    queue = list(atoms.items())
    for fs, gens in queue:
        for afs, agens in atoms.items():
            if afs <= fs:
                continue
            chain = build_chain(degree, list(gens) + list(agens))
            jfs = _chain_key_set(chain)
            if jfs not in normals:
                jgens, _ = _reduce_keys(degree, sorted(jfs), target_order=len(jfs))
                normals[jfs] = tuple(jgens)
                queue.append((jfs, tuple(jgens)))
    out = sorted(normals.items(), key=lambda item: (len(item[0]), _canon_key(item[0])))
    G._cache["normal_sets"] = out
    return out


def normal_subgroups(G, bounds=DEFAULT_BOUNDS):
    """Every normal subgroup, sorted by order then canonical element set."""
    return [G.subgroup_from_keys(gens) for fs, gens in _normal_sets(G, bounds)]


def minimal_normal_subgroups(G, bounds=DEFAULT_BOUNDS):
    sets = _normal_sets(G, bounds)
    nontrivial = [(fs, gens) for fs, gens in sets if len(fs) > 1]
    out = []
    for fs, gens in nontrivial:
        if not any(other < fs for other, _ in nontrivial):
            out.append(G.subgroup_from_keys(gens))
    return out


def _coset_rep_fn(N):
    """Canonical coset representative of N*g: the element minimizing its
    images on N's base points, found level by level through N's chain."""
    chain = N.chain

    def rep(key):
        for orbit in chain.orbits:
            best = None
            bestval = None
            for p in orbit:
                v = key[p]
                if bestval is None or v < bestval:
                    bestval = v
                    best = p
            key = kernels.compose(orbit[best], key)
        return key

    return rep


class Quotient:
    """G/N as a permutation group on coset indices, with projection, lifts
    and exact preimages.

    The action on cosets is regular, so a subgroup of the image is pulled
    back exactly from the stored coset representatives; nothing is
    approximated. When N is trivial the quotient is an identity view of G
    itself (no relabeling)."""

    __slots__ = ("parent", "kernel", "group", "index", "_rep", "_reps", "_index_of")

    def __init__(self, parent, kernel, group, rep, reps, index_of):
        self.parent = parent
        self.kernel = kernel
        self.group = group
        self.index = parent.order() // kernel.order()
        self._rep = rep
        self._reps = reps
        self._index_of = index_of

    def project(self, x):
        if self._reps is None:
            return x
        if x.degree != self.parent.degree:
            raise InvalidInput("degree mismatch in projection")
        rep = self._rep
        index_of = self._index_of
        xk = x.key
        images = [index_of[rep(kernels.compose(r, xk))] for r in self._reps]
        return Permutation(images)

    def project_group(self, H):
        if self._reps is None:
            return H
        return PermutationGroup(
            [self.project(h) for h in H.generators],
            degree=self.group.degree,
            parent=self.group,
        )

    def lift(self, q):
        if self._reps is None:
            return q
        return Permutation._from_key(self._reps[q.key[0]], self.parent.degree)

    def preimage(self, S):
        """Full preimage of S <= image group, exact by regularity."""
        if self._reps is None:
            return PermutationGroup(S.generators, degree=self.parent.degree, parent=self.parent)
        keys = list(self.kernel.gen_keys)
        for s in S.generators:
            keys.append(self._reps[s.key[0]])
        return PermutationGroup.from_keys(keys, self.parent.degree, parent=self.parent)


def quotient(G, N, bounds=DEFAULT_BOUNDS):
    """G/N for N normal in G."""
    if not N.is_subgroup_of(G):
        raise InvalidInput("quotient kernel must be a subgroup")
    if not N.is_normal_in(G):
        raise InvalidInput("quotient kernel must be normal")
    if N.order() == 1:
        return Quotient(G, N, G, None, None, None)
    index = G.order() // N.order()
    if index > QUOTIENT_INDEX_BOUND:
        raise BoundExceeded(
            "quotient index %d exceeds %d" % (index, QUOTIENT_INDEX_BOUND),
            bound=QUOTIENT_INDEX_BOUND, needed=index,
        )
    rep = _coset_rep_fn(N)
    r0 = rep(kernels.identity_key(G.degree))
    reps = [r0]
    index_of = {r0: 0}
    for r in reps:
        for g in G.gen_keys:
            r2 = rep(kernels.compose(r, g))
            if r2 not in index_of:
                index_of[r2] = len(reps)
                reps.append(r2)
    if len(reps) != index:
        raise RuntimeError("coset walk found %d cosets, expected %d" % (len(reps), index))
    q = Quotient(G, N, None, rep, tuple(reps), index_of)
    if index == 1:
        img = PermutationGroup.trivial(1)
    else:
        img = PermutationGroup([q.project(g) for g in G.generators], degree=index)
        if img.order() != index:
            raise RuntimeError("coset action is not regular; kernel chain is inconsistent")
    q.group = img
    return q


@dataclass(frozen=True)
class Section:
    """A section top/bottom with bottom normal in top."""

    top: PermutationGroup
    bottom: PermutationGroup

    def order(self):
        return self.top.order() // self.bottom.order()

    def is_trivial(self):
        return self.order() == 1

    def quotient(self, bounds=DEFAULT_BOUNDS):
        return quotient(self.top, self.bottom, bounds)


def _iwasawa_simple_certificate(B, bounds):
    """Try to certify that B is simple through its action on its support:
    2-transitive, perfect, and a point stabilizer has an abelian normal
    subgroup whose B-closure is all of B. Returns True only when every piece
    of the certificate checks out."""
    if B.order() == 1:
        return False
    chain = B.chain
    if not chain.base:
        return False
    support = set()
    for g in B.gen_keys:
        support.update(p for p in range(B.degree) if g[p] != p)
    b0 = chain.base[0]
    orbit0 = set(chain.orbits[0])
    if orbit0 != support:
        return False
    stab_keys = chain.level_gen_keys(1)
    if not stab_keys:
        return False
    B0 = PermutationGroup.from_keys(stab_keys, B.degree)
    if B0.order() != B.order() // len(orbit0):
        return False
    rest = support - {b0}
    if rest and set(kernels.orbit_points(stab_keys, min(rest))) | {b0} != support:
        return False
    if not is_perfect(B, bounds):
        return False
    if B0.order() > _material_cap(bounds):
        return False
    for p in sorted(prime_set(B0.order())):
        P = sylow(B0, p, bounds)
        if not P.is_abelian():
            continue
        if not P.is_normal_in(B0):
            continue
        if normal_closure(B, P, bounds).order() == B.order():
            return True
    return False


def _refine_gap(G, A, B, bounds):
    """Ascending chief-series terms strictly above A up to and including B,
    both normal in G."""
    out = []
    L = A
    while L.order() < B.order():
        Qt = quotient(G, L, bounds)
        try:
            mins = minimal_normal_subgroups(Qt.group, bounds)
        except BoundExceeded:
            if L.order() == 1 and B.is_normal_in(G) and _iwasawa_simple_certificate(B, bounds):
                # B simple and normal forces 1 < B to be a chief gap
                out.append(B)
                L = B
                continue
            raise
        Bimg = Qt.project_group(B)
        chosen = None
        for M in mins:
            if all(Bimg.contains_key(k) for k in M.gen_keys):
                chosen = M
                break
        if chosen is None:
            raise RuntimeError("no minimal normal subgroup inside a normal image")
        pre = Qt.preimage(chosen)
        L = G.subgroup_from_keys(pre.gen_keys)
        out.append(L)
    return out


def chief_series(G, bounds=DEFAULT_BOUNDS):
    """An ascending chief series 1 = L0 < L1 < ... < G, deterministic.

    Oversized groups are seeded with the derived series so only the gaps
    need refining; gaps that cannot be refined or certified raise
    BoundExceeded."""
    triv = trivial_subgroup(G)
    if G.order() == 1:
        return [triv]
    if G.order() <= _material_cap(bounds):
        seeds = [triv, G]
    else:
        terms = derived_series(G, bounds)
        seeds = [triv]
        for T in reversed(terms):
            if T.order() > seeds[-1].order():
                seeds.append(G.subgroup_from_keys(T.gen_keys))
    series = [triv]
    for Aterm, Bterm in zip(seeds, seeds[1:]):
        series.extend(_refine_gap(G, Aterm, Bterm, bounds))
    return series


def are_conjugate_subgroups(G, A, B, bounds=DEFAULT_BOUNDS):
    """(True, g) with A^g = B, or (False, None). Breadth-first over the
    conjugation orbit of A's element set."""
    if A.degree != G.degree or B.degree != G.degree:
        raise InvalidInput("degree mismatch")
    if A.order() != B.order():
        return False, None
    cap = _material_cap(bounds)
    Afs = frozenset(A.element_key_set(bounds.enum))
    Bfs = frozenset(B.element_key_set(bounds.enum))
    if Afs == Bfs:
        return True, Permutation._from_key(kernels.identity_key(G.degree), G.degree)
    pairs = _gen_pairs(G)
    idk = kernels.identity_key(G.degree)
    nodes = [(Afs, idk)]
    seen = {Afs}
    for node_fs, w in nodes:
        for g, gi in pairs:
            img = kernels.conjugate_set(node_fs, g, gi)
            if img in seen:
                continue
            w2 = kernels.compose(w, g)
            if img == Bfs:
                return True, Permutation._from_key(w2, G.degree)
            if len(nodes) >= bounds.subgroups:
                raise BoundExceeded(
                    "conjugation orbit exceeded %d subgroups" % (bounds.subgroups,),
                    bound=bounds.subgroups,
                )
            seen.add(img)
            nodes.append((img, w2))
    return False, None


def _order_fingerprint(keys):
    return Counter(kernels.perm_order(k) for k in keys)


def isomorphic(A, B, bounds=DEFAULT_BOUNDS):
    """Abstract isomorphism test by generator-image backtracking.

    Candidate images are pruned by element order and by the order of the
    subgroup generated so far; full candidates are verified edge by edge
    over A's Cayley graph, so a True answer is a checked isomorphism.
    """
    n = A.order()
    if n != B.order():
        return False
    if n > bounds.iso:
        raise BoundExceeded(
            "isomorphism test bounded at order %d" % (bounds.iso,), bound=bounds.iso, needed=n
        )
    if n == 1:
        return True
    akeys = sorted(A.element_key_set(bounds.enum))
    bkeys = sorted(B.element_key_set(bounds.enum))
    if _order_fingerprint(akeys) != _order_fingerprint(bkeys):
        return False
    max_order = max(kernels.perm_order(k) for k in akeys)
    if max_order == n:
        return True  # both cyclic of the same order
    if A.is_abelian() != B.is_abelian():
        return False

    # deterministic small generating sequence for A
    agens = []
    suborders = []
    chain = build_chain(A.degree, [])
    for k in akeys:
        if not chain.contains_key(k):
            agens.append(k)
            chain = build_chain(A.degree, agens)
            suborders.append(chain.order)
            if chain.order == n:
                break

    by_order = {}
    for k in bkeys:
        by_order.setdefault(kernels.perm_order(k), []).append(k)

    def verify(images):
        ida = kernels.identity_key(A.degree)
        f = {ida: kernels.identity_key(B.degree)}
        frontier = [ida]
        pairs = list(zip(agens, images))
        for x in frontier:
            fx = f[x]
            for g, img in pairs:
                y = kernels.compose(x, g)
                fy = kernels.compose(fx, img)
                got = f.get(y)
                if got is None:
                    f[y] = fy
                    frontier.append(y)
                elif got != fy:
                    return False
        return len(f) == n and len(set(f.values())) == n

    def backtrack(i, images):
        if i == len(agens):
            return verify(images)
        want = kernels.perm_order(agens[i])
        for cand in by_order.get(want, ()):
            trial = images + [cand]
            tchain = build_chain(B.degree, trial)
            if tchain.order != suborders[i]:
                continue
            if backtrack(i + 1, trial):
                return True
        return False

    return backtrack(0, [])


def involves(G, T, bounds=DEFAULT_BOUNDS):
    """Whether some section H/K of G is isomorphic to T."""
    t = T.order()
    if t == 1:
        return True
    if t > bounds.iso:
        raise BoundExceeded(
            "section isomorphism bounded at order %d" % (bounds.iso,), bound=bounds.iso, needed=t
        )
    for H in subgroups_up_to_conjugacy(G, bounds):
        if H.order() % t:
            continue
        for K in normal_subgroups(H, bounds):
            if H.order() // K.order() != t:
                continue
            Q = quotient(H, K, bounds)
            if isomorphic(Q.group, T, bounds):
                return True
    return False
