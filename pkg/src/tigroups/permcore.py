"""Permutations on a finite point set and the groups they generate.

Points are 0-based integers in [0, degree). Composition is left to right:
(a * b) maps x to b(a(x)), so conjugation x^g = g^-1 x g is a right action
and H^(gh) = (H^g)^h holds without sign juggling.

PermutationGroup builds a deterministic Schreier-Sims stabilizer chain on
first use. No randomization anywhere: base points are the smallest moved
points, orbits are breadth-first in generator order, so rebuilding a group
from the same generator list always produces the same base, the same
transversals and the same element enumeration order.
"""

from dataclasses import dataclass
from math import prod

from tigroups import kernels
from tigroups.errors import BoundExceeded, InvalidInput

DEFAULT_ENUM_BOUND = 10**6

# Largest element set any operation will hold in memory at once. Streaming
# paths (element iteration, filters) are limited only by the enum bound;
# anything that materializes keys checks this too.
MATERIALIZE_CAP = 10**6


@dataclass(frozen=True)
class Bounds:
    """Search limits threaded through the lattice and theorem checkers.

    enum bounds element enumeration/streaming, subgroups bounds the
    subgroup-class search, iso bounds isomorphism backtracking.
    """

    enum: int = DEFAULT_ENUM_BOUND
    subgroups: int = 2000
    iso: int = 1000

    def __post_init__(self):
        if self.enum < 1 or self.subgroups < 1 or self.iso < 1:
            raise InvalidInput("bounds must be positive")


DEFAULT_BOUNDS = Bounds()


class Permutation:
    """An immutable bijection of [0, degree)."""

    __slots__ = ("_key", "_degree")

    def __init__(self, images):
        images = list(images)
        n = len(images)
        if n < 1:
            raise InvalidInput("a permutation needs at least one point")
        if sorted(images) != list(range(n)):
            raise InvalidInput("images must be a bijection of 0..%d" % (n - 1))
        self._key = kernels.key_from_images(images, n)
        self._degree = n

    @classmethod
    def _from_key(cls, key, degree):
        p = object.__new__(cls)
        p._key = key
        p._degree = degree
        return p

    @property
    def degree(self):
        return self._degree

    @property
    def images(self):
        return tuple(self._key[i] for i in range(self._degree))

    @property
    def key(self):
        """Raw kernel key. Internal, but stable for hashing and sorting."""
        return self._key

    def apply(self, point):
        if not 0 <= point < self._degree:
            raise InvalidInput("point %r out of range" % (point,))
        return self._key[point]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if self._degree != other._degree:
            raise InvalidInput("degree mismatch: %d vs %d" % (self._degree, other._degree))
        return Permutation._from_key(kernels.compose(self._key, other._key), self._degree)

    def inverse(self):
        return Permutation._from_key(kernels.inverse(self._key), self._degree)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return Permutation._from_key(kernels.power(self._key, n), self._degree)

    def order(self):
        return kernels.perm_order(self._key)

    def is_identity(self):
        return self._key == kernels.identity_key(self._degree)

    def support(self):
        """Moved points, increasing."""
        return tuple(i for i in range(self._degree) if self._key[i] != i)

    def cycles(self):
        """Disjoint cycles of length >= 2, each starting at its least point,
        ordered by that point."""
        seen = [False] * self._degree
        out = []
        for i in range(self._degree):
            if seen[i] or self._key[i] == i:
                seen[i] = True
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self._key[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._degree == other._degree and self._key == other._key

    def __hash__(self):
        return hash((self._degree, self._key))

    def __lt__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return (self._degree, self._key) < (other._degree, other._key)

    def __repr__(self):
        return format_cycles(self)


def identity(degree):
    if degree < 1:
        raise InvalidInput("degree must be positive")
    return Permutation._from_key(kernels.identity_key(degree), degree)


def compose(a, b):
    """Left-to-right product: the result maps x to b(a(x))."""
    return a * b


def inverse(a):
    return a.inverse()


def conjugate(x, g):
    """x^g = g^-1 * x * g."""
    if x.degree != g.degree:
        raise InvalidInput("degree mismatch: %d vs %d" % (x.degree, g.degree))
    return Permutation._from_key(
        kernels.compose(kernels.compose(kernels.inverse(g.key), x.key), g.key), x.degree
    )


def commutator_of(a, b):
    """[a, b] = a^-1 b^-1 a b."""
    ak, bk = a.key, b.key
    k = kernels.compose(
        kernels.compose(kernels.inverse(ak), kernels.inverse(bk)), kernels.compose(ak, bk)
    )
    return Permutation._from_key(k, a.degree)


def parse_permutation(text, degree):
    """Parse cycle notation: "(p1 p2 ... pk)" cycles concatenated, points
    whitespace-separated, "()" for the identity. Cycles must be disjoint and
    points in [0, degree)."""
    if degree < 1:
        raise InvalidInput("degree must be positive")
    s = text.strip()
    if not s:
        raise InvalidInput("empty permutation text; use '()' for the identity")
    images = list(range(degree))
    used = set()
    i = 0
    while i < len(s):
        if s[i].isspace():
            i += 1
            continue
        if s[i] != "(":
            raise InvalidInput("expected '(' at position %d of %r" % (i, text))
        j = s.find(")", i + 1)
        if j < 0:
            raise InvalidInput("unclosed cycle in %r" % (text,))
        body = s[i + 1 : j]
        i = j + 1
        pts = []
        for tok in body.split():
            try:
                p = int(tok)
            except ValueError:
                raise InvalidInput("bad point %r in %r" % (tok, text)) from None
            if not 0 <= p < degree:
                raise InvalidInput("point %d out of range for degree %d" % (p, degree))
            if p in used:
                raise InvalidInput("cycles overlap at point %d in %r" % (p, text))
            used.add(p)
            pts.append(p)
        for a, b in zip(pts, pts[1:]):
            images[a] = b
        if len(pts) >= 2:
            images[pts[-1]] = pts[0]
    return Permutation(images)


def format_cycles(perm):
    cycs = perm.cycles()
    if not cycs:
        return "()"
    return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)


class StabilizerChain:
    """Base, transversals and strong generators of a permutation group.

    orbits[i] maps each point of the level-i basic orbit to the transversal
    key carrying base[i] there; tinvs[i] holds the precomputed inverses used
    by sifting. Product of orbit sizes equals the group order.
    """

    __slots__ = ("degree", "base", "orbits", "tinvs", "assigned", "order", "_sorted_levels")

    def __init__(self, degree, base, orbits, tinvs, assigned):
        self.degree = degree
        self.base = tuple(base)
        self.orbits = orbits
        self.tinvs = tinvs
        self.assigned = assigned
        self.order = prod(len(o) for o in orbits) if orbits else 1
        self._sorted_levels = None

    def level_gen_keys(self, i):
        """Strong generators of the level-i stabilizer."""
        out = []
        for lst in self.assigned[i:]:
            out.extend(lst)
        return out

    def sift_key(self, key):
        return kernels.sift(key, self.base, self.tinvs)

    def contains_key(self, key):
        residue, consumed = kernels.sift(key, self.base, self.tinvs)
        return consumed == len(self.base) and residue == kernels.identity_key(self.degree)

    def sorted_transversals(self):
        """Per level, transversal keys in increasing point order. Cached;
        this fixes the element enumeration order."""
        if self._sorted_levels is None:
            self._sorted_levels = [
                [orbit[p] for p in sorted(orbit)] for orbit in self.orbits
            ]
        return self._sorted_levels


def build_chain(degree, gen_keys):
    """Deterministic Schreier-Sims. Base points are the smallest points moved
    by the strong generators, taken in discovery order; verification walks
    levels bottom-up and restarts at the level any new strong generator lands
    on, so the result depends only on (degree, generator sequence)."""
    idk = kernels.identity_key(degree)
    base = []
    assigned = []
    orbits = []
    tinvs = []

    def level_gens(i):
        out = []
        for lst in assigned[i:]:
            out.extend(lst)
        return out

    def add_gen(key):
        i = 0
        while i < len(base) and key[base[i]] == base[i]:
            i += 1
        if i == len(base):
            b = next(p for p in range(degree) if key[p] != p)
            base.append(b)
            assigned.append([])
            orbits.append(None)
            tinvs.append(None)
        assigned[i].append(key)
        return i

    def recompute(i):
        trans = kernels.orbit_transversal(level_gens(i), base[i])
        orbits[i] = trans
        tinvs[i] = {p: kernels.inverse(t) for p, t in trans.items()}

    seen = set()
    for k in gen_keys:
        if k != idk and k not in seen:
            seen.add(k)
            add_gen(k)

    if not base:
        return StabilizerChain(degree, (), [], [], [])

    for i in range(len(base)):
        recompute(i)

    i = len(base) - 1
    while i >= 0:
        trans = orbits[i]
        gens_i = level_gens(i)
        tinv_i = tinvs[i]
        clean = True
        for p in sorted(trans):
            tp = trans[p]
            for s in gens_i:
                sg = kernels.compose(kernels.compose(tp, s), tinv_i[s[p]])
                if sg == idk:
                    continue
                residue = sg
                for j in range(i + 1, len(base)):
                    t = tinvs[j].get(residue[base[j]])
                    if t is None:
                        break
                    residue = kernels.compose(residue, t)
                if residue == idk:
                    continue
                lvl = add_gen(residue)
                for m in range(lvl + 1):
                    recompute(m)
                i = lvl
                clean = False
                break
            if not clean:
                break
        if clean:
            i -= 1

    return StabilizerChain(degree, base, orbits, tinvs, assigned)


class PermutationGroup:
    """A group given by generating permutations of one common degree.

    The stabilizer chain, order and element caches build lazily. Cache writes
    are idempotent: concurrent builders may duplicate work but publish equal
    values with single atomic attribute stores, so instances are safe to
    share between threads after construction.
    """

    __slots__ = ("degree", "generators", "parent", "_gen_keys", "_chain", "_key_set", "_cache")

    def __init__(self, generators, degree=None, parent=None):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise InvalidInput("degree is required for an empty generator list")
            degree = generators[0].degree
        if degree < 1:
            raise InvalidInput("degree must be positive")
        idk = kernels.identity_key(degree)
        keys = []
        seen = set()
        for g in generators:
            if not isinstance(g, Permutation):
                raise InvalidInput("generators must be Permutation values")
            if g.degree != degree:
                raise InvalidInput("generator degree %d does not match group degree %d" % (g.degree, degree))
            if g.key != idk and g.key not in seen:
                seen.add(g.key)
                keys.append(g.key)
        self.degree = degree
        self._gen_keys = tuple(keys)
        self.generators = tuple(Permutation._from_key(k, degree) for k in keys)
        self.parent = parent
        self._chain = None
        self._key_set = None
        self._cache = {}

    @classmethod
    def trivial(cls, degree):
        return cls([], degree=degree)

    @classmethod
    def from_keys(cls, keys, degree, parent=None):
        return cls([Permutation._from_key(k, degree) for k in keys], degree=degree, parent=parent)

    @property
    def gen_keys(self):
        return self._gen_keys

    @property
    def chain(self):
        c = self._chain
        if c is None:
            c = build_chain(self.degree, self._gen_keys)
            self._chain = c
        return c

    def order(self):
        return self.chain.order

    def is_trivial(self):
        return not self._gen_keys

    def identity(self):
        return identity(self.degree)

    def contains(self, x):
        if not isinstance(x, Permutation):
            raise InvalidInput("membership is defined for Permutation values")
        if x.degree != self.degree:
            raise InvalidInput("degree mismatch: %d vs %d" % (x.degree, self.degree))
        return self.chain.contains_key(x.key)

    def __contains__(self, x):
        return self.contains(x)

    def contains_key(self, key):
        return self.chain.contains_key(key)

    def iter_element_keys(self, enum_bound=DEFAULT_ENUM_BOUND):
        """Stream every element key once, in chain enumeration order."""
        n = self.order()
        if n > enum_bound:
            raise BoundExceeded(
                "group order %d exceeds the enumeration bound %d" % (n, enum_bound),
                bound=enum_bound, needed=n,
            )
        if not self.chain.base:
            yield kernels.identity_key(self.degree)
            return
        yield from kernels.elements_from_chain(self.chain.sorted_transversals())

    def elements(self, enum_bound=DEFAULT_ENUM_BOUND):
        """Stream every element once as Permutation values, deterministic
        order (lexicographic in the per-level transversal positions along the
        stabilizer chain)."""
        for k in self.iter_element_keys(enum_bound):
            yield Permutation._from_key(k, self.degree)

    def element_key_set(self, enum_bound=DEFAULT_ENUM_BOUND):
        """The full element set, cached. Also subject to the in-memory cap."""
        s = self._key_set
        if s is None:
            n = self.order()
            cap = min(enum_bound, MATERIALIZE_CAP)
            if n > cap:
                raise BoundExceeded(
                    "group order %d exceeds the materialization cap %d" % (n, cap),
                    bound=cap, needed=n,
                )
            s = frozenset(self.iter_element_keys(enum_bound))
            self._key_set = s
        return s

    def subgroup(self, generators):
        """Wrap generators as a subgroup value tied to this group. Membership
        is the caller's contract; closure() in the lattice module validates."""
        return PermutationGroup(generators, degree=self.degree, parent=self)

    def subgroup_from_keys(self, keys):
        return PermutationGroup.from_keys(keys, self.degree, parent=self)

    def is_subgroup_of(self, other):
        if self.degree != other.degree:
            return False
        return all(other.contains_key(k) for k in self._gen_keys)

    def is_normal_in(self, other):
        """Whether other normalizes this group (both under a common parent)."""
        if not self.is_subgroup_of(other):
            return False
        for g in other._gen_keys:
            ginv = kernels.inverse(g)
            for h in self._gen_keys:
                if not self.contains_key(kernels.compose(kernels.compose(ginv, h), g)):
                    return False
        return True

    def is_abelian(self):
        ks = self._gen_keys
        for i in range(len(ks)):
            for j in range(i + 1, len(ks)):
                if kernels.compose(ks[i], ks[j]) != kernels.compose(ks[j], ks[i]):
                    return False
        return True

    def same_group(self, other):
        """Set equality, decided by order plus mutual generator membership."""
        if self.degree != other.degree:
            return False
        return (
            self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def __repr__(self):
        n = self._chain.order if self._chain is not None else "?"
        return "<PermutationGroup degree=%d gens=%d order=%s>" % (
            self.degree, len(self._gen_keys), n,
        )


def group_order(G):
    """|G| via the stabilizer chain; builds and caches it."""
    return G.order()


def contains(G, x):
    return G.contains(x)


def elements(G, enum_bound=DEFAULT_ENUM_BOUND):
    return G.elements(enum_bound)
