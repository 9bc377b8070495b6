"""Group constructors, the named catalog, and the group-spec file format.

Constructors are pure functions returning PermutationGroup values; the
catalog is a fixed tuple of named entries built from them, each carrying its
generator strings, tags, distinguished subgroups and expected facts for
golden tests. Field arithmetic uses one fixed irreducible polynomial per
supported prime power so that point labels, generator images and therefore
whole reports are identical across runs and machines.
"""

import json
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType

from tigroups.arith import factorint
from tigroups.errors import InvalidInput, ParseError
from tigroups.permcore import (
    Permutation,
    PermutationGroup,
    format_cycles,
    parse_permutation,
)

SPEC_FORMAT = "group-spec/1"

# coefficient tuples, constant term first, leading coefficient 1 implied last
_IRREDUCIBLE = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 1, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    128: (1, 1, 0, 0, 0, 0, 0, 1),
}

# multiplicative generators, as encoded elements, one per prime power above
_PRIMITIVE = {4: 2, 8: 2, 9: 4, 16: 2, 25: 5, 27: 3, 32: 2, 128: 2}

_SL2_RANGE = frozenset([2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 128])


class _Field:
    """Arithmetic in F_q on elements encoded as integers in [0, q).

    The base-p digits of the code are the polynomial coefficients, constant
    term first, so 0 and 1 are the field's own 0 and 1 and addition of basis
    monomials is digit arithmetic. q must be prime or a key of _IRREDUCIBLE.
    """

    def __init__(self, q):
        fac = factorint(q)
        if len(fac) != 1:
            raise InvalidInput("%r is not a prime power" % (q,))
        (self.p, self.e), = fac.items()
        self.q = q
        if self.e > 1 and q not in _IRREDUCIBLE:
            raise InvalidInput("no fixed irreducible polynomial for q=%d" % q)

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _encode(self, digits):
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._digits(a)])

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        irr = _IRREDUCIBLE[self.q]
        for i in range(len(prod) - 1, self.e - 1, -1):
            t = prod[i]
            if t:
                prod[i] = 0
                for j in range(self.e):
                    prod[i - self.e + j] = (prod[i - self.e + j] - t * irr[j]) % self.p
        return self._encode(prod[: self.e])

    def pow(self, a, n):
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a):
        if a == 0:
            raise InvalidInput("zero has no inverse")
        return self.pow(a, self.q - 2)

    @property
    def one_neg(self):
        return self.neg(1)

    @property
    def primitive(self):
        """A fixed generator of the multiplicative group."""
        if self.e > 1:
            return _PRIMITIVE[self.q]
        if self.p == 2:
            return 1
        for g in range(2, self.p):
            seen, x = 1, g
            while x != 1:
                x = self.mul(x, g)
                seen += 1
            if seen == self.p - 1:
                return g
        raise InvalidInput("no primitive root mod %d" % self.p)


@lru_cache(maxsize=None)
def _fld(q):
    return _Field(q)


# ------------------------------------------------------------ constructors


def cyclic(n):
    if n < 1:
        raise InvalidInput("cyclic group order must be positive")
    if n == 1:
        return PermutationGroup.trivial(1)
    return PermutationGroup([Permutation([(i + 1) % n for i in range(n)])])


def dihedral(n):
    """Symmetries of the regular n-gon, order 2n, on the n vertices."""
    if n < 3:
        raise InvalidInput("dihedral needs n >= 3")
    r = Permutation([(i + 1) % n for i in range(n)])
    s = Permutation([(-i) % n for i in range(n)])
    return PermutationGroup([r, s])


def generalized_quaternion(m):
    """The generalized quaternion group of order m = 2^k >= 8 in its regular
    action: a^i at point i, a^i b at point m/2 + i."""
    if m < 8 or m & (m - 1):
        raise InvalidInput("generalized quaternion order must be 2^k >= 8")
    n = m // 2
    a = [(i + 1) % n for i in range(n)] + [n + (i - 1) % n for i in range(n)]
    b = [n + i for i in range(n)] + [(i + n // 2) % n for i in range(n)]
    return PermutationGroup([Permutation(a), Permutation(b)])


def symmetric(n):
    if n < 1:
        raise InvalidInput("symmetric needs n >= 1")
    if n == 1:
        return PermutationGroup.trivial(1)
    cyc = Permutation([(i + 1) % n for i in range(n)])
    if n == 2:
        return PermutationGroup([cyc])
    swap = Permutation([1, 0] + list(range(2, n)))
    return PermutationGroup([cyc, swap])


def alternating(n):
    if n < 3:
        raise InvalidInput("alternating needs n >= 3")
    three = Permutation([1, 2, 0] + list(range(3, n)))
    if n == 3:
        return PermutationGroup([three])
    if n % 2:
        big = Permutation([(i + 1) % n for i in range(n)])
    else:
        big = Permutation([0] + [1 + (i % (n - 1)) for i in range(1, n)])
    return PermutationGroup([three, big])


def _agl1_parts(q):
    """(translations, multiplier) of the affine line over F_q; multiplier is
    None for q = 2. Points are the encoded field elements."""
    F = _fld(q)
    translations = [
        Permutation([F.add(x, F.p ** i) for x in range(q)]) for i in range(F.e)
    ]
    if q == 2:
        return translations, None
    g = F.primitive
    return translations, Permutation([F.mul(g, x) for x in range(q)])


def agl1(q):
    """All maps x -> ax + b with a nonzero, acting on F_q; order q(q-1).
    Frobenius for q > 2 with the translations as kernel."""
    translations, mult = _agl1_parts(q)
    gens = translations + ([mult] if mult is not None else [])
    return PermutationGroup(gens, degree=q)


def _sl2_gens(q):
    """Transvection, diagonal and Weyl generators mapped through the point
    action: the projective line (infinity first, then field elements in
    additive order) when q is even, the nonzero plane vectors in additive
    lexicographic order when q is odd. The center {I, -I} acts trivially on
    the line, so only the even case is faithful there; the vector action
    keeps the full order q(q^2-1) for odd q."""
    if q not in _SL2_RANGE:
        raise InvalidInput("q=%r outside the supported range" % (q,))
    F = _fld(q)

    if q % 2 == 0:

        def perm_of(a, b, c, d):
            images = []
            # point 0 is [1:0]; point 1+t is [t:1]
            images.append(0 if c == 0 else 1 + F.mul(a, F.inv(c)))
            for t in range(q):
                den = F.add(F.mul(c, t), d)
                if den == 0:
                    images.append(0)
                else:
                    images.append(1 + F.mul(F.add(F.mul(a, t), b), F.inv(den)))
            return Permutation(images)

    else:

        def idx(x, y):
            return q * x + y - 1

        def perm_of(a, b, c, d):
            images = []
            for x in range(q):
                for y in range(q):
                    if x == 0 and y == 0:
                        continue
                    u = F.add(F.mul(a, x), F.mul(b, y))
                    v = F.add(F.mul(c, x), F.mul(d, y))
                    images.append(idx(u, v))
            return Permutation(images)

    gens = [perm_of(1, 1, 0, 1), perm_of(0, 1, F.one_neg, 0)]
    g = F.primitive
    if g != 1:
        gens.insert(1, perm_of(g, 0, 0, F.inv(g)))
    return gens


def sl2(q):
    """SL(2, q) as a permutation group of order q(q^2-1)."""
    return PermutationGroup(_sl2_gens(q))


def _field_aut_perm(q, f):
    """The order-f field automorphism x -> x^(p^(e/f)) on the same points
    sl2(q) uses."""
    F = _fld(q)
    if f < 1 or F.e % f:
        raise InvalidInput("automorphism order %r must divide the field exponent %d" % (f, F.e))
    k = F.p ** (F.e // f)

    def sig(x):
        return F.pow(x, k)

    if q % 2 == 0:
        return Permutation([0] + [1 + sig(t) for t in range(q)])
    images = []
    for x in range(q):
        for y in range(q):
            if x == 0 and y == 0:
                continue
            images.append(q * sig(x) + sig(y) - 1)
    return Permutation(images)


def field_aut_extension(q, f):
    """sl2(q) extended by the order-f field automorphism; order q(q^2-1)f."""
    base = sl2(q)
    if f == 1:
        return base
    return semidirect_by_normalizing_perms(base, [_field_aut_perm(q, f)])


def direct_product(G1, G2):
    """G1 x G2 on the disjoint union of the two domains, G1's points first."""
    d1, d2 = G1.degree, G2.degree
    tail = list(range(d1, d1 + d2))
    gens = [Permutation(list(g.images) + tail) for g in G1.generators]
    head = list(range(d1))
    gens += [Permutation(head + [d1 + i for i in g.images]) for g in G2.generators]
    return PermutationGroup(gens, degree=d1 + d2)


def semidirect_by_normalizing_perms(G, normalizers):
    """G extended by extra permutations of the same degree, each of which
    must normalize G; the degree and the acted-on points are unchanged."""
    extra = list(normalizers)
    for w in extra:
        if not isinstance(w, Permutation) or w.degree != G.degree:
            raise InvalidInput("normalizers must be permutations of degree %d" % G.degree)
        wi = w.inverse()
        for g in G.generators:
            if not G.contains(wi * g * w):
                raise InvalidInput("%r does not normalize the group" % (w,))
    return PermutationGroup(list(G.generators) + extra, degree=G.degree)


# --------------------------------------------------------- the file format


@dataclass(frozen=True)
class GroupSpec:
    """One serializable group: a name, a degree, generator cycle strings and
    free-form tags. Parses to a valid PermutationGroup; names are unique
    within the catalog."""

    name: str
    degree: int
    generators: tuple
    tags: tuple = ()


def build_group(spec):
    return PermutationGroup(
        [parse_permutation(s, spec.degree) for s in spec.generators],
        degree=spec.degree,
    )


def format_spec(spec):
    """The canonical group-spec/1 document: fixed key order, two-space
    indent, trailing newline. Byte-identical for equal specs."""
    doc = {
        "format": SPEC_FORMAT,
        "name": spec.name,
        "degree": spec.degree,
        "generators": list(spec.generators),
        "tags": list(spec.tags),
    }
    return json.dumps(doc, indent=2) + "\n"


def _locate(text, token):
    """1-based (line, column) of the first occurrence of token, for error
    reports on documents that decoded but violate the schema."""
    pos = text.find(token)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, column


def _schema_error(text, token, message):
    line, column = _locate(text, token)
    return ParseError(message, line=line, column=column)


_SPEC_FIELDS = {"format": str, "name": str, "degree": int, "generators": list, "tags": list}


def parse_spec(text):
    """Strict group-spec/1 parser. Unknown fields, missing fields, wrong
    types and unparseable generators are all ParseError with a location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", line=1, column=1)
    for key in doc:
        if key not in _SPEC_FIELDS:
            raise _schema_error(text, '"%s"' % key, "unknown field %r" % key)
    for key, want in _SPEC_FIELDS.items():
        if key == "tags" and key not in doc:
            continue
        if key not in doc:
            raise ParseError("missing field %r" % key, line=1, column=1)
        if not isinstance(doc[key], want) or isinstance(doc[key], bool):
            raise _schema_error(text, '"%s"' % key, "field %r must be %s" % (key, want.__name__))
    if doc["format"] != SPEC_FORMAT:
        raise _schema_error(text, '"format"', "unsupported format %r" % doc["format"])
    if not doc["name"]:
        raise _schema_error(text, '"name"', "name must be nonempty")
    if doc["degree"] < 1:
        raise _schema_error(text, '"degree"', "degree must be positive")
    for seq, what in ((doc["generators"], "generator"), (doc.get("tags", []), "tag")):
        for item in seq:
            if not isinstance(item, str):
                raise _schema_error(text, '"%ss"' % what, "every %s must be a string" % what)
    for gen in doc["generators"]:
        try:
            parse_permutation(gen, doc["degree"])
        except InvalidInput as e:
            raise _schema_error(text, json.dumps(gen), str(e)) from None
    return GroupSpec(
        name=doc["name"],
        degree=doc["degree"],
        generators=tuple(doc["generators"]),
        tags=tuple(doc.get("tags", [])),
    )


def load_spec(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec(fh.read())


def save_spec(spec, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_spec(spec))


# -------------------------------------------------------------- the catalog


@dataclass(frozen=True)
class CatalogEntry:
    """A named group plus the data the suites need: distinguished subgroups
    as name -> generator strings, and expected facts for golden tests."""

    spec: GroupSpec
    distinguished_subgroups: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))
    expected: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    @property
    def name(self):
        return self.spec.name

    @property
    def tags(self):
        return self.spec.tags

    def group(self):
        return build_group(self.spec)

    def subgroup(self, name, parent=None):
        """The distinguished subgroup, inside parent (a fresh group() when
        not supplied so repeated calls stay independent)."""
        if name not in self.distinguished_subgroups:
            raise InvalidInput("%s has no distinguished subgroup %r" % (self.name, name))
        if parent is None:
            parent = self.group()
        gens = [parse_permutation(s, self.spec.degree) for s in self.distinguished_subgroups[name]]
        return parent.subgroup(gens)


def _entry(name, group, tags=(), sub=None, exp=None):
    spec = GroupSpec(
        name=name,
        degree=group.degree,
        generators=tuple(format_cycles(g) for g in group.generators),
        tags=tuple(tags),
    )
    sub = {k: tuple(v) for k, v in (sub or {}).items()}
    return CatalogEntry(spec, MappingProxyType(sub), MappingProxyType(dict(exp or {})))


def _strs(perms):
    return tuple(format_cycles(p) for p in perms)


def _build_catalog():
    entries = []

    for n in range(1, 64):
        entries.append(_entry("c%d" % n, cyclic(n)))

    for n in range(3, 32):
        G = dihedral(n)
        if n % 2:
            entries.append(_entry(
                "dih%d" % n, G, tags=("frobenius",),
                sub={"H": (format_cycles(G.generators[1]),),
                     "N": (format_cycles(G.generators[0]),)},
                exp={"kernel_order": n},
            ))
        else:
            entries.append(_entry("dih%d" % n, G))

    for m in (8, 16, 32):
        entries.append(_entry("q%d" % m, generalized_quaternion(m)))

    entries.append(_entry(
        "s3", symmetric(3), tags=("frobenius",),
        sub={"H": ("(0 1)",), "N": ("(0 1 2)",)},
        exp={"kernel_order": 3},
    ))
    entries.append(_entry("s4", symmetric(4), sub={"H": ("(0 1 2)",)}))
    entries.append(_entry("s5", symmetric(5)))
    entries.append(_entry("a4", alternating(4), sub={"H": ("(0 1 2)",)}))
    entries.append(_entry(
        "a5_sylow5", alternating(5), tags=("example",),
        sub={"H": ("(0 1 2 3 4)",)},
        exp={"h_order": 5, "normalizer_order": 10},
    ))

    for q, name in ((2, "agl1_2"), (3, "agl1_3"), (4, "agl1_4"), (5, "f20"),
                    (7, "f42"), (8, "c2cubed_c7"), (11, "agl1_11"), (13, "agl1_13")):
        translations, mult = _agl1_parts(q)
        G = agl1(q)
        if q == 2:
            entries.append(_entry(name, G))
            continue
        sub = {"H": (format_cycles(mult),), "N": _strs(translations)}
        exp = {"kernel_order": q}
        if name == "f42":
            # the order-3 part drives the analyzer rows; the full point
            # stabilizer stays available as C for the kernel rows
            sub["H"] = (format_cycles(mult * mult),)
            sub["C"] = (format_cycles(mult),)
            exp["core_order"] = 14
        entries.append(_entry(name, G, tags=("frobenius",), sub=sub, exp=exp))

    c7 = cyclic(7)
    f21 = semidirect_by_normalizing_perms(c7, [parse_permutation("(1 2 4)(3 6 5)", 7)])
    entries.append(_entry(
        "f21", f21, tags=("frobenius",),
        sub={"H": ("(1 2 4)(3 6 5)",), "N": ("(0 1 2 3 4 5 6)",)},
        exp={"kernel_order": 7},
    ))

    entries.append(_entry("k4", direct_product(cyclic(2), cyclic(2))))
    entries.append(_entry("c2cubed", direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2))))
    entries.append(_entry("c3xs3", direct_product(cyclic(3), symmetric(3))))
    entries.append(_entry("c5xc5", direct_product(cyclic(5), cyclic(5))))
    entries.append(_entry("c2xf21", direct_product(cyclic(2), f21)))

    c15 = direct_product(cyclic(3), cyclic(5))
    inv3 = parse_permutation("(1 2)", 8)
    entries.append(_entry(
        "c15_c2", semidirect_by_normalizing_perms(c15, [inv3]), tags=("pair",),
        sub={"G": ("(0 1 2)", "(3 4 5 6 7)"), "A": ("(1 2)",)},
        exp={"fixed_order": 5, "commutator_order": 3},
    ))

    for q, order in ((2, 6), (3, 24), (4, 60), (5, 120), (7, 336)):
        entries.append(_entry("sl2_%d" % q, sl2(q), exp={"order": order}))

    trans8, mult8 = _agl1_parts(8)
    # squaring on the affine points themselves, not on a projective line
    aut8 = Permutation([_fld(8).mul(x, x) for x in range(8)])
    entries.append(_entry(
        "agammal1_8", semidirect_by_normalizing_perms(agl1(8), [aut8]),
        tags=("double-frobenius",),
        sub={"O": _strs(trans8), "H": (format_cycles(mult8),), "Q": (format_cycles(aut8),)},
        exp={"order": 168, "complement_order": 168, "layer_kernel_orders": (8, 7)},
    ))

    for q, f, name, order, tags in (
        (32, 5, "sl2_32_c5", 163680, ("example",)),
        (128, 7, "sl2_128_c7", 14679168, ("example", "stretch")),
    ):
        base = sl2(q)
        aut = _field_aut_perm(q, f)
        entries.append(_entry(
            name, semidirect_by_normalizing_perms(base, [aut]), tags=tags,
            sub={"N": _strs(base.generators), "H": (format_cycles(aut),)},
            exp={"order": order, "h_order": f, "fixed_subgroup_order": 6},
        ))

    names = [e.name for e in entries]
    assert len(names) == len(set(names)), "duplicate catalog names"
    return tuple(entries)


_CATALOG = None


def catalog():
    """The shipped entries, in a fixed order. Immutable static data."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return _CATALOG


def catalog_entry(name):
    for e in catalog():
        if e.name == name:
            return e
    raise InvalidInput("no catalog entry named %r" % (name,))
