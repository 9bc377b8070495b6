"""Checkers for the structure theory of nonnormal trivial-intersection
subgroups: T.I. detection, the Hall-in-normalizer equivalence, pi-cores and
pi-series, Frobenius actions with literal kernel extraction, the main
product-decomposition analyzer, normal-complement equivalences, and the
double-Frobenius factor criterion.

Everything here verifies rather than trusts: each conclusion is recomputed
extensionally on the given group, so a false conclusion surfaces as a FAILS
report carrying a re-checkable certificate. Verdicts are HOLDS / FAILS /
NOT_APPLICABLE / SKIPPED; a NOT_APPLICABLE report always names the failed
hypothesis in its certificate.
"""

from dataclasses import dataclass
from math import gcd

from tigroups import kernels
from tigroups.arith import (
    complement_primes,
    factorint,
    is_pi_number,
    is_prime,
    pi_part,
    prime_set,
)
from tigroups.errors import BoundExceeded, InvalidInput
from tigroups.grouplat import (
    QUOTIENT_INDEX_BOUND,
    Section,
    _gen_pairs,
    _material_cap,
    _reduce_keys,
    _refine_gap,
    centralizer,
    commutator,
    conjugacy_classes,
    intersection,
    involves,
    is_hall_in,
    is_solvable,
    join,
    normal_closure,
    normal_subgroups,
    normalizer,
    quotient,
    subgroups_up_to_conjugacy,
    sylow,
    trivial_subgroup,
)
from tigroups.permcore import DEFAULT_BOUNDS, Permutation, PermutationGroup, build_chain

HOLDS = "HOLDS"
FAILS = "FAILS"
NOT_APPLICABLE = "NOT_APPLICABLE"
SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class TIWitness:
    """Outcome of a trivial-intersection test. When the verdict is false,
    violator = (g, gens) where gens generate H meet H^g and that
    intersection is proper and nontrivial in both."""

    verdict: bool
    violator: tuple = None


@dataclass(frozen=True)
class TheoremReport:
    statement: str
    verdict: str
    certificate: dict
    timing: float = None


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the main analyzer establishes about a pair (G, H): the
    hypothesis checklist, the groups O = O_{pi'}(G), N_G(H) and L = [O, H],
    an optional complement Q of H in N_G(H), the pi-length when defined, the
    Frobenius section and chief factor located for the structure
    conclusions, solvability facts, and per-conclusion verdicts. Group
    fields are always subgroups of the analyzed G."""

    verdict: str
    pi: frozenset
    hypotheses: dict
    o_pi_prime: PermutationGroup
    n_g_h: PermutationGroup
    l_subgroup: PermutationGroup
    q_complement: PermutationGroup
    pi_length: int
    frobenius_section: Section
    chief_frobenius_factor: Section
    solvability_verdicts: dict
    conclusions: dict


def _not_applicable(statement, hypothesis, **extra):
    cert = {"failed_hypothesis": hypothesis}
    cert.update(extra)
    return TheoremReport(statement, NOT_APPLICABLE, cert)


def _require_subgroup(G, H, op):
    if H.degree != G.degree or not H.is_subgroup_of(G):
        raise InvalidInput("%s expects a subgroup of G" % (op,))


def _check_primes(pi):
    out = frozenset(pi)
    for p in out:
        if not is_prime(p):
            raise InvalidInput("%r is not prime" % (p,))
    return out


def _conjugate_orbit(G, fs, bounds):
    """Conjugation orbit of a subgroup's element set, each node carrying a
    conjugator w with node = fs^w. Deterministic breadth-first order; the
    seed comes first with w = identity."""
    pairs = _gen_pairs(G)
    nodes = [(fs, kernels.identity_key(G.degree))]
    seen = {fs}
    for node_fs, w in nodes:
        for g, gi in pairs:
            img = kernels.conjugate_set(node_fs, g, gi)
            if img in seen:
                continue
            if len(nodes) >= bounds.enum:
                raise BoundExceeded(
                    "conjugate orbit exceeded %d members" % (bounds.enum,),
                    bound=bounds.enum,
                )
            seen.add(img)
            nodes.append((img, kernels.compose(w, g)))
    return nodes


def _group_from_set(G, fs):
    gens, _ = _reduce_keys(G.degree, sorted(fs), target_order=len(fs))
    return G.subgroup_from_keys(gens)


def is_ti(G, H, bounds=DEFAULT_BOUNDS):
    """Trivial-intersection test: true iff H meets every conjugate other
    than itself in the identity alone.

    Conjugates are walked as one orbit of H's element set under generator
    conjugation, which is exactly the transversal picture of N_G(H). A
    subgroup of prime order has no proper nontrivial subgroups, so for those
    the verdict is forced without any walk.
    """
    _require_subgroup(G, H, "is_ti")
    h = H.order()
    if h == 1 or is_prime(h):
        return TIWitness(True, None)
    Hfs = frozenset(H.element_key_set(bounds.enum))
    for fs, w in _conjugate_orbit(G, Hfs, bounds):
        if fs is Hfs:
            continue
        inter = Hfs & fs
        if len(inter) > 1:
            gens, _ = _reduce_keys(G.degree, sorted(inter), target_order=len(inter))
            violator = (
                Permutation._from_key(w, G.degree),
                tuple(Permutation._from_key(k, G.degree) for k in gens),
            )
            return TIWitness(False, violator)
    return TIWitness(True, None)


def lemma_4_1_check(G, H, bounds=DEFAULT_BOUNDS):
    """For a T.I. subgroup, being Hall in G is equivalent to being Hall in
    the normalizer. Both sides are computed independently."""
    _require_subgroup(G, H, "lemma_4_1_check")
    w = is_ti(G, H, bounds)
    if not w.verdict:
        return _not_applicable("lemma_4_1", "trivial_intersection", violator=w.violator)
    N = normalizer(G, H, bounds)
    in_g = is_hall_in(H, G)
    in_n = is_hall_in(H, N)
    cert = {
        "hall_in_group": in_g,
        "hall_in_normalizer": in_n,
        "normalizer_order": N.order(),
    }
    return TheoremReport("lemma_4_1", HOLDS if in_g == in_n else FAILS, cert)


def _embeds_in_conjugate(G, S, Hfs, bounds):
    """(found, w) with S^w inside the subgroup whose element set is Hfs."""
    Sfs = frozenset(S.element_key_set(bounds.enum))
    for fs, w in _conjugate_orbit(G, Sfs, bounds):
        if fs <= Hfs:
            return True, Permutation._from_key(w, G.degree)
    return False, None


def prop_1_4_check(G, H, pi, bounds=DEFAULT_BOUNDS):
    """A Hall pi-subgroup that is T.I. absorbs every pi-subgroup up to
    conjugacy, and the Hall pi-subgroups form a single class. Verified by
    sweeping all subgroup classes, recording a conjugator witness per
    class."""
    pi = _check_primes(pi)
    _require_subgroup(G, H, "prop_1_4_check")
    sid = "prop_1_4"
    n = G.order()
    if H.order() != pi_part(n, pi) or not is_pi_number(H.order(), pi):
        return _not_applicable(
            sid, "hall_pi_subgroup",
            pi=tuple(sorted(pi)), subgroup_order=H.order(), pi_part=pi_part(n, pi),
        )
    w = is_ti(G, H, bounds)
    if not w.verdict:
        return _not_applicable(sid, "trivial_intersection", violator=w.violator)
    Hfs = frozenset(H.element_key_set(bounds.enum))
    embeddings = []
    hall_witnesses = []
    hall_classes = 0
    for S in subgroups_up_to_conjugacy(G, bounds):
        so = S.order()
        if so == 1 or not is_pi_number(so, pi):
            continue
        found, conj = _embeds_in_conjugate(G, S, Hfs, bounds)
        if not found:
            return TheoremReport(sid, FAILS, {
                "pi": tuple(sorted(pi)),
                "unembedded_class_order": so,
                "class_generators": S.generators,
            })
        embeddings.append((so, conj))
        if so == H.order():
            hall_classes += 1
            hall_witnesses.append(conj)
    cert = {
        "pi": tuple(sorted(pi)),
        "embedded_classes": len(embeddings),
        "hall_class_count": hall_classes,
        "embeddings": tuple(embeddings),
        "hall_witnesses": tuple(hall_witnesses),
    }
    return TheoremReport(sid, HOLDS if hall_classes == 1 else FAILS, cert)


def _element_pi_part(k, pi):
    m = kernels.perm_order(k)
    rest = 1
    for p, e in factorint(m).items():
        if p not in pi:
            rest *= p ** e
    return kernels.power(k, rest)


def pi_core(G, pi, bounds=DEFAULT_BOUNDS):
    """O_pi(G): the join of all normal pi-subgroups.

    At materializable scale the core is assembled from class representatives
    of pi-order whose normal closures stay pi-groups; every normal
    pi-subgroup is a join of such closures, so the sweep is complete. Larger
    groups are seeded with closures of generator pi-parts and ascend through
    quotients: K grows while O_pi(G/K) is nontrivial, and once it is trivial
    the image of O_pi(G) in G/K has nowhere to live, forcing K = O_pi(G)
    exactly.
    """
    pi = _check_primes(pi)
    n = G.order()
    if is_pi_number(n, pi):
        return G
    live = frozenset(pi & prime_set(n))
    if not live:
        return trivial_subgroup(G)
    key = ("pi_core", tuple(sorted(live)))
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    if n <= _material_cap(bounds):
        out = _pi_core_desk(G, live, bounds)
    else:
        out = _pi_core_ascent(G, live, bounds)
    G._cache[key] = out
    return out


def _pi_core_desk(G, pi, bounds):
    degree = G.degree
    idk = kernels.identity_key(degree)
    gens = []
    chain = build_chain(degree, gens)
    for cls in conjugacy_classes(G, bounds):
        k = cls.rep.key
        if k == idk or not is_pi_number(cls.element_order, pi):
            continue
        if chain.contains_key(k):
            # the partial join is normal, so the closure of k adds nothing
            continue
        N = _normal_closure_of_key(G, k, bounds)
        if not is_pi_number(N.order(), pi):
            continue
        gens.extend(N.gen_keys)
        chain = build_chain(degree, gens)
    out = G.subgroup_from_keys(gens)
    if not is_pi_number(out.order(), pi):
        raise RuntimeError("join of normal pi-subgroups is not a pi-group")
    return out


def _normal_closure_of_key(G, k, bounds):
    return normal_closure(G, [Permutation._from_key(k, G.degree)], bounds)


def _pi_core_ascent(G, pi, bounds):
    degree = G.degree
    idk = kernels.identity_key(degree)
    gens = []
    chain = build_chain(degree, gens)
    for g in G.gen_keys:
        k = _element_pi_part(g, pi)
        if k == idk or chain.contains_key(k):
            continue
        N = _normal_closure_of_key(G, k, bounds)
        if not is_pi_number(N.order(), pi):
            continue
        gens.extend(N.gen_keys)
        chain = build_chain(degree, gens)
    K = G.subgroup_from_keys(gens)
    while True:
        if K.order() == 1:
            raise BoundExceeded(
                "pi-core of a group of order %d needs materialization" % (G.order(),),
                bound=_material_cap(bounds), needed=G.order(),
            )
        Qt = quotient(G, K, bounds)
        C = pi_core(Qt.group, pi, bounds)
        if C.order() == 1:
            return K
        pre = Qt.preimage(C)
        K = G.subgroup_from_keys(pre.gen_keys)


def pi_series(G, pi, bounds=DEFAULT_BOUNDS):
    """Ascending alternating series of pi'- and pi-cores pulled back through
    quotients, starting with the pi'-core.

    Returns (series, pi_length, separable). The group is separable iff the
    series reaches it; pi_length counts the pi-steps that grow and is None
    otherwise. Two consecutive stalled steps mean neither core can make
    progress, which is exactly non-separability.
    """
    pi = _check_primes(pi)
    pi_other = complement_primes(G.order(), pi)
    series = [trivial_subgroup(G)]
    cur = series[0]
    length = 0
    take_pi = False
    stalls = 0
    while cur.order() < G.order():
        Qt = quotient(G, cur, bounds)
        C = pi_core(Qt.group, pi if take_pi else pi_other, bounds)
        if C.order() > 1:
            pre = Qt.preimage(C)
            cur = G.subgroup_from_keys(pre.gen_keys)
            series.append(cur)
            if take_pi:
                length += 1
            stalls = 0
        else:
            stalls += 1
            if stalls == 2:
                return series, None, False
        take_pi = not take_pi
    return series, length, True


def _section_guard(H, V):
    if H.degree != V.top.degree:
        raise InvalidInput("degree mismatch between the acting group and the section")
    for T, name in ((V.top, "top"), (V.bottom, "bottom")):
        for h in H.gen_keys:
            hi = kernels.inverse(h)
            for t in T.gen_keys:
                if not T.contains_key(kernels.compose(kernels.compose(hi, t), h)):
                    raise InvalidInput(
                        "the acting group does not normalize the section %s" % (name,)
                    )


def fixed_point_count(h, V, bounds=DEFAULT_BOUNDS):
    """Number of points of V's quotient fixed by conjugation by h. The
    identity coset is always fixed, so 1 means fixed-point-free. With a
    trivial bottom the points are the elements of the top group and the
    fixed ones are exactly the centralizer of h there."""
    if V.bottom.order() == 1:
        return centralizer(V.top, h, bounds).order()
    Qt = V.quotient(bounds)
    hk = h.key
    hi = kernels.inverse(hk)
    rep = Qt._rep
    count = 0
    for r in Qt._reps:
        if rep(kernels.compose(kernels.compose(hi, r), hk)) == r:
            count += 1
    return count


def _prime_order_reps(H, bounds):
    """One representative per cyclic subgroup of prime order, in enumeration
    order. Fixed-point sets of the nontrivial powers of a prime-order
    element all coincide, so one representative decides for the whole
    subgroup."""
    seen = set()
    out = []
    for k in H.iter_element_keys(bounds.enum):
        m = kernels.perm_order(k)
        if not is_prime(m):
            continue
        members = frozenset(kernels.power(k, e) for e in range(1, m))
        if members & seen:
            continue
        seen.update(members)
        out.append(Permutation._from_key(k, H.degree))
    return out


def is_frobenius_action(H, V, bounds=DEFAULT_BOUNDS):
    """True iff every nonidentity element of H moves every nonidentity
    point of V's quotient.

    Prime-order elements suffice: a fixed point of h is fixed by every
    power of h, including one of prime order, so fixed-point-freeness for
    the prime-order elements gives it for all of H.
    """
    _section_guard(H, V)
    if V.is_trivial():
        return True
    if V.bottom.order() == 1:
        for h in _prime_order_reps(H, bounds):
            if centralizer(V.top, h, bounds).order() != 1:
                return False
        return True
    Qt = V.quotient(bounds)
    rep = Qt._rep
    for h in _prime_order_reps(H, bounds):
        hk = h.key
        hi = kernels.inverse(hk)
        fixed = 0
        for r in Qt._reps:
            if rep(kernels.compose(kernels.compose(hi, r), hk)) == r:
                fixed += 1
                if fixed > 1:
                    break
        if fixed > 1:
            return False
    return True


def frobenius_kernel(G, H, bounds=DEFAULT_BOUNDS):
    """Literal kernel extraction: N = (G minus the union of all conjugates
    of H) plus the identity, then full verification that N is a normal
    subgroup meeting H trivially with N*H = G.

    The hypothesis is exactly that H is self-normalizing and meets its
    other conjugates trivially; its failure gives NOT_APPLICABLE. A passed
    hypothesis with a failed construction is reported as FAILS with the
    offending evidence, since that combination would be a genuine
    counterexample.
    """
    _require_subgroup(G, H, "frobenius_kernel")
    sid = "cor_6_2"
    n = G.order()
    h = H.order()
    if h == 1 or h == n:
        return _not_applicable(sid, "proper_nontrivial", group_order=n, subgroup_order=h)
    Hfs = frozenset(H.element_key_set(bounds.enum))
    orbit = _conjugate_orbit(G, Hfs, bounds)
    for fs, w in orbit:
        if fs is Hfs:
            continue
        inter = Hfs & fs
        if len(inter) > 1:
            return _not_applicable(
                sid, "conjugates_meet_trivially",
                conjugator=Permutation._from_key(w, G.degree),
                intersection_order=len(inter),
            )
    if len(orbit) * h != n:
        return _not_applicable(
            sid, "self_normalizing",
            conjugate_count=len(orbit), expected_count=n // h,
        )
    union = set()
    for fs, _w in orbit:
        union.update(fs)
    idk = kernels.identity_key(G.degree)
    nset = (G.element_key_set(bounds.enum) - union) | {idk}
    expected = n // h
    cert = {"conjugates": len(orbit), "set_size": len(nset), "expected_order": expected}
    if len(nset) != expected:
        return TheoremReport(sid, FAILS, cert)
    gens, chain = _reduce_keys(G.degree, sorted(nset))
    if chain.order != expected:
        cert["closure_order"] = chain.order
        return TheoremReport(sid, FAILS, cert)
    N = G.subgroup_from_keys(gens)
    if not N.is_normal_in(G):
        cert["normal"] = False
        return TheoremReport(sid, FAILS, cert)
    if len(nset & Hfs) != 1:
        cert["meet_order"] = len(nset & Hfs)
        return TheoremReport(sid, FAILS, cert)
    full = build_chain(G.degree, list(gens) + list(H.gen_keys))
    if full.order != n:
        cert["product_order"] = full.order
        return TheoremReport(sid, FAILS, cert)
    cert["kernel"] = N
    cert["kernel_order"] = N.order()
    return TheoremReport(sid, HOLDS, cert)


_SL25 = None


def _sl25():
    # Determinant-one 2x2 matrices over GF(5) acting on the 25 plane points:
    # small, faithful, and independent of the catalog constructions.
    global _SL25
    if _SL25 is None:
        t = [0] * 25
        s = [0] * 25
        for x in range(5):
            for y in range(5):
                t[5 * x + y] = 5 * ((x + y) % 5) + y
                s[5 * x + y] = 5 * y + (-x) % 5
        _SL25 = PermutationGroup([Permutation(t), Permutation(s)], degree=25)
    return _SL25


def _involves_sl25(H, bounds):
    # a section's order divides the group's, so most inputs exit here
    if H.order() % 120 != 0:
        return False
    return involves(H, _sl25(), bounds)


def _invariant_sylow(N, H, p, bounds):
    """An H-invariant Sylow p-subgroup of N, or None after the full
    conjugation orbit (which covers every Sylow p-subgroup of N)."""
    P = sylow(N, p, bounds)
    if P.order() == 1:
        return None
    hpairs = [(k, kernels.inverse(k)) for k in H.gen_keys]
    npairs = _gen_pairs(N)
    fs0 = frozenset(P.element_key_set(bounds.enum))
    nodes = [fs0]
    seen = {fs0}
    for fs in nodes:
        if all(kernels.conjugate_set(fs, g, gi) == fs for g, gi in hpairs):
            return _group_from_set(N, fs)
        for g, gi in npairs:
            img = kernels.conjugate_set(fs, g, gi)
            if img not in seen:
                if len(nodes) >= bounds.enum:
                    raise BoundExceeded(
                        "Sylow orbit exceeded %d members" % (bounds.enum,),
                        bound=bounds.enum,
                    )
                seen.add(img)
                nodes.append(img)
    return None


def _frobenius_section_search(G, H, L, Ld, bounds):
    """Deterministic search for an H-invariant section of L with Frobenius
    H-action: L/L' first, then P/P' and P/1 over H-invariant Sylow
    subgroups of L by ascending prime, finally the chief factors of G
    between L' and L."""
    if L.order() == 1:
        return None
    if Ld.order() < L.order():
        sec = Section(L, Ld)
        if is_frobenius_action(H, sec, bounds):
            return sec
    for p in sorted(prime_set(L.order())):
        P = _invariant_sylow(L, H, p, bounds)
        if P is None:
            continue
        Pd = commutator(G, P, P, bounds)
        candidates = [Section(P, Pd)]
        if Pd.order() > 1:
            candidates.append(Section(P, trivial_subgroup(G)))
        for sec in candidates:
            if not sec.is_trivial() and is_frobenius_action(H, sec, bounds):
                return sec
    if Ld.order() < L.order():
        terms = [Ld] + _refine_gap(G, Ld, L, bounds)
        for below, above in zip(terms, terms[1:]):
            sec = Section(above, below)
            if is_frobenius_action(H, sec, bounds):
                return sec
    return None


def _chief_frobenius_between(G, H, L, Ld, bounds):
    """First chief factor of G between derived(L) and L with Frobenius
    H-action, ascending."""
    if Ld.order() == L.order() or L.order() == 1:
        return None
    terms = [Ld] + _refine_gap(G, Ld, L, bounds)
    for below, above in zip(terms, terms[1:]):
        sec = Section(above, below)
        if is_frobenius_action(H, sec, bounds):
            return sec
    return None


def _complement_in(N, H, bounds):
    """A complement of H in N: the first subgroup class (walked through its
    conjugates) of complementary order meeting H trivially, or None."""
    target = N.order() // H.order()
    if target == 1:
        return trivial_subgroup(N)
    if H.order() == 1:
        return N
    Hfs = frozenset(H.element_key_set(bounds.enum))
    pairs = _gen_pairs(N)
    for S in subgroups_up_to_conjugacy(N, bounds):
        if S.order() != target:
            continue
        fs0 = frozenset(S.element_key_set(bounds.enum))
        nodes = [fs0]
        seen = {fs0}
        for fs in nodes:
            if len(fs & Hfs) == 1:
                return _group_from_set(N, fs)
            for g, gi in pairs:
                img = kernels.conjugate_set(fs, g, gi)
                if img not in seen:
                    seen.add(img)
                    nodes.append(img)
    return None


def _main_hypotheses(G, H, bounds):
    """Ordered hypothesis evaluation for the main structure statement; stops
    at the first failure. Returns (failed_name, context); failed_name is
    None when every hypothesis holds, and the context carries whatever the
    successful prefix computed."""
    ctx = {}
    n, h = G.order(), H.order()
    if not 1 < h < n:
        return "nontrivial_proper", ctx
    if H.is_normal_in(G):
        return "nonnormal", ctx
    if not is_ti(G, H, bounds).verdict:
        return "trivial_intersection", ctx
    N = normalizer(G, H, bounds)
    ctx["normalizer"] = N
    if not is_hall_in(H, N):
        return "hall_in_normalizer", ctx
    pi = prime_set(h)
    ctx["pi"] = pi
    series, plen, separable = pi_series(G, pi, bounds)
    ctx["pi_length"] = plen
    if not separable:
        return "pi_separable", ctx
    ctx["o_pi_prime"] = pi_core(G, complement_primes(n, pi), bounds)
    return None, ctx


def analyze_theorem_1_2(G, H, bounds=DEFAULT_BOUNDS):
    """Full pipeline for the main structure statement.

    Checks the hypotheses (H nontrivial proper, nonnormal, T.I., Hall in its
    normalizer, G pi-separable for the primes pi of H), then verifies: (a)
    pi-length 1 together with G = O_{pi'}(G) N_G(H) by exact product order;
    (b) an H-invariant section with Frobenius action, located through
    L = [O_{pi'}(G), H], plus a chief factor of G between L' and L with the
    same property whenever O_{pi'}(G) is solvable; (c) the solvability
    biconditional: G solvable iff O_{pi'}(G) is solvable and H has no
    section isomorphic to SL(2,5). The product and pi-length facts are
    reported even when a hypothesis fails, so near-miss inputs show which
    conclusions break.
    """
    _require_subgroup(G, H, "analyze_theorem_1_2")
    n, h = G.order(), H.order()
    pi = prime_set(h)
    hyps = {"nontrivial_proper": 1 < h < n}
    if not hyps["nontrivial_proper"]:
        O = pi_core(G, complement_primes(n, pi), bounds)
        L = commutator(G, O, H, bounds)
        return AnalysisReport(
            verdict=NOT_APPLICABLE, pi=pi, hypotheses=hyps,
            o_pi_prime=O, n_g_h=G, l_subgroup=L, q_complement=None,
            pi_length=None, frobenius_section=None, chief_frobenius_factor=None,
            solvability_verdicts={}, conclusions={},
        )
    hyps["nonnormal"] = not H.is_normal_in(G)
    hyps["trivial_intersection"] = is_ti(G, H, bounds).verdict
    N = normalizer(G, H, bounds)
    hyps["hall_in_normalizer"] = is_hall_in(H, N)
    series, plen, separable = pi_series(G, pi, bounds)
    hyps["pi_separable"] = separable
    O = pi_core(G, complement_primes(n, pi), bounds)
    L = commutator(G, O, H, bounds)
    meet = intersection(N, O, parent=G, bounds=bounds)
    product_ok = O.order() * N.order() // meet.order() == n
    conclusions = {"product": product_ok, "pi_length_one": plen == 1}
    if not all(hyps.values()):
        return AnalysisReport(
            verdict=NOT_APPLICABLE, pi=pi, hypotheses=hyps,
            o_pi_prime=O, n_g_h=N, l_subgroup=L, q_complement=None,
            pi_length=plen, frobenius_section=None, chief_frobenius_factor=None,
            solvability_verdicts={}, conclusions=conclusions,
        )
    Q = _complement_in(N, H, bounds)
    Ld = commutator(G, L, L, bounds)
    sec = _frobenius_section_search(G, H, L, Ld, bounds)
    conclusions["frobenius_section"] = sec is not None
    o_solvable = is_solvable(O, bounds)
    chief = None
    if o_solvable:
        chief = _chief_frobenius_between(G, H, L, Ld, bounds)
        conclusions["chief_factor"] = chief is not None
    g_solvable = is_solvable(G, bounds)
    inv = _involves_sl25(H, bounds)
    biconditional = g_solvable == (o_solvable and not inv)
    conclusions["solvability_biconditional"] = biconditional
    solv = {
        "group": g_solvable,
        "o_pi_prime": o_solvable,
        "h_involves_sl25": inv,
        "biconditional": biconditional,
    }
    ok = (
        product_ok
        and plen == 1
        and sec is not None
        and (chief is not None or not o_solvable)
        and biconditional
    )
    return AnalysisReport(
        verdict=HOLDS if ok else FAILS,
        pi=pi, hypotheses=hyps, o_pi_prime=O, n_g_h=N, l_subgroup=L,
        q_complement=Q, pi_length=plen, frobenius_section=sec,
        chief_frobenius_factor=chief, solvability_verdicts=solv,
        conclusions=conclusions,
    )


def decompose_OHQ(G, H, bounds=DEFAULT_BOUNDS):
    """The product decomposition (O, H, Q): O = O_{pi'}(G) and Q a
    complement of H in N_G(H) found by class search. The product set OHQ is
    verified to cover G by exact order counting (O H and Q are subgroups,
    so |OHQ| = |OH|*|Q| / |OH meet Q|). Raises InvalidInput naming the
    failed main hypothesis; a missing complement raises RuntimeError since
    H is Hall in its normalizer and a complement must exist."""
    _require_subgroup(G, H, "decompose_OHQ")
    failed, ctx = _main_hypotheses(G, H, bounds)
    if failed is not None:
        raise InvalidInput("decompose_OHQ hypothesis failed: %s" % (failed,))
    O, N = ctx["o_pi_prime"], ctx["normalizer"]
    Q = _complement_in(N, H, bounds)
    if Q is None:
        raise RuntimeError("no complement of a Hall subgroup in its normalizer")
    OH = join(G, O, H)
    meet = intersection(OH, Q, parent=G, bounds=bounds)
    if OH.order() * Q.order() // meet.order() != G.order():
        raise RuntimeError("product O*H*Q does not cover the group")
    return O, G.subgroup_from_keys(H.gen_keys), Q


def normal_complement(G, H, bounds=DEFAULT_BOUNDS):
    """A normal subgroup meeting H trivially with N H = G, or None.

    When H is a Hall subgroup the candidate is forced: a normal complement
    would be a normal subgroup of exactly the complementary coprime order,
    hence equal to the pi-core for the primes of that order, so one core
    computation decides existence. Otherwise every normal subgroup of
    complementary order is inspected.
    """
    _require_subgroup(G, H, "normal_complement")
    n, h = G.order(), H.order()
    target = n // h
    if h == 1:
        return G
    if target == 1:
        return trivial_subgroup(G)
    if gcd(h, target) == 1:
        C = pi_core(G, prime_set(target), bounds)
        return C if C.order() == target else None
    Hfs = frozenset(H.element_key_set(bounds.enum))
    for N in normal_subgroups(G, bounds):
        if N.order() != target:
            continue
        if len(frozenset(N.element_key_set(bounds.enum)) & Hfs) == 1:
            return N
    return None


def theorem_1_7_check(G, H, bounds=DEFAULT_BOUNDS):
    """Normal complement in the normalizer iff normal complement in the
    whole group; when H is nonnormal and the complement K exists, H is
    additionally realized as a Frobenius complement: a section of
    L = [K, H] with Frobenius H-action is located and the explicit witness
    group is built and re-verified by kernel extraction."""
    _require_subgroup(G, H, "theorem_1_7_check")
    sid = "thm_1_7"
    ti = is_ti(G, H, bounds)
    if not ti.verdict:
        return _not_applicable(sid, "trivial_intersection", violator=ti.violator)
    N = normalizer(G, H, bounds)
    if not is_hall_in(H, N):
        return _not_applicable(sid, "hall_in_normalizer", normalizer_order=N.order())
    side_n = normal_complement(N, H, bounds)
    side_g = normal_complement(G, H, bounds)
    cert = {
        "normalizer_order": N.order(),
        "complement_in_normalizer_order": None if side_n is None else side_n.order(),
        "complement_in_group_order": None if side_g is None else side_g.order(),
    }
    if (side_n is None) != (side_g is None):
        return TheoremReport(sid, FAILS, cert)
    if side_g is not None and H.order() > 1 and not H.is_normal_in(G):
        L = commutator(G, side_g, H, bounds)
        Ld = commutator(G, L, L, bounds)
        sec = _frobenius_section_search(G, H, L, Ld, bounds)
        if sec is None:
            cert["frobenius_section_order"] = None
            return TheoremReport(sid, FAILS, cert)
        cert["frobenius_section_order"] = sec.order()
        W = build_frobenius_witness(H, sec, bounds)
        cert["witness_order"] = W.order()
        cert["witness"] = W
    return TheoremReport(sid, HOLDS, cert)


def build_frobenius_witness(H, V, bounds=DEFAULT_BOUNDS):
    """Permutation group on the points of V's quotient realizing the
    semidirect product of V by H: right translations together with the
    conjugation action of H. The result is re-verified by kernel
    extraction, which must return the translation part."""
    if H.order() == 1:
        raise InvalidInput("the acting group must be nontrivial")
    _section_guard(H, V)
    m = V.order()
    if m == 1:
        raise InvalidInput("cannot realize an action on a trivial section")
    if m > QUOTIENT_INDEX_BOUND:
        raise BoundExceeded(
            "witness degree %d exceeds %d" % (m, QUOTIENT_INDEX_BOUND),
            bound=QUOTIENT_INDEX_BOUND, needed=m,
        )
    if not is_frobenius_action(H, V, bounds):
        raise InvalidInput("the action on the section is not Frobenius")
    if V.bottom.order() == 1:
        keys = sorted(V.top.element_key_set(bounds.enum))
        index_of = {k: i for i, k in enumerate(keys)}
        translations = [
            Permutation([index_of[kernels.compose(k, g)] for k in keys])
            for g in V.top.gen_keys
        ]
        h_actions = []
        for hk in H.gen_keys:
            hi = kernels.inverse(hk)
            h_actions.append(Permutation(
                [index_of[kernels.compose(kernels.compose(hi, k), hk)] for k in keys]
            ))
    else:
        Qt = V.quotient(bounds)
        translations = list(Qt.group.generators)
        rep = Qt._rep
        index_of = Qt._index_of
        h_actions = []
        for hk in H.gen_keys:
            hi = kernels.inverse(hk)
            h_actions.append(Permutation(
                [index_of[rep(kernels.compose(kernels.compose(hi, r), hk))] for r in Qt._reps]
            ))
    W = PermutationGroup(translations + h_actions, degree=m)
    expected = m * H.order()
    if W.order() != expected:
        raise RuntimeError("witness has order %d, expected %d" % (W.order(), expected))
    complement = W.subgroup(h_actions)
    check = frobenius_kernel(W, complement, bounds)
    if check.verdict != HOLDS or check.certificate["kernel"].order() != m:
        raise RuntimeError("built witness failed kernel extraction")
    return W


def theorem_1_5_check(G, H, bounds=DEFAULT_BOUNDS):
    """C_H(Q) is a Hall subgroup of G with normal complement O [H,Q] Q,
    where Q is a complement of H in the normalizer. Every piece is
    re-verified on the computed subgroups: Hall by coprimality, normality
    by generator conjugation, complement by trivial meet and full product
    order."""
    _require_subgroup(G, H, "theorem_1_5_check")
    sid = "thm_1_5"
    failed, ctx = _main_hypotheses(G, H, bounds)
    if failed is not None:
        return _not_applicable(sid, failed)
    S2 = sylow(H, 2, bounds)
    if not S2.is_abelian():
        return _not_applicable(sid, "abelian_sylow_2", sylow_2_order=S2.order())
    O, N = ctx["o_pi_prime"], ctx["normalizer"]
    Q = _complement_in(N, H, bounds)
    if Q is None:
        return TheoremReport(sid, FAILS, {"reason": "no complement of H in its normalizer"})
    C = centralizer(H, Q, bounds)
    HQ = commutator(G, H, Q, bounds)
    candidate = PermutationGroup.from_keys(
        tuple(O.gen_keys) + tuple(HQ.gen_keys) + tuple(Q.gen_keys),
        G.degree, parent=G,
    )
    meet = intersection(C, candidate, parent=G, bounds=bounds)
    hall_ok = is_hall_in(C, G)
    normal_ok = candidate.is_normal_in(G)
    product_ok = meet.order() == 1 and C.order() * candidate.order() == G.order()
    cert = {
        "q_order": Q.order(),
        "fixed_order": C.order(),
        "complement": candidate,
        "complement_order": candidate.order(),
        "hall_in_group": hall_ok,
        "normal": normal_ok,
        "meet_order": meet.order(),
        "product_full": product_ok,
    }
    verdict = HOLDS if (hall_ok and normal_ok and product_ok) else FAILS
    return TheoremReport(sid, verdict, cert)


def theorem_5_1_check(G, H, bounds=DEFAULT_BOUNDS):
    """Double-Frobenius structure of G/O': the three-factor product with
    trivial pairwise meets, the abelian faithful action of the top factor,
    and per prime-order beta the two Frobenius layers O[H,beta] and
    [H,beta]<beta>, each certified by its own kernel extraction."""
    _require_subgroup(G, H, "theorem_5_1_check")
    sid = "thm_5_1"
    failed, ctx = _main_hypotheses(G, H, bounds)
    if failed is not None:
        return _not_applicable(sid, failed)
    if H.order() % 2 == 0:
        return _not_applicable(sid, "odd_order", subgroup_order=H.order())
    O, N = ctx["o_pi_prime"], ctx["normalizer"]
    OH = commutator(G, O, H, bounds)
    if OH.order() != O.order():
        return _not_applicable(
            sid, "commutator_covers_core",
            commutator_order=OH.order(), core_order=O.order(),
        )
    if not is_solvable(O, bounds):
        return _not_applicable(sid, "core_solvable")
    Q = _complement_in(N, H, bounds)
    if Q is None:
        return TheoremReport(sid, FAILS, {"reason": "no complement of H in its normalizer"})
    Od = commutator(G, O, O, bounds)
    if all(Od.contains_key(k) for k in Q.gen_keys):
        return _not_applicable(sid, "complement_outside_derived_core", q_order=Q.order())
    Qt = quotient(G, Od, bounds)
    Gb = Qt.group
    Ob = Qt.project_group(O)
    Hb = Qt.project_group(H)
    Qb = Qt.project_group(Q)
    cert = {
        "o_bar_order": Ob.order(),
        "h_bar_order": Hb.order(),
        "q_bar_order": Qb.order(),
    }
    meet_oh = intersection(Ob, Hb, parent=Gb, bounds=bounds).order()
    meet_hq = intersection(Hb, Qb, parent=Gb, bounds=bounds).order()
    OHb = join(Gb, Ob, Hb)
    meet_ohq = intersection(OHb, Qb, parent=Gb, bounds=bounds).order()
    part_a = (
        meet_oh == 1 and meet_hq == 1 and meet_ohq == 1
        and Ob.is_normal_in(Gb)
        and OHb.is_normal_in(join(Gb, OHb, Qb))
        and Ob.order() * Hb.order() * Qb.order() == Gb.order()
    )
    cert["meet_orders"] = (meet_oh, meet_hq, meet_ohq)
    cert["product_structure"] = part_a
    abelian = Qb.is_abelian()
    faithful = True
    hgens = Hb.gen_keys
    for k in Qb.iter_element_keys(bounds.enum):
        if kernels.perm_order(k) == 1:
            continue
        ki = kernels.inverse(k)
        if all(kernels.compose(kernels.compose(ki, hg), k) == hg for hg in hgens):
            faithful = False
            break
    cert["abelian"] = abelian
    cert["faithful"] = faithful
    part_b = abelian and faithful
    layers = []
    part_c = True
    for beta in _prime_order_reps(Qb, bounds):
        beta_group = Gb.subgroup([beta])
        B = commutator(Gb, Hb, beta_group, bounds)
        layer = {"beta": beta, "commutator_order": B.order()}
        if B.order() == 1:
            part_c = False
            layers.append(layer)
            continue
        lower = frobenius_kernel(join(Gb, Ob, B), B, bounds)
        upper = frobenius_kernel(join(Gb, B, beta_group), beta_group, bounds)
        layer["lower_verdict"] = lower.verdict
        layer["upper_verdict"] = upper.verdict
        ok = lower.verdict == HOLDS and upper.verdict == HOLDS
        if ok:
            layer["lower_kernel_order"] = lower.certificate["kernel_order"]
            layer["upper_kernel_order"] = upper.certificate["kernel_order"]
            ok = (
                lower.certificate["kernel"].same_group(Ob)
                and upper.certificate["kernel"].same_group(B)
            )
        if not ok:
            part_c = False
        layers.append(layer)
    cert["layers"] = tuple(layers)
    verdict = HOLDS if (part_a and part_b and part_c) else FAILS
    return TheoremReport(sid, verdict, cert)


def lemma_4_2_check(G, N, H, p, bounds=DEFAULT_BOUNDS):
    """A group acting coprimely on a normal subgroup leaves some Sylow
    p-subgroup of it invariant; the checker exhibits one."""
    if not is_prime(p):
        raise InvalidInput("%r is not prime" % (p,))
    _require_subgroup(G, N, "lemma_4_2_check")
    _require_subgroup(G, H, "lemma_4_2_check")
    sid = "lemma_4_2"
    if not N.is_normal_in(G):
        return _not_applicable(sid, "normal_subgroup")
    if gcd(N.order(), H.order()) != 1:
        return _not_applicable(
            sid, "coprime_orders", n_order=N.order(), h_order=H.order(),
        )
    if N.order() % p != 0:
        return TheoremReport(sid, HOLDS, {"sylow_order": 1})
    P = _invariant_sylow(N, H, p, bounds)
    if P is None:
        return TheoremReport(sid, FAILS, {"prime": p, "n_order": N.order()})
    return TheoremReport(sid, HOLDS, {"sylow": P, "sylow_order": P.order()})


def lemma_4_3_check(G, N, H, bounds=DEFAULT_BOUNDS):
    """In the quotient by a coprime normal subgroup, the image of the
    normalizer is the normalizer of the image. Both sides computed
    independently."""
    _require_subgroup(G, N, "lemma_4_3_check")
    _require_subgroup(G, H, "lemma_4_3_check")
    sid = "lemma_4_3"
    if not N.is_normal_in(G):
        return _not_applicable(sid, "normal_subgroup")
    if gcd(N.order(), H.order()) != 1:
        return _not_applicable(
            sid, "coprime_orders", n_order=N.order(), h_order=H.order(),
        )
    Qt = quotient(G, N, bounds)
    Hb = Qt.project_group(H)
    image_normalizer = normalizer(Qt.group, Hb, bounds)
    normalizer_image = Qt.project_group(normalizer(G, H, bounds))
    agree = image_normalizer.same_group(normalizer_image)
    cert = {
        "normalizer_of_image_order": image_normalizer.order(),
        "image_of_normalizer_order": normalizer_image.order(),
    }
    return TheoremReport(sid, HOLDS if agree else FAILS, cert)


def lemma_4_4_check(G, N, H, bounds=DEFAULT_BOUNDS):
    """The trivial-intersection property passes to H N / N in the quotient
    by a coprime normal subgroup."""
    _require_subgroup(G, N, "lemma_4_4_check")
    _require_subgroup(G, H, "lemma_4_4_check")
    sid = "lemma_4_4"
    if not N.is_normal_in(G):
        return _not_applicable(sid, "normal_subgroup")
    if gcd(N.order(), H.order()) != 1:
        return _not_applicable(
            sid, "coprime_orders", n_order=N.order(), h_order=H.order(),
        )
    ti = is_ti(G, H, bounds)
    if not ti.verdict:
        return _not_applicable(sid, "trivial_intersection", violator=ti.violator)
    Qt = quotient(G, N, bounds)
    Hb = Qt.project_group(H)
    w = is_ti(Qt.group, Hb, bounds)
    cert = {"image_order": Hb.order(), "violator": w.violator}
    return TheoremReport(sid, HOLDS if w.verdict else FAILS, cert)
