"""Coprime action machinery: fixed subgroups, commutators [G, A], the
six-identity coprime suite, the cyclic-Sylow decomposition statement, fusion
control, and normal p-complement properties.

An action is always realized inside an ambient permutation group: A acts on
G by conjugation in a common parent. There is no abstract automorphism type;
the corpus constructors realize every needed action (field automorphisms,
inversion, multiplication) this way.
"""

from dataclasses import dataclass
from math import gcd

from tigroups import kernels
from tigroups.arith import is_pi_number, is_prime, prime_set
from tigroups.errors import BoundExceeded, InvalidInput
from tigroups.grouplat import (
    centralizer,
    commutator,
    conjugacy_classes,
    intersection,
    is_hall_in,
    is_solvable,
    normal_subgroups,
    normalizer,
    quotient,
    subgroups_up_to_conjugacy,
    sylow,
)
from tigroups.permcore import DEFAULT_BOUNDS, Permutation, PermutationGroup
from tigroups.tiprops import (
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    SKIPPED,
    TheoremReport,
    _embeds_in_conjugate,
    _invariant_sylow,
    _not_applicable,
    normal_complement,
)


@dataclass(frozen=True)
class CoprimeActionPair:
    """A acting on G by conjugation inside parent = G A, with coprime
    orders. g_part is normal in parent, so conjugation by a_part elements
    stays inside it."""

    parent: PermutationGroup
    g_part: PermutationGroup
    a_part: PermutationGroup


def make_pair(parent, G, A, bounds=DEFAULT_BOUNDS):
    """Validated coprime action pair. Raises InvalidInput naming the first
    violated invariant."""
    if not G.is_subgroup_of(parent) or not A.is_subgroup_of(parent):
        raise InvalidInput("both factors must be subgroups of the parent")
    if not G.is_normal_in(parent):
        raise InvalidInput("the acted-on part must be normal in the parent")
    if gcd(G.order(), A.order()) != 1:
        raise InvalidInput("the factor orders must be coprime")
    if intersection(G, A, parent=parent, bounds=bounds).order() != 1:
        raise InvalidInput("the factors must meet trivially")
    if G.order() * A.order() != parent.order():
        raise InvalidInput("the parent must be exactly the product of the factors")
    return CoprimeActionPair(parent, G, A)


def fixed_subgroup(pair, bounds=DEFAULT_BOUNDS):
    """C_G(A): the elements of G fixed by every element of A. Conjugation
    fixes g iff g commutes with the conjugator, so this is a centralizer."""
    return centralizer(pair.g_part, pair.a_part, bounds)


def commutator_ga(pair, bounds=DEFAULT_BOUNDS):
    """[G, A]: generated by the elements g^{-1} g^a, closed under
    conjugation. The closure taken in the parent equals the closure in G,
    since the commutator set is already invariant under both factors."""
    return commutator(pair.parent, pair.g_part, pair.a_part, bounds)


def _is_cyclic(S, bounds):
    n = S.order()
    for k in S.iter_element_keys(bounds.enum):
        if kernels.perm_order(k) == n:
            return True
    return False


def _invariant_normal_subgroups(pair, bounds):
    """Normal subgroups of G stable under conjugation by A's generators.
    Such a subgroup is normal in the whole parent."""
    out = []
    apairs = [(k, kernels.inverse(k)) for k in pair.a_part.gen_keys]
    for N in normal_subgroups(pair.g_part, bounds):
        stable = all(
            N.contains_key(kernels.compose(kernels.compose(gi, x), g))
            for g, gi in apairs
            for x in N.gen_keys
        )
        if stable:
            out.append(N)
    return out


def coprime_identity_suite(pair, bounds=DEFAULT_BOUNDS):
    """All six coprime-action identities, each verified extensionally.

    (a) G = [G,A] C_G(A) by product order; (b) [G,A,A] = [G,A] as sets;
    (c) an A-invariant Sylow p-subgroup of G exists for every p; (d) its
    meet with C_G(A) is Sylow there; (e) fixed points pass to quotients by
    every A-invariant normal subgroup; (f) elements of C_G(A) fused in G
    are already fused in C_G(A). Identity (a) needs one side solvable; the
    suite records which side that is rather than assuming. A sub-check that
    trips a bound is reported SKIPPED, leaving the others standing.
    """
    sid = "coprime_2_1"
    G, A = pair.g_part, pair.a_part
    C = fixed_subgroup(pair, bounds)
    GA = commutator_ga(pair, bounds)
    cert = {
        "fixed_order": C.order(),
        "commutator_order": GA.order(),
        "solvable_g": is_solvable(G, bounds),
        "solvable_a": is_solvable(A, bounds),
    }
    checks = {}

    meet = intersection(GA, C, parent=pair.parent, bounds=bounds)
    if cert["solvable_g"] or cert["solvable_a"]:
        checks["a_product"] = GA.order() * C.order() // meet.order() == G.order()
    else:
        checks["a_product"] = SKIPPED

    GAA = commutator(pair.parent, GA, A, bounds)
    checks["b_commutator_stable"] = GAA.same_group(GA)

    invariant_orders = {}
    sylow_ok = True
    sylow_meet_ok = True
    for p in sorted(prime_set(G.order())):
        try:
            P = _invariant_sylow(G, A, p, bounds)
        except BoundExceeded:
            invariant_orders[p] = SKIPPED
            continue
        if P is None:
            sylow_ok = False
            invariant_orders[p] = None
            continue
        invariant_orders[p] = P.order()
        PC = intersection(P, C, parent=pair.parent, bounds=bounds)
        # Sylow in C means the index of the meet in C is prime to p
        if (C.order() // PC.order()) % p == 0:
            sylow_meet_ok = False
    cert["invariant_sylow_orders"] = invariant_orders
    checks["c_invariant_sylow"] = (
        SKIPPED if SKIPPED in invariant_orders.values() else sylow_ok
    )
    checks["d_sylow_of_fixed"] = sylow_meet_ok

    quotient_ok = True
    swept = 0
    try:
        for N in _invariant_normal_subgroups(pair, bounds):
            if N.order() == 1:
                # the quotient is an identity view; projecting changes
                # nothing, so the identity holds by construction
                swept += 1
                continue
            Qt = quotient(pair.parent, N, bounds)
            Cb = centralizer(Qt.project_group(G), Qt.project_group(A), bounds)
            if not Cb.same_group(Qt.project_group(C)):
                quotient_ok = False
            swept += 1
        checks["e_quotient_fixed_points"] = quotient_ok
    except BoundExceeded:
        checks["e_quotient_fixed_points"] = SKIPPED
    cert["invariant_normals_swept"] = swept

    checks["f_fusion_in_fixed"] = _fused_pairs_stay_fused(G, C, bounds)

    cert["checks"] = checks
    values = list(checks.values())
    if any(v is False for v in values):
        verdict = FAILS
    elif SKIPPED in values:
        verdict = SKIPPED
    else:
        verdict = HOLDS
    return TheoremReport(sid, verdict, cert)


def _fused_pairs_stay_fused(G, C, bounds):
    """True iff any two C-elements in one G-class lie in one C-class."""
    ckeys = frozenset(C.element_key_set(bounds.enum))
    for cls in conjugacy_classes(G, bounds):
        members = [k for k in cls.keys if k in ckeys]
        if len(members) < 2:
            continue
        orbit = _element_fusion_orbit(C, members[0], bounds)
        if any(y not in orbit for y in members[1:]):
            return False
    return True


def _element_fusion_orbit(K, key, bounds):
    """Conjugation orbit of one element key under K."""
    pairs = [(k, kernels.inverse(k)) for k in K.gen_keys]
    orbit = {key}
    frontier = [key]
    while frontier:
        nxt = []
        for x in frontier:
            for g, gi in pairs:
                y = kernels.compose(kernels.compose(gi, x), g)
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    return orbit


def prop_1_6_check(pair, bounds=DEFAULT_BOUNDS):
    """When every Sylow subgroup of G is cyclic: C_G(A) is Hall in G,
    G = [G,A] : C_G(A) with trivial meet, and [G,A] is cyclic."""
    sid = "prop_1_6"
    G = pair.g_part
    for p in sorted(prime_set(G.order())):
        if not _is_cyclic(sylow(G, p, bounds), bounds):
            return _not_applicable(sid, "cyclic_sylow_subgroups", prime=p)
    C = fixed_subgroup(pair, bounds)
    GA = commutator_ga(pair, bounds)
    meet = intersection(GA, C, parent=pair.parent, bounds=bounds)
    hall_ok = gcd(C.order(), G.order() // C.order()) == 1
    split_ok = (
        meet.order() == 1
        and GA.order() * C.order() == G.order()
        and GA.is_normal_in(G)
    )
    cyclic_ok = _is_cyclic(GA, bounds)
    cert = {
        "fixed_order": C.order(),
        "commutator_order": GA.order(),
        "hall": hall_ok,
        "semidirect": split_ok,
        "commutator_cyclic": cyclic_ok,
    }
    verdict = HOLDS if (hall_ok and split_ok and cyclic_ok) else FAILS
    return TheoremReport(sid, verdict, cert)


def controls_fusion(K, H, G, bounds=DEFAULT_BOUNDS):
    """(verdict, counterexample): true iff every pair of H-elements
    conjugate in G is already conjugate in K. A false verdict carries a
    pair (x, y) fused in G but separated in K."""
    if not (H.is_subgroup_of(K) and K.is_subgroup_of(G)):
        raise InvalidInput("controls_fusion expects H <= K <= G")
    hkeys = frozenset(H.element_key_set(bounds.enum))
    for cls in conjugacy_classes(G, bounds):
        members = [k for k in cls.keys if k in hkeys]
        if len(members) < 2:
            continue
        orbit = _element_fusion_orbit(K, members[0], bounds)
        for y in members[1:]:
            if y not in orbit:
                return False, (
                    Permutation._from_key(members[0], G.degree),
                    Permutation._from_key(y, G.degree),
                )
    return True, None


def has_normal_p_complement(G, p, bounds=DEFAULT_BOUNDS):
    """Normal subgroup N with N P = G and N meet P = 1 for P Sylow p, or
    None. Delegates to the Hall-subgroup complement decision."""
    if not is_prime(p):
        raise InvalidInput("%r is not prime" % (p,))
    return normal_complement(G, sylow(G, p, bounds), bounds)


def transfer_property_suite(G, p, bounds=DEFAULT_BOUNDS):
    """Three normal p-complement statements as implications between
    independently computed facts: (a) P central in its normalizer forces a
    complement; (b) P cyclic for the smallest prime forces a complement;
    (c) a complement exists iff P controls fusion in itself. The
    certificate records which implications fired non-vacuously."""
    if not is_prime(p):
        raise InvalidInput("%r is not prime" % (p,))
    sid = "transfer_2_3"
    P = sylow(G, p, bounds)
    N = normalizer(G, P, bounds)
    central = all(
        kernels.compose(x, y) == kernels.compose(y, x)
        for x in P.gen_keys
        for y in N.gen_keys
    )
    complement = has_normal_p_complement(G, p, bounds)
    exists = complement is not None
    cyclic = _is_cyclic(P, bounds)
    smallest = G.order() > 1 and p == min(prime_set(G.order()))
    fusion, counterexample = controls_fusion(P, P, G, bounds)
    checks = {
        "a_central_forces_complement": (not central) or exists,
        "b_smallest_cyclic_forces_complement": not (cyclic and smallest) or exists,
        "c_complement_iff_fusion_control": exists == fusion,
    }
    cert = {
        "sylow_order": P.order(),
        "central_in_normalizer": central,
        "cyclic_sylow": cyclic,
        "smallest_prime": smallest,
        "complement_exists": exists,
        "complement_order": complement.order() if exists else None,
        "controls_fusion": fusion,
        "fusion_counterexample": counterexample,
        "a_applicable": central,
        "b_applicable": cyclic and smallest,
        "checks": checks,
    }
    verdict = HOLDS if all(checks.values()) else FAILS
    return TheoremReport(sid, verdict, cert)


def brauer_suzuki_check(G, H, bounds=DEFAULT_BOUNDS):
    """Normal complement for a Hall subgroup that controls its own fusion
    and absorbs every pi-subgroup up to conjugacy. Both hypotheses are
    verified before the complement search; the conclusion is re-verified
    extensionally by the complement's defining properties."""
    sid = "thm_2_4"
    if not H.is_subgroup_of(G):
        raise InvalidInput("brauer_suzuki_check expects H <= G")
    if not is_hall_in(H, G):
        return _not_applicable(sid, "hall_subgroup", subgroup_order=H.order())
    fusion, counterexample = controls_fusion(H, H, G, bounds)
    if not fusion:
        return _not_applicable(sid, "fusion_control", counterexample=counterexample)
    pi = prime_set(H.order())
    Hfs = frozenset(H.element_key_set(bounds.enum))
    for S in subgroups_up_to_conjugacy(G, bounds):
        if S.order() == 1 or not is_pi_number(S.order(), pi):
            continue
        found, _w = _embeds_in_conjugate(G, S, Hfs, bounds)
        if not found:
            return _not_applicable(sid, "pi_subgroups_absorbed", class_order=S.order())
    K = normal_complement(G, H, bounds)
    if K is None:
        return TheoremReport(sid, FAILS, {"reason": "no normal complement found"})
    cert = {"complement": K, "complement_order": K.order()}
    return TheoremReport(sid, HOLDS, cert)
