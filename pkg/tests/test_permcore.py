import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from tigroups.errors import BoundExceeded, InvalidInput
from tigroups.permcore import (
    Permutation,
    PermutationGroup,
    build_chain,
    compose,
    conjugate,
    identity,
    inverse,
    parse_permutation,
)

from conftest import closure_oracle


def P(text, degree):
    return parse_permutation(text, degree)


def random_perm(rng, degree):
    images = list(range(degree))
    rng.shuffle(images)
    return Permutation(images)


perm_strategy = st.integers(min_value=1, max_value=12).flatmap(
    lambda n: st.permutations(range(n))
).map(Permutation)


class TestPermutation:
    def test_identity_maps_every_point_to_itself(self):
        e = identity(5)
        assert e.images == (0, 1, 2, 3, 4)
        assert e.is_identity()
        assert e.order() == 1

    # composition is left to right: (a*b)(x) = b(a(x))
    def test_composition_order(self):
        a = P("(0 1 2)", 3)
        b = P("(0 1)", 3)
        assert a * b == P("(1 2)", 3)
        assert b * a == P("(0 2)", 3)

    def test_compose_matches_pointwise_application(self):
        rng = random.Random(7)
        for _ in range(50):
            a = random_perm(rng, 9)
            b = random_perm(rng, 9)
            c = a * b
            for x in range(9):
                assert c.apply(x) == b.apply(a.apply(x))

    def test_inverse(self):
        a = P("(0 3 1)(2 4)", 5)
        assert a * a.inverse() == identity(5)
        assert a.inverse() * a == identity(5)

    def test_powers(self):
        a = P("(0 1 2 3 4 5)", 6)
        assert a**0 == identity(6)
        assert a**3 == P("(0 3)(1 4)(2 5)", 6)
        assert a**-1 == a.inverse()
        assert a**7 == a
        assert a**-5 == a

    def test_order(self):
        cases = [
            ("()", 4, 1),
            ("(0 1)", 4, 2),
            ("(0 1 2)", 4, 3),
            ("(0 1)(2 3)", 4, 2),
            ("(0 1 2 3)(4 5)", 6, 4),
            ("(0 1 2)(3 4)", 6, 6),
        ]
        for text, deg, n in cases:
            assert P(text, deg).order() == n

    def test_conjugation_is_right_action(self):
        rng = random.Random(11)
        for _ in range(30):
            x = random_perm(rng, 8)
            g = random_perm(rng, 8)
            h = random_perm(rng, 8)
            assert conjugate(x, g) == g.inverse() * x * g
            assert conjugate(conjugate(x, g), h) == conjugate(x, g * h)

    def test_conjugate_relabels_cycles(self):
        x = P("(0 1 2)", 5)
        g = P("(0 3)(1 4)", 5)
        assert conjugate(x, g) == P("(3 4 2)", 5)

    def test_rejects_non_bijections(self):
        with pytest.raises(InvalidInput):
            Permutation([0, 0, 1])
        with pytest.raises(InvalidInput):
            Permutation([0, 2])
        with pytest.raises(InvalidInput):
            Permutation([])

    def test_degree_mismatch(self):
        with pytest.raises(InvalidInput):
            P("(0 1)", 2) * P("(0 1)", 3)

    def test_support_and_cycles(self):
        a = P("(2 5)(3 7 4)", 8)
        assert a.support() == (2, 3, 4, 5, 7)
        assert a.cycles() == [(2, 5), (3, 7, 4)]
        assert identity(8).cycles() == []

    def test_sorting_is_stable_on_images(self):
        perms = [P("(0 2)", 3), identity(3), P("(0 1 2)", 3)]
        assert sorted(perms) == [identity(3), P("(0 1 2)", 3), P("(0 2)", 3)]

    @given(perm_strategy)
    def test_inverse_roundtrip(self, a):
        assert (a * a.inverse()).is_identity()
        assert a.inverse().inverse() == a

    @given(st.integers(min_value=1, max_value=10).flatmap(
        lambda n: st.tuples(*[st.permutations(range(n))] * 3)
    ))
    def test_associativity(self, triple):
        a, b, c = (Permutation(t) for t in triple)
        assert (a * b) * c == a * (b * c)

    @given(perm_strategy)
    def test_repr_roundtrips(self, a):
        assert parse_permutation(repr(a), a.degree) == a


class TestParsing:
    def test_examples(self):
        assert P("()", 3) == identity(3)
        assert P("(0 1)", 3).images == (1, 0, 2)
        assert P("(0 1 2)", 3).images == (1, 2, 0)
        assert P("(0 1)(2 3)", 4).images == (1, 0, 3, 2)
        assert P("  (1 2) ( 3 4 ) ", 5) == P("(1 2)(3 4)", 5)

    def test_singleton_cycles_are_fixed_points(self):
        assert P("(0)(1 2)", 3) == P("(1 2)", 3)

    def test_errors(self):
        for bad in ["", "0 1", "(0 1", "(0 x)", "(0 1)(1 2)", "(0 5)", "(0 1) junk"]:
            with pytest.raises(InvalidInput):
                P(bad, 3)
        with pytest.raises(InvalidInput):
            P("()", 0)


class TestStabilizerChain:
    def test_trivial_group(self):
        G = PermutationGroup.trivial(4)
        assert G.order() == 1
        assert list(G.elements()) == [identity(4)]
        assert identity(4) in G
        assert P("(0 1)", 4) not in G

    def test_symmetric_group_order(self):
        for n in range(2, 8):
            gens = [P("(0 1)", n)] if n == 2 else [
                P("(0 1)", n),
                Permutation(list(range(1, n)) + [0]),
            ]
            assert PermutationGroup(gens).order() == math.factorial(n)

    def test_frozen_orders(self):
        cases = [
            (["(0 1 2)", "(0 1)"], 3, 6),
            (["(0 1 2 3)", "(0 1)"], 4, 24),
            (["(0 1 2 3 4)", "(0 1 2)"], 5, 60),
            (["(0 1 2 3 4)", "(1 2 4 3)"], 5, 20),
            (["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"], 7, 21),
            (["(0 1)(2 3)", "(0 2)(1 3)"], 4, 4),
            (["(0 1 2 3 4 5 6 7)"], 8, 8),
        ]
        for texts, deg, n in cases:
            G = PermutationGroup([P(t, deg) for t in texts])
            assert G.order() == n, texts

    def test_order_against_closure_oracle(self):
        rng = random.Random(3)
        for trial in range(20):
            deg = rng.randrange(3, 8)
            gens = [random_perm(rng, deg) for _ in range(rng.randrange(1, 3))]
            G = PermutationGroup(gens, degree=deg)
            assert G.order() == len(closure_oracle(gens, deg)), (trial, gens)

    def test_membership_against_oracle(self):
        rng = random.Random(5)
        gens = [P("(0 1 2 3 4)", 6), P("(0 1)(3 4)", 6)]
        G = PermutationGroup(gens)
        full = closure_oracle(gens, 6)
        for _ in range(300):
            x = random_perm(rng, 6)
            assert (x in G) == (x in full)
        for x in itertools.islice(iter(full), 200):
            assert x in G

    def test_elements_enumeration(self):
        gens = [P("(0 1 2 3)", 4), P("(0 1)", 4)]
        G = PermutationGroup(gens)
        elems = list(G.elements())
        assert len(elems) == 24
        assert len(set(elems)) == 24
        assert set(elems) == closure_oracle(gens, 4)
        # deterministic: a rebuilt group enumerates identically
        again = list(PermutationGroup(gens).elements())
        assert elems == again

    def test_enum_bound(self):
        G = PermutationGroup([P("(0 1 2 3 4 5 6)", 7), P("(0 1)", 7)])
        with pytest.raises(BoundExceeded):
            list(G.elements(enum_bound=100))

    def test_chain_is_deterministic(self):
        gens = [P("(0 1 2 3 4)", 5), P("(0 1 2)", 5)]
        c1 = PermutationGroup(gens).chain
        c2 = PermutationGroup(gens).chain
        assert c1.base == c2.base
        assert c1.order == c2.order
        assert [sorted(o) for o in c1.orbits] == [sorted(o) for o in c2.orbits]

    def test_base_points_are_smallest_moved(self):
        G = PermutationGroup([P("(2 3 4)", 5), P("(2 3)", 5)])
        assert G.chain.base[0] == 2

    def test_duplicate_and_identity_generators_ignored(self):
        a = P("(0 1 2)", 3)
        G = PermutationGroup([a, a, identity(3), a])
        assert G.generators == (a,)
        assert G.order() == 3

    def test_regular_representation(self):
        # cyclic shift of 11 points: chain has one level, order 11
        G = PermutationGroup([Permutation(list(range(1, 11)) + [0])])
        assert G.order() == 11
        assert len(G.chain.base) == 1

    def test_build_chain_on_keys_directly(self):
        from tigroups import kernels

        keys = [P("(0 1 2 3 4)", 5).key, P("(0 1 2)", 5).key]
        chain = build_chain(5, keys)
        assert chain.order == 60
        assert chain.contains_key(P("(0 1)(2 3)", 5).key)
        assert not chain.contains_key(P("(0 1)", 5).key)
        assert chain.contains_key(kernels.identity_key(5))


class TestPermutationGroup:
    def test_subgroup_relation(self):
        S4 = PermutationGroup([P("(0 1 2 3)", 4), P("(0 1)", 4)])
        A4 = PermutationGroup([P("(0 1 2)", 4), P("(1 2 3)", 4)])
        V = PermutationGroup([P("(0 1)(2 3)", 4), P("(0 2)(1 3)", 4)])
        assert V.is_subgroup_of(A4)
        assert A4.is_subgroup_of(S4)
        assert not S4.is_subgroup_of(A4)

    def test_normality(self):
        S4 = PermutationGroup([P("(0 1 2 3)", 4), P("(0 1)", 4)])
        A4 = PermutationGroup([P("(0 1 2)", 4), P("(1 2 3)", 4)])
        V = PermutationGroup([P("(0 1)(2 3)", 4), P("(0 2)(1 3)", 4)])
        C2 = PermutationGroup([P("(0 1)", 4)])
        assert A4.is_normal_in(S4)
        assert V.is_normal_in(S4)
        assert not C2.is_normal_in(S4)

    def test_is_abelian(self):
        assert PermutationGroup([P("(0 1)", 4), P("(2 3)", 4)]).is_abelian()
        assert not PermutationGroup([P("(0 1)", 3), P("(0 1 2)", 3)]).is_abelian()

    def test_same_group_under_different_generators(self):
        G1 = PermutationGroup([P("(0 1 2)", 3), P("(0 1)", 3)])
        G2 = PermutationGroup([P("(0 2)", 3), P("(1 2)", 3)])
        assert G1.same_group(G2)
        assert G2.same_group(G1)
        assert not G1.same_group(PermutationGroup([P("(0 1 2)", 3)]))

    def test_element_key_set_cached(self):
        G = PermutationGroup([P("(0 1 2 3)", 4)])
        s1 = G.element_key_set()
        s2 = G.element_key_set()
        assert s1 is s2
        assert len(s1) == 4

    def test_module_level_helpers(self):
        from tigroups.permcore import contains, elements, group_order

        G = PermutationGroup([P("(0 1 2)", 3), P("(0 1)", 3)])
        assert group_order(G) == 6
        assert contains(G, P("(1 2)", 3))
        assert len(list(elements(G))) == 6

    def test_large_degree_tuple_fallback(self):
        # degree above the byte-key range exercises the tuple path
        n = 300
        shift = Permutation([(i + 1) % n for i in range(n)])
        G = PermutationGroup([shift])
        assert G.order() == n
        assert shift**150 in G
        assert (shift**150).order() == 2
