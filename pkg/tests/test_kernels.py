"""Backend parity: the compiled kernels must agree with the pure-Python
ones on every function of the shared API, byte keys and tuple keys alike."""

import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from tigroups import _kernels_py as pure

cext = pytest.importorskip(
    "tigroups._ckernels", reason="compiled kernels not built")


def key_of(images):
    return pure.key_from_images(images, len(images))


perm6 = st.permutations(range(6)).map(key_of)
perm9 = st.permutations(range(9)).map(key_of)


def test_backend_labels():
    assert pure.BACKEND == "python"
    assert cext.BACKEND == "c"


def test_identity_keys_agree():
    for degree in (1, 6, 256, 300):
        assert pure.identity_key(degree) == cext.identity_key(degree)


@given(a=perm9, b=perm9)
def test_compose_agrees(a, b):
    assert pure.compose(a, b) == cext.compose(a, b)


@given(a=perm9)
def test_inverse_agrees(a):
    assert pure.inverse(a) == cext.inverse(a)
    assert cext.compose(a, cext.inverse(a)) == cext.identity_key(9)


@given(x=perm9, g=perm9)
def test_conjugate_agrees(x, g):
    assert pure.conjugate(x, g) == cext.conjugate(x, g)


@given(a=perm9, n=st.integers(min_value=-20, max_value=40))
def test_power_agrees(a, n):
    assert pure.power(a, n) == cext.power(a, n)


@given(a=perm9)
def test_perm_order_agrees(a):
    o = cext.perm_order(a)
    assert o == pure.perm_order(a)
    assert cext.power(a, o) == cext.identity_key(9)


def test_perm_order_large_lcm():
    # disjoint cycles of coprime lengths push the order well past 32 bits
    images = list(range(256))
    start = 0
    for length in (9, 25, 49, 121, 13, 17, 19):
        for i in range(length):
            images[start + i] = start + (i + 1) % length
        start += length
    key = key_of(images)
    assert cext.perm_order(key) == pure.perm_order(key)
    assert cext.perm_order(key) == 9 * 25 * 49 * 121 * 13 * 17 * 19


@given(gens=st.lists(perm6, min_size=1, max_size=3), root=st.integers(0, 5))
def test_orbits_agree(gens, root):
    assert pure.orbit_points(gens, root) == cext.orbit_points(gens, root)
    assert pure.orbit_transversal(gens, root) == cext.orbit_transversal(gens, root)


@given(gens=st.lists(perm6, min_size=1, max_size=2))
def test_closure_agrees(gens):
    assert pure.closure_keys(gens, 720) == cext.closure_keys(gens, 720)


@given(gens=st.lists(perm6, min_size=1, max_size=2))
def test_closure_cap_agrees(gens):
    assert pure.closure_keys(gens, 3) == cext.closure_keys(gens, 3)


@given(g=perm9, keys=st.sets(perm9, min_size=1, max_size=8))
def test_conjugate_set_agrees(g, keys):
    gi = pure.inverse(g)
    assert pure.conjugate_set(keys, g, gi) == cext.conjugate_set(keys, g, gi)


@given(gens=st.lists(perm6, min_size=1, max_size=2))
@settings(deadline=None)
def test_conjugacy_partition_agrees(gens):
    keys = pure.closure_keys(gens, 720)
    assert pure.conjugacy_partition(keys, gens) == cext.conjugacy_partition(keys, gens)


def test_sift_agrees_on_chain_levels():
    from tigroups.permcore import PermutationGroup, Permutation

    G = PermutationGroup([Permutation([1, 2, 3, 4, 0]), Permutation([1, 0, 2, 3, 4])])
    chain = G.chain
    tinvs = chain.tinvs
    bases = chain.base
    rng = random.Random(7)
    for _ in range(50):
        images = list(range(5))
        rng.shuffle(images)
        x = key_of(images)
        assert pure.sift(x, bases, tinvs) == cext.sift(x, bases, tinvs)


def test_elements_from_chain_agrees():
    from tigroups.permcore import PermutationGroup, Permutation

    G = PermutationGroup([Permutation([1, 2, 3, 0]), Permutation([1, 0, 2, 3])])
    levels = G.chain.sorted_transversals()
    assert list(pure.elements_from_chain(levels)) == list(cext.elements_from_chain(levels))
    assert list(pure.elements_from_chain([])) == list(cext.elements_from_chain([])) == []


def test_tuple_fallback_agrees_above_256():
    rng = random.Random(11)
    images = list(range(300))
    rng.shuffle(images)
    a = pure.key_from_images(images, 300)
    b = cext.key_from_images(images, 300)
    assert a == b and type(a) is tuple
    assert pure.compose(a, b) == cext.compose(a, b)
    assert pure.inverse(a) == cext.inverse(a)
    assert pure.conjugate(a, b) == cext.conjugate(a, b)
    assert pure.perm_order(a) == cext.perm_order(a)


def test_pure_env_var_drives_whole_stack():
    code = (
        "from tigroups import kernels; assert kernels.BACKEND == 'python';"
        "from tigroups.corpus import catalog_entry;"
        "from tigroups.tiprops import frobenius_kernel;"
        "e = catalog_entry('f20'); G = e.group();"
        "r = frobenius_kernel(G, e.subgroup('H', parent=G));"
        "assert r.verdict == 'HOLDS' and r.certificate['kernel_order'] == 5"
    )
    env = dict(os.environ, TIGROUPS_PURE="1")
    proc = subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
