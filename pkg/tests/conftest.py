"""Shared oracles. These deliberately avoid the stabilizer chain so they can
check it: closure here is a plain breadth-first product walk over Permutation
values, correct for any finite set of generators, just slow."""

from tigroups.permcore import Permutation, identity


def closure_oracle(perms, degree=None):
    """Every product of the given permutations, as a set. Independent of
    PermutationGroup internals."""
    if degree is None:
        degree = perms[0].degree
    e = identity(degree)
    gens = [p for p in perms if p != e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def perm_from_images(*images):
    return Permutation(images)
