"""Shared random-instance generators for the term-calculus tests."""

import random

from biassoc import propterms as P
from biassoc.trees import enumerate_trees


def rand_term_with_inputs(rng: random.Random, m: int, depth: int = 2) -> P.PropTerm:
    """A random term with exactly m global inputs."""
    parts = []
    left = m
    while left > 0:
        take = rng.randint(1, min(3, left))
        if take == 1 and rng.random() < 0.3:
            parts.append(P.unit())
        else:
            b = rng.randint(2, 3) if take == 1 else rng.randint(1, 3)
            parts.append(P.generator(b, take))
        left -= take
    t = P.hfold(parts)
    if depth > 0 and rng.random() < 0.6:
        return P.vcompose(rand_term_with_inputs(rng, t.n, depth - 1), t)
    return t


def rand_tree_term(rng: random.Random, leaves: int, side: str) -> P.PropTerm:
    ts = enumerate_trees(leaves, side)
    return P.iota_embed(ts[rng.randrange(len(ts))])


def nonspecial_gadget() -> P.PropTerm:
    """A one-in one-out piece with a forbidden internal wire."""
    return P.vcompose(P.generator(1, 2), P.generator(2, 1))


def _splice_below(t: P.PropTerm, rng: random.Random) -> P.PropTerm:
    """Attach the gadget to one random global input leg of t."""
    slot = rng.randrange(t.m)
    layer = [nonspecial_gadget() if i == slot else P.unit() for i in range(t.m)]
    return P.vcompose(t, P.hfold(layer))


def _splice_above(t: P.PropTerm, rng: random.Random) -> P.PropTerm:
    """Attach the gadget to one random global output leg of t."""
    slot = rng.randrange(t.n)
    layer = [nonspecial_gadget() if i == slot else P.unit() for i in range(t.n)]
    return P.vcompose(P.hfold(layer), t)


def pinched_fraction_instance(rng: random.Random):
    """A fraction whose arguments have the interfaces produced by the
    pair-to-term translation: every denominator ends in a single
    one-input vertex emitting all k output strands, every numerator's
    l input strands enter ordinary tree vertices.

    Returns (numerators, denominators, k, l); some arguments carry a
    spliced-in nonspecial gadget at random.
    """
    k = rng.randint(1, 3)
    l = rng.randint(1, 3)
    dens = []
    for _ in range(l):
        if k == 1:
            t = rand_tree_term(rng, rng.randint(1, 3), "up")
        else:
            t = P.vcompose(
                P.generator(k, 1), rand_tree_term(rng, rng.randint(1, 3), "up")
            )
        if rng.random() < 0.25:
            t = _splice_below(t, rng)
        dens.append(t)
    nums = []
    for _ in range(k):
        if l == 1:
            t = rand_tree_term(rng, rng.randint(1, 3), "down")
        else:
            bottoms = enumerate_trees(l, "up")  # all non-exceptional for l >= 2
            t = P.vcompose(
                rand_tree_term(rng, rng.randint(1, 3), "down"),
                P.iota_embed(bottoms[rng.randrange(len(bottoms))]),
            )
        if rng.random() < 0.25:
            t = _splice_above(t, rng)
        nums.append(t)
    return nums, dens, k, l
