from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from biassoc import leveled as L
from biassoc.leveled import ComplementaryPair, OrderedBipartition
from biassoc.trees import PlanarTree


# ---------------------------------------------------------------------------
# independent oracle: ordered set partitions


def ordered_partitions(items):
    items = tuple(items)
    if not items:
        yield ()
        return
    n = len(items)
    for k in range(1, n + 1):
        for block in combinations(items, k):
            remaining = tuple(x for x in items if x not in block)
            for tail in ordered_partitions(remaining):
                yield (block,) + tail


def compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def merge_coarsenings(blocks):
    """All ordered partitions obtained by merging adjacent blocks."""
    out = set()
    for comp in compositions(len(blocks)):
        merged = []
        idx = 0
        for c in comp:
            merged.append(tuple(sorted(sum(blocks[idx : idx + c], ()))))
            idx += c
        out.add(tuple(merged))
    return out


def ublocks(b: OrderedBipartition):
    return tuple(us for us, _ in b.blocks)


# ---------------------------------------------------------------------------
# enumeration


def test_fubini_counts_against_partition_oracle():
    # 1, 3, 13, 75, 541
    for m in range(2, 7):
        pairs = L.enumerate_leveled_pairs(m, 1)
        oracle = set(ordered_partitions(range(1, m)))
        assert len(pairs) == len(oracle)
        encoded = {ublocks(L.gamma_encode(x)) for x in pairs}
        assert encoded == oracle


def test_banquet_counts():
    assert (
        len(L.enumerate_leveled_pairs(4, 1))
        == len(L.enumerate_leveled_pairs(3, 2))
        == len(L.enumerate_leveled_pairs(2, 3))
        == len(L.enumerate_leveled_pairs(1, 4))
        == 13
    )


def test_trivial_pair():
    (x,) = L.enumerate_leveled_pairs(1, 1)
    assert x.h == 0 and x.up.exceptional and x.down.exceptional


def test_validation():
    up2 = PlanarTree.from_text("(* *)", "up")
    dstar = PlanarTree.from_text("*", "down")
    ComplementaryPair(up2, dstar, (1,), ())
    with pytest.raises(ValueError):  # gap in levels
        ComplementaryPair(up2, dstar, (2,), ())
    with pytest.raises(ValueError):  # wrong orientation
        ComplementaryPair(up2, PlanarTree.from_text("(* *)", "up"), (1,), (2,))
    nested = PlanarTree.from_text("((* *) *)", "up")
    with pytest.raises(ValueError):  # child above parent in the up tree
        ComplementaryPair(nested, dstar, (2, 1), ())
    with pytest.raises(ValueError):  # parent and child level-equal
        ComplementaryPair(nested, dstar, (1, 1), ())
    dnested = PlanarTree.from_text("((* *) *)", "down")
    ComplementaryPair(up2, dnested, (1,), (3, 2))
    with pytest.raises(ValueError):  # down-tree root must sit lowest
        ComplementaryPair(up2, dnested, (3,), (1, 2))


def test_key_and_json_roundtrip():
    for x in L.enumerate_leveled_pairs(3, 2):
        assert ComplementaryPair.from_key(x.key()) == x
        assert ComplementaryPair.from_json(x.to_json()) == x


# ---------------------------------------------------------------------------
# order


def test_pair_leq_matches_block_merge_oracle():
    for m in range(2, 6):
        pairs = L.enumerate_leveled_pairs(m, 1)
        enc = {x.key(): ublocks(L.gamma_encode(x)) for x in pairs}
        coars = {k: merge_coarsenings(b) for k, b in enc.items()}
        for x1 in pairs:
            for x2 in pairs:
                assert L.pair_leq(x1, x2) == (enc[x2.key()] in coars[x1.key()])


def test_pair_leq_golden():
    lo = L.gamma_decode(OrderedBipartition.from_text("(3|2|1)"), 4, 1)
    hi = L.gamma_decode(OrderedBipartition.from_text("(3|12)"), 4, 1)
    other = L.gamma_decode(OrderedBipartition.from_text("(2|3|1)"), 4, 1)
    assert L.pair_leq(lo, hi)
    assert not L.pair_leq(hi, lo)
    assert not L.pair_leq(other, hi)
    with pytest.raises(ValueError):
        L.pair_leq(lo, L.enumerate_leveled_pairs(3, 2)[0])


def test_bipermutahedron_fvectors_and_grading():
    assert L.bipermutahedron_poset(4, 1).fvector() == (6, 6, 1)
    assert L.bipermutahedron_poset(3, 2).fvector() == (6, 6, 1)
    assert L.bipermutahedron_poset(2, 3).fvector() == (6, 6, 1)
    for m, n in [(2, 1), (1, 2), (2, 2), (3, 1), (4, 1), (3, 2), (2, 3)]:
        p = L.bipermutahedron_poset(m, n)
        assert p.euler() == 1
        ranks = p.ranks()
        for key, r in zip(p.elements, ranks):
            x = ComplementaryPair.from_key(key)
            assert r == (m + n - 2) - x.h
        # a unique top cell: everything below the single rank-max element
        assert ranks.count(max(ranks)) == 1


# ---------------------------------------------------------------------------
# leaf-shift step


def test_opet_step_base():
    (x,) = L.enumerate_leveled_pairs(1, 2)
    assert L.opet_step(x).key() == "(* *);*;1;"
    with pytest.raises(ValueError):
        L.opet_step(L.opet_step(x))


def test_opet_step_preserves_height_and_sizes():
    for m, n in [(1, 3), (2, 2), (3, 2), (1, 4), (2, 3)]:
        for x in L.enumerate_leveled_pairs(m, n):
            y = L.opet_step(x)
            assert (y.m, y.n) == (m + 1, n - 1)
            assert y.h == x.h


def test_opet_iso_small():
    assert L.opet_iso_check(2, 2)
    assert L.opet_iso_check(1, 3)


# ---------------------------------------------------------------------------
# ordered-bipartition codec


FIG_PAIR = ComplementaryPair(
    PlanarTree.from_text("((* * (* *)) (* (* *) *))", "up"),
    PlanarTree.from_text("*", "down"),
    (1, 3, 4, 2, 4),
    (),
)


def test_gamma_golden():
    b = L.gamma_encode(FIG_PAIR)
    assert b.text() == "(4|57|12|36)"
    assert L.tau(b).text() == "(36|12|57|4)"
    assert L.gamma_decode(b, 8, 1) == FIG_PAIR


def test_gamma_roundtrip_exhaustive():
    for m, n in [(2, 3), (4, 1), (5, 1), (3, 2), (2, 2), (1, 4)]:
        for x in L.enumerate_leveled_pairs(m, n):
            assert L.gamma_decode(L.gamma_encode(x), m, n) == x


def test_gamma_decode_rejects_bad_labels():
    with pytest.raises(ValueError):
        L.gamma_decode(OrderedBipartition.from_text("(3|2|1)"), 5, 1)


def test_bipartition_text_forms():
    two_sided = OrderedBipartition((((1, 2), (4,)), ((3,), ())))
    assert two_sided.text() == "(12/4|3/)"
    assert OrderedBipartition.from_text("(12/4|3/)") == two_sided
    wide = OrderedBipartition((((10, 11), ()),))
    assert wide.text() == "(10,11)"
    assert OrderedBipartition.from_text("(10,11)") == wide
    with pytest.raises(ValueError):
        OrderedBipartition((((), ()),))
    with pytest.raises(ValueError):
        OrderedBipartition((((2, 1), ()),))


@given(st.integers(2, 5), st.integers(1, 3), st.integers(0, 10**6))
def test_tau_is_an_involution(m, n, pick):
    pairs = L.enumerate_leveled_pairs(m, n)
    b = L.gamma_encode(pairs[pick % len(pairs)])
    assert L.tau(L.tau(b)) == b
    assert OrderedBipartition.from_text(b.text()) == b


# ---------------------------------------------------------------------------
# restriction


def test_restrict_basics():
    x = ComplementaryPair(
        PlanarTree.from_text("((* *) (* *))", "up"),
        PlanarTree.from_text("(* *)", "down"),
        (1, 3, 4),
        (2,),
    )
    whole = L.restrict(x, [(), (0,), (1,)], [()])
    assert whole == x
    left = L.restrict(x, [(0,)], [])
    assert left.key() == "(* *);*;1;"
    nothing = L.restrict(x, [], [])
    assert nothing.up.exceptional and nothing.down.exceptional and nothing.h == 0
    top = L.restrict(x, [()], [()])
    assert top.key() == "(* *);(* *);1;2"
    with pytest.raises(ValueError):  # disconnected subset
        L.restrict(x, [(0,), (1,)], [])
    with pytest.raises(ValueError):  # not a vertex
        L.restrict(x, [(0, 0)], [])
