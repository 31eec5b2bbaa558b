"""Trees with levels and complementary pairs.

A complementary pair is an up-rooted tree U, a down-rooted tree D, and a
level function assigning each vertex of either tree to a horizontal
level, numbered top-down 1..h with no empty levels.  Within U ancestors
sit strictly above (smaller level than) descendants; within D it is the
other way round, so D's root occupies the largest level among D's
vertices.  There are no cross-tree constraints: vertices of U and D may
share a level.

Pairs with U having m leaves and D having n leaves index the faces of
the (m, n) bipermutahedron; the n = 1 case is the classical
permutahedron on ordered set partitions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache
from itertools import combinations

import numpy as np

from .trees import (
    LEAF,
    PlanarTree,
    contraction_map,
    enumerate_trees,
    is_ancestor,
    leaf_count,
    shape_from_text,
    shape_text,
    shape_vertices,
    subshape,
)


@dataclass(frozen=True)
class ComplementaryPair:
    """(U, D, level function); levels stored per tree in vertex path order."""

    up: PlanarTree
    down: PlanarTree
    up_levels: tuple
    down_levels: tuple

    def __post_init__(self):
        if self.up.orientation != "up" or self.down.orientation != "down":
            raise ValueError("pair needs an up tree and a down tree")
        uverts = self.up.vertices()
        dverts = self.down.vertices()
        if len(self.up_levels) != len(uverts) or len(self.down_levels) != len(dverts):
            raise ValueError("level tuple length mismatch")
        levels = set(self.up_levels) | set(self.down_levels)
        h = max(levels, default=0)
        if levels != set(range(1, h + 1)):
            raise ValueError("levels must be exactly 1..h with no gaps")
        lu = dict(zip(uverts, self.up_levels))
        ld = dict(zip(dverts, self.down_levels))
        for p in uverts:
            for q in uverts:
                if is_ancestor(p, q) and lu[p] >= lu[q]:
                    raise ValueError("up-tree levels must increase away from root")
        for p in dverts:
            for q in dverts:
                if is_ancestor(p, q) and ld[p] <= ld[q]:
                    raise ValueError("down-tree levels must decrease away from root")

    @property
    def m(self) -> int:
        return self.up.leaves

    @property
    def n(self) -> int:
        return self.down.leaves

    @property
    def h(self) -> int:
        return max(self.up_levels + self.down_levels, default=0)

    def up_level(self, path) -> int:
        return self.up_levels[self.up.vertices().index(path)]

    def down_level(self, path) -> int:
        return self.down_levels[self.down.vertices().index(path)]

    def key(self) -> str:
        return "%s;%s;%s;%s" % (
            self.up.text(),
            self.down.text(),
            ",".join(map(str, self.up_levels)),
            ",".join(map(str, self.down_levels)),
        )

    @classmethod
    def from_key(cls, key: str) -> "ComplementaryPair":
        ut, dt, ul, dl = key.split(";")
        return cls(
            PlanarTree.from_text(ut, "up"),
            PlanarTree.from_text(dt, "down"),
            tuple(int(x) for x in ul.split(",") if x),
            tuple(int(x) for x in dl.split(",") if x),
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "up": shape_text(self.up.shape),
                "down": shape_text(self.down.shape),
                "up_levels": list(self.up_levels),
                "down_levels": list(self.down_levels),
            }
        )

    @classmethod
    def from_json(cls, data: str) -> "ComplementaryPair":
        obj = json.loads(data)
        return cls(
            PlanarTree.from_text(obj["up"], "up"),
            PlanarTree.from_text(obj["down"], "down"),
            tuple(obj["up_levels"]),
            tuple(obj["down_levels"]),
        )


def enumerate_level_functions(up: PlanarTree, down: PlanarTree):
    """All valid level assignments for the given tree pair.

    Levels are built top-down; at each step any nonempty subset of the
    currently placeable vertices (those whose same-tree predecessors are
    already placed on earlier levels) may form the next level.  For U a
    vertex waits for its parent, for D it waits for its children.
    """
    uverts = up.vertices()
    dverts = down.vertices()
    nodes = [("u", p) for p in uverts] + [("d", p) for p in dverts]
    preds = {}
    for tag, p in nodes:
        if tag == "u":
            preds[(tag, p)] = [("u", p[:-1])] if p else []
        else:
            ar = len(subshape(down.shape, p))
            preds[(tag, p)] = [("d", p + (i,)) for i in range(ar)
                               if subshape(down.shape, p + (i,)) != LEAF]

    results = []
    placed = set()

    def step(assigned, level):
        if len(assigned) == len(nodes):
            ul = tuple(assigned[("u", p)] for p in uverts)
            dl = tuple(assigned[("d", p)] for p in dverts)
            results.append(ComplementaryPair(up, down, ul, dl))
            return
        ready = [
            nd
            for nd in nodes
            if nd not in placed and all(q in placed for q in preds[nd])
        ]
        for size in range(1, len(ready) + 1):
            for chosen in combinations(ready, size):
                for nd in chosen:
                    assigned[nd] = level
                    placed.add(nd)
                step(assigned, level + 1)
                for nd in chosen:
                    del assigned[nd]
                    placed.discard(nd)

    step({}, 1)
    return results


@cache
def enumerate_leveled_pairs(m: int, n: int) -> tuple:
    """All complementary pairs with m up-leaves and n down-leaves."""
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    out = []
    for up in enumerate_trees(m, "up"):
        for down in enumerate_trees(n, "down"):
            out.extend(enumerate_level_functions(up, down))
    out.sort(key=ComplementaryPair.key)
    return tuple(out)


def pair_leq(x1: ComplementaryPair, x2: ComplementaryPair) -> bool:
    """True iff x2 coarsens x1: tree contractions plus level merging.

    Formally there must be contraction morphisms on both trees and an
    order-preserving map on level scales making the square with the two
    level functions commute.  Contraction morphisms are unique when they
    exist, so it suffices to check that the induced level map is well
    defined (single-valued per level) and monotone.
    """
    if (x1.m, x1.n) != (x2.m, x2.n):
        raise ValueError("pair shape mismatch")
    cu = contraction_map(x1.up.shape, x2.up.shape)
    if cu is None:
        return False
    cd = contraction_map(x1.down.shape, x2.down.shape)
    if cd is None:
        return False
    lu2 = dict(zip(x2.up.vertices(), x2.up_levels))
    ld2 = dict(zip(x2.down.vertices(), x2.down_levels))
    image = {}
    for p, lvl in zip(x1.up.vertices(), x1.up_levels):
        t = lu2[cu[p]]
        if image.setdefault(lvl, t) != t:
            return False
    for p, lvl in zip(x1.down.vertices(), x1.down_levels):
        t = ld2[cd[p]]
        if image.setdefault(lvl, t) != t:
            return False
    seq = [image[i] for i in sorted(image)]
    return all(a <= b for a, b in zip(seq, seq[1:]))


def _leq_matrix(elems) -> np.ndarray:
    n = len(elems)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            leq[i, j] = pair_leq(a, b)
    return leq


@cache
def bipermutahedron_poset(m: int, n: int):
    """Face poset of the bipermutahedron; graded by (m+n-2) - h."""
    from . import posets

    if m + n < 2:
        raise ValueError("need m + n >= 2")
    elems = enumerate_leveled_pairs(m, n)
    keys = tuple(x.key() for x in elems)
    return posets.FinitePoset(keys, _leq_matrix(elems))


# ---------------------------------------------------------------------------
# leaf-shift isomorphism (m, n) -> (m+1, n-1)


def opet_step(x: ComplementaryPair) -> ComplementaryPair:
    """Move one leaf from the down tree to the up tree.

    The leftmost leaf of D is amputated at its initial vertex v (v is
    erased when the amputation leaves it with a single child), and a new
    rightmost leaf is grafted into U where v's level line last meets U:
    at an existing vertex of that level on U's right spine, or else on a
    right-spine edge, creating a 2-ary vertex at v's old level.  Levels
    are then renumbered without gaps.
    """
    if x.n < 2:
        raise ValueError("need n >= 2")
    dshape = x.down.shape
    ld = dict(zip(x.down.vertices(), x.down_levels))

    vpath = ()
    while subshape(dshape, vpath + (0,)) != LEAF:
        vpath = vpath + (0,)
    graft_level = ld[vpath]

    def amputate(shape, path):
        """Remove child 0 of the vertex at `path`; splice the vertex out
        if a single child remains.  Returns (new shape, erased flag)."""
        if path == ():
            rest = shape[1:]
            if len(rest) == 1:
                return rest[0], True
            return rest, False
        i = path[0]
        sub, erased = amputate(shape[i], path[1:])
        return shape[:i] + (sub,) + shape[i + 1 :], erased

    new_dshape, erased = amputate(dshape, vpath)

    def d_translate(p):
        """Old D vertex path -> new path after the amputation."""
        k = len(vpath)
        if p[:k] != vpath or len(p) == k:
            return p
        if erased:
            # hung under v; v's surviving child (old index 1) is spliced up
            return vpath + p[k + 1 :]
        # v survives but its children shift down by one
        return vpath + (p[k] - 1,) + p[k + 1 :]

    keep = {
        d_translate(p): ld[p] for p in x.down.vertices() if p != vpath or not erased
    }
    new_down = PlanarTree("down", new_dshape)
    new_down_levels = tuple(keep[p] for p in new_down.vertices())

    ushape = x.up.shape
    lu = dict(zip(x.up.vertices(), x.up_levels))

    def append_leaf(shape, path):
        if path == ():
            return shape + (LEAF,)
        i = path[0]
        return shape[:i] + (append_leaf(shape[i], path[1:]),) + shape[i + 1 :]

    def wrap_child(shape, path):
        if len(path) == 1:
            i = path[0]
            return shape[:i] + ((shape[i], LEAF),) + shape[i + 1 :]
        i = path[0]
        return shape[:i] + (wrap_child(shape[i], path[1:]),) + shape[i + 1 :]

    # Locate the rightmost crossing of the graft level with U, then
    # attach the new leaf there.  `fresh` is the path of a created
    # 2-ary vertex (None if an existing vertex absorbed the leaf) and
    # `shift` translates old vertex paths into the grafted tree.
    if ushape == LEAF or lu[()] > graft_level:
        new_ushape = (ushape, LEAF)
        fresh = ()
        shift = lambda p: (0,) + p
    else:
        path = ()
        while True:
            if lu[path] == graft_level:
                new_ushape = append_leaf(ushape, path)
                fresh = None
                shift = lambda p: p
                break
            child = path + (len(subshape(ushape, path)) - 1,)
            csub = subshape(ushape, child)
            if csub == LEAF or lu[child] > graft_level:
                new_ushape = wrap_child(ushape, child)
                fresh = child
                k = len(child)
                shift = lambda p: (
                    child + (0,) + p[k:] if p[:k] == child else p
                )
                break
            path = child

    new_up = PlanarTree("up", new_ushape)
    raw_levels = {shift(p): lu[p] for p in x.up.vertices()}
    if fresh is not None:
        raw_levels[fresh] = graft_level

    used = sorted(set(raw_levels.values()) | set(new_down_levels))
    renum = {lvl: i + 1 for i, lvl in enumerate(used)}
    up_levels = tuple(renum[raw_levels[p]] for p in new_up.vertices())
    down_levels = tuple(renum[lvl] for lvl in new_down_levels)
    return ComplementaryPair(new_up, new_down, up_levels, down_levels)


def opet_iso_check(m: int, n: int) -> bool:
    """Verify that iterating opet_step gives an order isomorphism
    from the (m, n) pairs onto the (m+n-1, 1) pairs."""
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    while n >= 2:
        src = enumerate_leveled_pairs(m, n)
        tgt = enumerate_leveled_pairs(m + 1, n - 1)
        images = [opet_step(x) for x in src]
        keys = [y.key() for y in images]
        if len(set(keys)) != len(src) or set(keys) != {y.key() for y in tgt}:
            return False
        psrc = bipermutahedron_poset(m, n)
        ptgt = bipermutahedron_poset(m + 1, n - 1)
        perm = np.array([ptgt.elements.index(k) for k in keys])
        if not (psrc.leq == ptgt.leq[np.ix_(perm, perm)]).all():
            return False
        m, n = m + 1, n - 1
    return True


# ---------------------------------------------------------------------------
# ordered-bipartition codec


@dataclass(frozen=True)
class OrderedBipartition:
    """Blocks (U_j, D_j): the U_j partition the up-leaf gaps 1..m-1 and
    the D_j partition the down-leaf gaps m..m+n-2; no block is empty on
    both sides."""

    blocks: tuple  # of (tuple of ints, tuple of ints), each sorted

    def __post_init__(self):
        for us, ds in self.blocks:
            if not us and not ds:
                raise ValueError("block empty on both sides")
            if tuple(sorted(us)) != tuple(us) or tuple(sorted(ds)) != tuple(ds):
                raise ValueError("block labels must be sorted")

    def text(self) -> str:
        has_down = any(ds for _, ds in self.blocks)
        parts = []
        for us, ds in self.blocks:
            u = _labels_text(us)
            d = _labels_text(ds)
            parts.append("%s/%s" % (u, d) if has_down else u)
        return "(" + "|".join(parts) + ")"

    @classmethod
    def from_text(cls, text: str) -> "OrderedBipartition":
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError("bipartition text must be parenthesized")
        blocks = []
        for part in text[1:-1].split("|"):
            if "/" in part:
                u, d = part.split("/")
            else:
                u, d = part, ""
            blocks.append((_labels_parse(u), _labels_parse(d)))
        return cls(tuple(blocks))


def _labels_text(labels) -> str:
    if any(x > 9 for x in labels):
        return ",".join(map(str, labels))
    return "".join(map(str, labels))


def _labels_parse(s: str) -> tuple:
    s = s.strip()
    if not s:
        return ()
    if "," in s:
        return tuple(int(x) for x in s.split(","))
    return tuple(int(c) for c in s)


def tau(p: OrderedBipartition) -> OrderedBipartition:
    """Reverse the block order."""
    return OrderedBipartition(tuple(reversed(p.blocks)))


def _gap_levels_up(shape, levels):
    """Level of the lowest vertex merging leaf i and leaf i+1, per gap."""
    lu = dict(zip(shape_vertices(shape), levels))
    paths = _leaf_paths(shape)
    out = []
    for i in range(len(paths) - 1):
        a, b = paths[i], paths[i + 1]
        k = 0
        while k < min(len(a), len(b)) and a[k] == b[k]:
            k += 1
        out.append(lu[a[:k]])
    return out


def _leaf_paths(shape):
    if shape == LEAF:
        return [()]
    out = []
    for i, child in enumerate(shape):
        out.extend((i,) + p for p in _leaf_paths(child))
    return out


def gamma_encode(x: ComplementaryPair) -> OrderedBipartition:
    """Encode a pair as an ordered bipartition of leaf gaps by level.

    Up-leaf gap i (1..m-1) lands in the block of the level of the U
    vertex where the branches of leaves i and i+1 merge; down-leaf gaps,
    numbered m..m+n-2, land at the corresponding D merge vertex.
    """
    ublocks = {j: [] for j in range(1, x.h + 1)}
    dblocks = {j: [] for j in range(1, x.h + 1)}
    for i, lvl in enumerate(_gap_levels_up(x.up.shape, x.up_levels), start=1):
        ublocks[lvl].append(i)
    for i, lvl in enumerate(
        _gap_levels_up(x.down.shape, x.down_levels), start=x.m
    ):
        dblocks[lvl].append(i)
    return OrderedBipartition(
        tuple(
            (tuple(ublocks[j]), tuple(dblocks[j])) for j in range(1, x.h + 1)
        )
    )


def _decode_tree(gap_level, pick):
    """Rebuild a shape from gap levels; `pick` chooses the root level
    among a group's gap levels (min for up trees, max for down trees)."""
    if not gap_level:
        return LEAF, {}

    levels = {}

    def build2(lo, hi, gaps, path):
        if lo == hi:
            return LEAF
        root_lvl = pick(gap_level[g] for g in gaps)
        split = [g for g in gaps if gap_level[g] == root_lvl]
        starts = [lo] + [g + 1 for g in split]
        ends = list(split) + [hi]
        children = tuple(
            build2(s, e, [g for g in gaps if s <= g < e], path + (i,))
            for i, (s, e) in enumerate(zip(starts, ends))
        )
        levels[path] = root_lvl
        return children

    m = len(gap_level) + 1
    shape = build2(1, m, list(range(1, m)), ())
    return shape, levels


def gamma_decode(b: OrderedBipartition, m: int, n: int) -> ComplementaryPair:
    """Inverse of gamma_encode."""
    useen, dseen = [], []
    for us, ds in b.blocks:
        useen.extend(us)
        dseen.extend(ds)
    if sorted(useen) != list(range(1, m)) or sorted(dseen) != list(
        range(m, m + n - 1)
    ):
        raise ValueError("bipartition does not match (m, n) = (%d, %d)" % (m, n))
    ugap = {}
    dgap = {}
    for j, (us, ds) in enumerate(b.blocks, start=1):
        for i in us:
            ugap[i] = j
        for i in ds:
            dgap[i - m + 1] = j
    ushape, ulev = _decode_tree(ugap, min)
    dshape, dlev = _decode_tree(dgap, max)
    up = PlanarTree("up", ushape)
    down = PlanarTree("down", dshape)
    return ComplementaryPair(
        up,
        down,
        tuple(ulev[p] for p in up.vertices()),
        tuple(dlev[p] for p in down.vertices()),
    )


# ---------------------------------------------------------------------------
# restriction


def restrict(x: ComplementaryPair, sub_up, sub_down) -> ComplementaryPair:
    """Restrict a pair to connected vertex subsets of U and D.

    Each subset must be a connected piece of its tree (empty = the
    exceptional tree); excluded branches become leaves.  The level
    function is the restriction of x's levels followed by gap-free
    renumbering.
    """
    sub_up = frozenset(tuple(p) for p in sub_up)
    sub_down = frozenset(tuple(p) for p in sub_down)
    ushape, ulev = _induced(x.up.shape, dict(zip(x.up.vertices(), x.up_levels)), sub_up)
    dshape, dlev = _induced(
        x.down.shape, dict(zip(x.down.vertices(), x.down_levels)), sub_down
    )
    used = sorted(set(ulev.values()) | set(dlev.values()))
    renum = {lvl: i + 1 for i, lvl in enumerate(used)}
    up = PlanarTree("up", ushape)
    down = PlanarTree("down", dshape)
    return ComplementaryPair(
        up,
        down,
        tuple(renum[ulev[p]] for p in up.vertices()),
        tuple(renum[dlev[p]] for p in down.vertices()),
    )


def _induced(shape, levels, vset):
    """Shape and path->level map of the connected piece spanned by vset."""
    if not vset:
        return LEAF, {}
    all_verts = set(shape_vertices(shape))
    if not vset <= all_verts:
        raise ValueError("not a vertex subset")
    top = min(vset, key=len)
    for p in vset:
        if p != top and not is_ancestor(top, p):
            raise ValueError("subtree is not connected")
        # every vertex strictly between top and p must belong
        q = p[:-1]
        while len(q) >= len(top):
            if q in all_verts and q not in vset:
                raise ValueError("subtree is not connected")
            if q == top:
                break
            q = q[:-1]

    out_levels = {}

    def build(p, out_path):
        sub = subshape(shape, p)
        if sub == LEAF or p not in vset:
            return LEAF
        out_levels[out_path] = levels[p]
        return tuple(
            build(p + (i,), out_path + (i,)) for i in range(len(sub))
        )

    new_shape = build(top, ())
    return new_shape, out_levels
