"""Zone functions and the step-one biassociahedron face poset.

A zone function coarsens a level function: it assigns the vertices of a
complementary pair to zones 1..l (numbered top-down, order preserving,
surjective) so that no two adjacent zones contain vertices of only the
same tree.  A zone meeting both vertex sets is a *barrier*; on barriers
the assignment must stay strict (no two comparable same-tree vertices
share a barrier).  The zone pairs with m up-leaves and n down-leaves
index the faces of the step-one biassociahedron.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache

import numpy as np

from .leveled import ComplementaryPair, enumerate_leveled_pairs
from .trees import PlanarTree, contraction_map, is_ancestor, shape_text


@dataclass(frozen=True)
class ZonePair:
    """(U, D, zone function); zones stored per tree in vertex path order."""

    up: PlanarTree
    down: PlanarTree
    up_zones: tuple
    down_zones: tuple

    def __post_init__(self):
        if self.up.orientation != "up" or self.down.orientation != "down":
            raise ValueError("pair needs an up tree and a down tree")
        uverts = self.up.vertices()
        dverts = self.down.vertices()
        if len(self.up_zones) != len(uverts) or len(self.down_zones) != len(dverts):
            raise ValueError("zone tuple length mismatch")
        zones = set(self.up_zones) | set(self.down_zones)
        l = max(zones, default=0)
        if zones != set(range(1, l + 1)):
            raise ValueError("zones must be exactly 1..l with no gaps")
        zu = dict(zip(uverts, self.up_zones))
        zd = dict(zip(dverts, self.down_zones))
        barriers = {
            i
            for i in range(1, l + 1)
            if i in set(self.up_zones) and i in set(self.down_zones)
        }
        for p in uverts:
            for q in uverts:
                if is_ancestor(p, q):
                    if zu[p] > zu[q]:
                        raise ValueError("up-tree zones must not decrease downward")
                    if zu[p] == zu[q] and zu[p] in barriers:
                        raise ValueError("comparable vertices share a barrier")
        for p in dverts:
            for q in dverts:
                if is_ancestor(p, q):
                    if zd[p] < zd[q]:
                        raise ValueError("down-tree zones must not increase upward")
                    if zd[p] == zd[q] and zd[p] in barriers:
                        raise ValueError("comparable vertices share a barrier")
        t = self.type()
        for a, b in zip(t, t[1:]):
            if a == b and a in "UD":
                raise ValueError("adjacent zones of the same type")

    @property
    def m(self) -> int:
        return self.up.leaves

    @property
    def n(self) -> int:
        return self.down.leaves

    @property
    def l(self) -> int:
        return max(self.up_zones + self.down_zones, default=0)

    def type(self) -> str:
        """Per-zone classification: U, D, or B (meets both trees)."""
        uset, dset = set(self.up_zones), set(self.down_zones)
        out = []
        for i in range(1, self.l + 1):
            if i in uset and i in dset:
                out.append("B")
            elif i in uset:
                out.append("U")
            else:
                out.append("D")
        return "".join(out)

    def key(self) -> str:
        return "%s;%s;%s;%s" % (
            self.up.text(),
            self.down.text(),
            ",".join(map(str, self.up_zones)),
            ",".join(map(str, self.down_zones)),
        )

    def to_json(self) -> str:
        by_zone = [[] for _ in range(self.l)]
        for p, z in zip(self.up.vertices(), self.up_zones):
            by_zone[z - 1].append("u:" + ".".join(map(str, p)))
        for p, z in zip(self.down.vertices(), self.down_zones):
            by_zone[z - 1].append("d:" + ".".join(map(str, p)))
        return json.dumps(
            {
                "up": shape_text(self.up.shape),
                "down": shape_text(self.down.shape),
                "zones": by_zone,
                "type": self.type(),
            }
        )


def zone_type(zp: ZonePair) -> str:
    return zp.type()


def closure(zp: ZonePair, i: int) -> frozenset:
    """A barrier is its own closure; a zone also absorbs adjacent barriers."""
    t = zp.type()
    if not 1 <= i <= len(t):
        raise IndexError("zone index out of range")
    if t[i - 1] == "B":
        return frozenset({i})
    out = {i}
    if i > 1 and t[i - 2] == "B":
        out.add(i - 1)
    if i < len(t) and t[i] == "B":
        out.add(i + 1)
    return frozenset(out)


def project(x: ComplementaryPair) -> ZonePair:
    """Collapse maximal runs of adjacent up-only levels and of adjacent
    down-only levels into single zones."""
    useen = set(x.up_levels)
    dseen = set(x.down_levels)
    kinds = []
    for i in range(1, x.h + 1):
        if i in useen and i in dseen:
            kinds.append("B")
        elif i in useen:
            kinds.append("U")
        else:
            kinds.append("D")
    zone_of = {}
    zone = 0
    prev = None
    for i, kind in enumerate(kinds, start=1):
        if kind == "B" or kind != prev:
            zone += 1
        zone_of[i] = zone
        prev = kind if kind != "B" else None
    return ZonePair(
        x.up,
        x.down,
        tuple(zone_of[l] for l in x.up_levels),
        tuple(zone_of[l] for l in x.down_levels),
    )


def zone_leq(z1: ZonePair, z2: ZonePair) -> bool:
    """True iff tree contraction morphisms exist that degenerate the
    relative heights gracefully.

    A zone function is determined by the relative heights it induces
    between up- and down-tree vertices, so a morphism must preserve
    them up to collapse: a shared barrier stays shared, while a strict
    above/below relation may at most flatten onto a barrier (it can
    never flip).  This is the zone analogue of requiring the square of
    zone scales to commute up to closures.
    """
    if (z1.m, z1.n) != (z2.m, z2.n):
        raise ValueError("pair shape mismatch")
    cu = contraction_map(z1.up.shape, z2.up.shape)
    if cu is None:
        return False
    cd = contraction_map(z1.down.shape, z2.down.shape)
    if cd is None:
        return False
    zu2 = dict(zip(z2.up.vertices(), z2.up_zones))
    zd2 = dict(zip(z2.down.vertices(), z2.down_zones))
    for p, zp in zip(z1.up.vertices(), z1.up_zones):
        for q, zq in zip(z1.down.vertices(), z1.down_zones):
            before = _sign(zp - zq)
            after = _sign(zu2[cu[p]] - zd2[cd[q]])
            if after != before and after != 0:
                return False
    return True


@cache
def enumerate_zone_pairs(m: int, n: int) -> tuple:
    """The zone pairs with the given leaf counts, realized as the image
    of the canonical projection over all complementary pairs."""
    seen = {}
    for x in enumerate_leveled_pairs(m, n):
        z = project(x)
        seen.setdefault(z.key(), z)
    return tuple(seen[k] for k in sorted(seen))


@cache
def biassociahedron_poset(m: int, n: int):
    """Face poset of the step-one biassociahedron; rank by longest chain."""
    from . import posets

    if m + n < 2:
        raise ValueError("need m + n >= 2")
    elems = enumerate_zone_pairs(m, n)
    size = len(elems)
    leq = np.zeros((size, size), dtype=bool)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            leq[i, j] = zone_leq(a, b)
    return posets.FinitePoset(tuple(z.key() for z in elems), leq)


def pi_section(z: ZonePair) -> ComplementaryPair:
    """A level function projecting onto z: each barrier becomes one
    level; each plain zone expands into the lexicographically least
    linear extension of its vertices, one per level."""
    t = z.type()
    zu = list(zip(z.up.vertices(), z.up_zones))
    zd = list(zip(z.down.vertices(), z.down_zones))
    up_levels = {}
    down_levels = {}
    level = 0
    for i in range(1, z.l + 1):
        members_u = [p for p, zz in zu if zz == i]
        members_d = [p for p, zz in zd if zz == i]
        if t[i - 1] == "B":
            level += 1
            for p in members_u:
                up_levels[p] = level
            for p in members_d:
                down_levels[p] = level
        else:
            # linear extension: up-tree vertices must follow their
            # ancestors, down-tree vertices their descendants
            tagged = [("u", p) for p in members_u] + [("d", p) for p in members_d]
            while tagged:
                ready = [
                    (tag, p)
                    for tag, p in tagged
                    if not any(
                        tag == tag2
                        and (
                            is_ancestor(q, p) if tag == "u" else is_ancestor(p, q)
                        )
                        for tag2, q in tagged
                        if tag2 == tag
                    )
                ]
                choice = min(ready)
                tagged.remove(choice)
                level += 1
                tag, p = choice
                if tag == "u":
                    up_levels[p] = level
                else:
                    down_levels[p] = level
    return ComplementaryPair(
        z.up,
        z.down,
        tuple(up_levels[p] for p in z.up.vertices()),
        tuple(down_levels[p] for p in z.down.vertices()),
    )


def relative_heights_check(x: ComplementaryPair) -> bool:
    """Cross-tree height trichotomies survive projection, and determine
    the zone function uniquely among all zone functions on (U, D)."""
    z = project(x)
    lu = dict(zip(x.up.vertices(), x.up_levels))
    ld = dict(zip(x.down.vertices(), x.down_levels))
    zu = dict(zip(z.up.vertices(), z.up_zones))
    zd = dict(zip(z.down.vertices(), z.down_zones))
    for p, lp in lu.items():
        for q, lq in ld.items():
            if _sign(lp - lq) != _sign(zu[p] - zd[q]):
                return False
    # all zone functions on this tree pair, via projection
    from .leveled import enumerate_level_functions

    zps = {}
    for y in enumerate_level_functions(x.up, x.down):
        w = project(y)
        zps.setdefault(w.key(), w)
    zlist = list(zps.values())
    for i, a in enumerate(zlist):
        for b in zlist[i + 1 :]:
            if _trichotomies(a) == _trichotomies(b) and a != b:
                return False
    return True


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _trichotomies(z: ZonePair) -> tuple:
    zu = dict(zip(z.up.vertices(), z.up_zones))
    zd = dict(zip(z.down.vertices(), z.down_zones))
    return tuple(
        _sign(zu[p] - zd[q])
        for p in z.up.vertices()
        for q in z.down.vertices()
    )
