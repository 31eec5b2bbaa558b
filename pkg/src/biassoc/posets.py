"""Generic finite poset services.

A FinitePoset stores an ordered tuple of opaque canonical string keys
together with a boolean leq matrix; the matrix is validated to be
reflexive, antisymmetric and transitive on construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class FinitePoset:
    elements: tuple
    leq: np.ndarray = field(compare=False)

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise PosetError("duplicate element keys")
        m = np.asarray(self.leq, dtype=bool)
        if m.shape != (n, n):
            raise PosetError("leq matrix shape mismatch")
        if not m.diagonal().all():
            raise PosetError("relation is not reflexive")
        if (m & m.T & ~np.eye(n, dtype=bool)).any():
            raise PosetError("relation is not antisymmetric")
        closure = m @ m
        if (closure & ~m).any():
            raise PosetError("relation is not transitive")
        object.__setattr__(self, "leq", m)

    def __len__(self):
        return len(self.elements)

    def index(self, key) -> int:
        return self.elements.index(key)

    def le(self, a, b) -> bool:
        return bool(self.leq[self.index(a), self.index(b)])

    def covers(self):
        """Cover pairs (i, j) of element indices with e_i covered by e_j."""
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        cov = strict & ~(strict @ strict)
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]

    def ranks(self):
        """Longest-chain rank of every element (minimal elements get 0)."""
        n = len(self)
        strict = self.leq & ~np.eye(n, dtype=bool)
        rank = [0] * n
        order = sorted(range(n), key=lambda i: int(strict[:, i].sum()))
        for i in order:
            below = np.nonzero(strict[:, i])[0]
            rank[i] = 1 + max((rank[int(j)] for j in below), default=-1)
        return rank

    def fvector(self):
        rank = self.ranks()
        if not rank:
            return ()
        counts = [0] * (max(rank) + 1)
        for r in rank:
            counts[r] += 1
        return tuple(counts)

    def is_graded(self) -> bool:
        rank = self.ranks()
        return all(rank[j] == rank[i] + 1 for i, j in self.covers())

    def euler(self) -> int:
        if not self.is_graded():
            raise PosetError("poset is not graded")
        return sum((-1) ** r * f for r, f in enumerate(self.fvector()))

    def dot(self) -> str:
        rank = self.ranks()
        lines = ["digraph hasse {", "  rankdir=BT;"]
        by_rank = {}
        for i, r in enumerate(rank):
            by_rank.setdefault(r, []).append(i)
        for i, key in enumerate(self.elements):
            lines.append('  n%d [label="%s"];' % (i, key.replace('"', '\\"')))
        for r in sorted(by_rank):
            lines.append(
                "  { rank=same; %s }" % " ".join("n%d;" % i for i in by_rank[r])
            )
        for i, j in self.covers():
            lines.append("  n%d -> n%d;" % (i, j))
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {"elements": list(self.elements), "covers": self.covers()}
        )


def _signatures(p: FinitePoset):
    """Iteratively refined invariants used to prune isomorphism search."""
    n = len(p)
    strict = p.leq & ~np.eye(n, dtype=bool)
    rank = p.ranks()
    up = strict.sum(axis=1)
    down = strict.sum(axis=0)
    sig = [(rank[i], int(up[i]), int(down[i])) for i in range(n)]
    for _ in range(3):
        codes = {s: c for c, s in enumerate(sorted(set(sig)))}
        coded = [codes[s] for s in sig]
        sig = [
            (
                sig[i],
                tuple(sorted(coded[j] for j in np.nonzero(strict[i])[0])),
                tuple(sorted(coded[j] for j in np.nonzero(strict[:, i])[0])),
            )
            for i in range(n)
        ]
    return sig


def isomorphic(p: FinitePoset, q: FinitePoset):
    """An order-preserving bijection p -> q as a key dict, or None."""
    n = len(p)
    if n != len(q):
        return None
    sp, sq = _signatures(p), _signatures(q)
    if sorted(sp) != sorted(sq):
        return None
    candidates = [
        [j for j in range(n) if sq[j] == sp[i]] for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    match = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for prev in order[:k]:
                if p.leq[i, prev] != q.leq[j, match[prev]] or p.leq[
                    prev, i
                ] != q.leq[match[prev], j]:
                    ok = False
                    break
            if ok:
                match[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                match[i] = -1
                used[j] = False
        return False

    if not extend(0):
        return None
    perm = np.array(match)
    assert (p.leq == q.leq[np.ix_(perm, perm)]).all()
    return {p.elements[i]: q.elements[match[i]] for i in range(n)}
