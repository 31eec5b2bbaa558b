"""Free-PROP term calculus.

Terms are acyclic port-graphs over generators ``x[b,a]`` (b outputs,
a inputs, (a,b) != (1,1)) with m ordered global input legs and n
ordered global output legs.  A term stores, for every sink (a vertex
input port or a global output leg), its unique source (a vertex output
port or a global input leg); permutations act by rewiring only and the
unit is a bare leg-to-leg wire, so composites normalize eagerly.

The module provides vertical/horizontal composition, the
block-interleaving permutations sigma(l, k), fractions, the embeddings
of plain trees, the map from complementary pairs to terms, a canonical
form giving decidable term equality, and the partition comparison
between terms and zone pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .leveled import ComplementaryPair, restrict
from .trees import LEAF, shape_vertices, subshape

# sources are ("g", i) for global input leg i, or ("v", vi, port)


@dataclass(frozen=True)
class PropTerm:
    m: int  # global inputs
    n: int  # global outputs
    verts: tuple  # (b, a) per vertex
    ins: tuple  # per vertex, tuple of a sources
    outs: tuple  # per global output leg, its source

    def __post_init__(self):
        if len(self.outs) != self.n or len(self.ins) != len(self.verts):
            raise ValueError("malformed term")
        for (b, a), srcs in zip(self.verts, self.ins):
            if a < 1 or b < 1 or (a, b) == (1, 1):
                raise ValueError("invalid generator biarity (%d,%d)" % (b, a))
            if len(srcs) != a:
                raise ValueError("input port count mismatch")
        used = {}
        for sink, src in self._wires():
            if src in used:
                raise ValueError("source %r wired twice" % (src,))
            used[src] = sink
        for src in used:
            if src[0] == "g":
                if not 0 <= src[1] < self.m:
                    raise ValueError("bad global input %r" % (src,))
            else:
                _, vi, port = src
                if not 0 <= vi < len(self.verts) or not 0 <= port < self.verts[vi][0]:
                    raise ValueError("bad vertex output %r" % (src,))
        expected = {("g", i) for i in range(self.m)} | {
            ("v", vi, p)
            for vi, (b, a) in enumerate(self.verts)
            for p in range(b)
        }
        if set(used) != expected:
            raise ValueError("every output port and input leg must be wired once")
        # acyclicity
        state = {}

        def visit(vi):
            if state.get(vi) == 1:
                raise ValueError("term graph has a cycle")
            if state.get(vi) == 2:
                return
            state[vi] = 1
            for src in self.ins[vi]:
                if src[0] == "v":
                    visit(src[1])
            state[vi] = 2

        for vi in range(len(self.verts)):
            visit(vi)

    def _wires(self):
        for j, src in enumerate(self.outs):
            yield ("o", j), src
        for vi, srcs in enumerate(self.ins):
            for p, src in enumerate(srcs):
                yield ("i", vi, p), src

    @property
    def biarity(self):
        return (self.n, self.m)


def unit() -> PropTerm:
    """The unit e: one input leg wired straight to one output leg."""
    return PropTerm(1, 1, (), (), ((("g", 0)),))


def generator(b: int, a: int) -> PropTerm:
    """The generator x[b,a] with a inputs and b outputs."""
    return PropTerm(
        a,
        b,
        ((b, a),),
        ((tuple(("g", i) for i in range(a))),),
        tuple(("v", 0, j) for j in range(b)),
    )


def _offset_src(src, voff, goff):
    if src[0] == "g":
        return ("g", src[1] + goff)
    return ("v", src[1] + voff, src[2])


def vcompose(f: PropTerm, g: PropTerm) -> PropTerm:
    """f after g: g's outputs feed f's inputs positionally."""
    if f.m != g.n:
        raise ValueError(
            "inner arity mismatch: f has %d inputs, g has %d outputs" % (f.m, g.n)
        )
    voff = len(g.verts)

    def resolve(src):
        # a source inside f; its global inputs pull from g's outputs
        if src[0] == "g":
            return g.outs[src[1]]
        return ("v", src[1] + voff, src[2])

    ins = tuple(g.ins) + tuple(
        tuple(resolve(s) for s in srcs) for srcs in f.ins
    )
    outs = tuple(resolve(s) for s in f.outs)
    return PropTerm(g.m, f.n, g.verts + f.verts, ins, outs)


def hcompose(f: PropTerm, g: PropTerm) -> PropTerm:
    """Side-by-side juxtaposition, f's legs first."""
    voff = len(f.verts)
    goff = f.m
    ins = tuple(f.ins) + tuple(
        tuple(_offset_src(s, voff, goff) for s in srcs) for srcs in g.ins
    )
    outs = tuple(f.outs) + tuple(
        _offset_src(s, voff, goff) for s in g.outs
    )
    return PropTerm(f.m + g.m, f.n + g.n, f.verts + g.verts, ins, outs)


def hfold(terms) -> PropTerm:
    out = None
    for t in terms:
        out = t if out is None else hcompose(out, t)
    if out is None:
        raise ValueError("empty horizontal composite")
    return out


@dataclass(frozen=True)
class BlockPermutation:
    """The interleaving permutation of {1..kl} used by fractions."""

    l: int
    k: int

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.k * self.l:
            raise ValueError("argument out of range")
        s = (i - 1) // self.k + 1
        return self.l * (i - 1 - (s - 1) * self.k) + s

    def mapping(self) -> tuple:
        return tuple(self(i) for i in range(1, self.k * self.l + 1))


def sigma(l: int, k: int) -> BlockPermutation:
    if l < 1 or k < 1:
        raise ValueError("need k, l >= 1")
    return BlockPermutation(l, k)


def permute_outputs(t: PropTerm, perm) -> PropTerm:
    """Rewire so that old output strand i becomes new output perm(i)
    (1-based); permutations never appear as vertices."""
    outs = list(t.outs)
    new_outs = [None] * t.n
    for i in range(1, t.n + 1):
        new_outs[perm(i) - 1] = outs[i - 1]
    return PropTerm(t.m, t.n, t.verts, t.ins, tuple(new_outs))


def fraction(bs, as_) -> PropTerm:
    """The fraction (B_1 x ... x B_k) o sigma(l,k) o (A_1 x ... x A_l).

    The k numerator terms each take l inputs, the l denominator terms
    each produce k outputs; the interleaving permutation routes output
    strand i of the juxtaposed denominators to input strand sigma(i)
    of the juxtaposed numerators.
    """
    bs = list(bs)
    as_ = list(as_)
    k = len(bs)
    l = len(as_)
    if k < 1 or l < 1:
        raise ValueError("fraction needs at least one term on each side")
    for idx, b in enumerate(bs):
        if b.m != l:
            raise ValueError(
                "numerator %d has %d inputs, expected %d" % (idx + 1, b.m, l)
            )
    for idx, a in enumerate(as_):
        if a.n != k:
            raise ValueError(
                "denominator %d has %d outputs, expected %d" % (idx + 1, a.n, k)
            )
    lower = permute_outputs(hfold(as_), sigma(l, k))
    return vcompose(hfold(bs), lower)


# ---------------------------------------------------------------------------
# canonical form and equality


def canonical(t: PropTerm) -> tuple:
    """Canonical certificate of a term.

    Every component of the graph touches a global leg, and per-vertex
    ports are ordered, so a breadth-first sweep anchored at the ordered
    legs assigns each vertex a forced canonical index; no search over
    automorphisms is needed.
    """
    consumer = {src: sink for sink, src in t._wires()}
    order = {}
    queue = []

    def discover(vi):
        if vi not in order:
            order[vi] = len(order)
            queue.append(vi)

    for i in range(t.m):
        sink = consumer[("g", i)]
        if sink[0] == "i":
            discover(sink[1])
    for src in t.outs:
        if src[0] == "v":
            discover(src[1])
    qi = 0
    while qi < len(queue):
        vi = queue[qi]
        qi += 1
        for src in t.ins[vi]:
            if src[0] == "v":
                discover(src[1])
        for port in range(t.verts[vi][0]):
            sink = consumer[("v", vi, port)]
            if sink[0] == "i":
                discover(sink[1])
    if len(order) != len(t.verts):
        raise AssertionError("disconnected vertex not anchored to any leg")

    rename = order

    def src_key(src):
        if src[0] == "g":
            return ("g", src[1])
        return ("v", rename[src[1]], src[2])

    inv = sorted(range(len(t.verts)), key=lambda vi: rename[vi])
    verts = tuple(t.verts[vi] for vi in inv)
    ins = tuple(
        tuple(src_key(s) for s in t.ins[vi]) for vi in inv
    )
    outs = tuple(src_key(s) for s in t.outs)
    return (t.m, t.n, verts, ins, outs)


def term_eq(t1: PropTerm, t2: PropTerm) -> bool:
    if (t1.m, t1.n) != (t2.m, t2.n):
        return False
    return canonical(t1) == canonical(t2)


def term_key(t: PropTerm) -> str:
    return repr(canonical(t))


def is_special(t: PropTerm) -> bool:
    """True iff every vertex-to-vertex wire leaves a single-output
    generator or enters a single-input generator."""
    for vi, srcs in enumerate(t.ins):
        for src in srcs:
            if src[0] == "v":
                producer_b = t.verts[src[1]][0]
                consumer_a = t.verts[vi][1]
                if producer_b != 1 and consumer_a != 1:
                    return False
    return True


# ---------------------------------------------------------------------------
# expression layer (printable construction trees)


@dataclass(frozen=True)
class Expr:
    op: str  # 'gen', 'unit', 'v', 'h', 'frac'
    args: tuple = ()
    biarity: tuple = ()  # (b, a) for generators

    def to_term(self) -> PropTerm:
        if self.op == "gen":
            return generator(*self.biarity)
        if self.op == "unit":
            return unit()
        if self.op == "v":
            out = self.args[0].to_term()
            for e in self.args[1:]:
                out = vcompose(out, e.to_term())
            return out
        if self.op == "h":
            return hfold(e.to_term() for e in self.args)
        if self.op == "frac":
            nums, dens = self.args
            return fraction(
                [e.to_term() for e in nums], [e.to_term() for e in dens]
            )
        raise ValueError(self.op)

    def is_identity(self) -> bool:
        if self.op == "unit":
            return True
        if self.op == "h":
            return all(e.is_identity() for e in self.args)
        return False

    def simplify(self) -> "Expr":
        """Collapse unit wires and singleton composites (display only;
        the denoted term is unchanged)."""
        if self.op in ("gen", "unit"):
            return self
        if self.op == "frac":
            nums, dens = self.args
            return Expr(
                "frac",
                (
                    tuple(e.simplify() for e in nums),
                    tuple(e.simplify() for e in dens),
                ),
            )
        args = [e.simplify() for e in self.args]
        if self.op == "v":
            args = [e for e in args if not e.is_identity()] or args[:1]
            flat = []
            for e in args:
                flat.extend(e.args if e.op == "v" else [e])
            return flat[0] if len(flat) == 1 else Expr("v", tuple(flat))
        flat = []
        for e in args:
            flat.extend(e.args if e.op == "h" else [e])
        return flat[0] if len(flat) == 1 else Expr("h", tuple(flat))

    def text(self) -> str:
        if self.op == "gen":
            return "x[%d,%d]" % self.biarity
        if self.op == "unit":
            return "e"
        if self.op == "v":
            return "V(%s)" % ",".join(e.text() for e in self.args)
        if self.op == "h":
            return "H(%s)" % ",".join(e.text() for e in self.args)
        if self.op == "frac":
            nums, dens = self.args
            return "F{ %s / %s }" % (
                " ".join(e.text() for e in nums),
                " ".join(e.text() for e in dens),
            )
        raise ValueError(self.op)


def egen(b, a):
    return Expr("gen", biarity=(b, a))


def eunit():
    return Expr("unit")


def ev(*args):
    return Expr("v", tuple(args))


def eh(*args):
    return Expr("h", tuple(args))


def efrac(nums, dens):
    return Expr("frac", (tuple(nums), tuple(dens)))


def parse_expr(text: str) -> Expr:
    """Parse the term text format: x[b,a], e, V(f,g), H(f,g),
    F{ B1 B2 / A1 A2 }."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def eat(tok):
        nonlocal pos
        if peek() != tok:
            raise ValueError("expected %r, got %r" % (tok, peek()))
        pos += 1

    def parse():
        nonlocal pos
        tok = peek()
        if tok == "e":
            pos += 1
            return eunit()
        if tok == "x":
            pos += 1
            eat("[")
            b = int(tokens[pos]); pos += 1
            eat(",")
            a = int(tokens[pos]); pos += 1
            eat("]")
            return egen(b, a)
        if tok in ("V", "H"):
            pos += 1
            eat("(")
            args = [parse()]
            while peek() == ",":
                eat(",")
                args.append(parse())
            eat(")")
            return Expr("v" if tok == "V" else "h", tuple(args))
        if tok == "F":
            pos += 1
            eat("{")
            nums = []
            while peek() != "/":
                nums.append(parse())
            eat("/")
            dens = []
            while peek() != "}":
                dens.append(parse())
            eat("}")
            return efrac(nums, dens)
        raise ValueError("unexpected token %r" % tok)

    result = parse()
    if pos != len(tokens):
        raise ValueError("trailing garbage in term text")
    return result


def _tokenize(text: str):
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(text[i:j])
            i = j
        else:
            out.append(c)
            i += 1
    return out


# ---------------------------------------------------------------------------
# tree embeddings and the map from pairs to terms


def _iota_up_expr(shape) -> Expr:
    """Operadic embedding of an up tree: vertices become x[1,a]."""
    if shape == LEAF:
        return eunit()
    a = len(shape)
    children = [_iota_up_expr(c) for c in shape]
    return ev(egen(1, a), eh(*children))


def _iota_down_expr(shape) -> Expr:
    """Co-operadic embedding of a down tree: vertices become x[a,1]."""
    if shape == LEAF:
        return eunit()
    a = len(shape)
    children = [_iota_down_expr(c) for c in shape]
    return ev(eh(*children), egen(a, 1))


def iota_embed(t, side=None) -> PropTerm:
    """Embed a plain tree as a term; up trees map their vertices to
    single-output generators, down trees to single-input ones."""
    from .trees import PlanarTree

    if isinstance(t, PlanarTree):
        shape = t.shape
        side = side or t.orientation
    else:
        shape = t
        if side is None:
            raise ValueError("side required for bare shapes")
    if side == "up":
        return _iota_up_expr(shape).to_term()
    if side == "down":
        return _iota_down_expr(shape).to_term()
    raise ValueError("side must be 'up' or 'down'")


def varpi_expr(x: ComplementaryPair) -> Expr:
    """Expression form of the term of a complementary pair.

    Dispatch on the relative height of the two root vertices (levels
    count from the top, the up tree's root is its highest vertex and
    the down tree's root its lowest):

    * D exceptional: the up tree embeds operadically (both exceptional
      gives the unit); U exceptional dually.
    * D's root strictly above U's root: all of D is above all of U and
      the term is the vertical composite.
    * roots level-equal: both roots fuse into one generator x[b,a]
      framed by the embedded branch forests.
    * D's root strictly below U's root: the fraction of the restricted
      pieces -- numerators pair the top part of U with each branch of
      D, denominators pair each hanging subtree of U with D's root
      corolla.
    """
    ushape = x.up.shape
    dshape = x.down.shape
    if dshape == LEAF:
        return _iota_up_expr(ushape)
    if ushape == LEAF:
        return _iota_down_expr(dshape)
    root_u = x.up_levels[x.up.vertices().index(())]
    root_d = x.down_levels[x.down.vertices().index(())]
    if root_d < root_u:
        return ev(_iota_down_expr(dshape), _iota_up_expr(ushape))
    if root_d == root_u:
        a = len(ushape)
        b = len(dshape)
        ups = [_iota_up_expr(c) for c in ushape]
        downs = [_iota_down_expr(c) for c in dshape]
        return ev(eh(*downs), egen(b, a), eh(*ups))
    # D's root hangs below U's root
    b = len(dshape)
    top = frozenset(
        p
        for p, lvl in zip(x.up.vertices(), x.up_levels)
        if lvl < root_d
    )
    hang_roots = _hanging_positions(ushape, top)
    droot_corolla = frozenset({()})
    dens = []
    for p in hang_roots:
        sub = frozenset(
            q for q in x.up.vertices() if q[: len(p)] == p
        )
        dens.append(varpi_expr(restrict(x, sub, droot_corolla)))
    nums = []
    for j in range(b):
        dsub = frozenset(
            q for q in x.down.vertices() if len(q) > 0 and q[0] == j
        )
        nums.append(varpi_expr(restrict(x, top, dsub)))
    return efrac(nums, dens)


def _hanging_positions(shape, top):
    """Leaf slots of the top piece `top` of a shape, left to right.

    Returns the paths where subtrees (or bare leaves) hang off the
    piece; each corresponds to one denominator of the fraction.
    """
    out = []

    def walk(p):
        if p in top:
            sub = subshape(shape, p)
            for i in range(len(sub)):
                walk(p + (i,))
        else:
            out.append(p)

    walk(())
    return out


def varpi(x: ComplementaryPair) -> PropTerm:
    return varpi_expr(x).to_term()


# ---------------------------------------------------------------------------
# Theorem C style comparison


def theorem_c_check(m: int, n: int) -> bool:
    """The term of a pair determines, and is determined by, its zone
    projection: the two induced partitions of the pairs coincide."""
    from .leveled import enumerate_leveled_pairs
    from .zones import project

    by_term = {}
    by_zone = {}
    for x in enumerate_leveled_pairs(m, n):
        k = x.key()
        by_term.setdefault(term_key(varpi(x)), set()).add(k)
        by_zone.setdefault(project(x).key(), set()).add(k)
    return sorted(by_term.values(), key=sorted) == sorted(
        by_zone.values(), key=sorted
    )
