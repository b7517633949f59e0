"""Forbidden blocks, the explicit small colorings, and the (5,3) driver."""

from __future__ import annotations

from itertools import combinations, product

from ..coloring import (Coloring, aligning_permutation, apply_signed_permutation, lift_32_to_53, refine_unsigned,
                        restrict, switch_coloring, verify)
from ..cycles import color_cycle, cycle_order
from ..errors import InternalError, NegativeDigon, SignedGraphError
from ..exact import search_coloring
from ..graph import (K4_BULLET_LABELS, SignedGraph, balance_check, block_decompose, contract_positive_edge,
                     k4_bullet, switch_at, switching_equivalent, switching_to)


class NoColoring:
    """Falsy result of :func:`color_53` for graphs with a (K4,-) component."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "NoColoring"


NO_COLORING = NoColoring()


# -- shapes ----------------------------------------------------------------------

def _is_cycle(n: int, edges) -> bool:
    if len(edges) != n or n < 3:
        return False
    deg = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return all(d == 2 for d in deg.values())


def _is_k4(n: int, edges) -> bool:
    return n == 4 and len(edges) == 6


def _k4_bullet_labels(verts, edges):
    """Role map t,x,w,y,z (t the subdivision vertex, x,w its neighbors) or None."""
    if len(verts) != 5 or len(edges) != 7:
        return None
    adj = {v: set() for v in verts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    twos = [v for v in verts if len(adj[v]) == 2]
    if len(twos) != 1 or any(len(adj[v]) != 3 for v in verts if v not in twos):
        return None
    t = twos[0]
    x, w = sorted(adj[t])
    if w in adj[x]:
        return None
    y, z = sorted(set(verts) - {t, x, w})
    if not (y in adj[z] and {y, z} <= adj[x] and {y, z} <= adj[w]):
        return None
    return {"t": t, "x": x, "w": w, "y": y, "z": z}


def detect_bad_blocks(g: SignedGraph) -> list[tuple[frozenset[int], str]]:
    """Blocks shaped like C3*, C4*, K4bullet or K4 (degrees taken in ``g``)."""
    dec = block_decompose(g)
    deg = g.degrees()
    out = []
    for verts, edges in zip(dec.blocks, dec.block_edges):
        n = len(verts)
        twos = sum(1 for v in verts if deg[v] == 2)
        if n == 3 and _is_cycle(3, edges) and twos >= 2:
            out.append((verts, "C3*"))
        elif n == 4 and _is_cycle(4, edges) and twos >= 3:
            out.append((verts, "C4*"))
        elif _is_k4(n, edges):
            out.append((verts, "K4"))
        elif _k4_bullet_labels(verts, edges) is not None:
            out.append((verts, "K4bullet"))
    return out


def underlying_kind(g: SignedGraph) -> str | None:
    """``"C3"``, ``"C4"`` or ``"K4bullet"`` when ``g`` is exactly that graph."""
    edges = [(u, v) for u, v, _ in g.edges()]
    if g.n in (3, 4) and _is_cycle(g.n, edges):
        return f"C{g.n}"
    if _k4_bullet_labels(list(range(g.n)), edges) is not None:
        return "K4bullet"
    return None


# -- explicit small colorings ------------------------------------------------------

# switching class of k4_bullet(): xt positive, every other edge negative
K4_BULLET_TABLE = {"t": (3, 4, 5), "x": (1, 2, 3), "y": (-2, 4, -5), "z": (-1, -3, 5), "w": (1, 2, -4)}


def _small_cycle(g: SignedGraph) -> Coloring:
    order = cycle_order(g)
    need = (4, 3, 3) if g.n == 3 else (4, 3, 3, 4)
    w = balance_check(g)
    if w.balanced:
        sets = [None] * g.n
        for v, d in zip(order, need):
            sets[v] = [w.switching[v] * i for i in range(1, d + 1)]
        return Coloring.from_mapping(5, dict(enumerate(sets)))
    base = [(1, 2, 3, 4), (1, 2, 5), (3, 4, 5), (1, 2, 3, 4)]
    sets = [None] * g.n
    for v, s in zip(order, base):
        sets[v] = s
    return refine_unsigned(g, sets, 5)


def _contract_to_triangle(g: SignedGraph, q: int) -> Coloring | None:
    """Switch, contract two positive edges onto a triangle, color it, pull back."""
    for flips in product((0, 1), repeat=g.n - 1):
        s = {v for v, b in zip(range(1, g.n), flips) if b}
        gs = switch_at(g, s)
        for e1 in [(u, v) for u, v, x in gs.edges() if x > 0]:
            try:
                h1, m1 = contract_positive_edge(gs, e1)
            except NegativeDigon:
                continue
            for e2 in [(u, v) for u, v, x in h1.edges() if x > 0]:
                try:
                    h2, m2 = contract_positive_edge(h1, e2)
                except NegativeDigon:
                    continue
                if h2.n != 3 or h2.m != 3:
                    continue
                img = _color_triangle(h2, 5, q)
                sets = tuple(img[m2[m1[v]]] for v in range(g.n))
                return switch_coloring(Coloring(5, sets), s)
    return None


def _color_triangle(h: SignedGraph, p: int, q: int) -> Coloring:
    signs = [h.sign(0, 1), h.sign(1, 2), h.sign(2, 0)]
    f = color_cycle(signs, p, q)
    if f is None:
        raise InternalError(f"triangle {signs} has no ({p},{q})-coloring")
    return f


def small_case_table(g: SignedGraph) -> Coloring:
    """Explicit colorings of signed C3, C4 and K4bullet.

    Cycles get demands (4,3,3) / (4,3,3,4) in cycle order from vertex 0;
    K4bullet gets 3 colors everywhere.
    """
    kind = underlying_kind(g)
    if kind is None:
        raise SignedGraphError("underlying graph is not C3, C4 or K4bullet")
    f = _small_k4_bullet(g) if kind == "K4bullet" else _small_cycle(g)
    v = verify(g, f, [len(s) for s in f.sets])
    if not v:
        raise InternalError(f"small case coloring rejected: {v.reason}")
    return f


def _small_k4_bullet(g: SignedGraph) -> Coloring:
    w = balance_check(g)
    if w.balanced:
        return Coloring(5, tuple(frozenset(w.switching[v] * i for i in (1, 2, 3)) for v in range(g.n)))
    lab = _k4_bullet_labels(list(range(g.n)), [(u, v) for u, v, _ in g.edges()])
    ref = k4_bullet()
    ids = {c: i for i, c in enumerate(K4_BULLET_LABELS)}
    for sx, sy in product((False, True), repeat=2):
        roles = dict(lab)
        if sx:
            roles["x"], roles["w"] = roles["w"], roles["x"]
        if sy:
            roles["y"], roles["z"] = roles["z"], roles["y"]
        # relabel g onto the reference ids
        to_ref = {roles[c]: ids[c] for c in K4_BULLET_LABELS}
        moved = SignedGraph(5, [(to_ref[u], to_ref[v], s) for u, v, s in g.edges()])
        s = switching_to(moved, ref)
        if s is None:
            continue
        table = Coloring(5, tuple(frozenset(K4_BULLET_TABLE[c]) for c in K4_BULLET_LABELS))
        back = switch_coloring(table, s)
        return Coloring(5, tuple(back[to_ref[v]] for v in range(5)))
    f = _contract_to_triangle(g, 3)
    if f is None:
        f = search_coloring(g, 5, 3)
    if f is None:
        raise InternalError("K4bullet signature without a (5,3)-coloring")
    return f


# -- four vertices: (3,2) then lift ------------------------------------------------

def _k4_minus_on(g: SignedGraph) -> bool:
    if g.n != 4 or g.m != 6:
        return False
    return switching_equivalent(g, SignedGraph(4, [(u, v, -1) for u, v in combinations(range(4), 2)]))


def color_32_small(g: SignedGraph) -> Coloring | None:
    """(3,2)-coloring of a graph on at most four vertices, None for (K4,-)."""
    if g.n > 4:
        raise SignedGraphError("at most four vertices")
    if _k4_minus_on(g):
        return None
    if g.n == 3 and g.m == 3:
        return _color_triangle(g, 3, 2)
    if g.n == 4:
        for flips in product((0, 1), repeat=3):
            s = {v for v, b in zip((1, 2, 3), flips) if b}
            gs = switch_at(g, s)
            for e in [(u, v) for u, v, x in gs.edges() if x > 0]:
                try:
                    h, m = contract_positive_edge(gs, e)
                except NegativeDigon:
                    continue
                img = _color_triangle(h, 3, 2) if h.m == 3 else search_coloring(h, 3, 2)
                if img is None:
                    continue
                return switch_coloring(Coloring(3, tuple(img[m[v]] for v in range(4))), s)
    return search_coloring(g, 3, 2)


# -- (5,3) driver ----------------------------------------------------------------

def _merge(n, parts):
    sets = [None] * n
    for f, back in parts:
        for new, old in back.items():
            sets[old] = f[new]
    return Coloring(5, tuple(sets))


def _color_53_connected(g: SignedGraph, t5):
    if g.n <= 4:
        f = color_32_small(g)
        if f is None:
            return NO_COLORING
        return lift_32_to_53(f, g)
    if underlying_kind(g) is not None:
        return restrict(small_case_table(g), 3)
    bad = detect_bad_blocks(g)
    if not bad:
        return restrict(t5(g), 3)
    block, _ = bad[0]
    cuts = [v for v in block if any(x not in block for x in g.neighbors(v))]
    if len(cuts) != 1:
        raise InternalError(f"bad block {sorted(block)} has {len(cuts)} attachment vertices")
    c = cuts[0]
    rest, rmap = g.induced(v for v in range(g.n) if v == c or v not in block)
    piece, pmap = g.induced(block)
    fr = _color_53_connected(rest, t5)
    if not fr:
        raise InternalError("remainder of a peeled block cannot be (K4,-)")
    fp = restrict(small_case_table(piece), 3)
    pi = aligning_permutation(fp[pmap[c]], fr[rmap[c]], 5)
    fp = apply_signed_permutation(fp, pi)
    return _merge(g.n, [(fp, {b: a for a, b in pmap.items()}), (fr, {b: a for a, b in rmap.items()})])


def color_53(g: SignedGraph):
    """A verified (5,3)-coloring, or ``NO_COLORING`` when some component is
    switching equivalent to (K4,-)."""
    from .theorem5 import color_theorem5

    if not g.is_subcubic():
        raise SignedGraphError("graph is not subcubic")
    parts = []
    for comp in g.components():
        sub, m = g.induced(comp)
        f = _color_53_connected(sub, color_theorem5)
        if not f:
            return NO_COLORING
        parts.append((f, {b: a for a, b in m.items()}))
    f = _merge(g.n, parts)
    v = verify(g, f, 3)
    if not v:
        raise InternalError(f"(5,3) construction rejected: {v.reason}")
    return f
