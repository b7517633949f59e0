"""Reducible configurations of a signed subcubic graph and their reductions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from ..errors import SignedGraphError
from ..graph import SignedGraph, block_decompose, edge_key

# Priority order: each pattern is only looked for once all earlier ones are absent.
KINDS = (
    "Deg1OrBridge",
    "Cyc233", "Cyc2323", "Cyc2233",
    "TwoTwoTwo",
    "TwoTwo",
    "TwoThreeTwo",
    "AdjTriangles", "TriPlus2333", "Two2333SharedPath",
    "ThreeWithOneTwo",
    "PlainThreeVertex",
)

CLAIM_OF = {
    "Deg1OrBridge": 1,
    "Cyc233": 2, "Cyc2323": 2, "Cyc2233": 2,
    "TwoTwoTwo": 3,
    "TwoTwo": 4,
    "TwoThreeTwo": 5,
    "AdjTriangles": 6, "TriPlus2333": 6, "Two2333SharedPath": 6,
    "ThreeWithOneTwo": 7,
    "PlainThreeVertex": 8,
}


@dataclass(frozen=True)
class Configuration:
    kind: str
    roles: dict = field(hash=False)

    @property
    def claim(self) -> int:
        return CLAIM_OF[self.kind]

    def __getitem__(self, role):
        return self.roles[role]

    def describe(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.roles.items())


# -- what each kind deletes and recolors --------------------------------------

# removed: deleted vertices; recolored: vertices that get a fresh set (the
# removed ones plus pendants kept in the reduced graph); boundary: vertices
# whose set is shrunk to a subset of the reduced coloring.
LAYOUT = {
    "Cyc233": dict(removed=("w",), cut_edge=("u", "v"), recolored=("u", "v", "w"), boundary=()),
    "Cyc2233": dict(removed=("w1", "w2"), cut_edge=("u", "v"), recolored=("u", "v", "w1", "w2"), boundary=()),
    "Cyc2323": dict(removed=("w1", "w2"), cut_edge=None, recolored=("u", "v", "w1", "w2"), boundary=()),
    "TwoTwoTwo": dict(removed=("u", "w", "v"), cut_edge=None, recolored=("u", "w", "v"), boundary=("u'", "v'")),
    "TwoTwo": dict(removed=("u", "v"), cut_edge=None, recolored=("u", "v"), boundary=("u'", "v'")),
    "TwoThreeTwo": dict(removed=("w",), cut_edge=None, recolored=("w", "u", "v"), boundary=("w'",)),
    "AdjTriangles": dict(removed=("u", "v", "w1", "w2"), cut_edge=None,
                         recolored=("u", "v", "w1", "w2"), boundary=("u'", "v'")),
    "TriPlus2333": dict(removed=("u", "v", "w", "w1", "w2"), cut_edge=None,
                        recolored=("u", "v", "w", "w1", "w2"), boundary=("u'", "v'")),
    "Two2333SharedPath": dict(removed=("u", "v", "w", "w1", "w2"), cut_edge=None,
                              recolored=("u", "v", "w", "w1", "w2"), boundary=("u'", "v'")),
    "ThreeWithOneTwo": dict(removed=("v",), cut_edge=None, recolored=("v",), boundary=("v1", "v2", "v3")),
    "PlainThreeVertex": dict(removed=("v",), cut_edge=None, recolored=("v",), boundary=("v1", "v2", "v3")),
}

# Role permutations preserving the pattern (used to reach a case the
# case analysis lists "by symmetry").
AUTOMORPHISMS = {
    "Cyc233": [{}, {"u": "v", "v": "u", "u'": "v'", "v'": "u'"}],
    "Cyc2233": [{}, {"u": "v", "v": "u", "u'": "v'", "v'": "u'", "w1": "w2", "w2": "w1"}],
    "Cyc2323": [{}, {"u": "v", "v": "u", "u'": "v'", "v'": "u'"}, {"w1": "w2", "w2": "w1"},
                {"u": "v", "v": "u", "u'": "v'", "v'": "u'", "w1": "w2", "w2": "w1"}],
    "TwoTwoTwo": [{}, {"u": "v", "v": "u", "u'": "v'", "v'": "u'"}],
    "TwoTwo": [{}, {"u": "v", "v": "u", "u'": "v'", "v'": "u'"}],
    "TwoThreeTwo": [{}, {"u": "v", "v": "u", "u'": "v'", "v'": "u'"}],
    "AdjTriangles": [{}, {"u": "v", "v": "u", "u'": "v'", "v'": "u'"}, {"w1": "w2", "w2": "w1"},
                     {"u": "v", "v": "u", "u'": "v'", "v'": "u'", "w1": "w2", "w2": "w1"}],
    "TriPlus2333": [{}],
    "Two2333SharedPath": [{}, {"u": "v", "v": "u", "u'": "v'", "v'": "u'"}, {"w1": "w2", "w2": "w1"},
                          {"u": "v", "v": "u", "u'": "v'", "v'": "u'", "w1": "w2", "w2": "w1"}],
    "ThreeWithOneTwo": [{}, {"v2": "v3", "v3": "v2"}],
    "PlainThreeVertex": [{}, {"v2": "v3", "v3": "v2"}, {"v1": "v2", "v2": "v1"},
                         {"v1": "v2", "v2": "v3", "v3": "v1"}, {"v1": "v3", "v3": "v2", "v2": "v1"},
                         {"v1": "v3", "v3": "v1"}],
}


def permuted(cfg: Configuration, perm: dict) -> Configuration:
    return Configuration(cfg.kind, {r: cfg.roles[perm.get(r, r)] for r in cfg.roles})


# -- pattern search ------------------------------------------------------------

def _other(g: SignedGraph, x: int, exclude) -> list[int]:
    return [y for y in g.neighbors(x) if y not in exclude]


def _distinct(*xs) -> bool:
    return len(set(xs)) == len(xs)


def _triangles(g: SignedGraph):
    for a in range(g.n):
        for b, c in combinations(g.neighbors(a), 2):
            if a < b < c and g.has_edge(b, c):
                yield a, b, c


def _find_deg1_or_bridge(g):
    d = g.degrees()
    for v in range(g.n):
        if d[v] == 1:
            yield {"v": v, "u": g.neighbors(v)[0]}
    for u, v in sorted(block_decompose(g).bridges):
        if d[u] > 1 and d[v] > 1:
            yield {"u": u, "v": v}


def _find_cyc233(g):
    d = g.degrees()
    for tri in _triangles(g):
        for w in tri:
            u, v = [x for x in tri if x != w]
            if d[w] == 2 and d[u] == 3 and d[v] == 3:
                (u2,) = _other(g, u, tri)
                (v2,) = _other(g, v, tri)
                if _distinct(u2, v2):
                    yield {"w": w, "u": u, "v": v, "u'": u2, "v'": v2}


def _four_cycles(g):
    """Each 4-cycle a-b-c-d once, as (a, b, c, d) with a the smallest."""
    seen = set()
    for a in range(g.n):
        for b in g.neighbors(a):
            for c in g.neighbors(b):
                if c == a:
                    continue
                for d in g.neighbors(c):
                    if d in (a, b) or not g.has_edge(d, a):
                        continue
                    key = frozenset((edge_key(a, b), edge_key(b, c), edge_key(c, d), edge_key(d, a)))
                    if key not in seen:
                        seen.add(key)
                        yield a, b, c, d


def _find_cyc2323(g):
    d = g.degrees()
    for cyc in _four_cycles(g):
        for s in range(2):
            w1, v, w2, u = cyc[s], cyc[s + 1], cyc[s + 2], cyc[(s + 3) % 4]
            if d[w1] == d[w2] == 2 and d[u] == d[v] == 3 and not g.has_edge(u, v):
                (u2,) = _other(g, u, cyc)
                (v2,) = _other(g, v, cyc)
                if _distinct(u2, v2):
                    yield {"w1": w1, "w2": w2, "u": u, "v": v, "u'": u2, "v'": v2}


def _find_cyc2233(g):
    d = g.degrees()
    for cyc in _four_cycles(g):
        for s in range(4):
            # u - v - w1 - w2 - u
            u, v, w1, w2 = (cyc[(s + i) % 4] for i in range(4))
            for u, v, w1, w2 in ((u, v, w1, w2), (v, u, w2, w1)):
                if d[u] == d[v] == 3 and d[w1] == d[w2] == 2:
                    (u2,) = _other(g, u, cyc)
                    (v2,) = _other(g, v, cyc)
                    if _distinct(u2, v2):
                        yield {"u": u, "v": v, "w1": w1, "w2": w2, "u'": u2, "v'": v2}


def _find_two_two_two(g):
    d = g.degrees()
    for w in range(g.n):
        if d[w] != 2:
            continue
        u, v = g.neighbors(w)
        if d[u] == d[v] == 2:
            (u2,) = _other(g, u, (w,))
            (v2,) = _other(g, v, (w,))
            if _distinct(u, w, v, u2, v2):
                yield {"u": u, "w": w, "v": v, "u'": u2, "v'": v2}


def _find_two_two(g):
    d = g.degrees()
    for u, v, _ in g.edges():
        if d[u] == d[v] == 2:
            (u2,) = _other(g, u, (v,))
            (v2,) = _other(g, v, (u,))
            if _distinct(u, v, u2, v2):
                yield {"u": u, "v": v, "u'": u2, "v'": v2}


def _find_two_three_two(g):
    d = g.degrees()
    for w in range(g.n):
        if d[w] != 3:
            continue
        twos = [x for x in g.neighbors(w) if d[x] == 2]
        if len(twos) < 2:
            continue
        for u, v in combinations(twos, 2):
            (w2,) = _other(g, w, (u, v))
            (u2,) = _other(g, u, (w,))
            (v2,) = _other(g, v, (w,))
            if _distinct(w, u, v, w2, u2, v2):
                yield {"u": u, "w": w, "v": v, "u'": u2, "v'": v2, "w'": w2}


def _find_adj_triangles(g):
    d = g.degrees()
    for w1, w2, _ in g.edges():
        common = [x for x in g.neighbors(w1) if g.has_edge(x, w2)]
        if len(common) != 2:
            continue
        u, v = common
        if g.has_edge(u, v) or d[u] != 3 or d[v] != 3:
            continue
        (u2,) = _other(g, u, (w1, w2))
        (v2,) = _other(g, v, (w1, w2))
        if _distinct(u, v, w1, w2, u2, v2):
            yield {"u": u, "v": v, "w1": w1, "w2": w2, "u'": u2, "v'": v2}


def _find_tri_plus_2333(g):
    # triangle u-w1-w2, 4-cycle w1-w-v-w2 with d(w) = 2
    d = g.degrees()
    for tri in _triangles(g):
        for u in tri:
            for w1, w2 in (tuple(x for x in tri if x != u), tuple(x for x in tri if x != u)[::-1]):
                if not (d[u] == d[w1] == d[w2] == 3):
                    continue
                (w,) = _other(g, w1, tri)
                (v,) = _other(g, w2, tri)
                if d[w] != 2 or not g.has_edge(w, v) or d[v] != 3:
                    continue
                (u2,) = _other(g, u, tri)
                (v2,) = _other(g, v, (w, w2))
                if _distinct(u, v, w, w1, w2, u2, v2):
                    yield {"u": u, "v": v, "w": w, "w1": w1, "w2": w2, "u'": u2, "v'": v2}


def _find_two_2333_shared(g):
    # w of degree 2 with neighbors w1, w2 sharing two more common neighbors u, v
    d = g.degrees()
    for w in range(g.n):
        if d[w] != 2:
            continue
        w1, w2 = g.neighbors(w)
        if d[w1] != 3 or d[w2] != 3 or g.has_edge(w1, w2):
            continue
        common = sorted(set(_other(g, w1, (w,))) & set(_other(g, w2, (w,))))
        if len(common) != 2:
            continue
        u, v = common
        if d[u] != 3 or d[v] != 3 or g.has_edge(u, v):
            continue
        (u2,) = _other(g, u, (w1, w2))
        (v2,) = _other(g, v, (w1, w2))
        if _distinct(u, v, w, w1, w2, u2, v2):
            yield {"u": u, "v": v, "w": w, "w1": w1, "w2": w2, "u'": u2, "v'": v2}


def _find_three_with_one_two(g):
    d = g.degrees()
    for v in range(g.n):
        if d[v] != 3:
            continue
        nb = g.neighbors(v)
        twos = [x for x in nb if d[x] == 2]
        if len(twos) == 1:
            v2, v3 = [x for x in nb if x != twos[0]]
            yield {"v": v, "v1": twos[0], "v2": v2, "v3": v3}


def _find_plain_three(g):
    d = g.degrees()
    for v in range(g.n):
        if d[v] == 3 and all(d[x] == 3 for x in g.neighbors(v)):
            v1, v2, v3 = g.neighbors(v)
            yield {"v": v, "v1": v1, "v2": v2, "v3": v3}


_FINDERS = {
    "Deg1OrBridge": _find_deg1_or_bridge,
    "Cyc233": _find_cyc233,
    "Cyc2323": _find_cyc2323,
    "Cyc2233": _find_cyc2233,
    "TwoTwoTwo": _find_two_two_two,
    "TwoTwo": _find_two_two,
    "TwoThreeTwo": _find_two_three_two,
    "AdjTriangles": _find_adj_triangles,
    "TriPlus2333": _find_tri_plus_2333,
    "Two2333SharedPath": _find_two_2333_shared,
    "ThreeWithOneTwo": _find_three_with_one_two,
    "PlainThreeVertex": _find_plain_three,
}


def find_configurations(g: SignedGraph, kinds=KINDS) -> Iterator[Configuration]:
    """Every match, kind by kind in priority order."""
    if not g.is_subcubic():
        raise SignedGraphError("configuration search needs a subcubic graph")
    if g.max_degree() < 3:
        # paths and cycles: only pendants and bridges are reducible
        kinds = [k for k in kinds if k == "Deg1OrBridge"]
    for kind in kinds:
        for roles in _FINDERS[kind](g):
            yield Configuration(kind, roles)


def find_configuration(g: SignedGraph) -> Configuration | None:
    """First match in priority order; None only when g has no 3-vertex
    and no pendant or bridge."""
    return next(find_configurations(g), None)


# -- reductions ----------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    graph: SignedGraph
    vmap: dict  # vertex of g -> vertex of graph (only kept vertices)


def reduce_configuration(cfg: Configuration, g: SignedGraph) -> Reduction:
    lay = LAYOUT[cfg.kind]
    removed = {cfg[r] for r in lay["removed"]}
    h = g
    if lay["cut_edge"] is not None:
        a, b = (cfg[r] for r in lay["cut_edge"])
        if g.has_edge(a, b):
            h = g.without_edges([(a, b)])
    sub, vmap = h.induced(v for v in range(g.n) if v not in removed)
    return Reduction(sub, vmap)
