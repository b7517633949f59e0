"""Signed graphs: representation, switching, balance, blocks, contraction.

Vertices are dense integers ``0..n-1``.  Signs are stored as ``+1``/``-1``;
the :class:`Sign` enum is accepted anywhere a sign is expected.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import EdgeNotPositive, NegativeDigon, ParseError, SignedGraphError


class Sign(enum.IntEnum):
    PLUS = 1
    MINUS = -1

    def __str__(self):
        return "+" if self is Sign.PLUS else "-"


def as_sign(s) -> int:
    if isinstance(s, str):
        if s in ("+", "+1", "p"):
            return 1
        if s in ("-", "-1", "m"):
            return -1
        raise SignedGraphError(f"bad sign {s!r}")
    s = int(s)
    if s not in (1, -1):
        raise SignedGraphError(f"bad sign {s!r}")
    return s


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class SignedGraph:
    """Simple undirected graph with a sign on every edge.

    Positive loops are dropped; negative loops and parallel edges raise
    :class:`SignedGraphError`.  Instances are treated as immutable.
    """

    __slots__ = ("n", "_sign", "_adj")

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise SignedGraphError("negative vertex count")
        self.n = n
        sign: dict[tuple[int, int], int] = {}
        adj: list[dict[int, int]] = [dict() for _ in range(n)]
        for u, v, s in edges:
            s = as_sign(s)
            if not (0 <= u < n and 0 <= v < n):
                raise SignedGraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                if s < 0:
                    raise SignedGraphError(f"negative loop at {u}")
                continue
            key = edge_key(u, v)
            if key in sign:
                raise SignedGraphError(f"parallel edge {key}")
            sign[key] = s
            adj[u][v] = s
            adj[v][u] = s
        self._sign = sign
        self._adj = adj

    # -- basic access -----------------------------------------------------
    @property
    def m(self) -> int:
        return len(self._sign)

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges ``(u, v, sign)`` with ``u < v``, sorted."""
        return [(u, v, s) for (u, v), s in sorted(self._sign.items())]

    def sign(self, u: int, v: int) -> int:
        """Sign of edge ``uv``; 0 when absent."""
        return self._adj[u].get(v, 0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def adjacency(self, v: int) -> list[tuple[int, int]]:
        return sorted(self._adj[v].items())

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_subcubic(self) -> bool:
        return self.max_degree() <= 3

    def signature(self) -> dict[tuple[int, int], int]:
        return dict(self._sign)

    def underlying(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._sign)

    def with_signs(self, signs: Mapping[tuple[int, int], int]) -> "SignedGraph":
        return SignedGraph(self.n, [(u, v, signs[(u, v)]) for (u, v) in self._sign])

    def __eq__(self, other):
        return isinstance(other, SignedGraph) and self.n == other.n and self._sign == other._sign

    def __hash__(self):
        return hash((self.n, frozenset(self._sign.items())))

    def __repr__(self):
        neg = sum(1 for s in self._sign.values() if s < 0)
        return f"SignedGraph(n={self.n}, m={self.m}, negative={neg})"

    # -- derived graphs ----------------------------------------------------
    def induced(self, keep: Iterable[int]) -> tuple["SignedGraph", dict[int, int]]:
        """Induced subgraph on ``keep`` relabelled densely in ascending order.

        Returns the subgraph and the map old id -> new id.
        """
        keep = sorted(set(keep))
        idx = {v: i for i, v in enumerate(keep)}
        edges = [(idx[u], idx[v], s) for (u, v), s in self._sign.items() if u in idx and v in idx]
        return SignedGraph(len(keep), edges), idx

    def without_edges(self, drop: Iterable[tuple[int, int]]) -> "SignedGraph":
        drop = {edge_key(u, v) for u, v in drop}
        return SignedGraph(self.n, [(u, v, s) for (u, v), s in self._sign.items() if (u, v) not in drop])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for r in range(self.n):
            if seen[r]:
                continue
            seen[r] = True
            comp, stack = [], [r]
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


# -- switching and balance ---------------------------------------------------

def switch_at(g: SignedGraph, s: Iterable[int]) -> SignedGraph:
    """Negate every edge with exactly one endpoint in ``s``."""
    s = set(s)
    for v in s:
        if not 0 <= v < g.n:
            raise SignedGraphError(f"unknown vertex {v}")
    return SignedGraph(g.n, [(u, v, -x if (u in s) != (v in s) else x) for u, v, x in g.edges()])


@dataclass(frozen=True)
class BalancedWitness:
    """Either a switching (vertex -> sign) making all edges positive, or a
    negative cycle given as a vertex sequence."""

    switching: tuple[int, ...] | None = None
    neg_cycle: tuple[int, ...] | None = None

    @property
    def balanced(self) -> bool:
        return self.switching is not None

    def check(self, g: SignedGraph) -> bool:
        """Re-verify the witness by direct sign arithmetic."""
        if self.switching is not None:
            s = self.switching
            return len(s) == g.n and all(x * s[u] * s[v] == 1 for u, v, x in g.edges())
        cyc = self.neg_cycle
        if not cyc or len(set(cyc)) != len(cyc) or len(cyc) < 3:
            return False
        prod = 1
        for i, u in enumerate(cyc):
            x = g.sign(u, cyc[(i + 1) % len(cyc)])
            if x == 0:
                return False
            prod *= x
        return prod == -1


def _spanning_labels(g: SignedGraph):
    """BFS per component from the smallest id, ascending neighbor order.

    Returns (label, parent, depth, conflict) where conflict is the first
    non-tree edge whose sign disagrees with the tree labels, or None.
    """
    label = [0] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    conflict = None
    for r in range(g.n):
        if label[r]:
            continue
        label[r] = 1
        q = deque([r])
        while q:
            u = q.popleft()
            for v, x in g.adjacency(u):
                if not label[v]:
                    label[v] = label[u] * x
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    q.append(v)
                elif conflict is None and label[v] != label[u] * x:
                    conflict = (u, v)
    return label, parent, depth, conflict


def balance_check(g: SignedGraph) -> BalancedWitness:
    label, parent, depth, conflict = _spanning_labels(g)
    if conflict is None:
        return BalancedWitness(switching=tuple(label))
    u, v = conflict
    left, right = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at lca, right ends at lca too
    cycle = left + right[-2::-1]
    return BalancedWitness(neg_cycle=tuple(cycle))


def is_balanced(g: SignedGraph) -> bool:
    return _spanning_labels(g)[3] is None


def is_balanced_subset(g: SignedGraph, x: Iterable[int]) -> bool:
    sub, _ = g.induced(x)
    return is_balanced(sub)


def _same_underlying(g1: SignedGraph, g2: SignedGraph):
    if g1.n != g2.n or g1.underlying() != g2.underlying():
        raise SignedGraphError("underlying graphs differ")


def switching_equivalent(g1: SignedGraph, g2: SignedGraph) -> bool:
    _same_underlying(g1, g2)
    s2 = g2.signature()
    prod = SignedGraph(g1.n, [(u, v, x * s2[(u, v)]) for u, v, x in g1.edges()])
    return is_balanced(prod)


def switching_to(g1: SignedGraph, g2: SignedGraph) -> set[int] | None:
    """A vertex set ``s`` with ``switch_at(g1, s) == g2``, or None."""
    _same_underlying(g1, g2)
    s2 = g2.signature()
    prod = SignedGraph(g1.n, [(u, v, x * s2[(u, v)]) for u, v, x in g1.edges()])
    w = balance_check(prod)
    if not w.balanced:
        return None
    return {v for v, t in enumerate(w.switching) if t < 0}


def canonical_signature(g: SignedGraph) -> SignedGraph:
    """Switch so that every BFS-tree edge (smallest root, ascending
    neighbors) is positive.  Equivalent inputs give identical output."""
    label = _spanning_labels(g)[0]
    return SignedGraph(g.n, [(u, v, x * label[u] * label[v]) for u, v, x in g.edges()])


# -- blocks ---------------------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    block_edges: tuple[tuple[tuple[int, int], ...], ...]
    cut_vertices: frozenset[int]
    bridges: frozenset[tuple[int, int]]
    block_tree: dict = field(default_factory=dict, compare=False)

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def block_decompose(g: SignedGraph) -> BlockDecomposition:
    """Biconnected components via an iterative Hopcroft-Tarjan DFS.

    Isolated vertices form edgeless blocks of their own.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    timer = 0
    blocks: list[frozenset[int]] = []
    bedges: list[tuple[tuple[int, int], ...]] = []
    cuts: set[int] = set()
    estack: list[tuple[int, int]] = []
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        if g.degree(root) == 0:
            blocks.append(frozenset([root]))
            bedges.append(())
            continue
        root_children = 0
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            u, par, it = stack[-1]
            advanced = False
            for v in it:
                if disc[v] == -1:
                    estack.append(edge_key(u, v))
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, u, iter(g.neighbors(v))))
                    if u == root:
                        root_children += 1
                    advanced = True
                    break
                elif v != par and disc[v] < disc[u]:
                    estack.append(edge_key(u, v))
                    low[u] = min(low[u], disc[v])
            if advanced:
                continue
            stack.pop()
            if par == -1:
                continue
            low[par] = min(low[par], low[u])
            if low[u] >= disc[par]:
                if par != root:
                    cuts.add(par)
                comp = []
                target = edge_key(par, u)
                while True:
                    e = estack.pop()
                    comp.append(e)
                    if e == target:
                        break
                verts = frozenset(x for e in comp for x in e)
                blocks.append(verts)
                bedges.append(tuple(sorted(comp)))
        if root_children > 1:
            cuts.add(root)
    bridges = frozenset(es[0] for es in bedges if len(es) == 1)
    tree: dict = {}
    for i, b in enumerate(blocks):
        for v in b & cuts:
            tree.setdefault(("block", i), set()).add(("cut", v))
            tree.setdefault(("cut", v), set()).add(("block", i))
    return BlockDecomposition(tuple(blocks), tuple(bedges), frozenset(cuts), bridges, tree)


# -- contraction ----------------------------------------------------------

def contract_positive_edge(g: SignedGraph, e: tuple[int, int]) -> tuple[SignedGraph, dict[int, int]]:
    """Identify the endpoints of positive edge ``e``.

    Returns the image graph and the homomorphism old vertex -> new vertex.
    The smaller endpoint survives; remaining ids are relabelled densely.
    """
    a, b = edge_key(*e)
    x = g.sign(a, b)
    if x == 0:
        raise SignedGraphError(f"no edge {e}")
    if x < 0:
        raise EdgeNotPositive(f"edge {e} is negative")
    for c in g.neighbors(b):
        if c != a and g.has_edge(a, c) and g.sign(a, c) != g.sign(b, c):
            raise NegativeDigon(f"contracting {e} joins {c} with opposite signs")
    vmap = {}
    for v in range(g.n):
        w = a if v == b else v
        vmap[v] = w - (1 if w > b else 0)
    edges = {}
    for u, v, s in g.edges():
        if {u, v} == {a, b}:
            continue
        key = edge_key(vmap[u], vmap[v])
        edges[key] = s
    return SignedGraph(g.n - 1, [(u, v, s) for (u, v), s in edges.items()]), vmap


# -- generators ------------------------------------------------------------

def _cycle(k: int, neg_edges: int) -> SignedGraph:
    if k < 3:
        raise SignedGraphError("cycle length must be at least 3")
    return SignedGraph(k, [(i, (i + 1) % k, -1 if i >= k - neg_edges else 1) for i in range(k)])


# K4 on x=0, y=1, z=2, w=3 with xw subdivided by t=4; only xt is positive.
K4_BULLET_LABELS = ("x", "y", "z", "w", "t")


def k4_bullet(signs: Mapping[str, int] | None = None) -> SignedGraph:
    base = {"xy": -1, "xz": -1, "yz": -1, "yw": -1, "zw": -1, "xt": 1, "wt": -1}
    if signs:
        base.update(signs)
    ids = {c: i for i, c in enumerate(K4_BULLET_LABELS)}
    return SignedGraph(5, [(ids[k[0]], ids[k[1]], s) for k, s in base.items()])


def k4_minus() -> SignedGraph:
    return SignedGraph(4, [(u, v, -1) for u in range(4) for v in range(u + 1, 4)])


def neg_cube() -> SignedGraph:
    """3-cube with every 4-face negative.

    Inner square 0..3 and outer square 4..7 (counter-clockwise from the
    bottom-left corner), spokes i -- i+4.
    """
    edges = [
        (0, 1, 1), (1, 2, 1), (2, 3, -1), (3, 0, 1),
        (4, 5, 1), (5, 6, -1), (6, 7, 1), (7, 4, 1),
        (0, 4, -1), (1, 5, 1), (2, 6, 1), (3, 7, 1),
    ]
    return SignedGraph(8, edges)


def random_subcubic(n: int, seed: int = 0, neg_prob: float = 0.5) -> SignedGraph:
    """Random connected simple subcubic signed graph.

    Each vertex draws a target degree in {1, 2, 3}; stubs are paired at
    random, loops and repeated pairs are discarded, and the largest
    component is kept (relabelled in ascending order).
    """
    import random

    if n < 1:
        raise SignedGraphError("n must be positive")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(rng.choice((1, 2, 3, 3)))]
    rng.shuffle(stubs)
    seen = set()
    edges = []
    for i in range(0, len(stubs) - 1, 2):
        u, v = stubs[i], stubs[i + 1]
        if u == v or edge_key(u, v) in seen:
            continue
        seen.add(edge_key(u, v))
        edges.append((u, v, -1 if rng.random() < neg_prob else 1))
    g = SignedGraph(n, edges)
    comp = max(g.components(), key=lambda c: (len(c), -c[0]))
    return g.induced(comp)[0]


FAMILIES = ("k4_minus", "k4_bullet", "neg_cycle", "pos_cycle", "neg_cube", "random_subcubic")


def generate(name: str, k: int | None = None, n: int | None = None,
             seed: int = 0, neg_prob: float = 0.5) -> SignedGraph:
    if name == "k4_minus":
        return k4_minus()
    if name == "k4_bullet":
        return k4_bullet()
    if name == "neg_cube":
        return neg_cube()
    if name in ("neg_cycle", "pos_cycle"):
        if k is None or k < 3:
            raise SignedGraphError("cycle families need k >= 3")
        return _cycle(k, 1 if name == "neg_cycle" else 0)
    if name == "random_subcubic":
        if n is None or n < 1:
            raise SignedGraphError("random_subcubic needs n >= 1")
        return random_subcubic(n, seed, neg_prob)
    raise SignedGraphError(f"unknown family {name!r}")


# -- text format -------------------------------------------------------------

def dumps(g: SignedGraph) -> str:
    lines = [f"sg {g.n} {g.m}"]
    lines += [f"e {u} {v} {'+' if s > 0 else '-'}" for u, v, s in g.edges()]
    return "\n".join(lines) + "\n"


def loads(text: str) -> SignedGraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "sg":
                raise ParseError("expected header 'sg <n> <m>'", lineno)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError("non-integer in header", lineno) from None
            continue
        if len(parts) != 4 or parts[0] != "e" or parts[3] not in ("+", "-"):
            raise ParseError(f"expected 'e <u> <v> <+|->', got {line!r}", lineno)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError("non-integer vertex id", lineno) from None
        if u == v:
            raise ParseError("loops are not representable", lineno)
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise ParseError(f"vertex out of range 0..{header[0] - 1}", lineno)
        edges.append((min(u, v), max(u, v), parts[3], lineno))
    if header is None:
        raise ParseError("empty input")
    if len(edges) != header[1]:
        raise ParseError(f"header declares {header[1]} edges, found {len(edges)}")
    seen = set()
    for u, v, _, lineno in edges:
        if (u, v) in seen:
            raise ParseError(f"parallel edge {u} {v}", lineno)
        seen.add((u, v))
    return SignedGraph(header[0], [(u, v, s) for u, v, s, _ in edges])


def read(path) -> SignedGraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(g: SignedGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(g))
