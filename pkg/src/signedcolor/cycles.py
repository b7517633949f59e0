"""Exact (p,q)-colorings of signed cycles by a transfer-relation DP."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .coloring import Coloring, all_colorsets, from_mask, neg_mask, to_mask
from .errors import SignedGraphError
from .graph import SignedGraph, as_sign


@dataclass(frozen=True)
class TransferRelation:
    """States are antipodal-free q-subsets of ±[p] as masks, ascending.

    ``plus[i]`` / ``minus[i]`` list the state indices allowed next to state
    ``i`` across a positive / negative edge.
    """

    p: int
    q: int
    states: tuple[int, ...]
    plus: tuple[tuple[int, ...], ...]
    minus: tuple[tuple[int, ...], ...]

    def allowed(self, sign: int) -> tuple[tuple[int, ...], ...]:
        return self.plus if sign > 0 else self.minus


@lru_cache(maxsize=None)
def transfer_relation(p: int, q: int) -> TransferRelation:
    states = tuple(sorted(to_mask(s) for s in all_colorsets(p, q)))
    plus = tuple(tuple(j for j, b in enumerate(states) if not (neg_mask(a) & b)) for a in states)
    minus = tuple(tuple(j for j, b in enumerate(states) if not (a & b)) for a in states)
    return TransferRelation(p, q, states, plus, minus)


def cycle_graph(signs: Sequence) -> SignedGraph:
    """Cycle 0-1-...-(k-1)-0 where edge i joins i and i+1 (mod k)."""
    k = len(signs)
    return SignedGraph(k, [(i, (i + 1) % k, signs[i]) for i in range(k)])


def cycle_order(g: SignedGraph) -> list[int]:
    """Vertices of a connected 2-regular graph in cycle order, starting at 0
    and stepping to its smaller neighbor first."""
    if g.n < 3 or any(d != 2 for d in g.degrees()) or not g.is_connected():
        raise SignedGraphError("graph is not a single cycle")
    order = [0, min(g.neighbors(0))]
    while len(order) < g.n:
        order.append(next(x for x in g.neighbors(order[-1]) if x != order[-2]))
    return order


def color_cycle(signs: Sequence, p: int, q: int) -> Coloring | None:
    """A (p,q)-coloring of the signed cycle with edge signs ``signs``
    (edge i joins vertex i and i+1 mod k), or None if none exists.

    Vertex 0 is pinned to {1..q}; any antipodal-free set can be placed on a
    single vertex by a signed permutation, so this loses nothing.
    """
    k = len(signs)
    if k < 3:
        raise ValueError("cycle needs at least 3 edges")
    if not 1 <= q <= p:
        raise ValueError("need 1 <= q <= p")
    signs = [as_sign(s) for s in signs]
    rel = transfer_relation(p, q)
    start = rel.states.index(to_mask(range(1, q + 1)))
    # layers[i] maps reachable state of vertex i -> predecessor state
    layers = [{start: None}]
    for i in range(1, k):
        nxt = {}
        for a in layers[-1]:
            for b in rel.allowed(signs[i - 1])[a]:
                nxt.setdefault(b, a)
        if not nxt:
            return None
        layers.append(nxt)
    closing = set(rel.allowed(signs[k - 1])[start])
    last = next((b for b in layers[-1] if b in closing), None)
    if last is None:
        return None
    path = [last]
    for i in range(k - 1, 0, -1):
        path.append(layers[i][path[-1]])
    path.reverse()
    return Coloring(p, tuple(from_mask(rel.states[j]) for j in path))


def color_negative_cycle_kk1(k: int) -> Coloring:
    """(k, k-1)-coloring of the negative k-cycle (one negative edge)."""
    if k < 3:
        raise ValueError("k must be at least 3")
    # vertex i drops colour i+1 and takes +j below it, -j above it; positive
    # edges then agree on every shared colour and the closing negative edge
    # (k-1, 0) disagrees on all of 2..k-1
    return Coloring(k, tuple(frozenset(range(1, i + 1)) | frozenset(-j for j in range(i + 2, k + 1))
                             for i in range(k)))
