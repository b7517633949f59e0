"""Ground-truth oracles: exhaustive coloring search, maximum balanced sets and
the exact fractional balanced chromatic number."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .coloring import Coloring, all_colorsets, from_mask, neg_mask, to_mask, verify
from .errors import CapExceeded, ParseError, SignedGraphError
from .graph import SignedGraph, balance_check, is_balanced_subset

DEFAULT_CAP = 14


def lp_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("SG_LP_CAP")
    return int(env) if env else DEFAULT_CAP


def _demand_list(g: SignedGraph, demands) -> list[int]:
    if isinstance(demands, int):
        return [demands] * g.n
    demands = list(demands)
    if len(demands) != g.n:
        raise ValueError("demand map must cover exactly the vertex set")
    return demands


def degree_demands(g: SignedGraph) -> list[int]:
    """phi(v) = 6 - deg(v); isolated vertices are capped at 5."""
    return [min(5, 6 - d) for d in g.degrees()]


# -- coloring search -----------------------------------------------------------

_STATE_CACHE: dict[tuple[int, int], list[int]] = {}


def _states(p: int, q: int) -> list[int]:
    key = (p, q)
    if key not in _STATE_CACHE:
        _STATE_CACHE[key] = sorted(to_mask(s) for s in all_colorsets(p, q))
    return _STATE_CACHE[key]


def search_order(g: SignedGraph, skip: Iterable[int] = ()) -> list[int]:
    """Descending degree then id for the first vertex; afterwards prefer the
    vertex with most already-ordered neighbors, then degree, then id."""
    skip = set(skip)
    todo = [v for v in range(g.n) if v not in skip]
    placed = set(skip)
    order = []
    while todo:
        best = max(todo, key=lambda v: (sum(1 for u in g.neighbors(v) if u in placed), g.degree(v), -v))
        order.append(best)
        placed.add(best)
        todo.remove(best)
    return order


def search_coloring(g: SignedGraph, p: int, demands, fixed: Mapping[int, Iterable[int]] | None = None,
                    candidates: Mapping[int, Sequence[Iterable[int]]] | None = None) -> Coloring | None:
    """Exact backtracking search for a (p, demands)-coloring.

    ``fixed`` pins some vertices to given sets and ``candidates`` restricts
    the sets tried at a vertex.  Without pinned vertices, the first vertex of
    the search order takes {1..q}: a signed permutation moves any coloring
    there.
    """
    dem = _demand_list(g, demands)
    if any(d < 0 or d > p for d in dem):
        return None
    fixed = {v: to_mask(s) for v, s in (fixed or {}).items()}
    mask = {}
    for v, m in fixed.items():
        mask[v] = m
    for v, m in fixed.items():
        for u, x in g.adjacency(v):
            if u in fixed and u > v and not _ok(m, fixed[u], x):
                return None
    order = search_order(g, skip=fixed)
    opts = []
    for i, v in enumerate(order):
        if candidates and v in candidates:
            opts.append([to_mask(s) for s in candidates[v]])
        elif i == 0 and not fixed:
            opts.append([to_mask(range(1, dem[v] + 1))])
        else:
            opts.append(_states(p, dem[v]))
    back = [[(u, x) for u, x in g.adjacency(v) if u in fixed or u in order[:i]] for i, v in enumerate(order)]

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        for a in opts[i]:
            na = neg_mask(a)
            if all(not ((na if x > 0 else a) & mask[u]) for u, x in back[i]):
                mask[v] = a
                if rec(i + 1):
                    return True
        mask.pop(v, None)
        return False

    if not rec(0):
        return None
    f = Coloring(p, tuple(from_mask(mask[v]) for v in range(g.n)))
    assert verify(g, f, dem)
    return f


def _ok(a: int, b: int, sign: int) -> bool:
    return not ((neg_mask(a) if sign > 0 else a) & b)


# -- balanced sets -----------------------------------------------------------

def _adj_masks(g: SignedGraph):
    """Per vertex: (positive-neighbor mask, negative-neighbor mask)."""
    pos = [0] * g.n
    negm = [0] * g.n
    for u, v, x in g.edges():
        if x > 0:
            pos[u] |= 1 << v
            pos[v] |= 1 << u
        else:
            negm[u] |= 1 << v
            negm[v] |= 1 << u
    return pos, negm


def _mask_balanced(pos, negm, x: int) -> bool:
    """Is the vertex bitmask ``x`` balanced?  Propagates side masks."""
    rest = x
    while rest:
        low = rest & -rest
        side_a, side_b = low, 0
        frontier_a, frontier_b = low, 0
        while frontier_a or frontier_b:
            na = nb = 0
            fa = frontier_a
            while fa:
                b = fa & -fa
                i = b.bit_length() - 1
                na |= pos[i] & x
                nb |= negm[i] & x
                fa ^= b
            fb = frontier_b
            while fb:
                b = fb & -fb
                i = b.bit_length() - 1
                nb |= pos[i] & x
                na |= negm[i] & x
                fb ^= b
            if (na | side_a) & (nb | side_b):
                return False
            frontier_a = na & ~side_a
            frontier_b = nb & ~side_b
            side_a |= na
            side_b |= nb
        rest &= ~(side_a | side_b)
    return True


def _bits(x: int) -> frozenset[int]:
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return frozenset(out)


def beta(g: SignedGraph, cap: int | None = None) -> tuple[int, frozenset[int]]:
    """Size of a largest balanced set, with a witness.

    Branch and bound over vertices with a sign label per included vertex;
    a vertex is only included with a label agreeing with every included
    neighbor.  The first included vertex is labelled +1 (global flip).
    """
    if g.n > max(lp_cap(cap), 20):
        raise CapExceeded(f"beta enumeration capped at {max(lp_cap(cap), 20)} vertices, got {g.n}")
    label = [0] * g.n
    best = [0, frozenset()]
    order = list(range(g.n))

    def rec(i, size):
        if size + (g.n - i) <= best[0]:
            return
        if i == g.n:
            best[0] = size
            best[1] = frozenset(v for v in range(g.n) if label[v])
            return
        v = order[i]
        wanted = {label[u] * x for u, x in g.adjacency(v) if label[u]}
        if len(wanted) <= 1:
            for s in (wanted or ((1,) if size == 0 else (1, -1))):
                label[v] = s
                rec(i + 1, size + 1)
                label[v] = 0
        rec(i + 1, size)

    rec(0, 0)
    assert is_balanced_subset(g, best[1])
    return best[0], best[1]


@dataclass(frozen=True)
class BalancedSetFamily:
    sets: tuple[frozenset[int], ...]
    maximal_only: bool = True


def enumerate_maximal_balanced_sets(g: SignedGraph, cap: int | None = None) -> BalancedSetFamily:
    """All inclusion-maximal balanced vertex sets, sorted as tuples."""
    cap = lp_cap(cap)
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, cap is {cap} (raise with --cap or SG_LP_CAP)")
    pos, negm = _adj_masks(g)
    full = (1 << g.n) - 1
    bal = bytearray(1 << g.n)
    for x in range(1 << g.n):
        bal[x] = _mask_balanced(pos, negm, x)
    out = []
    for x in range(1 << g.n):
        if not bal[x]:
            continue
        free = full & ~x
        maximal = True
        while free:
            b = free & -free
            if bal[x | b]:
                maximal = False
                break
            free ^= b
        if maximal:
            out.append(_bits(x))
    out.sort(key=lambda s: tuple(sorted(s)))
    return BalancedSetFamily(tuple(out), True)


def balancing_signs(g: SignedGraph, x: Iterable[int]) -> dict[int, int]:
    """Switching on ``g[x]`` making all its edges positive."""
    x = sorted(set(x))
    sub, idx = g.induced(x)
    w = balance_check(sub)
    if not w.balanced:
        raise SignedGraphError(f"vertex set {x} is not balanced")
    return {v: w.switching[idx[v]] for v in x}


# -- exact LP ------------------------------------------------------------------

def _simplex_max(a: list[list[Fraction]], c: list[Fraction]):
    """max c.y subject to a y <= 1, y >= 0, by a dense tableau with Bland's rule.

    Returns (value, y, x) where x are the optimal duals of the rows.
    """
    m, n = len(a), len(c)
    width = n + m
    rows = []
    for i in range(m):
        r = list(a[i]) + [Fraction(0)] * m + [Fraction(1)]
        r[n + i] = Fraction(1)
        rows.append(r)
    obj = [-x for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise ArithmeticError("unbounded LP")
        piv = rows[leave][enter]
        rows[leave] = [v / piv for v in rows[leave]]
        pr = rows[leave]
        for i in range(m):
            if i != leave and rows[i][enter] != 0:
                k = rows[i][enter]
                rows[i] = [v - k * w for v, w in zip(rows[i], pr)]
        if obj[enter] != 0:
            k = obj[enter]
            obj = [v - k * w for v, w in zip(obj, pr)]
        basis[leave] = enter
    y = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            y[b] = rows[i][-1]
    x = [obj[n + i] for i in range(m)]
    return obj[-1], y, x


@dataclass(frozen=True)
class Certificate:
    """Fractional cover by balanced sets: weights sum to ``value`` and every
    vertex is covered with total weight at least 1."""

    n: int
    sets: tuple[frozenset[int], ...]
    weights: tuple[Fraction, ...]

    @property
    def value(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def check(self, g: SignedGraph) -> bool:
        if self.n != g.n or len(self.sets) != len(self.weights):
            return False
        if any(w < 0 for w in self.weights):
            return False
        if not all(is_balanced_subset(g, s) for s in self.sets):
            return False
        cover = [Fraction(0)] * g.n
        for s, w in zip(self.sets, self.weights):
            for v in s:
                if not 0 <= v < g.n:
                    return False
                cover[v] += w
        return all(c >= 1 for c in cover)


@dataclass(frozen=True)
class ChiResult:
    value: Fraction
    certificate: Certificate
    dual: tuple[Fraction, ...]
    beta: int
    beta_witness: frozenset[int]

    @property
    def lower_bound(self) -> Fraction:
        return Fraction(len(self.dual), self.beta) if self.beta else Fraction(0)


def chi_fb_exact(g: SignedGraph, cap: int | None = None) -> ChiResult:
    """Exact fractional balanced chromatic number.

    Solves the packing dual (max sum y_v, sum over each maximal balanced set
    at most 1) with rational simplex; the row duals are an optimal cover.
    """
    if g.n == 0:
        return ChiResult(Fraction(0), Certificate(0, (), ()), (), 0, frozenset())
    fam = enumerate_maximal_balanced_sets(g, cap)
    a = [[Fraction(1 if v in s else 0) for v in range(g.n)] for s in fam.sets]
    value, y, x = _simplex_max(a, [Fraction(1)] * g.n)
    keep = [(s, w) for s, w in zip(fam.sets, x) if w != 0]
    cert = Certificate(g.n, tuple(s for s, _ in keep), tuple(w for _, w in keep))
    if not cert.check(g) or cert.value != value:
        raise ArithmeticError("LP certificate failed its own check")
    # dual feasibility proves optimality
    if any(sum((y[v] for v in s), Fraction(0)) > 1 for s in fam.sets) or sum(y) != value:
        raise ArithmeticError("LP dual failed its own check")
    b, wit = beta(g, cap)
    res = ChiResult(value, cert, tuple(y), b, wit)
    if res.lower_bound > value:
        raise ArithmeticError("n/beta exceeds the LP value")
    return res


def realize_pq(g: SignedGraph, cert: Certificate) -> tuple[int, int, Coloring]:
    """Scale the cover to integers and read off a (p,q)-coloring."""
    if not cert.check(g):
        raise SignedGraphError("certificate does not fit the graph")
    q = 1
    for w in cert.weights:
        q = q * w.denominator // math.gcd(q, w.denominator)
    mult = [int(w * q) for w in cert.weights]
    p = sum(mult)
    sets: list[list[int]] = [[] for _ in range(g.n)]
    color = 1
    for s, k in zip(cert.sets, mult):
        signs = balancing_signs(g, s)
        for c in range(color, color + k):
            for v in sorted(s):
                if len(sets[v]) < q:
                    sets[v].append(c * signs[v])
        color += k
    f = Coloring(p, tuple(frozenset(x) for x in sets))
    if not verify(g, f, q):
        raise ArithmeticError("realized coloring failed verification")
    return p, q, f


# -- independent oracle: covers by balanced sets -------------------------------

def cover_coloring_exists(g: SignedGraph, p: int, demands) -> bool:
    """A (p, demands)-coloring exists iff some multiset of p maximal balanced
    sets covers every vertex v at least demands[v] times."""
    dem = _demand_list(g, demands)
    if g.n == 0:
        return True
    fam = enumerate_maximal_balanced_sets(g, cap=max(lp_cap(), g.n)).sets
    for pick in combinations_with_replacement(range(len(fam)), p):
        cover = [0] * g.n
        for i in pick:
            for v in fam[i]:
                cover[v] += 1
        if all(c >= d for c, d in zip(cover, dem)):
            return True
    return False


# -- certificate text format ---------------------------------------------------

def dumps_certificate(cert: Certificate) -> str:
    lines = [f"# n {cert.n}"]
    for s, w in zip(cert.sets, cert.weights):
        lines.append(f"set {','.join(str(v) for v in sorted(s))} : {w.numerator}/{w.denominator}")
    return "\n".join(lines) + "\n"


def loads_certificate(text: str, n: int | None = None) -> Certificate:
    sets, weights = [], []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if line.startswith("# n ") and n is None:
            n = int(line[4:])
            continue
        if not line or line.startswith("#"):
            continue
        head, sep, w = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != "set":
            raise ParseError(f"expected 'set v1,v2,... : num/den', got {line!r}", lineno)
        try:
            sets.append(frozenset(int(v) for v in parts[1].split(",")))
            weights.append(Fraction(w.strip()))
        except ValueError:
            raise ParseError("bad vertex list or weight", lineno) from None
    if n is None:
        n = 1 + max((v for s in sets for v in s), default=-1)
    return Certificate(n, tuple(sets), tuple(weights))
