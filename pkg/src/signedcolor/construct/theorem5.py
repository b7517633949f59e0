"""(5, 6-deg)-colorings of signed subcubic graphs by reducible configurations."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product

from ..coloring import Coloring, aligning_permutation, neg, ordered, restrict_set, verify
from ..cycles import color_cycle, cycle_order
from ..errors import BadBlock, InternalError, SignedGraphError
from ..exact import degree_demands, search_coloring
from ..graph import SignedGraph, balance_check, switch_at
from .configs import (AUTOMORPHISMS, KINDS, LAYOUT, Configuration, find_configurations, permuted,
                      reduce_configuration)
from .small import detect_bad_blocks
from .templates import GENERATORS, NEGATIVE, Context, available, local_violation

# fallback search on a whole graph is only attempted below this size
WHOLE_SEARCH_LIMIT = 12


@dataclass
class Trace:
    """Reduction log; ``lines`` follow ``step <kind> roles=<...> n=<a>-><b>``."""

    lines: list = field(default_factory=list)
    paths: Counter = field(default_factory=Counter)
    cases: Counter = field(default_factory=Counter)
    skipped: Counter = field(default_factory=Counter)

    def step(self, kind, roles, before, after):
        self.lines.append(f"step {kind} roles={roles} n={before}->{after}")


class InvalidPartial(SignedGraphError):
    pass


# -- switching normalization ---------------------------------------------------

def normalizations(g: SignedGraph, cfg: Configuration) -> list[frozenset[int]]:
    """Switch sets making the designated edges negative, one per choice of
    relative orientation between the forest's trees."""
    pairs = [(cfg[a], cfg[b]) for a, b in NEGATIVE[cfg.kind]]
    adj: dict[int, list[int]] = {}
    for a, b in pairs:
        if not g.has_edge(a, b):
            raise InternalError(f"designated edge {a}-{b} missing in {cfg.kind}")
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    label: dict[int, int] = {}
    trees = []
    for r in sorted(adj):
        if r in label:
            continue
        label[r] = 1
        tree = [r]
        stack = [r]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                want = -g.sign(x, y) * label[x]
                if y not in label:
                    label[y] = want
                    tree.append(y)
                    stack.append(y)
                elif label[y] != want:
                    return []  # designated edges contain an odd cycle; no normalization
        trees.append(tree)
    out = []
    for flips in product((1, -1), repeat=len(trees) - 1):
        s = set()
        for tree, fl in zip(trees, (1,) + flips):
            s |= {x for x in tree if label[x] * fl < 0}
        out.append(frozenset(s))
    return out


# -- extension -------------------------------------------------------------------

@dataclass(frozen=True)
class Attempt:
    perm: int  # index into AUTOMORPHISMS[kind]
    switching: frozenset
    case: str
    switched: dict  # vertex -> set, in the graph switched at ``switching``
    violation: str | None

    @property
    def sets(self) -> dict:
        """vertex -> set in the original signature."""
        return {v: neg(x) if v in self.switching else x for v, x in self.switched.items()}


def template_attempts(cfg: Configuration, held: dict, g: SignedGraph):
    """Every template instantiation for ``cfg`` given the reduced coloring
    ``held`` (vertex -> set), over all role automorphisms and normalizing
    switchings, each with its local verdict."""
    lay = LAYOUT[cfg.kind]
    recolored = {cfg[r] for r in lay["recolored"]}
    boundary = {cfg[r] for r in lay["boundary"]}
    region = recolored | boundary
    dem = degree_demands(g)
    need = {v: dem[v] for v in region}
    near = [(a, b) for a, b, _ in g.edges() if a in region or b in region]
    gen = GENERATORS[cfg.kind]
    for k, perm in enumerate(AUTOMORPHISMS[cfg.kind]):
        c2 = permuted(cfg, perm)
        for s in normalizations(g, c2):
            gs = switch_at(g, s)
            hs = {v: (neg(x) if v in s else x) for v, x in held.items()}
            ctx = Context(c2.roles, hs, sign=lambda a, b, c2=c2, gs=gs: gs.sign(c2[a], c2[b]),
                          degree=lambda r, c2=c2: g.degree(c2[r]))
            edges = [(a, b, gs.sign(a, b)) for a, b in near]
            for case, gsets, _ in gen(cfg.kind, ctx):
                sets = dict(hs)
                for role, x in gsets.items():
                    sets[c2[role]] = x
                bad = next((f"boundary {b} not shrunk" for b in boundary if not sets[b] <= hs[b]), None)
                if bad is None:
                    bad = local_violation(edges, sets, need)
                yield Attempt(k, s, case, sets, bad)


def extend_by_template(cfg: Configuration, partial: Coloring, g: SignedGraph,
                       trace: Trace | None = None) -> Coloring:
    """Extend a coloring of the reduced graph of ``cfg`` to ``g``.

    Tries the claim's template under every automorphic role map and
    normalizing switching; falls back to exhaustive search over the
    recolored and boundary vertices with everything else fixed.
    """
    red = reduce_configuration(cfg, g)
    if partial.n != red.graph.n or partial.p != 5:
        raise InvalidPartial("partial coloring does not match the reduced graph")
    held = {v: partial[red.vmap[v]] for v in red.vmap}
    for at in template_attempts(cfg, held, g):
        if at.violation is None:
            if trace is not None:
                trace.paths["template"] += 1
                trace.cases[(cfg.kind, at.case)] += 1
            sets = at.sets
            return Coloring(5, tuple(sets[v] for v in range(g.n)))
    lay = LAYOUT[cfg.kind]
    region = {cfg[r] for r in lay["recolored"] + lay["boundary"]}
    boundary = {cfg[r] for r in lay["boundary"]}
    dem = degree_demands(g)
    fixed = {v: x for v, x in held.items() if v not in region}
    cands = {b: [frozenset(c) for c in combinations(ordered(held[b]), dem[b])] for b in boundary}
    f = search_coloring(g, 5, dem, fixed=fixed, candidates=cands)
    if f is None:
        raise InternalError(f"no extension for {cfg.kind} {cfg.describe()}")
    if trace is not None:
        trace.paths["fallback"] += 1
        trace.cases[(cfg.kind, "fallback")] += 1
    return f


def extend_pendant(g: SignedGraph, f: Coloring, v: int, demand: int) -> Coloring:
    """Give the degree-1 vertex ``v`` ``demand`` colors compatible with its
    neighbor; smallest colors first.  ``f`` must hold a set for every vertex
    (the entry at ``v`` is ignored)."""
    (u,) = g.neighbors(v)
    pool = ordered(available(f[u], g.sign(u, v)))
    pick = []
    for x in pool:
        if -x not in pick:
            pick.append(x)
        if len(pick) == demand:
            break
    if len(pick) < demand:
        raise InternalError(f"only {len(pick)} colors available at pendant {v}")
    sets = list(f.sets)
    sets[v] = frozenset(pick)
    return Coloring(f.p, tuple(sets))


# -- recursion -------------------------------------------------------------------

def _assemble(n: int, parts) -> Coloring:
    sets = [None] * n
    for f, back in parts:
        for new, old in back.items():
            sets[old] = f[new]
    return Coloring(5, tuple(sets))


def color_cycle_graph(g: SignedGraph, q: int = 4) -> Coloring:
    """(5, q)-coloring of a connected 2-regular signed graph."""
    w = balance_check(g)
    if w.balanced:
        return Coloring(5, tuple(frozenset(w.switching[v] * i for i in range(1, q + 1)) for v in range(g.n)))
    order = cycle_order(g)
    k = len(order)
    signs = [g.sign(order[i], order[(i + 1) % k]) for i in range(k)]
    f = color_cycle(signs, 5, q)
    if f is None:
        raise InternalError(f"negative {k}-cycle has no (5,{q})-coloring")
    sets = [None] * g.n
    for i, v in enumerate(order):
        sets[v] = f[i]
    return Coloring(5, tuple(sets))


def _has_bad(g: SignedGraph) -> bool:
    return bool(detect_bad_blocks(g))


def _whole_search(g: SignedGraph, why: str, trace: Trace | None) -> Coloring:
    if g.n > WHOLE_SEARCH_LIMIT:
        raise InternalError(f"{why} (n={g.n})")
    f = search_coloring(g, 5, degree_demands(g))
    if f is None:
        raise InternalError(f"{why}: no coloring by search (n={g.n})")
    if trace is not None:
        trace.paths["whole-search"] += 1
    return f


def _split_bridge(g: SignedGraph, u: int, v: int, trace):
    """Color both sides of bridge uv (each keeps the other end as a pendant)
    and glue them with a signed permutation at v."""
    h = g.without_edges([(u, v)])
    comp_of = {}
    for i, comp in enumerate(h.components()):
        for x in comp:
            comp_of[x] = i
    side_v = [x for x in range(g.n) if comp_of[x] == comp_of[v]] + [u]
    side_u = [x for x in range(g.n) if comp_of[x] == comp_of[u]] + [v]
    g1, m1 = g.induced(side_v)
    g2, m2 = g.induced(side_u)
    if _has_bad(g1) or _has_bad(g2):
        return None
    if trace is not None:
        trace.step("Deg1OrBridge", f"u={u},v={v}", g.n, f"{g1.n}+{g2.n}")
    f1 = _t5(g1, trace)
    f2 = _t5(g2, trace)
    target = set(f1[m1[v]])
    for i in range(1, 6):
        if i not in target and -i not in target:
            target.add(i)
    pi = aligning_permutation(f2[m2[v]], target, 5)
    full = {i: pi[i] for i in range(1, 6)}
    full.update({-i: -pi[i] for i in range(1, 6)})
    sets = [None] * g.n
    for x, y in m2.items():
        sets[x] = frozenset(full[c] for c in f2[y])
    for x, y in m1.items():
        if x != u:
            sets[x] = f1[y]
    return Coloring(5, tuple(sets))


def _t5(g: SignedGraph, trace: Trace | None) -> Coloring:
    comps = g.components()
    if len(comps) > 1:
        parts = []
        for comp in comps:
            sub, m = g.induced(comp)
            parts.append((_t5(sub, trace), {new: old for old, new in m.items()}))
        return _assemble(g.n, parts)
    dem = degree_demands(g)
    if g.n <= 5:
        f = search_coloring(g, 5, dem)
        if f is None:
            raise InternalError(f"base case n={g.n} has no coloring")
        if trace is not None:
            trace.paths["base"] += 1
        return f
    if all(d == 2 for d in g.degrees()):
        if trace is not None:
            trace.paths["cycle"] += 1
        return color_cycle_graph(g)
    bridge_cfgs = list(find_configurations(g, ("Deg1OrBridge",)))
    for cfg in bridge_cfgs:
        if "u" in cfg.roles and "v" in cfg.roles and len(cfg.roles) == 2 and g.degree(cfg["v"]) > 1:
            f = _split_bridge(g, cfg["u"], cfg["v"], trace)
            if f is not None:
                return f
    for cfg in bridge_cfgs:
        if g.degree(cfg["v"]) != 1:
            continue
        v, u = cfg["v"], cfg["u"]
        h, m = g.induced(x for x in range(g.n) if x != v)
        if _has_bad(h):
            if trace is not None:
                trace.skipped["Deg1OrBridge"] += 1
            continue
        if trace is not None:
            trace.step("Deg1OrBridge", f"v={v},u={u}", g.n, h.n)
        fh = _t5(h, trace)
        sets = [frozenset()] * g.n
        for x, y in m.items():
            sets[x] = fh[y]
        sets[u] = restrict_set(sets[u], dem[u])
        return extend_pendant(g, Coloring(5, tuple(sets)), v, dem[v])
    if bridge_cfgs:
        return _whole_search(g, "pendant removal always creates a forbidden block", trace)
    for cfg in find_configurations(g, KINDS[1:]):
        red = reduce_configuration(cfg, g)
        if _has_bad(red.graph):
            if trace is not None:
                trace.skipped[cfg.kind] += 1
            continue
        if trace is not None:
            trace.step(cfg.kind, cfg.describe(), g.n, red.graph.n)
        partial = _t5(red.graph, trace)
        return extend_by_template(cfg, partial, g, trace)
    return _whole_search(g, "no reducible configuration applies", trace)


def color_theorem5(g: SignedGraph, trace: Trace | None = None) -> Coloring:
    """A verified (5, phi)-coloring with phi(v) = 6 - deg(v) (capped at 5).

    Requires a subcubic graph with no forbidden block.
    """
    if not g.is_subcubic():
        raise SignedGraphError("graph is not subcubic")
    bad = detect_bad_blocks(g)
    if bad:
        raise BadBlock(bad)
    f = _t5(g, trace)
    dem = degree_demands(g)
    v = verify(g, f, dem)
    if not v:
        raise InternalError(f"construction produced an invalid coloring: {v.reason}")
    return f
