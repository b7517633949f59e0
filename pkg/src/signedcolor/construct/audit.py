"""Exhaustive check of the extension templates on synthetic gadgets.

For each configuration kind a gadget holds the configuration's vertices, its
boundary vertices, and pendant stubs bringing every boundary vertex to its
degree in the host graph.  The designated edges are negative; every other
gadget edge takes both signs.  Boundary color sets range over all
antipodal-free sets of the right size, with the first one fixed to
{1, ..., s} (any other choice is a signed permutation away, and frames try
every permutation).

Two checks per (signature, shape):

* coverage: some instantiation is valid (the driver takes the first);
* strictness: every instantiation the templates produce is valid.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from ..coloring import all_colorsets
from ..graph import SignedGraph
from .configs import CLAIM_OF, LAYOUT, Configuration
from .templates import NEGATIVE
from .theorem5 import template_attempts

# gadget edges (role pairs) and the allowed host degrees of boundary roles
GADGETS = {
    "Cyc233": dict(edges=(("u", "v"), ("u", "w"), ("v", "w"), ("u", "u'"), ("v", "v'")),
                   outer={"v'": (2, 3), "u'": (2, 3)}),
    "Cyc2233": dict(edges=(("u", "v"), ("v", "w1"), ("w1", "w2"), ("w2", "u"), ("u", "u'"), ("v", "v'")),
                    outer={"v'": (2, 3), "u'": (2, 3)}),
    "Cyc2323": dict(edges=(("u", "w1"), ("w1", "v"), ("v", "w2"), ("w2", "u"), ("u", "u'"), ("v", "v'")),
                    outer={"v'": (2, 3), "u'": (2, 3)}),
    "TwoTwoTwo": dict(edges=(("u'", "u"), ("u", "w"), ("w", "v"), ("v", "v'")),
                      outer={"u'": (2, 3), "v'": (2, 3)}),
    "TwoTwo": dict(edges=(("u'", "u"), ("u", "v"), ("v", "v'")), outer={"u'": (3,), "v'": (3,)}),
    "TwoThreeTwo": dict(edges=(("u'", "u"), ("u", "w"), ("w", "v"), ("v", "v'"), ("w", "w'")),
                        outer={"v'": (3,), "u'": (3,), "w'": (2, 3)}),
    "AdjTriangles": dict(edges=(("u", "w1"), ("u", "w2"), ("v", "w1"), ("v", "w2"), ("w1", "w2"),
                                ("u", "u'"), ("v", "v'")),
                         outer={"u'": (2, 3), "v'": (2, 3)}),
    "TriPlus2333": dict(edges=(("u", "w1"), ("u", "w2"), ("w1", "w2"), ("w1", "w"), ("w", "v"), ("v", "w2"),
                               ("u", "u'"), ("v", "v'")),
                        outer={"u'": (2, 3), "v'": (2, 3)}),
    "Two2333SharedPath": dict(edges=(("w", "w1"), ("w", "w2"), ("u", "w1"), ("v", "w1"), ("u", "w2"),
                                     ("v", "w2"), ("u", "u'"), ("v", "v'")),
                              outer={"u'": (2, 3), "v'": (2, 3)}),
    "ThreeWithOneTwo": dict(edges=(("v", "v1"), ("v", "v2"), ("v", "v3")),
                            outer={"v1": (2,), "v2": (3,), "v3": (3,)}),
    "PlainThreeVertex": dict(edges=(("v", "v1"), ("v", "v2"), ("v", "v3")),
                             outer={"v1": (3,), "v2": (3,), "v3": (3,)}),
}

CLAIMS = (2, 3, 4, 5, 6, 7, 8)


def kinds_of(claim: int) -> list[str]:
    return [k for k in GADGETS if CLAIM_OF[k] == claim]


def free_edges(kind: str) -> list[tuple[str, str]]:
    fixed = {frozenset(e) for e in NEGATIVE[kind]}
    return [e for e in GADGETS[kind]["edges"] if frozenset(e) not in fixed]


def gadget(kind: str, signs, degrees) -> tuple[SignedGraph, Configuration]:
    """Gadget graph for one signature of the free edges and one choice of
    boundary degrees."""
    spec = GADGETS[kind]
    roles = []
    for e in spec["edges"]:
        for r in e:
            if r not in roles:
                roles.append(r)
    ids = {r: i for i, r in enumerate(roles)}
    free = {frozenset(e): s for e, s in zip(free_edges(kind), signs)}
    edges = [(ids[a], ids[b], free.get(frozenset((a, b)), -1)) for a, b in spec["edges"]]
    n = len(roles)
    for r, d in degrees.items():
        have = sum(1 for e in spec["edges"] if r in e)
        for _ in range(d - have):
            edges.append((ids[r], n, 1))
            n += 1
    return SignedGraph(n, edges), Configuration(kind, ids)


def held_size(kind: str, role: str, degree: int) -> int:
    lay = LAYOUT[kind]
    lost = sum(1 for e in GADGETS[kind]["edges"] if role in e and (set(e) - {role}) & set(lay["removed"]))
    cut = lay["cut_edge"]
    if cut is not None and role in cut:
        lost += 1
    return 6 - (degree - lost)


def shapes(kind: str, degrees):
    """Boundary assignments role -> set; the first role is pinned."""
    outer = list(GADGETS[kind]["outer"])
    pools = []
    for i, r in enumerate(outer):
        s = held_size(kind, r, degrees[r])
        pools.append([frozenset(range(1, s + 1))] if i == 0 else all_colorsets(5, s))
    for combo in product(*pools):
        yield dict(zip(outer, combo))


@dataclass
class KindReport:
    kind: str
    signatures: int = 0
    shapes: int = 0
    attempts: int = 0
    cases: dict = field(default_factory=dict)
    uncovered: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.uncovered and not self.failures


def _fmt(held):
    return " ".join(f"{r}={sorted(s)}" for r, s in held.items())


def audit_kind(kind: str, max_examples: int = 5) -> KindReport:
    rep = KindReport(kind)
    outer = GADGETS[kind]["outer"]
    nfree = len(free_edges(kind))
    rep.signatures = 2 ** nfree
    for degs in product(*outer.values()):
        degrees = dict(zip(outer, degs))
        for signs in product((-1, 1), repeat=nfree):
            g, cfg = gadget(kind, signs, degrees)
            for held_roles in shapes(kind, degrees):
                held = {cfg[r]: s for r, s in held_roles.items()}
                rep.shapes += 1
                ok = False
                for at in template_attempts(cfg, held, g):
                    rep.attempts += 1
                    if at.violation is None:
                        ok = True
                        rep.cases[at.case] = rep.cases.get(at.case, 0) + 1
                    elif len(rep.failures) < max_examples:
                        rep.failures.append(f"signs={signs} {_fmt(held_roles)} case {at.case}: {at.violation}")
                    else:
                        rep.failures.append(None)
                if not ok:
                    rep.uncovered.append(f"signs={signs} {_fmt(held_roles)}")
    rep.failures = [f for f in rep.failures if f is not None] + [None] * sum(f is None for f in rep.failures)
    return rep


@dataclass
class ClaimReport:
    claim: int
    kinds: list

    @property
    def passed(self) -> bool:
        return all(k.passed for k in self.kinds)

    @property
    def shapes(self) -> int:
        return sum(k.shapes for k in self.kinds)

    @property
    def attempts(self) -> int:
        return sum(k.attempts for k in self.kinds)


def audit_claims(claims=CLAIMS, workers: int | None = None) -> list[ClaimReport]:
    """Audit the given claims; kinds run in parallel worker processes when
    ``workers`` is not 1.  Report order follows ``claims``."""
    kinds = [k for c in claims for k in kinds_of(c)]
    if workers == 1:
        reps = [audit_kind(k) for k in kinds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reps = list(ex.map(audit_kind, kinds))
    by_kind = dict(zip(kinds, reps))
    return [ClaimReport(c, [by_kind[k] for k in kinds_of(c)]) for c in claims]
