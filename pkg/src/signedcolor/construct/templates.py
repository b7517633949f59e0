"""Explicit extension templates for each reducible configuration.

A template is written with letters such as ``c1`` or ``-d5``.  A frame fixes
which concrete color every letter stands for: a permutation ``pi`` sends
letter index i to the absolute value ``pi[i]``, and the sign comes from the
set the letter family is drawn from (available sets or reduced-coloring
sets).  Frames are enumerated in lexicographic order of ``pi`` and sign
choices; each claim's generator keeps the frames meeting its hypotheses,
picks the case its proof prescribes, and yields the resulting sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Iterator, Mapping

from ..coloring import absolute_set, edge_ok, palette, proper_subset_pairs

PALETTE = palette(5)
PERMS = tuple(permutations(range(1, 6)))


def available(held: frozenset[int], sign: int = -1) -> frozenset[int]:
    """Colors a pendant may use next to a neighbor holding ``held``."""
    if sign < 0:
        return PALETTE - held
    return PALETTE - frozenset(-x for x in held)


def doubled(s: frozenset[int]) -> frozenset[int]:
    return frozenset(x for x in s if x > 0 and -x in s)


@lru_cache(maxsize=None)
def _token(name: str) -> tuple:
    sgn = -1 if name[0] == "-" else 1
    name = name.lstrip("-")
    if name.isdigit():
        return sgn, None, int(name)
    return sgn, name[0], int(name[1:])


@lru_cache(maxsize=None)
def _tokens(spec: str) -> tuple:
    return tuple(_token(t) for t in spec.split())


@dataclass
class Frame:
    pi: tuple[int, ...]  # pi[i-1] = absolute value of letter index i
    letters: dict

    def __call__(self, name: str) -> int:
        """``frame('-c4')`` -> concrete color."""
        return self._value(_token(name))

    def _value(self, tok) -> int:
        sgn, fam, i = tok
        if fam is None:
            return sgn * self.pi[i - 1]
        x = self.letters[fam][i]
        if x is None:
            raise KeyError(fam + str(i))
        return sgn * x

    def sets(self, **spec) -> dict:
        return {role: frozenset(map(self._value, _tokens(toks))) for role, toks in spec.items()}

    def abs_index(self, a: int) -> int:
        return self.pi.index(abs(a)) + 1


def frames(sources: Mapping[str, frozenset[int]], need: Mapping[str, str] = (),
           both: Mapping[str, str] = (), branch: Mapping[str, str] = (),
           pi_ok: Callable[[tuple], bool] | None = None) -> Iterator[Frame]:
    """Enumerate frames.

    ``need[f]``: indices whose letter must exist in source f;
    ``both[f]``: indices with both signs in source f;
    ``branch[f]``: indices whose sign is chosen freely when both exist
    (otherwise the positive member is taken).
    """
    need = [(f, int(c) - 1) for f, s in dict(need).items() for c in s]
    both = [(f, int(c) - 1) for f, s in dict(both).items() for c in s]
    branch = {f: {int(c) for c in s} for f, s in dict(branch).items()}
    fams = sorted(sources)
    # members of each source with absolute value a
    cand = {f: {a: tuple(x for x in (a, -a) if x in sources[f]) for a in range(1, 6)} for f in fams}
    for pi in PERMS:
        if any(not cand[f][pi[i]] for f, i in need) or any(len(cand[f][pi[i]]) < 2 for f, i in both):
            continue
        if pi_ok is not None and not pi_ok(pi):
            continue
        base = {}
        choice_points = []
        for f in fams:
            row = {}
            for i in range(1, 6):
                c = cand[f][pi[i - 1]]
                row[i] = c[0] if c else None
                if len(c) == 2 and i in branch.get(f, ()):
                    choice_points.append((f, i))
            base[f] = row
        for signs in product((1, -1), repeat=len(choice_points)):
            letters = {f: dict(r) for f, r in base.items()}
            for (f, i), s in zip(choice_points, signs):
                letters[f][i] = s * abs(letters[f][i])
            yield Frame(pi, letters)


# -- context ---------------------------------------------------------------------

@dataclass
class Context:
    """Everything a generator may look at, already switched so the claim's
    designated edges are negative.

    ``held``: sets of vertices outside the recolored region (reduced
    coloring, before any shrinking); ``sign(a, b)`` for role names.
    """

    roles: dict
    held: dict
    sign: Callable[[str, str], int]
    degree: Callable[[str], int]

    def f(self, role: str) -> frozenset[int]:
        return self.held[self.roles[role]]


Candidate = tuple  # (case name, {role: set}, meta)


# -- claim 2: short cycles through two 3-vertices ----------------------------

NEGATIVE = {
    "Cyc233": (("u", "u'"), ("v", "v'"), ("w", "u"), ("w", "v")),
    "Cyc2233": (("u", "u'"), ("v", "v'"), ("v", "w1"), ("w1", "w2"), ("w2", "u")),
    "Cyc2323": (("u", "u'"), ("v", "v'"), ("u", "w1"), ("v", "w1"), ("u", "w2")),
    "TwoTwoTwo": (("u'", "u"), ("u", "w"), ("w", "v"), ("v", "v'")),
    "TwoTwo": (("u'", "u"), ("u", "v"), ("v", "v'")),
    "TwoThreeTwo": (("u'", "u"), ("v'", "v"), ("u", "w"), ("v", "w"), ("w", "w'")),
    "AdjTriangles": (("u'", "u"), ("v'", "v"), ("u", "w1"), ("u", "w2"), ("v", "w1")),
    "TriPlus2333": (("u'", "u"), ("v'", "v"), ("u", "w1"), ("w", "w1"), ("v", "w2")),
    "Two2333SharedPath": (("u'", "u"), ("v'", "v"), ("u", "w1"), ("w", "w1"), ("v", "w1"), ("u", "w2")),
    "ThreeWithOneTwo": (("v", "v1"), ("v", "v2"), ("v", "v3")),
    "PlainThreeVertex": (("v", "v1"), ("v", "v2"), ("v", "v3")),
}


def _claim2(kind: str, ctx: Context) -> Iterator[Candidate]:
    av = available(ctx.f("v'"))
    au = available(ctx.f("u'"))
    uv = ctx.sign("u", "v")
    for fr in frames({"c": av, "d": au}, need={"c": "1234", "d": "12345"}, both={"c": "5"},
                     branch={"c": "12", "d": "345"}):
        g = fr.sets(u="d3 d4 d5", v="c1 c2 -d5" if uv < 0 else "c1 c2 d5")
        if kind == "Cyc233":
            g.update(fr.sets(w="-c1 -c2 -d3 -d4"))
            case = "233/uv-" if uv < 0 else "233/uv+"
        elif kind == "Cyc2233":
            g.update(fr.sets(w1="-c1 -c2 d3 d4", w2="c1 c2 -d3 -d4"))
            case = "2233/uv-" if uv < 0 else "2233/uv+"
        else:
            vw2 = ctx.sign("v", "w2")
            # with vw2 positive the w2 set must avoid g(u), which holds d3, d4
            g.update(fr.sets(w1="-c1 -c2 -d3 -d4", w2="-c1 -c2 -d3 -d4" if vw2 < 0 else "c1 c2 -d3 -d4"))
            case = "2323/vw2-" if vw2 < 0 else "2323/vw2+"
        yield case, g, fr


# -- claims 3, 4 and 6: boundary pairs shrunk to distinct absolute sets --------

def _shrunk_pairs(ctx: Context):
    fu, fv = ctx.f("u'"), ctx.f("v'")
    du, dv = 6 - ctx.degree("u'"), 6 - ctx.degree("v'")
    if du < 1 or dv < 1 or len(fu) != du + 1 or len(fv) != dv + 1:
        return
    yield from proper_subset_pairs(fu, fv, du, dv)


def _claim3(kind: str, ctx: Context) -> Iterator[Candidate]:
    for bu, bv in _shrunk_pairs(ctx):
        au, av = available(bu), available(bv)
        for fr in frames({"c": au, "d": av}, need={"c": "1234", "d": "1235"}, both={"c": "5", "d": "4"},
                         branch={"c": "124", "d": "135"}):
            g = fr.sets(u="c1 c2 c4 d5", v="d1 d3 c4 d5", w="-c2 -d3 -c4 -d5")
            g["u'"], g["v'"] = bu, bv
            yield "222", g, fr


def _claim4(kind: str, ctx: Context) -> Iterator[Candidate]:
    for bu, bv in _shrunk_pairs(ctx):
        au, av = available(bu), available(bv)
        for fr in frames({"c": au, "d": av}, need={"c": "123", "d": "124"},
                         both={"c": "45", "d": "35"}, branch={"c": "13", "d": "24"}):
            g = fr.sets(u="c1 c3 -d4 c5", v="d2 -c3 d4 -c5")
            g["u'"], g["v'"] = bu, bv
            yield "22", g, fr


def _claim6(kind: str, ctx: Context) -> Iterator[Candidate]:
    s = ctx.sign
    for bu, bv in _shrunk_pairs(ctx):
        au, av = available(bu), available(bv)
        for fr in frames({"c": au, "d": av}, need={"c": "1234", "d": "1235"}, both={"c": "5", "d": "4"},
                         branch={"c": "1234", "d": "15"}):
            g = None
            if kind == "AdjTriangles":
                sig = (s("w1", "w2"), s("v", "w2"))
                if sig == (-1, 1):
                    case, g = "adj/1", fr.sets(u="c1 c4 d5", v="d1 -c4 d5", w1="-c2 -c3 -d5", w2="c2 c3 -c4")
                elif sig == (-1, -1):
                    case, g = "adj/2", fr.sets(u="c1 c4 d5", v="d1 c4 d5", w1="-c2 -c3 -d5", w2="c2 c3 -c4")
                elif sig == (1, -1):
                    case, g = "adj/3", fr.sets(u="c1 c4 d5", v="d1 c4 d5", w1="-c2 -c3 -d5", w2="-c2 -c3 -d5")
            elif kind == "TriPlus2333":
                sig = (s("u", "w2"), s("w1", "w2"), s("w", "v"))
                if sig == (-1, -1, -1):
                    case, g = "tri2333/1", fr.sets(u="c1 c4 d5", v="d1 c4 d5", w1="-c2 -c3 -d5",
                                                   w2="c2 c3 -c4", w="-d1 c2 c3 -c4")
                elif sig == (-1, -1, 1):
                    case, g = "tri2333/2", fr.sets(u="c1 c4 d5", v="d1 c4 d5", w1="-c2 -c3 -d5",
                                                   w2="c2 c3 -c4", w="d1 c2 c3 d5")
                elif sig == (-1, 1, -1):
                    case, g = "tri2333/3", fr.sets(u="c1 c4 d5", v="d1 c4 d5", w1="-c2 -c3 -d5",
                                                   w2="-c2 -c3 -d5", w="-d1 c2 c3 -c4")
                elif sig == (1, -1, -1):
                    case, g = "tri2333/4", fr.sets(u="c1 c4 d5", v="d1 -c4 d5", w1="-c2 -c3 -d5",
                                                   w2="c2 c3 c4", w="-d1 c2 c3 c4")
            else:
                sig = (s("w", "w2"), s("v", "w2"))
                if sig == (-1, -1):
                    case, g = "2x2333/1", fr.sets(u="c1 c4 d5", v="d1 c4 d5", w1="c2 c3 -d5",
                                                  w2="c2 c3 -d5", w="-c2 -c3 c4 d5")
                elif sig == (1, -1):
                    case, g = "2x2333/2", fr.sets(u="c1 c4 d5", v="d1 c4 d5", w1="c2 c3 -d5",
                                                  w2="-c2 -c3 -d5", w="c1 -c2 -c3 c4")
                elif sig == (-1, 1):
                    case, g = "2x2333/3", fr.sets(u="c1 c4 d5", v="d1 -c4 d5", w1="c2 c3 -d5",
                                                  w2="c2 c3 -c4", w="-c2 -c3 c4 d5")
            if g is None:
                return  # signature handled under another role map or switching
            g["u'"], g["v'"] = bu, bv
            yield case, g, fr


# -- claim 5: a 3-vertex with two 2-neighbors ---------------------------------

def _claim5(kind: str, ctx: Context) -> Iterator[Candidate]:
    av = available(ctx.f("v'"))
    au = available(ctx.f("u'"))
    fw = ctx.f("w'")
    dw = ctx.degree("w'")
    if len(doubled(av)) != 2:
        return
    for fr in frames({"c": av, "d": au, "a": fw}, need={"c": "123", "d": "12345"}, both={"c": "45"},
                     branch={"d": "12345"}):
        a_abs = absolute_set(fw)
        if dw == 2:
            if len(fw) != 5:
                continue
            if fr.pi[2] in doubled(au):
                yield "1.1", fr.sets(v="c1 c2 d4 a5", u="d1 d2 a3 d4", **{"w'": "a1 a2 a3 a5"},
                                     w="-a3 -d4 -a5"), fr
            elif {fr.pi[3], fr.pi[4]} == set(doubled(au)):
                yield "1.2", fr.sets(v="c1 c2 a4 a5", u="d1 d2 a4 a5", **{"w'": "a1 a2 a4 a5"},
                                     w="a3 -a4 -a5"), fr
        else:
            if len(fw) != 4:
                continue
            if fr.pi[4] not in a_abs:
                yield "2.1", fr.sets(v="c1 c3 a4 d5", u="d1 d2 d3 d5", **{"w'": "a1 a3 a4"},
                                     w="-d2 -a4 -d5"), fr
            elif fr.pi[2] not in a_abs:
                yield "2.2", fr.sets(v="c1 c2 a4 d5", u="d1 d2 d3 d5", **{"w'": "a1 a2 a4"},
                                     w="-d3 -a4 -d5"), fr


# -- claim 7: a 3-vertex with exactly one 2-neighbor --------------------------

def _claim7(kind: str, ctx: Context) -> Iterator[Candidate]:
    f1, f2, f3 = ctx.f("v1"), ctx.f("v2"), ctx.f("v3")
    if len(f1) != 5 or len(f2) != 4 or len(f3) != 4:
        return
    for fr in frames({"a": f1, "b": f2, "c": f3}, need={"a": "12345", "b": "1234", "c": "123"}):
        k = 4 if fr.letters["c"][4] is not None else 5
        if fr.letters["c"][k] is None:
            continue
        L = fr.letters
        if L["b"][1] == L["c"][1]:
            yield "1", fr.sets(v1="a2 a3 a4 a5", v2="b1 b2 b3", v3="b1 c2 c3", v="-b1 -a4 -a5"), fr
        elif all(L["b"][i] != L["c"][i] for i in (1, 2, 3)):
            if L["a"][1] == L["b"][1]:
                yield f"2.1/k={k}", fr.sets(v1=f"a1 a2 a3 a{9 - k}", v2="a1 b2 b3", v3=f"c2 c3 c{k}",
                                            v=f"-a1 -a{9 - k} -c{k}"), fr
            elif L["a"][1] == L["c"][1]:
                yield "2.2", fr.sets(v1="a1 a2 a3 a5", v2="b2 b3 b4", v3="a1 c2 c3", v="-a1 -b4 -a5"), fr


# -- claim 8: a 3-vertex whose neighbors are all 3-vertices -------------------

def _claim8(kind: str, ctx: Context) -> Iterator[Candidate]:
    f1, f2, f3 = ctx.f("v1"), ctx.f("v2"), ctx.f("v3")
    if not (len(f1) == len(f2) == len(f3) == 4):
        return
    for fr in frames({"a": f1, "b": f2, "c": f3}, need={"a": "1234"}):
        L = fr.letters
        p = fr.pi
        a2 = absolute_set(f2)
        a3 = absolute_set(f3)
        if p[4] not in a2:  # case (1): v2 misses the same value as v1
            if p[4] in a3:
                if p[3] not in a3:
                    yield "1.1", fr.sets(v1="a1 a2 a3", v2="b1 b2 b4", v3="c1 c2 c5", v="-a3 -b4 -c5"), fr
            elif L["a"][1] == L["b"][1] == L["c"][1]:
                yield "1.2", fr.sets(v1="a1 a2 a3", v2="b1 b2 b3", v3="c1 c2 c3", v="-a1 4 5"), fr
            elif (not any(L["a"][i] == L["b"][i] == L["c"][i] for i in (1, 2, 3, 4))
                  and L["a"][1] == L["b"][1] == -L["c"][1]):
                yield "1.3", fr.sets(v1="a1 a2 a3", v2="b1 b2 b3", v3="c2 c3 c4", v="c1 -c4 5"), fr
        elif p[3] not in a2 and p[2] not in a3 and p[4] in a3 and p[3] in a3:
            # case (2): the three sets miss three different values
            yield "2", fr.sets(v1="a1 a2 a3", v2="b1 b2 b5", v3="c1 c2 c4", v="-a3 -b5 -c4"), fr


GENERATORS = {
    "Cyc233": _claim2, "Cyc2233": _claim2, "Cyc2323": _claim2,
    "TwoTwoTwo": _claim3,
    "TwoTwo": _claim4,
    "TwoThreeTwo": _claim5,
    "AdjTriangles": _claim6, "TriPlus2333": _claim6, "Two2333SharedPath": _claim6,
    "ThreeWithOneTwo": _claim7,
    "PlainThreeVertex": _claim8,
}


def local_violation(edges, sets: Mapping[int, frozenset[int]], demand: Mapping[int, int]) -> str | None:
    """Check demands of ``demand``'s keys and every listed edge whose ends
    both have a set."""
    for x, d in demand.items():
        s = sets.get(x)
        if s is None or len(s) != d or any(-y in s for y in s) or not s <= PALETTE:
            return f"vertex {x}: {sorted(s) if s is not None else None} (demand {d})"
    for a, b, sg in edges:
        if a in sets and b in sets and not edge_ok(sets[a], sets[b], sg):
            return f"edge ({a},{b})"
    return None
