"""Color sets over the signed palette ±[p], colorings and their verifiers.

A color set is a ``frozenset`` of nonzero integers with no antipodal pair.
A coloring is valid for ``(g, demands)`` when every vertex holds exactly its
demand, every positive edge ``uv`` has ``-f(u) & f(v)`` empty, and every
negative edge has ``f(u) & f(v)`` empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .errors import InternalError, ParseError
from .graph import SignedGraph, balance_check

ColorSet = frozenset


def colorset(members: Iterable[int], p: int | None = None) -> frozenset[int]:
    s = frozenset(int(x) for x in members)
    if 0 in s:
        raise ValueError("0 is not a color")
    if any(-x in s for x in s):
        raise ValueError(f"antipodal pair in {sorted(s)}")
    if p is not None and any(abs(x) > p for x in s):
        raise ValueError(f"color out of palette ±[{p}]: {sorted(s)}")
    return s


def is_colorset(s: Iterable[int], p: int) -> bool:
    s = set(s)
    return 0 not in s and all(-x not in s and abs(x) <= p for x in s)


def absolute_set(c: Iterable[int]) -> frozenset[int]:
    return frozenset(abs(x) for x in c)


def neg(c: Iterable[int]) -> frozenset[int]:
    return frozenset(-x for x in c)


def color_key(x: int) -> tuple[int, int]:
    """Order by absolute value, positive before negative."""
    return (abs(x), 0 if x > 0 else 1)


def ordered(c: Iterable[int]) -> list[int]:
    return sorted(c, key=color_key)


def palette(p: int) -> frozenset[int]:
    return frozenset(range(1, p + 1)) | frozenset(range(-p, 0))


def all_colorsets(p: int, q: int) -> list[frozenset[int]]:
    """All antipodal-free q-subsets of ±[p]; C(p,q)*2^q of them."""
    out = []
    for absv in combinations(range(1, p + 1), q):
        for signs in product((1, -1), repeat=q):
            out.append(frozenset(a * s for a, s in zip(absv, signs)))
    return out


def edge_ok(a: frozenset[int], b: frozenset[int], sign: int) -> bool:
    if sign < 0:
        return not (a & b)
    return not any(-x in b for x in a)


@dataclass(frozen=True)
class Coloring:
    p: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))

    @classmethod
    def from_mapping(cls, p: int, mapping: Mapping[int, Iterable[int]], n: int | None = None):
        n = len(mapping) if n is None else n
        return cls(p, tuple(frozenset(mapping[v]) for v in range(n)))

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.sets[v]

    def __len__(self):
        return len(self.sets)

    @property
    def n(self) -> int:
        return len(self.sets)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    vertex: int | None = None
    edge: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


_OK = Verdict(True)


def _demands(g: SignedGraph, demands) -> list[int]:
    if isinstance(demands, int):
        return [demands] * g.n
    demands = list(demands)
    if len(demands) != g.n:
        raise ValueError("demand map must cover exactly the vertex set")
    return demands


def _check_vertices(g, f: Coloring, demands) -> Verdict:
    if f.n != g.n:
        return Verdict(False, f"coloring has {f.n} vertices, graph has {g.n}")
    for v, (s, d) in enumerate(zip(f.sets, _demands(g, demands))):
        if len(s) != d:
            return Verdict(False, f"vertex {v} holds {len(s)} colors, demand {d}", vertex=v)
        if not is_colorset(s, f.p):
            return Verdict(False, f"vertex {v} set {ordered(s)} not an antipodal-free subset of ±[{f.p}]", vertex=v)
    return _OK


def verify_edge_local(g: SignedGraph, f: Coloring, demands) -> Verdict:
    v = _check_vertices(g, f, demands)
    if not v:
        return v
    for a, b, s in g.edges():
        if not edge_ok(f[a], f[b], s):
            kind = "negative edge shares" if s < 0 else "positive edge has antipodal"
            return Verdict(False, f"{kind} colors at ({a},{b})", edge=(a, b))
    return _OK


def verify_class_balance(g: SignedGraph, f: Coloring, demands) -> Verdict:
    """Per absolute color i, the class holding ±i must be balanced, with the
    switching read off the signs of i in each set."""
    v = _check_vertices(g, f, demands)
    if not v:
        return v
    for i in range(1, f.p + 1):
        s = {}
        for x, c in enumerate(f.sets):
            if i in c:
                s[x] = 1
            elif -i in c:
                s[x] = -1
        for a, b, sg in g.edges():
            if a in s and b in s and sg * s[a] * s[b] != 1:
                return Verdict(False, f"class {i} not balanced by its signs at ({a},{b})", edge=(a, b))
    return _OK


def verify(g: SignedGraph, f: Coloring, demands) -> Verdict:
    """Run both verifiers; they must agree."""
    a = verify_edge_local(g, f, demands)
    b = verify_class_balance(g, f, demands)
    if a.ok != b.ok:
        raise AssertionError(f"verifiers disagree: {a} vs {b}")
    return a


def verify_unsigned(g: SignedGraph, sets: Sequence[Iterable[int]], p: int, demands) -> Verdict:
    """Check an unsigned assignment of colors from [p]: each color class must
    induce a balanced signed subgraph."""
    dem = _demands(g, demands)
    sets = [frozenset(s) for s in sets]
    for v, s in enumerate(sets):
        if len(s) != dem[v] or not all(1 <= x <= p for x in s):
            return Verdict(False, f"vertex {v} has {sorted(s)}", vertex=v)
    for i in range(1, p + 1):
        cls = [v for v, s in enumerate(sets) if i in s]
        sub, _ = g.induced(cls)
        if not balance_check(sub).balanced:
            return Verdict(False, f"class {i} = {cls} is unbalanced")
    return _OK


def refine_unsigned(g: SignedGraph, sets: Sequence[Iterable[int]], p: int) -> Coloring:
    """Turn an unsigned class-balanced assignment into a signed coloring by
    switching each color class to all-positive."""
    out = [set() for _ in range(g.n)]
    for i in range(1, p + 1):
        cls = [v for v, s in enumerate(sets) if i in s]
        sub, idx = g.induced(cls)
        w = balance_check(sub)
        if not w.balanced:
            raise ValueError(f"class {i} is unbalanced")
        for v in cls:
            out[v].add(i * w.switching[idx[v]])
    return Coloring(p, tuple(frozenset(s) for s in out))


# -- operations on colorings ---------------------------------------------------

def restrict(f: Coloring, demands) -> Coloring:
    """Keep the smallest members in (|c|, sign) order, plus before minus."""
    dem = [demands] * f.n if isinstance(demands, int) else list(demands)
    out = []
    for v, (s, d) in enumerate(zip(f.sets, dem)):
        if d > len(s):
            raise ValueError(f"demand {d} exceeds the {len(s)} colors at vertex {v}")
        out.append(frozenset(ordered(s)[:d]))
    return Coloring(f.p, tuple(out))


def restrict_set(s: Iterable[int], d: int) -> frozenset[int]:
    s = ordered(s)
    if d > len(s):
        raise ValueError("demand exceeds available colors")
    return frozenset(s[:d])


def proper_subset_pair(a1: frozenset[int], a2: frozenset[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Drop one color from each set so the absolute-value sets differ."""
    if len(a1) < 2 or len(a2) < 2:
        raise ValueError("both sets need at least two colors")
    b1 = a1 - {ordered(a1)[-1]}
    target = absolute_set(b1)
    for x in reversed(ordered(a2)):
        b2 = a2 - {x}
        if absolute_set(b2) != target:
            return frozenset(b1), frozenset(b2)
    raise InternalError("no proper subset with distinct absolute set")


def proper_subset_pairs(a1: frozenset[int], a2: frozenset[int], d1: int, d2: int):
    """All (b1, b2) with bi ⊆ ai, |bi| = di and distinct absolute sets;
    the :func:`proper_subset_pair` choice comes first when sizes fit."""
    seen = set()
    if len(a1) == d1 + 1 and len(a2) == d2 + 1:
        first = proper_subset_pair(a1, a2)
        seen.add(first)
        yield first
    for c1 in combinations(ordered(a1), d1):
        for c2 in combinations(ordered(a2), d2):
            pair = (frozenset(c1), frozenset(c2))
            if pair in seen or absolute_set(c1) == absolute_set(c2):
                continue
            seen.add(pair)
            yield pair


def switch_coloring(f: Coloring, s: Iterable[int]) -> Coloring:
    """Covariant transform: negate the sets of switched vertices."""
    s = set(s)
    return Coloring(f.p, tuple(neg(c) if v in s else c for v, c in enumerate(f.sets)))


def check_signed_permutation(pi: Mapping[int, int], p: int) -> dict[int, int]:
    full = {}
    for i in range(1, p + 1):
        if i not in pi:
            raise ValueError(f"permutation misses {i}")
        full[i] = int(pi[i])
        full[-i] = -int(pi[i])
        if -i in pi and pi[-i] != -pi[i]:
            raise ValueError("permutation does not commute with negation")
    if set(full.values()) != palette(p):
        raise ValueError("not a bijection on ±[p]")
    return full


def apply_signed_permutation(f: Coloring, pi: Mapping[int, int]) -> Coloring:
    full = check_signed_permutation(pi, f.p)
    return Coloring(f.p, tuple(frozenset(full[x] for x in c) for c in f.sets))


def aligning_permutation(a: Iterable[int], b: Iterable[int], p: int) -> dict[int, int]:
    """A signed permutation of ±[p] mapping set ``a`` onto set ``b``."""
    a, b = ordered(a), ordered(b)
    if len(a) != len(b):
        raise ValueError("sets differ in size")
    pi = {}
    for x, y in zip(a, b):
        pi[abs(x)] = y if x > 0 else -y
    rest_src = [i for i in range(1, p + 1) if i not in pi]
    rest_dst = [i for i in range(1, p + 1) if i not in {abs(v) for v in pi.values()}]
    pi.update(zip(rest_src, rest_dst))
    return pi


def lift_32_to_53(f: Coloring, g: SignedGraph | None = None) -> Coloring:
    """(3,2) -> (6,4) by doubling the palette, drop color 6, keep 3 each."""
    if f.p != 3 or any(len(s) != 2 for s in f.sets):
        raise ValueError("input must be a (3,2)-coloring")
    if g is not None and not verify_edge_local(g, f, 2):
        raise ValueError("input coloring is invalid")
    out = []
    for s in f.sets:
        doubled = {y for x in s for y in (x, x + 3 if x > 0 else x - 3)}
        doubled -= {6, -6}
        out.append(restrict_set(doubled, 3))
    return Coloring(5, tuple(out))


# -- text format ---------------------------------------------------------------

def dumps(f: Coloring) -> str:
    lines = [f"col {f.p} {f.n}"]
    for v, s in enumerate(f.sets):
        body = " ".join(str(x) for x in ordered(s))
        lines.append(f"v {v} : {body}".rstrip())
    return "\n".join(lines) + "\n"


def loads(text: str) -> Coloring:
    header = None
    sets = {}
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "col":
                raise ParseError("expected header 'col <p> <n>'", lineno)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError("non-integer in header", lineno) from None
            continue
        if len(parts) < 3 or parts[0] != "v" or parts[2] != ":":
            raise ParseError(f"expected 'v <id> : c1 c2 ...', got {line!r}", lineno)
        try:
            v = int(parts[1])
            cols = [int(x) for x in parts[3:]]
        except ValueError:
            raise ParseError("non-integer entry", lineno) from None
        if not 0 <= v < header[1] or v in sets:
            raise ParseError(f"bad or repeated vertex {v}", lineno)
        try:
            sets[v] = colorset(cols, header[0])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if header is None:
        raise ParseError("empty input")
    if len(sets) != header[1]:
        raise ParseError(f"header declares {header[1]} vertices, found {len(sets)}")
    return Coloring.from_mapping(header[0], sets, header[1])


def read(path) -> Coloring:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(f: Coloring, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(f))


# -- bit masks: +i at bit 2(i-1), -i at bit 2(i-1)+1 --------------------------

def to_mask(s: Iterable[int]) -> int:
    m = 0
    for x in s:
        m |= 1 << (2 * (abs(x) - 1) + (0 if x > 0 else 1))
    return m


def from_mask(m: int) -> frozenset[int]:
    out = []
    bit = 0
    while m:
        if m & 1:
            i = bit // 2 + 1
            out.append(i if bit % 2 == 0 else -i)
        m >>= 1
        bit += 1
    return frozenset(out)


_EVEN = 0x5555555555555555


def neg_mask(m: int) -> int:
    return ((m & _EVEN) << 1) | ((m >> 1) & _EVEN)


__all__ = [
    "ColorSet", "Coloring", "Verdict", "absolute_set", "aligning_permutation",
    "all_colorsets", "color_key", "from_mask", "neg_mask", "to_mask", "apply_signed_permutation", "colorset", "edge_ok", "lift_32_to_53",
    "neg", "ordered", "palette", "proper_subset_pair", "refine_unsigned", "restrict",
    "switch_coloring", "verify", "verify_class_balance", "verify_edge_local", "verify_unsigned",
]
