import random
from fractions import Fraction
from itertools import combinations

import pytest
from scipy.optimize import linprog

from signedcolor import graph as gr
from signedcolor.coloring import verify, verify_class_balance, verify_edge_local
from signedcolor.errors import CapExceeded, ParseError, SignedGraphError
from signedcolor.exact import (Certificate, beta, chi_fb_exact, cover_coloring_exists, degree_demands,
                               dumps_certificate, enumerate_maximal_balanced_sets, loads_certificate, realize_pq,
                               search_coloring)
from signedcolor.graph import SignedGraph, is_balanced_subset, k4_bullet, k4_minus, neg_cube

from oracles import balanced_by_cycles, connected_subcubic_up_to_switching, maximal_balanced_sets, random_signed_graph

NEG_TRIANGLE = SignedGraph(3, [(0, 1, -1), (1, 2, -1), (0, 2, -1)])


def pos_path(n):
    return SignedGraph(n, [(i, i + 1, 1) for i in range(n - 1)])


def lp_float(g):
    """Covering LP over every balanced set, solved in floating point."""
    sets = [c for r in range(1, g.n + 1) for c in combinations(range(g.n), r) if balanced_by_cycles(g, c)]
    a = [[-1.0 if v in s else 0.0 for s in sets] for v in range(g.n)]
    res = linprog([1.0] * len(sets), A_ub=a, b_ub=[-1.0] * g.n, bounds=(0, None), method="highs")
    return res.fun


# -- search ---------------------------------------------------------------------

def test_k4_minus_has_no_53():
    assert search_coloring(k4_minus(), 5, 3) is None


@pytest.mark.parametrize("q", [1, 2])
def test_k4_minus_2q_q(q):
    f = search_coloring(k4_minus(), 2 * q, q)
    assert f is not None and verify(k4_minus(), f, q)


def test_k4_bullet_53():
    f = search_coloring(k4_bullet(), 5, 3)
    assert f is not None and verify(k4_bullet(), f, 3)


def test_search_first_vertex_canonical():
    f = search_coloring(neg_cube(), 5, 3)
    assert frozenset({1, 2, 3}) in f.sets


def test_search_respects_fixed_and_candidates():
    g = gr.generate("neg_cycle", k=5)
    f = search_coloring(g, 5, 4, fixed={2: {-1, -2, 3, 5}})
    assert f[2] == {-1, -2, 3, 5} and verify(g, f, 4)
    cands = {0: [frozenset({1, 2, 3, 4})]}
    f = search_coloring(g, 5, 4, candidates=cands)
    assert f[0] == {1, 2, 3, 4}


def test_search_per_vertex_demands():
    # 5-cycle with the chord 0-2
    g = SignedGraph(5, [(0, 1, -1), (1, 2, -1), (2, 3, 1), (3, 4, -1), (0, 4, 1), (0, 2, -1)])
    dem = degree_demands(g)
    assert dem == [3, 4, 3, 4, 4]
    f = search_coloring(g, 5, dem)
    assert f.sizes() == tuple(dem) and verify(g, f, dem)


def test_k4_bullet_has_no_degree_demand_coloring():
    # why K4bullet blocks are excluded from the degree-demand theorem
    assert search_coloring(k4_bullet(), 5, degree_demands(k4_bullet())) is None


def test_degree_demands_isolated_vertex_capped():
    assert degree_demands(SignedGraph(2, [])) == [5, 5]


def test_search_agrees_with_cover_oracle_small():
    # every connected subcubic signed graph on at most 5 vertices, up to switching
    for g in connected_subcubic_up_to_switching(5):
        for p in range(1, 5):
            for q in range(1, p + 1):
                f = search_coloring(g, p, q)
                assert (f is not None) == cover_coloring_exists(g, p, q), (g.edges(), p, q)
                if f is not None:
                    assert verify_edge_local(g, f, q) and verify_class_balance(g, f, q)


# -- beta ---------------------------------------------------------------------------

def test_beta_k4_bullet():
    b, wit = beta(k4_bullet())
    assert b == 3 and len(wit) == 3 and is_balanced_subset(k4_bullet(), wit)


def test_beta_k4_minus_brute_force():
    g = k4_minus()
    brute = max(len(x) for r in range(5) for x in combinations(range(4), r) if balanced_by_cycles(g, x))
    assert brute == 2
    assert beta(g)[0] == 2


def test_beta_all_positive():
    assert beta(pos_path(7))[0] == 7


def test_beta_against_brute_force():
    rng = random.Random(8)
    for _ in range(60):
        g = random_signed_graph(rng, rng.randint(1, 9))
        brute = max(len(x) for r in range(g.n + 1) for x in combinations(range(g.n), r)
                    if balanced_by_cycles(g, x))
        b, wit = beta(g)
        assert b == brute and len(wit) == b and balanced_by_cycles(g, wit)


def test_beta_cap():
    with pytest.raises(CapExceeded):
        beta(pos_path(25), cap=5)


# -- maximal balanced sets ----------------------------------------------------------

def test_maximal_sets_all_positive():
    assert enumerate_maximal_balanced_sets(pos_path(5)).sets == (frozenset(range(5)),)


def test_maximal_sets_k4_minus():
    fam = enumerate_maximal_balanced_sets(k4_minus())
    assert set(fam.sets) == {frozenset(e) for e in combinations(range(4), 2)} and fam.maximal_only


def test_maximal_sets_negative_triangle():
    assert set(enumerate_maximal_balanced_sets(NEG_TRIANGLE).sets) == {frozenset(e) for e in combinations(range(3), 2)}


def test_maximal_sets_against_oracle():
    rng = random.Random(2)
    for _ in range(40):
        g = random_signed_graph(rng, rng.randint(1, 8))
        fam = enumerate_maximal_balanced_sets(g).sets
        assert set(fam) == maximal_balanced_sets(g)
        assert list(fam) == sorted(fam, key=lambda s: tuple(sorted(s)))


def test_maximal_sets_cap(monkeypatch):
    with pytest.raises(CapExceeded):
        enumerate_maximal_balanced_sets(pos_path(6), cap=5)
    monkeypatch.setenv("SG_LP_CAP", "4")
    with pytest.raises(CapExceeded):
        enumerate_maximal_balanced_sets(pos_path(5))
    with pytest.raises(CapExceeded):
        chi_fb_exact(pos_path(5))


# -- chi_fb ------------------------------------------------------------------------------

def test_chi_k4_bullet():
    res = chi_fb_exact(k4_bullet())
    assert res.value == Fraction(5, 3)
    assert res.lower_bound == Fraction(5, 3)
    assert res.certificate.check(k4_bullet())


def test_chi_k4_minus():
    assert chi_fb_exact(k4_minus()).value == 2


def test_chi_neg_cube():
    res = chi_fb_exact(neg_cube())
    assert res.value == Fraction(8, 5)
    assert res.lower_bound <= res.value


@pytest.mark.parametrize("k", range(3, 9))
def test_chi_negative_cycles(k):
    res = chi_fb_exact(gr.generate("neg_cycle", k=k))
    assert res.value == Fraction(k, k - 1)
    assert res.beta == k - 1


def test_chi_balanced_is_one():
    assert chi_fb_exact(gr.generate("pos_cycle", k=6)).value == 1
    assert chi_fb_exact(pos_path(4)).value == 1


def test_chi_against_float_lp():
    rng = random.Random(4)
    for _ in range(25):
        g = random_signed_graph(rng, rng.randint(2, 8))
        res = chi_fb_exact(g)
        assert abs(float(res.value) - lp_float(g)) < 1e-7


# -- realize ------------------------------------------------------------------------------

def test_realize_k4_bullet():
    p, q, f = realize_pq(k4_bullet(), chi_fb_exact(k4_bullet()).certificate)
    assert (p, q) == (5, 3)
    assert verify_edge_local(k4_bullet(), f, 3) and verify_class_balance(k4_bullet(), f, 3)


def test_realize_all_positive():
    g = pos_path(4)
    p, q, f = realize_pq(g, chi_fb_exact(g).certificate)
    assert (p, q) == (1, 1) and all(s == {1} for s in f.sets)


def test_realize_neg_cube():
    p, q, f = realize_pq(neg_cube(), chi_fb_exact(neg_cube()).certificate)
    assert (p, q) == (8, 5) and verify(neg_cube(), f, 5)


def test_realize_rejects_foreign_certificate():
    cert = chi_fb_exact(pos_path(3)).certificate
    with pytest.raises(SignedGraphError):
        realize_pq(NEG_TRIANGLE, cert)


def test_search_confirms_lp_at_denominators():
    assert search_coloring(k4_bullet(), 5, 3) is not None
    assert search_coloring(gr.generate("neg_cycle", k=5), 5, 4) is not None


# -- certificate text --------------------------------------------------------------------

def test_certificate_round_trip():
    cert = chi_fb_exact(k4_bullet()).certificate
    text = dumps_certificate(cert)
    assert all(line.startswith(("set ", "#")) for line in text.splitlines())
    back = loads_certificate(text)
    assert back.sets == cert.sets and back.weights == cert.weights and back.n == cert.n


def test_certificate_parse_error():
    with pytest.raises(ParseError):
        loads_certificate("set 0,1 1/2\n", n=2)


def test_certificate_check_detects_undercover():
    cert = Certificate(3, (frozenset({0, 1}),), (Fraction(1),))
    assert not cert.check(NEG_TRIANGLE)
