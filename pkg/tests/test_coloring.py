from itertools import product

import pytest

from signedcolor import coloring as col
from signedcolor.coloring import (Coloring, absolute_set, aligning_permutation, apply_signed_permutation,
                                  colorset, lift_32_to_53, proper_subset_pair, proper_subset_pairs, restrict,
                                  switch_coloring, verify, verify_class_balance, verify_edge_local)
from signedcolor.construct.small import K4_BULLET_TABLE
from signedcolor.cycles import color_cycle
from signedcolor.errors import ParseError
from signedcolor.exact import search_coloring
from signedcolor.graph import K4_BULLET_LABELS, SignedGraph, k4_bullet, k4_minus, neg_cube, switch_at

from oracles import cycle_graph, edge_local_ok

NEG_TRIANGLE = SignedGraph(3, [(0, 1, -1), (1, 2, -1), (0, 2, -1)])

# x y z w t order of k4_bullet()
PUBLISHED_TABLE = {"t": (3, 4, 5), "x": (1, 2, 3), "y": (-2, -4, -5), "z": (-1, -3, 5), "w": (1, 2, 4)}


def table_coloring(table):
    return Coloring(5, tuple(frozenset(table[c]) for c in K4_BULLET_LABELS))


def both(g, f, d):
    a, b = verify_edge_local(g, f, d), verify_class_balance(g, f, d)
    assert a.ok == b.ok
    return a


# -- color sets ------------------------------------------------------------------

def test_absolute_set_examples():
    with pytest.raises(ValueError):
        colorset({1, 2, 3, -3})
    assert absolute_set({1, 2, -3}) == {1, 2, 3}
    assert absolute_set(set()) == set()
    assert absolute_set({-1, -2, -3, -4, -5}) == {1, 2, 3, 4, 5}


def test_colorset_palette_bound():
    with pytest.raises(ValueError):
        colorset({1, 6}, p=5)
    with pytest.raises(ValueError):
        colorset({0, 1})


def test_all_colorsets_count():
    assert len(col.all_colorsets(5, 3)) == 10 * 8
    assert len(col.all_colorsets(4, 2)) == 6 * 4


def test_mask_round_trip():
    for s in col.all_colorsets(4, 2):
        m = col.to_mask(s)
        assert col.from_mask(m) == s
        assert col.from_mask(col.neg_mask(m)) == col.neg(s)


# -- verifiers ------------------------------------------------------------------------

def test_published_k4_bullet_table_rejected_on_k4_bullet():
    # the five published sets put 4 on both ends of the negative edge wt
    v = verify_edge_local(k4_bullet(), table_coloring(PUBLISHED_TABLE), 3)
    assert not v and v.edge == (3, 4)
    assert not verify_class_balance(k4_bullet(), table_coloring(PUBLISHED_TABLE), 3)


def test_published_k4_bullet_table_valid_with_positive_t_edges():
    # the unique signature on which the published sets verify: both edges at t positive
    g = k4_bullet({"wt": 1})
    assert both(g, table_coloring(PUBLISHED_TABLE), 3)
    edges = [(u, v) for u, v, _ in g.edges()]
    ok = [signs for signs in product((1, -1), repeat=7)
          if verify(SignedGraph(5, [(u, v, s) for (u, v), s in zip(edges, signs)]),
                    table_coloring(PUBLISHED_TABLE), 3)]
    assert ok == [tuple(g.sign(u, v) for u, v in edges)]


def test_repaired_k4_bullet_table_valid():
    assert both(k4_bullet(), table_coloring(K4_BULLET_TABLE), 3)


def test_constant_sets_on_all_positive():
    g = SignedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 1)])
    f = Coloring(5, tuple(frozenset({1, 2, 3}) for _ in range(4)))
    assert both(g, f, 3)


def test_k4_minus_shared_sets_invalid():
    f = Coloring(5, tuple(frozenset(s) for s in ({1, 2, 3}, {1, 2, 3}, {-1, 4, 5}, {-2, -4, 5})))
    v = verify_edge_local(k4_minus(), f, 3)
    assert not v and v.edge == (0, 1)
    assert not verify_class_balance(k4_minus(), f, 3)


def test_negative_triangle_table_as_unsigned_sets():
    sets = ({1, 2, 3, 4}, {1, 2, 5}, {3, 4, 5})
    # each class is an edge or a single vertex, hence balanced
    assert col.verify_unsigned(NEG_TRIANGLE, sets, 5, [4, 3, 3])
    # read literally as signed sets, 1 and 2 sit on both ends of a negative edge
    assert not verify_class_balance(NEG_TRIANGLE, Coloring(5, tuple(map(frozenset, sets))), [4, 3, 3])
    f = col.refine_unsigned(NEG_TRIANGLE, sets, 5)
    assert [absolute_set(x) for x in f.sets] == [set(x) for x in sets]
    assert both(NEG_TRIANGLE, f, [4, 3, 3])


def test_negative_triangle_single_color_class_unbalanced():
    f = Coloring(5, (frozenset({1}),) * 3)
    v = verify_class_balance(NEG_TRIANGLE, f, 1)
    assert not v and "class 1" in v.reason
    assert not verify_edge_local(NEG_TRIANGLE, f, 1)


def test_demand_mismatch_reported():
    f = Coloring(5, (frozenset({1, 2}), frozenset({3}), frozenset({4})))
    v = verify_edge_local(NEG_TRIANGLE, f, 2)
    assert not v and v.vertex == 1


def test_wrong_vertex_count():
    assert not verify(NEG_TRIANGLE, Coloring(5, (frozenset({1}),)), 1)


def test_antipodal_set_rejected_by_verifier():
    f = Coloring(5, (frozenset({1, -1}), frozenset({2, 3}), frozenset({4, 5})))
    assert not verify_edge_local(NEG_TRIANGLE, f, 2)
    assert not verify_class_balance(NEG_TRIANGLE, f, 2)


# -- restrict ---------------------------------------------------------------------------

def test_restrict_rule():
    f = Coloring(5, (frozenset({1, 2, -3, 5}),))
    assert restrict(f, 2)[0] == {1, 2}


def test_restrict_plus_before_minus():
    assert col.restrict_set({-2, 3, 1}, 2) == {1, -2}


def test_restrict_negative_five_cycle():
    signs = [1, 1, 1, 1, -1]
    f = color_cycle(signs, 5, 4)
    g = cycle_graph(signs)
    assert both(g, restrict(f, 3), 3)


def test_restrict_identity():
    f = Coloring(5, tuple(frozenset(s) for s in ({1, 2, 3, 4}, {1, 2, 5}, {3, 4, 5})))
    assert restrict(f, [4, 3, 3]) == f


def test_restrict_demand_too_large():
    with pytest.raises(ValueError):
        restrict(Coloring(5, (frozenset({1}),)), 2)


# -- proper subsets -------------------------------------------------------------------------

def test_proper_subset_pair_examples():
    assert proper_subset_pair(frozenset({1, 2, 3}), frozenset({1, 2, 3})) == ({1, 2}, {1, 3})
    assert proper_subset_pair(frozenset({1, 2}), frozenset({-1, -2})) == ({1}, {-2})
    b1, b2 = proper_subset_pair(frozenset({1, 2, 3, 4}), frozenset({-1, -2, -3, 5}))
    assert b1 == {1, 2, 3}
    assert b2 < {-1, -2, -3, 5} and len(b2) == 3 and absolute_set(b2) != {1, 2, 3}
    assert b2 == {-1, -2, 5}


def test_proper_subset_pair_needs_two():
    with pytest.raises(ValueError):
        proper_subset_pair(frozenset({1}), frozenset({1, 2}))


def test_proper_subset_pairs_first_is_default():
    a1, a2 = frozenset({1, 2, 3}), frozenset({1, 2, 3})
    pairs = list(proper_subset_pairs(a1, a2, 2, 2))
    assert pairs[0] == proper_subset_pair(a1, a2)
    assert len(pairs) == len(set(pairs))
    assert all(absolute_set(b1) != absolute_set(b2) for b1, b2 in pairs)


# -- lift ----------------------------------------------------------------------------------

def test_lift_negative_triangle():
    f = Coloring(3, tuple(frozenset(s) for s in ({1, 2}, {-1, 3}, {-2, -3})))
    assert verify(NEG_TRIANGLE, f, 2)
    assert both(NEG_TRIANGLE, lift_32_to_53(f, NEG_TRIANGLE), 3)


def test_lift_balanced_constant():
    g = SignedGraph(3, [(0, 1, 1), (1, 2, 1)])
    f = Coloring(3, (frozenset({1, 2}),) * 3)
    out = lift_32_to_53(f, g)
    assert all(s == {1, 2, 4} for s in out.sets)
    assert both(g, out, 3)


def test_lift_rejects_invalid_input():
    f = Coloring(3, (frozenset({1, 2}),) * 3)
    with pytest.raises(ValueError):
        lift_32_to_53(f, NEG_TRIANGLE)
    with pytest.raises(ValueError):
        lift_32_to_53(Coloring(5, (frozenset({1, 2, 3}),)))


# -- signed permutations ---------------------------------------------------------------------

def test_identity_permutation():
    f = table_coloring(K4_BULLET_TABLE)
    assert apply_signed_permutation(f, {i: i for i in range(1, 6)}) == f


def test_negate_all_permutation_keeps_validity():
    g = neg_cube()
    f = search_coloring(g, 5, 3)
    out = apply_signed_permutation(f, {i: -i for i in range(1, 6)})
    assert both(g, out, 3)


def test_swap_on_table_keeps_validity():
    f = apply_signed_permutation(table_coloring(K4_BULLET_TABLE), {1: 2, 2: 1, 3: 3, 4: 4, 5: 5})
    assert both(k4_bullet(), f, 3)


@pytest.mark.parametrize("pi", [{1: 1, 2: 1, 3: 3}, {1: 2, 2: 3}, {1: 1, 2: 2, 3: 3, -1: 1}])
def test_malformed_permutation(pi):
    with pytest.raises(ValueError):
        apply_signed_permutation(Coloring(3, (frozenset({1}),)), pi)


def test_aligning_permutation_maps_a_onto_b():
    a, b = {1, -3, 4}, {-2, 5, -1}
    pi = col.check_signed_permutation(aligning_permutation(a, b, 5), 5)
    assert {pi[x] for x in a} == b


def test_switch_coloring_covariance_example():
    f = table_coloring(K4_BULLET_TABLE)
    assert both(switch_at(k4_bullet(), {0, 2}), switch_coloring(f, {0, 2}), 3)


# -- text format --------------------------------------------------------------------------------

def test_coloring_text_round_trip():
    f = Coloring(5, tuple(frozenset(s) for s in ({-1, 2, 3}, {5, -4}, set())))
    text = col.dumps(f)
    assert text == "col 5 3\nv 0 : -1 2 3\nv 1 : -4 5\nv 2 :\n"
    assert col.loads(text) == f
    assert col.dumps(col.loads(text)) == text


@pytest.mark.parametrize("text", [
    "col 5\n",
    "col 5 1\nv 0 : 1 -1\n",
    "col 5 1\nv 0 : 7\n",
    "col 5 2\nv 0 : 1\n",
    "col 5 1\nw 0 : 1\n",
])
def test_coloring_parse_errors(text):
    with pytest.raises(ParseError):
        col.loads(text)


def test_coloring_file_round_trip(tmp_path):
    f = table_coloring(K4_BULLET_TABLE)
    col.write(f, tmp_path / "f.col")
    assert col.read(tmp_path / "f.col") == f


def test_oracle_agrees_on_table():
    f = table_coloring(K4_BULLET_TABLE)
    assert edge_local_ok(k4_bullet(), f.sets, 3)
