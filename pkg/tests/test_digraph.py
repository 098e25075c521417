"""Orientation metrics, duality, the extension step, and projections."""

import pytest

from orient4.build import construct_optimal, make_schedule, reduce, \
    build_base_orientation
from orient4.digraph import (UNREACHABLE, ExtensionError, Orientation,
                             center_in_set, center_out_set, diameter,
                             distance, extend_orientation, from_arcs,
                             from_edge_list, in_projection, is_strong,
                             out_projection, reverse, shortest_cycle_lengths,
                             to_dot, to_edge_list)
from orient4.errors import UsageError
from orient4.tree import (BranchSpec, TreeSpec, branch_copy, center,
                          leaf_copy, multiplied_edges)


def p5_all2():
    return TreeSpec(2, (BranchSpec(2, (2,)), BranchSpec(2, (2,))))


def fig22_spec():
    return TreeSpec(2, (BranchSpec(4, (2, 2)), BranchSpec(4, (2,)),
                        BranchSpec(2, ()), BranchSpec(2, ())))


def built(spec):
    return construct_optimal(spec).orientation


# ----------------------------------------------------------------------------
# construction and storage
# ----------------------------------------------------------------------------

def test_from_arcs_roundtrip():
    spec = p5_all2()
    d = built(spec)
    again = from_arcs(spec, d.arcs())
    assert again.bits == d.bits


def test_from_arcs_errors():
    spec = p5_all2()
    edges = multiplied_edges(spec)
    arcs = [(u, v) for u, v in edges]
    with pytest.raises(UsageError):
        from_arcs(spec, arcs + [(edges[0][1], edges[0][0])])  # duplicate
    with pytest.raises(UsageError):
        from_arcs(spec, arcs[:-1])  # missing an edge
    with pytest.raises(UsageError):
        from_arcs(spec, arcs[:-1] + [(center(1), center(2))])  # non-edge


# ----------------------------------------------------------------------------
# metrics
# ----------------------------------------------------------------------------

def test_fig22_core_has_diameter_4():
    rspec = reduce(fig22_spec(), "P34")
    d = build_base_orientation("P34", rspec, make_schedule(2, "P34"))
    assert diameter(d) == 4
    assert is_strong(d)
    assert max(shortest_cycle_lengths(d)) == 4


def test_all_arcs_into_center_is_unreachable():
    spec = p5_all2()
    bits = []
    for (u, v) in multiplied_edges(spec):
        if u.role == "c":
            bits.append(1)      # point the edge at the center copy
        elif v.role == "c":
            bits.append(0)
        else:
            bits.append(0)
    d = Orientation(spec, tuple(bits))
    assert diameter(d) == UNREACHABLE
    assert not is_strong(d)


def test_reverse_is_involution_and_preserves_metrics():
    d = built(fig22_spec())
    rd = reverse(d)
    assert reverse(rd).bits == d.bits
    assert diameter(rd) == diameter(d) == 4
    assert is_strong(rd) == is_strong(d) is True


def test_distance_matches_diameter():
    d = built(p5_all2())
    verts = d.vertices
    worst = max(distance(d, u, v) for u in verts for v in verts)
    assert worst == diameter(d)


# ----------------------------------------------------------------------------
# extension
# ----------------------------------------------------------------------------

def test_extend_identity_target():
    d = built(p5_all2())
    same = extend_orientation(d, d.spec, 4)
    assert same.bits == d.bits


def test_extend_raises_multiplicities():
    base = built(p5_all2())
    target = TreeSpec(3, (BranchSpec(2, (3,)), BranchSpec(4, (2,))))
    lifted = extend_orientation(base, target, 4)
    assert diameter(lifted) == 4
    assert is_strong(lifted)


def test_extend_lifts_leaf_multiplicities_to_three():
    # five doubled branches over a 4-copy center exercise the half-set
    # variant of the two-copy recipe; lifting every leaf to 3 copies must
    # keep the diameter at 4
    spec = TreeSpec(4, tuple(BranchSpec(2, (2,)) for _ in range(5)))
    res = construct_optimal(spec)
    assert res.case == "P35_D3"
    target = TreeSpec(4, tuple(BranchSpec(2, (3,)) for _ in range(5)))
    lifted = extend_orientation(res.orientation, target, 4)
    assert diameter(lifted) == 4


def test_extend_requires_same_shape():
    d = built(p5_all2())
    with pytest.raises(UsageError):
        extend_orientation(d, TreeSpec(2, (BranchSpec(2, (2,)),
                                           BranchSpec(2, (2,)),
                                           BranchSpec(2, ()))), 4)
    with pytest.raises(UsageError):
        extend_orientation(
            d, TreeSpec(2, (BranchSpec(2, (2, 2)), BranchSpec(2, (2,)))), 4)


def test_extend_requires_short_cycles():
    # an orientation that is strong but has a vertex only on longer cycles
    spec = p5_all2()
    found = None
    for rank in range(1 << 16):
        bits = tuple((rank >> j) & 1 for j in range(16))
        d = Orientation(spec, bits)
        if not is_strong(d):
            continue
        if max(shortest_cycle_lengths(d)) > 4:
            found = d
            break
    assert found is not None
    with pytest.raises(ExtensionError):
        extend_orientation(found, spec, 4)
    # a generous bound accepts it again
    big = extend_orientation(found, spec, 16)
    assert big.bits == found.bits


# ----------------------------------------------------------------------------
# projections
# ----------------------------------------------------------------------------

def p39_fig_orientation():
    spec = TreeSpec(4, tuple([BranchSpec(3, (2,))] * 6
                             + [BranchSpec(4, (2,))] * 2
                             + [BranchSpec(2, ())] * 2))
    rspec = reduce(spec, "P39")
    sched = make_schedule(4, "P39")
    return build_base_orientation("P39", rspec, sched)


def test_center_projections_on_p39_figure():
    d = p39_fig_orientation()
    assert center_out_set(d, branch_copy(5, 3)) == frozenset({1, 2, 3})
    assert center_out_set(d, branch_copy(1, 1)) == frozenset({1, 2})


def test_projections_partition_center_copies():
    d = built(fig22_spec())
    for i in range(1, 5):
        for y in range(1, d.spec.branch(i).multiplicity + 1):
            v = branch_copy(i, y)
            outs = center_out_set(d, v)
            ins = center_in_set(d, v)
            assert outs | ins == frozenset(range(1, d.spec.s + 1))
            assert not outs & ins


def test_projection_role_checks():
    d = built(p5_all2())
    with pytest.raises(UsageError):
        out_projection(d, center(1), center(2))
    with pytest.raises(UsageError):
        out_projection(d, leaf_copy(1, 1, 1), center(1))
    got = out_projection(d, leaf_copy(1, 1, 1), branch_copy(1, 1))
    back = in_projection(d, leaf_copy(1, 1, 1), branch_copy(1, 1))
    assert len(got) + len(back) == d.spec.branch(1).multiplicity


# ----------------------------------------------------------------------------
# text formats
# ----------------------------------------------------------------------------

def test_edge_list_roundtrip_and_stability():
    d = built(fig22_spec())
    text = to_edge_list(d)
    assert text == to_edge_list(d)
    again = from_edge_list(d.spec, text)
    assert again.bits == d.bits


def test_edge_list_parse_errors():
    spec = p5_all2()
    with pytest.raises(UsageError):
        from_edge_list(spec, "c.1 b1.1\n")
    with pytest.raises(UsageError):
        from_edge_list(spec, "c.1 -> c.2\n")


def test_dot_output():
    d = built(p5_all2())
    dot = to_dot(d)
    assert dot.startswith("digraph")
    assert '"c.1"' in dot
    assert dot.count("->") == len(d.bits)
