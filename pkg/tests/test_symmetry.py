"""Group action on complexes, fine cells, quotients, fixed sets."""
import math

import pytest

from polysym.cells import (CollinearVertex, CyclicPartition, enumerate_cells,
                           reverse_cell)
from polysym.core import (DihedralElement, LengthVector, automorphism_group)
from polysym.geometry import (closure_norm, derive_cell, relabel_config,
                              solve_cell_representative)
from polysym.simplicial import graph_invariants, homology_mod2, is_interval
from polysym.symmetry import (GroupActionTable, InvalidL, NoAllowablePair,
                              NotASubgroup,
                              act_on_cell, all_subgroups,
                              dihedral_fixed_sampler, dihedral_max_span,
                              fine_cell_membranes, fine_cells,
                              quotient_complex, realized_stabilizers,
                              reflection_fixed_report, rotation_fixed_report,
                              stabilizer, star_polygon_types, verify_fixed)


def _table(lengths, space="Reduced"):
    lv = LengthVector(lengths)
    G = automorphism_group(lv)
    poset = enumerate_cells(lv, space)
    return lv, G, poset, GroupActionTable(G, poset)


def test_action_axiom_exhaustive_pentagon():
    lv, G, poset, table = _table([1] * 5)
    for g in G:
        for h in G:
            gh = g.compose(h)
            for c in poset.elements:
                assert table.apply(gh, c) == table.apply(g, table.apply(h, c))


def test_orbit_stabilizer_pentagon_and_hexagon():
    for n in (5, 6):
        lv, G, poset, table = _table([1] * n)
        for c in poset.elements:
            orbit = table.orbit(c)
            stab = stabilizer(table, c)
            assert len(orbit) * stab.order == G.order


def test_action_preserves_dimension_and_incidence():
    lv, G, poset, table = _table([1] * 5)
    for g in G:
        for c in poset.elements:
            assert table.apply(g, c).dim == c.dim
        for e in poset.cells_of_dim(1):
            for v in poset.cells_of_dim(0):
                assert poset.less(v, e) == poset.less(
                    table.apply(g, v), table.apply(g, e))


def test_action_compatibility_with_geometry_pentagon():
    """Combinatorial action equals relabeling of sampled configurations."""
    lv, G, poset, table = _table([1] * 5)
    for cell in poset.cells_of_dim(2):
        cfg = solve_cell_representative(lv, cell, seed=3)
        for g in G:
            combinatorial = table.apply(g, cell)
            geometric = derive_cell(lv, relabel_config(g, cfg))
            assert combinatorial == geometric, (cell.label(), g.label())


def test_fine_cells_count_equals_stabilizer_order():
    for n in (5, 6):
        lv, G, poset, table = _table([1] * n)
        for c in poset.elements:
            if not isinstance(c, CyclicPartition):
                continue
            stab = stabilizer(table, c)
            if stab.order > 1:
                labels = fine_cells(table, c)
                assert len(labels) == stab.order, c.label()


def test_hexagon_convex_cell_fine_structure():
    lv, G, poset, table = _table([1] * 6, "FullyReduced")
    top = poset.by_label("1|2|3|4|5|6")
    stab = stabilizer(table, top)
    assert stab.order == 12
    labels = fine_cells(table, top)
    assert len(labels) == 12
    membranes = fine_cell_membranes(labels)
    assert membranes  # adjacent fine cells share a wall


def test_quotient_square_full_group_is_interval():
    lv = LengthVector([1, 1, 1, 1])
    G = automorphism_group(lv)
    poset = enumerate_cells(lv, "Reduced")
    Q = quotient_complex(poset, G, include_reversal=False)
    assert is_interval(Q.complex)


def test_quotient_euler_orbifold_count():
    lv = LengthVector([1] * 5)
    G = automorphism_group(lv)
    poset = enumerate_cells(lv, "Reduced")
    Q = quotient_complex(poset, G, include_reversal=True)
    # closed disc: mod-2 betti (1, 0, 0), one boundary circle
    assert homology_mod2(Q.complex) == (1, 0, 0)
    assert Q.complex.euler() == 1


def test_quotient_trivial_group_is_identity_complex():
    lv = LengthVector([2, 3, 2, 4])
    G = automorphism_group(lv)
    poset = enumerate_cells(lv, "Reduced")
    Q = quotient_complex(
        poset,
        type(G)([g for g in G if g.is_identity], "Cyclic", 1),
    )
    # quotient by the identity keeps the Euler characteristic
    assert Q.complex.euler() == poset.euler()


def test_all_subgroups_of_dihedral():
    G = automorphism_group(LengthVector([1] * 6))
    subs = all_subgroups(G)
    assert len(subs) == 16  # subgroups of D_6 (order 12)


def test_realized_stabilizers_hexagon():
    realized, missing = realized_stabilizers(LengthVector([1] * 6))
    assert len(missing) == 3
    missing_orders = sorted(len(m) for m in missing)
    assert missing_orders == [3, 6, 6]


def test_star_polygon_types():
    assert star_polygon_types(5) == [1, 2]
    assert star_polygon_types(6) == [1, 2, 3]


def test_reflection_fixed_samples():
    lv = LengthVector([1] * 5)
    rho = DihedralElement(0, True, 5)
    report = reflection_fixed_report(lv, rho, seed=0, samples=3)
    assert report.kind == "reflection"
    for cfg in report.samples:
        assert closure_norm(lv, cfg) <= 1e-9
        assert verify_fixed(lv, cfg, [rho])


def test_rotation_fixed_samples_c5():
    lv = LengthVector([1] * 20)
    report = rotation_fixed_report(lv, 5, seed=0, samples_per_class=4)
    rot = DihedralElement(4, False, 20)
    non_collinear = [c for c in report.components if not c["collinear_core"]]
    # four samples per non-collinear class
    assert len(report.samples) >= 4 * len(non_collinear)
    for cfg in report.samples:
        assert closure_norm(lv, cfg) <= 1e-9
        assert verify_fixed(lv, cfg, [rot], tol=1e-9)


def test_rotation_subgroup_validation():
    with pytest.raises(NotASubgroup):
        rotation_fixed_report(LengthVector([1] * 5), 2)


def test_dihedral_fixed_sampler_hexagon():
    lv = LengthVector([1] * 6)
    rho1 = DihedralElement(0, True, 6)
    rho2 = DihedralElement(3, True, 6)
    for L in (1.1, 1.5):
        configs = dihedral_fixed_sampler(lv, 2, L, seed=0, count=3)
        assert len(configs) == 3
        for cfg in configs:
            assert closure_norm(lv, cfg) <= 1e-9
            assert verify_fixed(lv, cfg, [rho1, rho2])
    # below L = 1 the bisected edge (perpendicular to its axis) cannot
    # reach the fundamental vertex: no allowable axis pair exists
    with pytest.raises(NoAllowablePair):
        dihedral_fixed_sampler(lv, 2, 0.8, seed=0)
    # d = 3: axes through vertices, generic span
    configs = dihedral_fixed_sampler(lv, 3, 1.2, seed=0, count=2)
    r1 = DihedralElement(0, True, 6)
    r2 = DihedralElement(2, True, 6)
    for cfg in configs:
        assert verify_fixed(lv, cfg, [r1, r2])
    # shifted axis pair (both axes bisect edges): both subchains are empty,
    # so the fixed set exists only at the fully stretched span
    L0s = dihedral_max_span(lv, 3, shift=1)
    assert math.isclose(L0s, math.sqrt(3.0), rel_tol=1e-12)
    with pytest.raises(NoAllowablePair):
        dihedral_fixed_sampler(lv, 3, 1.2, shift=1, seed=0)
    configs = dihedral_fixed_sampler(lv, 3, L0s, shift=1, seed=0, count=4)
    assert len(configs) == 1
    r1 = DihedralElement(1, True, 6)
    r2 = DihedralElement(3, True, 6)
    assert verify_fixed(lv, configs[0], [r1, r2])


def test_dihedral_sampler_stretched_is_unique():
    lv = LengthVector([1] * 6)
    L0 = dihedral_max_span(lv, 2)
    assert math.isclose(L0, math.sqrt(5.0), rel_tol=1e-12)
    configs = dihedral_fixed_sampler(lv, 2, L0, seed=0, count=5)
    assert len(configs) == 1  # fully stretched: exactly one configuration
    rho1 = DihedralElement(0, True, 6)
    rho2 = DihedralElement(3, True, 6)
    assert verify_fixed(lv, configs[0], [rho1, rho2])
    with pytest.raises(InvalidL):
        dihedral_fixed_sampler(lv, 2, L0 + 1e-6, seed=0)


def test_reverse_cell_commutes_with_action():
    lv, G, poset, table = _table([1] * 5)
    for g in G:
        for c in poset.elements:
            lhs = reverse_cell(table.apply(g, c))
            rhs = table.apply(g, reverse_cell(c))
            assert poset.canonical(lhs) == poset.canonical(rhs)
