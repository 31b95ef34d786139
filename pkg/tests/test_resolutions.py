from fractions import Fraction

import pytest

from cqsdef.chains import enumerate_K
from cqsdef.cqs import cqs_new
from cqsdef.resolutions import (
    assemble_fan3,
    canonical_model,
    canonical_model_via_hull,
    fan_decomposition,
    fan_decomposition_for,
    hull_cone_ray_sets,
    is_canonical_cone3,
    lattice_points_right,
    p_resolution_fan,
)
from cqsdef.totalspace import Cone3, all_deformations, components_of
from conftest import iter_models


def k_of(model, chain):
    for zc in enumerate_K(model):
        if zc.k == chain:
            return zc
    raise KeyError(chain)


def defo_by_label(model, label):
    for df in all_deformations(model):
        if df.label == label:
            return df
    raise KeyError(label)


def test_p_resolution_golden_artin(y83):
    fan = p_resolution_fan(y83, k_of(y83, (1, 2, 1)))
    assert [v.as_int_pair() for v in fan.rays] == [(1, 0), (0, 1), (-1, 3), (-3, 8)]
    # displayed rays match (1,0), (1/8)(3,1), (1/8)(1,3), (0,1)
    disp = fan.to_json()["rays_display"]
    assert disp == [["1", "0"], ["3/8", "1/8"], ["1/8", "3/8"], ["0", "1"]]
    assert all(not t.degenerate for t in fan.cones)
    assert all(t.at_most_rdp() for t in fan.cones)


def test_p_resolution_golden_trivial(y83):
    fan = p_resolution_fan(y83, k_of(y83, (2, 1, 2)))
    assert [v.as_int_pair() for v in fan.rays] == [(1, 0), (-3, 8)]
    assert fan.cone_at(2).degenerate and fan.cone_at(4).degenerate
    tau3 = fan.cone_at(3)
    assert tau3.alpha == 2 and tau3.roof_len == 4


def test_roof_lengths():
    for m in iter_models(25):
        for zc in enumerate_K(m):
            fan = p_resolution_fan(m, zc)
            for tau in fan.cones:
                assert tau.roof_len == (m.a(tau.i) - zc.k_at(tau.i)) * tau.alpha


def test_p_resolution_cones_are_t_or_smooth():
    """Every non-degenerate fan cone is smooth or admits the one-slot
    zero-chain pattern."""
    from cqsdef.lattice import cone_normal_form
    from cqsdef.lattice import cf_expand
    from cqsdef.chains import zero_chains_bounded

    for m in iter_models(20):
        for zc in enumerate_K(m):
            for tau in p_resolution_fan(m, zc).cones:
                if tau.degenerate:
                    continue
                n, q = cone_normal_form(tau.cone2())
                if n == 1:
                    continue
                chain = tuple(cf_expand(n, n - q)) if q != n - 1 else (n,)
                if q == n - 1:
                    # chain (n): the A-series cone, always fine
                    continue
                found = any(
                    sum(1 for i, c in enumerate(chain) if zc2.k[i] != c) <= 1
                    for zc2 in zero_chains_bounded(chain)
                )
                assert found, (m.n, m.q, zc.k, tau.i, chain)


def test_fan_decomposition_golden_sbar(y83):
    k = k_of(y83, (1, 2, 1))
    fd = fan_decomposition(y83, k, "Sbar", 3, 1, 1)
    by_i = {pc.i: pc for pc in fd.pieces}
    assert by_i[4].s0 == (Fraction(-1, 2), Fraction(0)) and by_i[4].s1 == (0, 0)
    assert by_i[3].s0 == (Fraction(0), Fraction(1)) and by_i[3].s1 == (0, 0)
    assert by_i[2].s0 == (Fraction(1), Fraction(1)) and by_i[2].s1 == (
        Fraction(0),
        Fraction(1, 2),
    )
    assert fd.induced.kind == "Dbar" and fd.induced.d == 1


def test_fan_decomposition_golden_sbar2(y83):
    """The barred depth-2 panel: one top interval and two bottom intervals,
    three full-dimensional cones in all."""
    k = k_of(y83, (1, 2, 1))
    fan3 = assemble_fan3(fan_decomposition(y83, k, "Sbar", 3, 1, 2))
    assert len(fan3.cones) == 3
    rays = {c.tau_index: set(c.cone.generators) for c in fan3.cones}
    assert rays[4] == {(1, 2, 0), (1, 1, 0), (0, 0, 1)}
    assert rays[3] == {(1, 1, 0), (0, 0, 1), (1, 0, 1)}
    assert rays[2] == {(1, 1, 0), (1, 0, 1), (3, 0, 2)}
    assert fan3.all_canonical


def test_fan_decomposition_golden_s_triangle(y83):
    k = k_of(y83, (2, 1, 2))
    fd = fan_decomposition(y83, k, "S", 3, 2, 1)
    fan3 = assemble_fan3(fd)
    assert len(fan3.cones) == 1
    # scaled slice: one top vertex, bottom edge of lattice length one
    assert len(fan3.cones[0].cone.generators) == 3
    assert fan3.support.generators == fan3.cones[0].cone.generators


def test_fan_decomposition_preconditions(y83):
    k1 = k_of(y83, (1, 2, 1))
    k2 = k_of(y83, (2, 1, 2))
    with pytest.raises(ValueError, match="exceeds"):
        fan_decomposition(y83, k1, "S", 3, 1, 2)
    with pytest.raises(ValueError, match="alpha"):
        fan_decomposition(y83, k2, "Sbar", 3, 1, 1)
    with pytest.raises(ValueError, match="outside"):
        fan_decomposition(y83, k1, "Sbar", 3, 1, 3)
    with pytest.raises(ValueError, match="interior"):
        fan_decomposition(y83, k1, "Sbar", 2, 1, 1)


def test_assemble_support_equals_sigma_prime(y83):
    for df in all_deformations(y83):
        for k in components_of(df):
            fan3 = assemble_fan3(fan_decomposition_for(df, k))
            assert set(fan3.support.generators) == set(df.sigma_prime.generators)
            assert fan3.all_qgorenstein


def test_golden_panel_canonicity(y83):
    flags = {}
    for df in all_deformations(y83):
        for k in components_of(df):
            fd = fan_decomposition_for(df, k)
            flags[fd.label] = assemble_fan3(fd).all_canonical
    assert len(flags) == 8
    assert flags == {
        "S_{2,1}^1[1,2,1]": True,
        "S_{4,1}^1[1,2,1]": True,
        "Sbar_{3}^1[1,2,1]": True,
        "Sbar_{3}^2[1,2,1]": True,
        "S_{3,1}^1[1,2,1]": True,
        "S_{3,1}^1[2,1,2]": False,
        "S_{3,2}^1[2,1,2]": True,
        "S_{3,1}^2[2,1,2]": True,
    }


def test_is_canonical_examples(y83):
    smooth = Cone3.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert is_canonical_cone3(smooth)
    a1 = Cone3.from_rays([(0, 1, 0), (0, 0, 1), (2, 1, 0), (2, 0, 1)])
    assert is_canonical_cone3(a1)
    # the single cone of the rejected panel is itself non-canonical
    fd = fan_decomposition_for(defo_by_label(y83, "pi_{3,1}^1"), k_of(y83, (2, 1, 2)))
    fan3 = assemble_fan3(fd)
    assert len(fan3.cones) == 1
    assert not is_canonical_cone3(fan3.cones[0].cone)


def test_canonical_model_golden(y83):
    expected = {
        "pi_{2,1}^1": (1, 2, 1),
        "pi_{3,1}^1": (1, 2, 1),
        "pi_{3,1}^2": (2, 1, 2),
        "pi_{3,2}^1": (2, 1, 2),
        "pibar_{3}^1": (1, 2, 1),
        "pibar_{3}^2": (1, 2, 1),
        "pi_{4,1}^1": (1, 2, 1),
    }
    for df in all_deformations(y83):
        k, fan = canonical_model(df)
        assert k.k == expected[df.label]
        assert fan.all_canonical


def test_artin_mapping_deformations_identify_artin():
    """Below the RDP depth bound the canonical model sits over the RDP
    chain."""
    from cqsdef.chains import rdp_chain

    for m in iter_models(16):
        for df in all_deformations(m):
            bound = m.a(df.h) - (2 if 3 <= df.h <= m.e - 2 else 1)
            if df.kind == "D" and df.p * df.d < bound or df.kind == "Dbar":
                k, _ = canonical_model(df)
                assert k.k == rdp_chain(m.e)


def test_hull_route_smooth_and_golden(y83):
    smooth = Cone3.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    fan = canonical_model_via_hull(smooth)
    assert len(fan.cones) == 1 and fan.cones[0].canonical

    df = defo_by_label(y83, "pi_{3,2}^1")
    hull = hull_cone_ray_sets(df.sigma_prime)
    fd = fan_decomposition_for(df, k_of(y83, (2, 1, 2)))
    assert assemble_fan3(fd).cone_ray_sets() == hull

    df = defo_by_label(y83, "pi_{3,1}^2")
    hull = hull_cone_ray_sets(df.sigma_prime)
    fd = fan_decomposition_for(df, k_of(y83, (2, 1, 2)))
    assert assemble_fan3(fd).cone_ray_sets() == hull


def test_lattice_points_right_golden(y83):
    assert lattice_points_right(y83, k_of(y83, (1, 2, 1)), 3) == 0


def test_lattice_points_right_synthetic():
    # Y_(11,3) has chain (2,2,3,2) and the zero chain (2,1,3,1) with
    # alpha = (0,1,2,1,1,0): alpha_4 = 1, alpha_3 = 2.
    m = cqs_new(11, 3)
    assert m.a_chain == (2, 2, 3, 2)
    zc = k_of(m, (2, 1, 3, 1))
    assert zc.alpha == (0, 1, 2, 1, 1, 0)
    assert lattice_points_right(m, zc, 4) == 1 == zc.alpha_at(3) - 1


def test_lattice_points_right_matches_alpha():
    for m in iter_models(25):
        for zc in enumerate_K(m):
            for h in range(3, m.e - 1):
                if zc.alpha_at(h) == 1:
                    assert lattice_points_right(m, zc, h) == zc.alpha_at(h - 1) - 1


def test_lattice_points_right_preconditions(y83):
    with pytest.raises(ValueError):
        lattice_points_right(y83, k_of(y83, (1, 2, 1)), 2)
    with pytest.raises(ValueError):
        lattice_points_right(y83, k_of(y83, (2, 1, 2)), 3)
