"""Triangulated polygons, shear coordinates, cutting, and isomorphism."""

import pytest

from clusterseeds import (
    SeedError,
    SubSeedSpec,
    SurfaceData,
    b_matrix_from_triangulation,
    check_theorem_sur,
    curve_crosses,
    cut_along,
    diagonals_cross,
    enumerate_triangulations,
    find_seed_iso,
    make_surface,
    mixing_subseed,
    paunched_surface,
    seed_from_surface,
    shear_contribution,
    shear_coordinates,
    surface_iso,
    triangles_of,
    validate_surface,
)


def fan(N):
    """The fan triangulation of an N-gon from vertex 0."""
    return [(0, k) for k in range(2, N - 1)]


# --------------------------------------------------------------- validation


def test_validation_rejects_bad_surfaces():
    with pytest.raises(SeedError):
        make_surface(2, [])
    with pytest.raises(SeedError):
        make_surface(4, [(0, 1)])  # adjacent vertices
    with pytest.raises(SeedError):
        make_surface(5, [(0, 2)])  # not maximal
    with pytest.raises(SeedError):
        make_surface(5, [(0, 2), (1, 3)])  # crossing
    with pytest.raises(SeedError):
        make_surface(4, [(0, 2)], laminations=[[(1, 1)]])  # boundary-parallel


def test_triangle_faces():
    assert triangles_of(3, []) == [(0, 1, 2)]
    assert triangles_of(4, [(0, 2)]) == [(0, 1, 2), (0, 2, 3)]
    assert len(triangles_of(6, fan(6))) == 4


def test_diagonal_crossing_predicate():
    assert diagonals_cross((0, 2), (1, 3), 4)
    assert not diagonals_cross((0, 2), (0, 3), 5)
    assert not diagonals_cross((0, 2), (2, 4), 5)


def test_curve_crossing_predicate():
    assert curve_crosses((0, (1, 3)), 0, (0, 2))
    assert not curve_crosses((0, (2, 3)), 0, (0, 2))
    assert not curve_crosses((1, (1, 3)), 0, (0, 2))  # different component


# ------------------------------------------------------------ triangulation


def test_triangulation_counts_are_catalan():
    catalan = {3: 1, 4: 2, 5: 5, 6: 14, 7: 42, 8: 132}
    for N, expected in catalan.items():
        tris = enumerate_triangulations(N)
        assert len(tris) == expected
        for t in tris:
            make_surface(N, t)  # each one validates


def test_pentagon_fan_b_matrix():
    labels, B = b_matrix_from_triangulation(make_surface(5, fan(5)))
    assert labels == ("d0_2", "d0_3")
    assert B == [[0, -1], [1, 0]]


def test_hexagon_zigzag_b_matrix():
    labels, B = b_matrix_from_triangulation(
        make_surface(6, [(0, 2), (2, 4), (0, 4)])
    )
    assert labels == ("d0_2", "d0_4", "d2_4")
    # the central triangle (0,2,4) makes a 3-cycle of diagonals
    assert all(B[i][j] == -B[j][i] for i in range(3) for j in range(3))
    assert sorted(abs(B[i][j]) for i in range(3) for j in range(i + 1, 3)) == [1, 1, 1]


# ------------------------------------------------------------------- shear


def test_square_one_crossing_curve():
    surf = make_surface(4, [(0, 2)], laminations=[[(1, 3)]])
    seed = seed_from_surface(surf)
    assert seed.exchangeable_labels == ("d0_2",)
    assert seed.frozen_labels == ("L0",)
    assert abs(seed.b("d0_2", "L0")) == 1


def test_shear_sign_convention_on_the_square():
    # quadrilateral 0,1,2,3 around the diagonal (0,2): the two crossing
    # corner-to-corner passages have opposite signs
    diags = [(0, 2)]
    s = shear_contribution(4, diags, (0, 2), (0, (1, 3)))
    t = shear_contribution(4, diags, (0, 2), (0, (0, 2)))
    assert {s, t} == {1, -1}
    # a curve entering and leaving through adjacent sides contributes 0
    assert shear_contribution(4, diags, (0, 2), (0, (1, 2))) == 0
    assert shear_contribution(4, diags, (0, 2), (0, (0, 3))) == 0


def test_shear_row_sums_parallel_curves():
    surf = make_surface(4, [(0, 2)], laminations=[[(1, 3), (1, 3)]])
    row = shear_coordinates(surf, surf.lamination_map()["L0"])
    assert abs(row["d0_2"]) == 2


def test_noncrossing_curve_contributes_zero():
    surf = make_surface(5, fan(5), laminations=[[(3, 4)]])
    row = shear_coordinates(surf, surf.lamination_map()["L0"])
    assert row == {"d0_2": 0, "d0_3": 0}


# ------------------------------------------------------------------ cutting


def test_cut_vertex_counts():
    surf = make_surface(6, fan(6))
    out = cut_along(surf, "d0_3")
    assert sorted(out.components) == [4, 4]
    out2 = cut_along(surf, "d0_2")
    assert sorted(out2.components) == [3, 5]


def test_cut_requires_a_diagonal():
    surf = make_surface(4, [(0, 2)])
    with pytest.raises(SeedError):
        cut_along(surf, "nope")
    with pytest.raises(SeedError):
        cut_along(surf, "d0_2", mode="fold")


def test_cut_clips_crossing_curves():
    surf = make_surface(4, [(0, 2)], laminations=[[(1, 3)]])
    out = cut_along(surf, "d0_2", mode="delete")
    lam = out.lamination_map()["L0"]
    assert len(lam) == 2  # one fragment per side
    # each fragment ends on the freshly cut boundary segment
    for c, (s, t) in lam:
        assert out.components[c] - 2 in (s, t)


def test_freeze_cut_adds_companion_curves():
    surf = make_surface(5, fan(5))
    out = cut_along(surf, "d0_2", mode="freeze")
    lam = out.lamination_map()
    assert "d0_2" in lam
    assert len(lam["d0_2"]) == 2  # one hugging curve per side


def test_freeze_cut_row_identity():
    # after freezing a diagonal, its companion-curve column reproduces
    # the original matrix column of that diagonal
    surf = make_surface(5, fan(5))
    base = seed_from_surface(surf)
    for x in base.exchangeable_labels:
        cut = seed_from_surface(cut_along(surf, x, mode="freeze"))
        for y in base.exchangeable_labels:
            if y == x:
                continue
            assert cut.b(y, x) == base.b(y, x)


# ----------------------------------------------------------- paunching


def test_paunch_matches_subseed():
    surf = make_surface(6, fan(6), laminations=[[(1, 4)]])
    base = seed_from_surface(surf)
    for I0, I1 in (
        ((), ()),
        (("d0_3",), ()),
        ((), ("d0_2",)),
        (("d0_2",), ("d0_4", "L0")),
    ):
        assert check_theorem_sur(surf, I0, I1)


def test_paunch_square_with_curve():
    surf = make_surface(4, [(0, 2)], laminations=[[(1, 3)]])
    assert check_theorem_sur(surf, ("d0_2",), ())
    assert check_theorem_sur(surf, (), ("d0_2",))
    assert check_theorem_sur(surf, (), ("L0",))


def test_paunch_validates_labels():
    surf = make_surface(4, [(0, 2)])
    with pytest.raises(SeedError):
        paunched_surface(surf, ("nope",), ())
    with pytest.raises(SeedError):
        paunched_surface(surf, ("d0_2",), ("d0_2",))


# ---------------------------------------------------------- isomorphism


def test_surface_iso_under_rotation_and_reflection():
    a = make_surface(5, [(0, 2), (0, 3)])
    b = make_surface(5, [(1, 3), (1, 4)])  # rotated copy
    assert surface_iso(a, b)
    c = make_surface(5, [(0, 2), (2, 4)])
    assert surface_iso(a, c)  # reflected fan
    assert surface_iso(a, a)


def test_surface_iso_respects_laminations():
    a = make_surface(4, [(0, 2)], laminations=[[(1, 3)]])
    b = make_surface(4, [(1, 3)], laminations=[[(0, 2)]])
    assert surface_iso(a, b)
    c = make_surface(4, [(0, 2)], laminations=[[(2, 3)]])
    assert not surface_iso(a, c)
    d = make_surface(4, [(0, 2)])
    assert not surface_iso(a, d)


def test_surface_iso_distinguishes_shapes():
    a = make_surface(6, fan(6))
    b = make_surface(6, [(0, 2), (2, 4), (0, 4)])
    assert not surface_iso(a, b)
    assert not surface_iso(make_surface(4, [(0, 2)]), make_surface(5, fan(5)))


def test_surface_iso_on_multiple_components():
    a = validate_surface(
        SurfaceData((3, 4), (("d", (1, (0, 2))),), ())
    )
    b = validate_surface(
        SurfaceData((4, 3), (("e", (0, (1, 3))),), ())
    )
    assert surface_iso(a, b)
