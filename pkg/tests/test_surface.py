import pytest

from hurwitz_dissect.perms import HurwitzSystem, all_hurwitz_systems
from hurwitz_dissect.surface import (
    DissectionSkeleton,
    MarkedSurface,
    SkeletonError,
    boundary_edge_count,
    euler_characteristic,
    face_traversal,
    hurwitz_of,
    is_valid,
    roundtrip_check,
    skeleton_from_hurwitz,
    surface_from_hurwitz,
    validate_by_enclosure,
    validate_dissection,
)


def fig2():
    return skeleton_from_hurwitz(HurwitzSystem.of(2, [(1, 2)] * 4))


def test_marked_surface_arc_count():
    assert MarkedSurface(0, (3,)).n_arcs == 2
    assert MarkedSurface(1, (1, 1)).n_arcs == 4
    assert MarkedSurface(0, (1, 1)).n_arcs == 2
    with pytest.raises(ValueError):
        MarkedSurface(0, (0,))
    with pytest.raises(ValueError):
        MarkedSurface(-1, (1,))


def test_figure2_faces_are_two_pentagons():
    faces = face_traversal(fig2())
    assert len(faces) == 2
    assert sorted(len(f) for f in faces) == [5, 5]
    assert all(boundary_edge_count(f) == 1 for f in faces)
    assert euler_characteristic(fig2()) == -2
    assert validate_dissection(fig2()) == []


def test_three_marked_disk_faces():
    # at 1 the counterclockwise turn from the incoming segment (from 3) meets the arc to 3 first
    sk = DissectionSkeleton(0, ((1, 2, 3),), {1: (1, 2), 2: (2,), 3: (1,)}, ((1, 3), (1, 2)))
    faces = face_traversal(sk)
    assert sorted(len(f) for f in faces) == [2, 2, 3]
    assert is_valid(sk)


def test_order_violation_reported():
    # same arcs as the valid disk, indices swapped against the fan
    sk = DissectionSkeleton(0, ((1, 2, 3),), {1: (2, 1), 2: (1,), 3: (2,)}, ((1, 2), (1, 3)))
    problems = validate_dissection(sk)
    assert problems and all(p.startswith("order") for p in problems)


def test_too_few_arcs():
    sk = DissectionSkeleton(0, ((1, 2, 3),), {1: (1,), 2: (1,)}, ((1, 2),))
    problems = validate_dissection(sk)
    assert any(p.startswith("arc count") for p in problems)
    assert any(p.startswith("face") for p in problems)


def test_enclosed_region_detected():
    # the annulus cut by one arc only, plus a doubled arc closing a boundary-free bigon
    sk = DissectionSkeleton(0, ((1,), (2,)), {1: (1, 2, 3), 2: (3, 2, 1)}, ((1, 2), (1, 2), (1, 2)))
    assert validate_dissection(sk)
    assert validate_by_enclosure(sk)


def test_structural_errors():
    with pytest.raises(SkeletonError):
        DissectionSkeleton(0, ((1, 2),), {1: (1,), 2: (1,)}, ((1, 1),))
    with pytest.raises(SkeletonError):
        DissectionSkeleton(0, ((1, 3),), {1: (1,), 3: (1,)}, ((1, 3),))
    with pytest.raises(SkeletonError):
        DissectionSkeleton(0, ((1, 2),), {1: (1,), 2: ()}, ((1, 2),))


def test_every_small_hurwitz_system_gives_a_valid_skeleton():
    for m in range(2, 5):
        for n in range(m - 1, 6 if m < 4 else 5):
            for h in all_hurwitz_systems(m, n):
                sk = skeleton_from_hurwitz(h)
                assert validate_dissection(sk) == [], (h, validate_dissection(sk))
                assert hurwitz_of(sk) == h
                assert roundtrip_check(sk)


def test_second_validity_route_agrees_on_fan_permutations():
    import itertools

    sk = skeleton_from_hurwitz(HurwitzSystem.of(3, [(1, 2), (2, 3), (1, 2), (2, 3)]))
    fans = sk.fans
    agree = 0
    for perm in itertools.permutations(fans[2]):
        alt = DissectionSkeleton(sk.g, sk.boundary, {**fans, 2: perm}, sk.arcs)
        assert (validate_dissection(alt) == []) == (validate_by_enclosure(alt) == [])
        agree += 1
    assert agree == 24


def test_roundtrip_needs_valid_input():
    sk = DissectionSkeleton(0, ((1, 2, 3),), {1: (1,), 2: (1,)}, ((1, 2),))
    with pytest.raises(ValueError):
        roundtrip_check(sk)


def test_surface_from_hurwitz():
    assert surface_from_hurwitz(HurwitzSystem.of(2, [(1, 2)] * 4)) == MarkedSurface(1, (1, 1))
    assert surface_from_hurwitz(HurwitzSystem.of(3, [(1, 2), (2, 3), (1, 2)])) == MarkedSurface(0, (2, 1))
