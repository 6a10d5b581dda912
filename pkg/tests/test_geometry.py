import random
from fractions import Fraction

import pytest

from gonsat import geometry as ge
from gonsat.errors import CollinearInput, PreconditionViolated

SQUARE = [(0, 0), (4, 0), (4, 4), (0, 4)]


def test_orient3_signs():
    assert ge.orient3((0, 0), (1, 0), (0, 1)) == 1
    assert ge.orient3((0, 0), (0, 1), (1, 0)) == -1
    with pytest.raises(CollinearInput):
        ge.orient3((0, 0), (1, 1), (2, 2))


def test_orient3_exact_on_huge_coordinates():
    # a float determinant would round these cross terms away
    big = 10**40
    a = (big, big + 1)
    b = (big + 3, big + 4)
    c = (big + 7, big + 9)
    # (b-a) x (c-a) = 3*8 - 3*7 = +1 turn
    assert ge.orient3(a, b, c) == 1
    assert ge.orient3(a, c, b) == -1


def test_orient3_fractions():
    a = (Fraction(1, 3), Fraction(1, 7))
    b = (Fraction(2, 3), Fraction(1, 7))
    c = (Fraction(1, 2), Fraction(5, 7))
    assert ge.orient3(a, b, c) > 0


def test_point_in_triangle():
    t = [(0, 0), (10, 0), (5, 10)]
    assert ge.point_in_triangle((5, 3), *t)
    assert not ge.point_in_triangle((0, 10), *t)
    assert not ge.point_in_triangle((9, 6), *t)


def test_classify_subset_square_with_inner_point():
    pts = SQUARE + [(2, 1)]
    assert ge.classify_subset(pts, (0, 1, 2, 3)) == {
        "is_gon": True, "is_hole": False}
    assert ge.classify_subset(pts, (0, 1, 2)) == {
        "is_gon": True, "is_hole": False}
    assert ge.classify_subset(pts, (0, 1, 4)) == {
        "is_gon": True, "is_hole": True}


def test_enumerate_counts_square():
    pts = SQUARE
    assert ge.enumerate_holes(pts, 4) == 1
    assert ge.enumerate_holes(pts, 3) == 4
    assert ge.enumerate_gons(pts, 4) == 1


def test_enumerate_with_interior_point():
    pts = SQUARE + [(2, 1)]
    # the square stays a 4-gon but is no longer empty
    assert ge.enumerate_gons(pts, 4) == 3
    assert ge.enumerate_holes(pts, 4) == 2
    count, holes = ge.enumerate_holes(pts, 4, listing=True)
    assert count == 2
    assert all(4 in idx for idx in holes)


def test_enumerate_listing_flag():
    assert ge.enumerate_gons(SQUARE, 4, listing=True) == (1, [(0, 1, 2, 3)])


def test_convex_hull_and_layers():
    pts = SQUARE + [(2, 2)]
    hull = ge.convex_hull(pts)
    assert sorted(hull) == [0, 1, 2, 3]
    assert ge.hull_layers(pts) == [4, 1]


def test_hull_layers_nested_triangles():
    pts = [(0, 0), (12, 0), (6, 12), (5, 3), (7, 3), (6, 5)]
    assert ge.hull_layers(pts) == [3, 3]


def test_check_general_position():
    ge.check_general_position(SQUARE)
    with pytest.raises(CollinearInput):
        ge.check_general_position([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(CollinearInput):
        ge.check_general_position([(0, 0), (1, 0), (0, 1), (0, 0)])


def radial_set(rng, n):
    """Random general-position set, bottom-most point first, the rest
    sorted by angle around it."""
    import functools
    pts = []
    while len(pts) < n:
        cand = (rng.randrange(-50, 50), rng.randrange(-50, 50))
        try:
            ge.check_general_position(pts + [cand])
        except CollinearInput:
            continue
        pts.append(cand)
    p1 = min(pts, key=lambda p: (p[1], p[0]))
    rest = [p for p in pts if p != p1]

    def by_angle(u, v):
        cr = ((u[0] - p1[0]) * (v[1] - p1[1])
              - (u[1] - p1[1]) * (v[0] - p1[0]))
        return -1 if cr > 0 else 1

    rest.sort(key=functools.cmp_to_key(by_angle))
    return [p1] + rest


def test_normalize_preserves_orientations():
    rng = random.Random(5)
    for _ in range(20):
        pts = radial_set(rng, 7)
        out = ge.normalize(pts)
        xs = [p[0] for p in out]
        assert all(x1 < x2 for x1, x2 in zip(xs, xs[1:]))
        for i in range(7):
            for j in range(i + 1, 7):
                for k in range(j + 1, 7):
                    assert ge.orient3(pts[i], pts[j], pts[k]) \
                        == ge.orient3(out[i], out[j], out[k])


def test_normalize_rejects_unsorted():
    with pytest.raises(PreconditionViolated):
        ge.normalize([(0, 0), (10, 1), (-10, 1), (0, 5)])


def test_normalize_rejects_collinear():
    with pytest.raises(CollinearInput):
        ge.normalize([(0, 0), (2, 2), (4, 4)])


def test_load_point_set(tmp_path):
    p = tmp_path / "pts.txt"
    p.write_text("# three points\n0 0\n5 1\n2 9\n")
    assert ge.load_point_set(p) == [(0, 0), (5, 1), (2, 9)]


def test_overmars_points_shape():
    pts = ge.overmars_points()
    assert len(pts) == 29
    ge.check_general_position(pts)
