from math import gcd

import pytest

from veech.catalog import hex_torus, l_surface, mcmullen_genus2, rectangle_torus, square_torus
from veech.exactnum import QQ
from veech.flat import (
    InsufficientRadius, convex_body, delaunay, enumerate_segments, max_length2, quadrant, trace,
    voronoi_staples,
)
from veech.mat2 import dot, norm2


def ints(v):
    return (int(v[0].coeffs[0]), int(v[1].coeffs[0]))

CATALOG = [square_torus, hex_torus, l_surface, mcmullen_genus2, lambda: l_surface(3, 2),
           lambda: rectangle_torus(1, 7)]


def primitive_vectors(r2):
    """Oracle: primitive integer vectors of squared length <= r2."""
    r = int(r2 ** 0.5) + 1
    return {(x, y) for x in range(-r, r + 1) for y in range(-r, r + 1)
            if (x, y) != (0, 0) and x * x + y * y <= r2 and gcd(x, y) == 1}


@pytest.mark.parametrize("make, edges, triangles", [(l_surface, 9, 6), (square_torus, 3, 2)])
def test_euler_counts(make, edges, triangles):
    t = delaunay(make())
    assert len(t.edges()) == edges
    assert len(t.triangles()) == triangles


@pytest.mark.parametrize("make", CATALOG)
def test_delaunay_and_area(make):
    s = make()
    t = delaunay(s)
    assert t.is_delaunay()
    assert all(t.incircle(h) <= 0 for h in t.edges())
    assert t.area() == s.total_area()


def test_long_rectangle_torus():
    N = 9
    t = delaunay(rectangle_torus(1, N))
    assert t.is_delaunay()
    # every triangulation of this torus needs an edge climbing the full height N;
    # the Delaunay ones use a diagonal of the fundamental rectangle
    assert max(norm2(t.vec[h]) for h in t.edges()) == 1 + N * N


def test_hex_staples():
    st, _ = voronoi_staples(delaunay(hex_torus()))
    assert len(st) == 3
    for x in st:
        assert x.s.source != x.s.target


def test_l_staples():
    st, deg = voronoi_staples(delaunay(l_surface()))
    assert len(st) == 6
    assert max_length2(st) == 1
    assert all(x.length2 == 1 for x in st)
    assert len(deg) == 3


def test_square_torus_staples():
    st, _ = voronoi_staples(delaunay(square_torus()))
    hol = {ints(v) for x in st for v in (x.s.holonomy, x.s_rev.holonomy)}
    assert hol == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert max_length2(st) == 1


@pytest.mark.parametrize("r2, count", [(1, 4), (2, 8), (5, 16), (25, 0)])
def test_square_torus_segments_match_oracle(r2, count):
    segs = enumerate_segments(delaunay(square_torus()), QQ(r2))
    hol = [ints(s.holonomy) for s in segs]
    assert len(hol) == len(set(hol))
    assert set(hol) == primitive_vectors(r2)
    if count:
        assert len(hol) == count


def test_enumeration_monotone_and_closed():
    t = delaunay(l_surface())
    small = {s.key for s in enumerate_segments(t, QQ(4))}
    big = enumerate_segments(t, QQ(9))
    keys = {s.key for s in big}
    assert small <= keys
    for s in big:
        assert s.reverse().key in keys
        assert s.reverse().reverse() == s


@pytest.mark.parametrize("make", CATALOG)
def test_trace_agrees_with_enumeration(make):
    t = delaunay(make())
    r2 = 4 * max_length2(voronoi_staples(t)[0])
    for s in enumerate_segments(t, r2):
        assert trace(t, s.source, s.source_sector, s.holonomy) == s


def test_trace_rejects_non_segments():
    t = delaunay(square_torus())
    assert trace(t, 0, 0, (QQ(2), QQ(2))) is None
    assert trace(t, 0, 0, (QQ(1), QQ("1/2"))) is None


def _bodies(s):
    t = delaunay(s)
    st, _ = voronoi_staples(t)
    segs = enumerate_segments(t, 4 * max_length2(st))
    return t, st, segs, [convex_body(t, c.id, segs) for c in s.cones]


def test_square_torus_convex_body():
    _, _, _, (body,) = _bodies(square_torus())
    assert body.area == 1
    xs = [p for _, _, poly in body.chunks for p in poly]
    assert max(p[0] for p in xs) == QQ("1/2") and min(p[0] for p in xs) == QQ("-1/2")
    assert max(p[1] for p in xs) == QQ("1/2") and min(p[1] for p in xs) == QQ("-1/2")


@pytest.mark.parametrize("make", CATALOG)
def test_reconstruction(make):
    s = make()
    _, _, _, bodies = _bodies(s)
    assert sum((b.area for b in bodies), s.field.zero) == s.total_area()


def test_hex_bodies_split_evenly():
    s = hex_torus()
    _, _, _, bodies = _bodies(s)
    assert bodies[0].area == bodies[1].area == s.total_area() / 2


def test_staple_midpoints_on_cell_boundary():
    t, st, segs, _ = _bodies(l_surface())
    for x in st:
        for s in (x.s, x.s_rev):
            v = s.holonomy
            mid = (v[0] / 2, v[1] / 2)
            g = 4 * s.source_sector + quadrant(v)
            n = 4 * (t.orders[s.source] + 1)
            for u in segs:
                if u.source != s.source:
                    continue
                gu = 4 * u.source_sector + quadrant(u.holonomy)
                if (gu - g) % n in (0, 1, 2, n - 1, n - 2):
                    assert dot(u.holonomy, mid) <= norm2(u.holonomy) / 2
            assert dot(v, mid) == norm2(v) / 2


def test_convex_body_needs_radius():
    t = delaunay(l_surface())
    segs = [s for s in enumerate_segments(t, QQ(4)) if s.holonomy[1] == 0]
    with pytest.raises(InsufficientRadius):
        convex_body(t, 0, segs)
