"""Flat geometry of a translation surface.

Triangulations are stored as half-edge arrays.  Every half-edge ``h`` has a
holonomy ``vec[h]``, the next half-edge ``nxt[h]`` of its triangle, its glued
partner ``twin[h]`` and the cone point ``origin[h]`` it leaves from.  The
corner of a triangle at the start of ``h`` spans the directions from
``vec[h]`` counterclockwise to ``-vec[prev(h)]``.

Directions at a cone point of order d live on a circle of length 2 pi (d + 1).
We cut it into d + 1 sectors along the horizontal ray; a direction is then
recorded by its planar vector plus a sector index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mat2 import cross, dot, norm2, vsub, vadd, vneg
from .surface import wraps, TranslationSurface


class InsufficientRadius(RuntimeError):
    """A convex body reached the bounding box; more segments are needed."""


@dataclass(frozen=True)
class SaddleConnection:
    source: int
    source_sector: int
    holonomy: tuple
    target: int
    target_sector: int

    @property
    def length2(self):
        return norm2(self.holonomy)

    def reverse(self):
        return SaddleConnection(self.target, self.target_sector, vneg(self.holonomy),
                                self.source, self.source_sector)

    @property
    def key(self):
        return (self.source, self.source_sector, self.holonomy)

    def to_json(self):
        return {
            "source": self.source,
            "sector": self.source_sector,
            "target": self.target,
            "target_sector": self.target_sector,
            "holonomy": [self.holonomy[0].to_json(), self.holonomy[1].to_json()],
        }


@dataclass(frozen=True)
class Staple:
    s: SaddleConnection
    s_rev: SaddleConnection
    edge: int

    @property
    def length2(self):
        return self.s.length2


class Triangulation:
    """Half-edge triangulation with vertices at the cone points."""

    def __init__(self, surface: TranslationSurface):
        self.surface = surface
        self.field = surface.field
        self.orders = [c.order for c in surface.cones]
        self.vec = []
        self.nxt = []
        self.twin = []
        self.origin = []
        self.flips = 0
        edge_he = {}
        for p, poly in enumerate(surface.polygons):
            for k in range(len(poly)):
                edge_he[(p, k)] = self._new(surface.edge_vector(p, k), surface.vertex_class[(p, k)])
        for e, h in edge_he.items():
            self.twin[h] = edge_he[surface.partner[e]]
        for p, poly in enumerate(surface.polygons):
            self._ear_clip(p, poly, edge_he)
        self._sectors = None

    def _new(self, vec, origin):
        self.vec.append(vec)
        self.nxt.append(-1)
        self.twin.append(-1)
        self.origin.append(origin)
        return len(self.vec) - 1

    def _ear_clip(self, p, poly, edge_he):
        cls = self.surface.vertex_class
        idx = list(range(len(poly)))
        out = [edge_he[(p, k)] for k in idx]
        while len(idx) > 3:
            n = len(idx)
            for i in range(n):
                a, b, c = poly[idx[i - 1]], poly[idx[i]], poly[idx[(i + 1) % n]]
                if cross(vsub(b, a), vsub(c, b)).sign() <= 0:
                    continue
                if any(_in_closed_triangle(poly[j], a, b, c) for j in idx
                       if j not in (idx[i - 1], idx[i], idx[(i + 1) % n])):
                    continue
                break
            else:
                raise RuntimeError("no ear found in polygon %d" % p)
            d1 = self._new(vsub(a, c), cls[(p, idx[(i + 1) % n])])
            d2 = self._new(vsub(c, a), cls[(p, idx[i - 1])])
            self.twin[d1], self.twin[d2] = d2, d1
            h_in, h_out = out[i - 1], out[i]
            self.nxt[h_in], self.nxt[h_out], self.nxt[d1] = h_out, d1, h_in
            out[i - 1] = d2
            del idx[i]
            del out[i]
        self.nxt[out[0]], self.nxt[out[1]], self.nxt[out[2]] = out[1], out[2], out[0]

    # -- navigation -------------------------------------------------------

    def prev(self, h):
        return self.nxt[self.nxt[h]]

    def corner(self, h):
        """(u1, u2): the directions bounding the corner at the start of h."""
        return self.vec[h], vneg(self.vec[self.prev(h)])

    def next_corner(self, h):
        return self.twin[self.prev(h)]

    def edges(self):
        """One half-edge per edge, the smaller id."""
        return [h for h in range(len(self.vec)) if h < self.twin[h]]

    def triangles(self):
        seen = set()
        out = []
        for h in range(len(self.vec)):
            if h not in seen:
                t = (h, self.nxt[h], self.nxt[self.nxt[h]])
                seen.update(t)
                out.append(t)
        return out

    def area(self):
        total = self.field.zero
        for h, h1, _ in self.triangles():
            total = total + cross(self.vec[h], self.vec[h1])
        return total / 2

    # -- Delaunay ---------------------------------------------------------

    def incircle(self, h):
        """Positive iff the far vertex across h lies strictly inside the
        circumcircle of h's triangle."""
        b = self.vec[h]
        c = vadd(b, self.vec[self.nxt[h]])
        d = self.vec[self.nxt[self.twin[h]]]
        bb, cc, dd = norm2(b), norm2(c), norm2(d)
        return -(b[0] * (c[1] * dd - cc * d[1]) - b[1] * (c[0] * dd - cc * d[0])
                 + bb * (c[0] * d[1] - c[1] * d[0]))

    def flip(self, h):
        g = self.twin[h]
        h1 = self.nxt[h]
        h2 = self.nxt[h1]
        g1 = self.nxt[g]
        g2 = self.nxt[g1]
        self.vec[h] = vadd(self.vec[g2], self.vec[h1])
        self.vec[g] = vneg(self.vec[h])
        self.origin[h] = self.origin[g2]
        self.origin[g] = self.origin[h2]
        self.nxt[g1], self.nxt[h], self.nxt[h2] = h, h2, g1
        self.nxt[g2], self.nxt[h1], self.nxt[g] = h1, g, g2
        self.flips += 1
        self._sectors = None

    def make_delaunay(self):
        stack = self.edges()
        queued = set(stack)
        while stack:
            h = stack.pop()
            queued.discard(h)
            if self.incircle(h).sign() > 0:
                g = self.twin[h]
                around = (self.nxt[h], self.prev(h), self.nxt[g], self.prev(g))
                self.flip(h)
                for e in around:
                    e = min(e, self.twin[e])
                    if e not in queued:
                        queued.add(e)
                        stack.append(e)
        return self

    def is_delaunay(self):
        return all(self.incircle(h).sign() <= 0 for h in self.edges())

    # -- sectors ----------------------------------------------------------

    def sector_offsets(self):
        """Sector index of the first direction of every corner."""
        if self._sectors is not None:
            return self._sectors
        n = len(self.vec)
        k = [None] * n
        one = self.field.one
        e1 = (one, self.field.zero)
        by_cone = {}
        for h in range(n):
            by_cone.setdefault(self.origin[h], []).append(h)
        for cone, corners in sorted(by_cone.items()):
            base = next(h for h in sorted(corners) if in_convex_wedge(*self.corner(h), e1))
            u1 = self.vec[base]
            raw = 0 if (u1[1].sign() == 0 and u1[0].sign() > 0) else -1
            h = base
            turns = 0
            m = self.orders[cone] + 1
            while True:
                k[h] = (raw + turns) % m
                turns += wraps(*self.corner(h))
                h = self.next_corner(h)
                if h == base:
                    break
            if turns != m:
                raise RuntimeError("cone %d: angle bookkeeping failed" % cone)
        self._sectors = k
        return k

    def direction_sector(self, h, w):
        """Sector of direction w taken inside the corner at the start of h."""
        k = self.sector_offsets()[h]
        return (k + wraps(self.vec[h], w)) % (self.orders[self.origin[h]] + 1)

    def find_corner(self, cone, sector, w):
        """The corner at ``cone`` whose half-open wedge holds w in the given sector."""
        for h in range(len(self.vec)):
            if self.origin[h] == cone and in_convex_wedge(*self.corner(h), w):
                if self.direction_sector(h, w) == sector:
                    return h
        return None

    def edge_connection(self, h):
        t = self.twin[h]
        return SaddleConnection(self.origin[h], self.sector_offsets()[h], self.vec[h],
                                self.origin[t], self.sector_offsets()[t])


def _in_closed_triangle(p, a, b, c):
    return (cross(vsub(b, a), vsub(p, a)).sign() >= 0 and cross(vsub(c, b), vsub(p, b)).sign() >= 0
            and cross(vsub(a, c), vsub(p, c)).sign() >= 0)


def in_convex_wedge(u1, u2, w):
    """w in [u1, u2) for a wedge of angle less than pi."""
    c1 = cross(u1, w).sign()
    if c1 < 0 or cross(w, u2).sign() <= 0:
        return False
    return c1 > 0 or dot(u1, w).sign() > 0


def delaunay(surface):
    return Triangulation(surface).make_delaunay()


def voronoi_staples(tri):
    """Non-degenerate Delaunay edges as staples, plus the co-circular ones.

    Returns ``(staples, degenerate)``.  Co-circular edges bound Voronoi edges of
    length zero and are left out of the staple set; keeping them would also
    be sound for membership testing since the criterion only needs a superset.
    """
    staples, degenerate = [], []
    for h in tri.edges():
        st = Staple(tri.edge_connection(h), tri.edge_connection(tri.twin[h]), h)
        s = tri.incircle(h).sign()
        if s > 0:
            raise ValueError("triangulation is not Delaunay")
        (staples if s < 0 else degenerate).append(st)
    return staples, degenerate


def max_length2(staples):
    return max(st.length2 for st in staples)


def _segment_far(e1, e2, r2):
    """True if the segment [e1, e2] stays strictly outside the disk |z|^2 <= r2."""
    d = vsub(e2, e1)
    t1 = dot(e1, d)
    dd = norm2(d)
    if t1.sign() >= 0:
        return norm2(e1) > r2
    if (t1 + dd).sign() <= 0:
        return norm2(e2) > r2
    c = cross(e1, e2)
    return c * c > r2 * dd


def enumerate_segments(tri, r2, sources=None):
    """All saddle connections of squared length at most r2.

    Straight lines are unfolded triangle by triangle from each corner; a
    vertex is recorded when it is the first thing hit along its direction.
    """
    r2 = tri.field(r2)
    k = tri.sector_offsets()
    vec, nxt, twin, origin = tri.vec, tri.nxt, tri.twin, tri.origin
    out = []
    for h in range(len(vec)):
        cone = origin[h]
        if sources is not None and cone not in sources:
            continue
        u1, u2 = tri.corner(h)
        if norm2(u1) <= r2:
            out.append(tri.edge_connection(h))
        stack = [(nxt[h], u1, u2, u1, u2)]
        while stack:
            e, a, b, lo, hi = stack.pop()
            if _segment_far(a, b, r2):
                continue
            g = twin[e]
            g1 = nxt[g]
            g2 = nxt[g1]
            d = vadd(a, vec[g1])
            in_lo = cross(lo, d).sign() > 0
            in_hi = cross(d, hi).sign() > 0
            if in_lo and in_hi:
                if norm2(d) <= r2:
                    out.append(SaddleConnection(
                        cone, (k[h] + wraps(u1, d)) % (tri.orders[cone] + 1), d,
                        origin[g2], tri.direction_sector(g2, vneg(d))))
                stack.append((g1, a, d, lo, d))
                stack.append((g2, d, b, d, hi))
            elif not in_lo:
                stack.append((g2, d, b, lo, hi))
            else:
                stack.append((g1, a, d, lo, hi))
    return out


def trace(tri, cone, sector, v):
    """The saddle connection leaving ``cone`` in sector ``sector`` with
    holonomy v, or None if the straight segment is not a saddle connection."""
    v = (tri.field(v[0]), tri.field(v[1]))
    h = tri.find_corner(cone, sector, v)
    if h is None:
        return None
    vec, nxt, twin, origin = tri.vec, tri.nxt, tri.twin, tri.origin
    u1 = vec[h]
    if cross(u1, v).sign() == 0:
        if v == u1:
            return tri.edge_connection(h)
        return None
    a, b = u1, vadd(u1, vec[nxt[h]])
    e = nxt[h]
    while True:
        # the target is on the near side of edge a->b: inside the triangle or on the edge
        if cross(vsub(b, a), vsub(v, a)).sign() >= 0:
            return None
        g = twin[e]
        g1 = nxt[g]
        g2 = nxt[g1]
        d = vadd(a, vec[g1])
        s = cross(d, v).sign()
        if s == 0:
            if v == d:
                return SaddleConnection(cone, sector, v, origin[g2], tri.direction_sector(g2, vneg(d)))
            return None
        if s > 0:
            e, a = g2, d
        else:
            e, b = g1, d


# -- convex bodies ------------------------------------------------------------

def quadrant(v):
    """q with arg(v) in [q pi/2, (q + 1) pi/2)."""
    x, y = v[0].sign(), v[1].sign()
    if x > 0 and y >= 0:
        return 0
    if x <= 0 and y > 0:
        return 1
    if x < 0 and y <= 0:
        return 2
    return 3


def _rot90(p, q):
    x, y = p
    for _ in range(q):
        x, y = -y, x
    return (x, y)


def clip_halfplane(poly, n, c):
    """Convex polygon intersected with {x : n.x <= c} (exact)."""
    out = []
    m = len(poly)
    if not m:
        return out
    vals = [dot(n, p) - c for p in poly]
    for i in range(m):
        p, q = poly[i], poly[(i + 1) % m]
        vp, vq = vals[i], vals[(i + 1) % m]
        sp, sq = vp.sign(), vq.sign()
        if sp <= 0:
            out.append(p)
        if sp * sq < 0:
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def convex_polygon_area(poly):
    if len(poly) < 3:
        return None
    s = poly[0][0].field.zero
    for i in range(len(poly)):
        s = s + cross(poly[i], poly[(i + 1) % len(poly)])
    return s / 2


@dataclass
class ConvexBody:
    cone: int
    chunks: list  # (sector, quadrant, polygon)
    area: object


def convex_body(tri, cone, segments, box=None):
    """The Voronoi cell of ``cone`` developed into its model cone.

    Each sector is split into four quadrants; a quadrant piece is cut by the
    bisector half-planes of segments whose directions are within two
    quadrants of it.  ``segments`` must contain every saddle connection from
    the cone of length up to twice the largest staple length.
    """
    K = tri.field
    m = tri.orders[cone] + 1
    nq = 4 * m
    groups = {}
    far = K.zero
    for s in segments:
        if s.source != cone:
            continue
        g = 4 * s.source_sector + quadrant(s.holonomy)
        groups.setdefault(g, []).append(s.holonomy)
        far = max(far, abs(s.holonomy[0]), abs(s.holonomy[1]))
    if box is None:
        box = far + 1
    z = K.zero
    chunks = []
    total = z
    for G in range(nq):
        sector, q = divmod(G, 4)
        poly = [_rot90(p, q) for p in ((z, z), (box, z), (box, box), (z, box))]
        near = {(G + j) % nq for j in (-2, -1, 0, 1, 2)}
        for gi in sorted(near):
            for v in groups.get(gi, ()):
                poly = clip_halfplane(poly, v, norm2(v) / 2)
        for p in poly:
            if abs(p[0]) == box or abs(p[1]) == box:
                raise InsufficientRadius("convex body of cone %d reaches the bounding box" % cone)
        a = convex_polygon_area(poly) or z
        total = total + a
        chunks.append((sector, q, poly))
    return ConvexBody(cone, chunks, total)


__all__ = [
    "SaddleConnection", "Staple", "Triangulation", "delaunay", "voronoi_staples", "max_length2",
    "enumerate_segments", "trace", "convex_body", "ConvexBody", "InsufficientRadius",
    "quadrant", "clip_halfplane", "in_convex_wedge",
]
