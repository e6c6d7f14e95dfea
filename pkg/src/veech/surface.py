"""Translation surfaces given by polygons glued along parallel edges."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exactnum import NumberField, QQ
from .mat2 import apply, cross, vsub, det


class SurfaceError(ValueError):
    pass


def half(v):
    """0 for directions with argument in [0, pi), 1 for [pi, 2 pi)."""
    x, y = v
    s = y.sign()
    if s > 0 or (s == 0 and x.sign() > 0):
        return 0
    return 1


def arg_less(u, v):
    """Exact test arg(u) < arg(v), arguments taken in [0, 2 pi)."""
    hu, hv = half(u), half(v)
    if hu != hv:
        return hu < hv
    return cross(u, v).sign() > 0


def wraps(u1, u2):
    """1 if turning counterclockwise from u1 to u2 crosses the positive x-axis."""
    return 1 if arg_less(u2, u1) else 0


def in_wedge(u1, u2, w):
    """w in the half-open counterclockwise wedge [u1, u2) of angle in (0, 2 pi)."""
    if cross(u1, w).sign() == 0 and (u1[0] * w[0] + u1[1] * w[1]).sign() > 0:
        return True
    # rotate everything so that u1 points along the positive x-axis
    r2 = (u1[0] * u2[0] + u1[1] * u2[1], cross(u1, u2))
    rw = (u1[0] * w[0] + u1[1] * w[1], cross(u1, w))
    return arg_less(rw, r2)


@dataclass
class ConePoint:
    id: int
    order: int
    corners: list = dc_field(default_factory=list)
    marked: bool = False

    @property
    def angle_multiple(self):
        """Cone angle divided by 2 pi."""
        return self.order + 1


def _segments_cross(p1, p2, q1, q2):
    """Closed segments [p1,p2] and [q1,q2] share a point."""
    d1 = cross(vsub(p2, p1), vsub(q1, p1)).sign()
    d2 = cross(vsub(p2, p1), vsub(q2, p1)).sign()
    d3 = cross(vsub(q2, q1), vsub(p1, q1)).sign()
    d4 = cross(vsub(q2, q1), vsub(p2, q1)).sign()
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True

    def on(a, b, c):
        return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    return ((d1 == 0 and on(p1, p2, q1)) or (d2 == 0 and on(p1, p2, q2))
            or (d3 == 0 and on(q1, q2, p1)) or (d4 == 0 and on(q1, q2, p2)))


def polygon_area2(poly):
    """Twice the signed shoelace area."""
    n = len(poly)
    s = poly[0][0].field.zero
    for i in range(n):
        s = s + cross(poly[i], poly[(i + 1) % n])
    return s


def check_polygon(poly, index=0):
    n = len(poly)
    if n < 3:
        raise SurfaceError("polygon %d has fewer than 3 vertices" % index)
    if polygon_area2(poly).sign() <= 0:
        raise SurfaceError("polygon %d is not counterclockwise (area <= 0)" % index)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if a == b:
            raise SurfaceError("polygon %d has a zero-length edge %d" % (index, i))
        for j in range(i + 1, n):
            c, d = poly[j], poly[(j + 1) % n]
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges: only the shared vertex may be common
                shared, far = (b, d) if j == i + 1 else (a, c)
                e1 = vsub(far, shared)
                e0 = vsub(a if j == i + 1 else b, shared)
                if cross(e0, e1).sign() == 0 and (e0[0] * e1[0] + e0[1] * e1[1]).sign() > 0:
                    raise SurfaceError("polygon %d folds back on itself at edges %d, %d" % (index, i, j))
                continue
            if _segments_cross(a, b, c, d):
                raise SurfaceError("polygon %d is not simple: edges %d and %d meet" % (index, i, j))


class TranslationSurface:
    """Polygons with translation gluings, plus explicitly marked regular points.

    ``polygons`` is a list of counterclockwise vertex lists of points ``(x, y)``
    over ``field``.  Edge ``e`` of polygon ``p`` runs from vertex ``e`` to
    vertex ``e + 1``.  ``gluings`` lists pairs ``((p, e), (q, f))``.
    ``marked`` lists polygon vertices ``(p, v)`` whose class is a marked point.
    """

    def __init__(self, field, polygons, gluings, marked=(), name=None):
        self.field = field
        self.name = name
        self.polygons = [tuple((field(x), field(y)) for x, y in poly) for poly in polygons]
        for i, poly in enumerate(self.polygons):
            check_polygon(poly, i)
        self.gluings = [tuple(tuple(int(t) for t in end) for end in g) for g in gluings]
        self.partner = {}
        for g in self.gluings:
            if len(g) != 2:
                raise SurfaceError("gluing %r must join exactly two edges" % (g,))
            e1, e2 = g
            for e in (e1, e2):
                p, k = e
                if not (0 <= p < len(self.polygons) and 0 <= k < len(self.polygons[p])):
                    raise SurfaceError("gluing %r names a missing edge %r" % (g, e))
                if e in self.partner:
                    raise SurfaceError("edge %r appears in more than one gluing" % (e,))
            if e1 == e2:
                raise SurfaceError("edge %r is glued to itself" % (e1,))
            self.partner[e1] = e2
            self.partner[e2] = e1
            v1, v2 = self.edge_vector(*e1), self.edge_vector(*e2)
            if v1[0] != -v2[0] or v1[1] != -v2[1]:
                raise SurfaceError("gluing %r: edge vectors (%s, %s) and (%s, %s) are not opposite"
                                   % (g, v1[0], v1[1], v2[0], v2[1]))
        for p, poly in enumerate(self.polygons):
            for k in range(len(poly)):
                if (p, k) not in self.partner:
                    raise SurfaceError("edge (%d, %d) is not glued" % (p, k))
        self._check_connected()
        self.marked = [tuple(int(t) for t in m) for m in marked]
        self._build_cones()

    # -- basic data -------------------------------------------------------

    def edge_vector(self, p, k):
        poly = self.polygons[p]
        return vsub(poly[(k + 1) % len(poly)], poly[k])

    def corner_vectors(self, p, v):
        """(u1, u2): outgoing edge and reversed incoming edge at a polygon vertex."""
        n = len(self.polygons[p])
        u1 = self.edge_vector(p, v)
        w = self.edge_vector(p, (v - 1) % n)
        return u1, (-w[0], -w[1])

    def next_corner(self, p, v):
        """The corner following (p, v) counterclockwise around the same point."""
        n = len(self.polygons[p])
        return self.partner[(p, (v - 1) % n)]

    def _check_connected(self):
        parent = list(range(len(self.polygons)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for (p, _), (q, _) in self.gluings:
            parent[find(p)] = find(q)
        if len({find(i) for i in range(len(self.polygons))}) != 1:
            raise SurfaceError("surface is disconnected")

    def _build_cones(self):
        self.vertex_class = {}
        self.cones = []
        marked = set()
        for p, poly in enumerate(self.polygons):
            for v in range(len(poly)):
                if (p, v) in self.vertex_class:
                    continue
                corners = []
                c = (p, v)
                turns = 0
                while True:
                    corners.append(c)
                    u1, u2 = self.corner_vectors(*c)
                    turns += wraps(u1, u2)
                    c = self.next_corner(*c)
                    if c == (p, v):
                        break
                cid = len(self.cones)
                for c in corners:
                    self.vertex_class[c] = cid
                self.cones.append(ConePoint(cid, turns - 1, corners))
        for m in self.marked:
            if m not in self.vertex_class:
                raise SurfaceError("marked vertex %r does not exist" % (m,))
            marked.add(self.vertex_class[m])
        for cone in self.cones:
            cone.marked = cone.id in marked
            if cone.order == 0 and not cone.marked:
                raise SurfaceError(
                    "vertex class of %r has cone angle 2pi but is not marked; "
                    "mark it or remove it from the presentation" % (cone.corners[0],))
        n_edges = sum(len(p) for p in self.polygons) // 2
        euler = len(self.cones) - n_edges + len(self.polygons)
        if euler != 2 - 2 * self.genus:
            raise SurfaceError("Euler characteristic %d disagrees with cone orders" % euler)

    # -- invariants -------------------------------------------------------

    @property
    def stratum(self):
        return tuple(sorted((c.order for c in self.cones), reverse=True))

    @property
    def genus(self):
        return (sum(c.order for c in self.cones) + 2) // 2

    def total_area(self):
        total = self.field.zero
        for poly in self.polygons:
            total = total + polygon_area2(poly)
        return total / 2

    def transform(self, m, name=None):
        """The surface m.X, polygons mapped by a matrix of positive determinant."""
        if det(m).sign() <= 0:
            raise SurfaceError("only orientation preserving maps are supported")
        field = self.field
        if m[0].field is not field and m[0].field.degree > 1:
            field = m[0].field
        polys = [[apply(m, (field(x), field(y))) for x, y in poly] for poly in self.polygons]
        return TranslationSurface(field, polys, self.gluings, self.marked, name=name or self.name)

    def to_document(self):
        return {
            "name": self.name,
            "field": self.field.spec(),
            "polygons": [[[x.to_json(), y.to_json()] for x, y in poly] for poly in self.polygons],
            "gluings": [[list(a), list(b)] for a, b in self.gluings],
            "marked": [list(m) for m in self.marked],
        }

    @classmethod
    def from_document(cls, doc):
        try:
            fspec = doc.get("field")
            if fspec is None:
                field = QQ
            else:
                field = NumberField(fspec["min_poly"], fspec["embedding"])
            polys = []
            for i, poly in enumerate(doc["polygons"]):
                pts = []
                for j, pt in enumerate(poly):
                    if len(pt) != 2:
                        raise SurfaceError("polygons[%d][%d]: expected a point [x, y]" % (i, j))
                    pts.append(tuple(field(c) if not isinstance(c, list) else field.from_json(c) for c in pt))
                polys.append(pts)
            gluings = doc["gluings"]
        except KeyError as exc:
            raise SurfaceError("surface document is missing the %s field" % exc) from exc
        return cls(field, polys, gluings, doc.get("marked", ()), name=doc.get("name"))

    def __repr__(self):
        return "TranslationSurface(%s, stratum H%s, %d polygons)" % (
            self.name or "?", self.stratum, len(self.polygons))


__all__ = [
    "SurfaceError", "ConePoint", "TranslationSurface", "half", "arg_less", "wraps",
    "in_wedge", "polygon_area2", "check_polygon",
]
