"""Dirichlet domains centred at i for groups of 2x2 matrices.

Polygons are kept in the Klein disk model, where hyperbolic lines are
straight chords.  The point z of the upper half-plane has Klein coordinates

    x = (|z|^2 - 1) / (|z|^2 + 1),   y = 2 Re z / (|z|^2 + 1),

i goes to the origin and the bisector between i and A.i becomes the line

    (a^2 + b^2 - c^2 - d^2) x + 2 (ac + bd) y = ||A||^2 - 2.

All of this is exact over the coefficient field of the matrices, so vertices,
incidences and side pairings are decided exactly.  Angles and areas are
evaluated with interval arithmetic from the exact data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from mpmath import iv

from .exactnum import FieldElement, QQ, interval_precision, interval_bounds
from .mat2 import frob2, inv, psl_canonical, trace, cross, fmt
from .membership import nu_sq


class Unresolved(RuntimeError):
    pass


def _iv(x, bits):
    if isinstance(x, FieldElement):
        return x.to_interval(bits)
    return iv.mpf(x)


def _acos(c):
    c = iv.mpf([max(c.a, -1), min(c.b, 1)])
    s = 1 - c * c
    s = iv.mpf([max(s.a, 0), max(s.b, 0)])
    return iv.atan2(iv.sqrt(s), c)


def _asin(x):
    x = iv.mpf([max(x.a, -1), min(x.b, 1)])
    s = 1 - x * x
    s = iv.mpf([max(s.a, 0), max(s.b, 0)])
    return iv.atan2(x, iv.sqrt(s))


def _lo(v):
    return interval_bounds(v)[0]


def _hi(v):
    return interval_bounds(v)[1]


# -- half-planes ------------------------------------------------------------------

@dataclass(frozen=True)
class HalfPlane:
    """{z : alpha |z|^2 + 2 beta Re z + gamma <= 0}, the side of the bisector
    of i and A.i that contains i."""
    alpha: object
    beta: object
    gamma: object
    matrix: tuple

    def contains(self, z):
        a, b, g = float(self.alpha), float(self.beta), float(self.gamma)
        return a * abs(z) ** 2 + 2 * b * z.real + g <= 1e-12

    def klein(self):
        """(p, q, r) with the half-plane equal to {p x + q y <= r} in Klein coordinates."""
        return klein_line(self.matrix)

    def describe(self):
        a, b, g = self.alpha, self.beta, self.gamma
        if a == 0:
            bound = -g / (2 * b)
            return "Re z %s %s" % ("<=" if b > 0 else ">=", bound)
        c = -b / a
        r2 = c * c - g / a
        return "|z - (%s)|^2 %s %s" % (c, ">=" if a < 0 else "<=", r2)


def bisector_half_plane(A):
    a, b, c, d = A
    alpha = 1 - c * c - d * d
    beta = a * c + b * d
    gamma = 1 - a * a - b * b
    if alpha == 0 and beta == 0:
        raise ValueError("A fixes i; no bisector")
    return HalfPlane(alpha, beta, gamma, A)


def klein_line(A):
    a, b, c, d = A
    return (a * a + b * b - c * c - d * d, 2 * (a * c + b * d), frob2(A) - 2)


def minkowski_normal(A):
    """Outward normal (n0, n1, n2) of the half-space of A for the form -X0 Y0 + X1 Y1 + X2 Y2."""
    p, q, r = klein_line(A)
    return (r / 2, p / 2, q / 2)


def _mink(n, m):
    return -n[0] * m[0] + n[1] * m[1] + n[2] * m[2]


def dist_center(A, bits=64):
    """Hyperbolic distance from i to A.i, namely 2 log nu(||A||)."""
    n2 = frob2(A)
    if n2 == 2:
        return iv.mpf(0)
    with interval_precision(bits + 16):
        return iv.log(nu_sq(n2, bits).interval)


def klein_point(z):
    """Klein coordinates of a complex point (floating point helper)."""
    r = abs(z) ** 2
    return ((r - 1) / (r + 1), 2 * z.real / (r + 1))


def klein_to_uhp(p):
    """Upper half-plane point (floats) of a Klein point; ideal points give reals or inf."""
    x, y = float(p[0]), float(p[1])
    if abs(1 - x) < 1e-300:
        return complex(math.inf, 0)
    s = max(1 - x * x - y * y, 0.0)
    return complex(y / (1 - x), math.sqrt(s) / (1 - x))


def act(g, p):
    """Action of a matrix on a Klein point, exact."""
    x, y = p
    a, b, c, d = g
    P11, P12, P22 = 1 + x, y, 1 - x
    Q11 = a * a * P11 + 2 * a * b * P12 + b * b * P22
    Q22 = c * c * P11 + 2 * c * d * P12 + d * d * P22
    Q12 = a * c * P11 + (a * d + b * c) * P12 + b * d * P22
    s = Q11 + Q22
    return ((Q11 - Q22) / s, 2 * Q12 / s)


def klein_of_real(u, field):
    """Klein point of a boundary point of the upper half-plane; None means infinity."""
    if u is None:
        return (field.one, field.zero)
    u = field(u)
    den = u * u + 1
    return ((u * u - 1) / den, 2 * u / den)


# -- polygons ---------------------------------------------------------------------

@dataclass
class KleinPolygon:
    """Convex polygon in Klein coordinates.  Side i runs from vertex i to
    vertex i + 1 and carries the matrix whose bisector contains it (None for
    the artificial frame)."""
    field: object
    vertices: list
    tags: list

    @classmethod
    def frame(cls, field):
        two = field(2)
        pts = [(-two, -two), (two, -two), (two, two), (-two, two)]
        return cls(field, pts, [None] * 4)

    def vertex_kind(self, i):
        x, y = self.vertices[i]
        s = (x * x + y * y - 1).sign()
        return "interior" if s < 0 else ("ideal" if s == 0 else "outside")

    def kinds(self):
        return [self.vertex_kind(i) for i in range(len(self.vertices))]

    def is_finite(self):
        return all(k != "outside" for k in self.kinds())

    def contains(self, p):
        """Klein point (floats) inside the closed polygon."""
        n = len(self.vertices)
        fx = [(float(v[0]), float(v[1])) for v in self.vertices]
        for i in range(n):
            a, b = fx[i], fx[(i + 1) % n]
            if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) < -1e-12:
                return False
        return True

    def side_matrices(self):
        return [t for t in self.tags if t is not None]

    @classmethod
    def ideal(cls, points, field):
        """Ideal polygon with the given boundary points (None is infinity), sides untagged."""
        vs = [klein_of_real(u, field) for u in points]
        twice = field.zero
        for i in range(len(vs)):
            (x0, y0), (x1, y1) = vs[i], vs[(i + 1) % len(vs)]
            twice = twice + x0 * y1 - x1 * y0
        if twice < 0:
            vs.reverse()
        return cls(field, vs, [None] * len(vs))


def clip(poly, A):
    """Intersect with the half-plane of A, keeping side tags."""
    p, q, r = klein_line(A)
    if r == 0:
        raise ValueError("matrix %s fixes i" % fmt(A))
    vs, ts = poly.vertices, poly.tags
    n = len(vs)
    vals = [p * v[0] + q * v[1] - r for v in vs]
    signs = [v.sign() for v in vals]
    if all(s <= 0 for s in signs):
        return poly
    out_v, out_t = [], []
    for i in range(n):
        j = (i + 1) % n
        si, sj = signs[i], signs[j]
        if si <= 0:
            if sj <= 0:
                out_v.append(vs[i])
                out_t.append(ts[i])
            elif si < 0:
                out_v.append(vs[i])
                out_t.append(ts[i])
                out_v.append(_cut(vs[i], vs[j], vals[i], vals[j]))
                out_t.append(A)
            else:
                out_v.append(vs[i])
                out_t.append(A)
        elif sj < 0:
            out_v.append(_cut(vs[i], vs[j], vals[i], vals[j]))
            out_t.append(ts[i])
    return KleinPolygon(poly.field, out_v, out_t)


def _cut(a, b, fa, fb):
    t = fa / (fa - fb)
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def dirichlet_domain(elements, field=None):
    """Intersection of the half-planes of all given matrices (identity and -I skipped)."""
    elements = [psl_canonical(A) for A in elements]
    if field is None:
        field = elements[0][0].field if elements else QQ
        for A in elements:
            if A[0].field.degree > field.degree:
                field = A[0].field
    poly = KleinPolygon.frame(field)
    seen = set()
    for A in sorted(elements, key=lambda A: (frob2(A), tuple(x.coeffs for x in A))):
        A = tuple(field(x) for x in A)
        if frob2(A) == 2:
            if A[1] == 0 and A[2] == 0:
                continue
            raise ValueError("rotation %s fixes i; conjugate the group first" % fmt(A))
        if A in seen:
            continue
        seen.add(A)
        poly = clip(poly, A)
    return poly


# -- angles and areas ---------------------------------------------------------------

def interior_angle(A, B, bits):
    """Angle at the vertex where the side of A meets the side of B."""
    n, m = minkowski_normal(A), minkowski_normal(B)
    with interval_precision(bits):
        nn = _iv(_mink(n, n), bits)
        mm = _iv(_mink(m, m), bits)
        nm = _iv(_mink(n, m), bits)
        return _acos(-nm / iv.sqrt(nn * mm))


def vertex_angles(poly, bits=64):
    out = []
    k = len(poly.vertices)
    for i in range(k):
        if poly.vertex_kind(i) != "interior":
            out.append(iv.mpf(0) if poly.vertex_kind(i) == "ideal" else None)
            continue
        A, B = poly.tags[i - 1], poly.tags[i]
        if A == B:
            with interval_precision(bits):
                out.append(+iv.pi)
        else:
            out.append(interior_angle(A, B, bits))
    return out


def area(poly, bits=64):
    """Hyperbolic area by Gauss-Bonnet; math.inf when a side is free."""
    if not poly.is_finite():
        return math.inf
    angles = vertex_angles(poly, bits)
    with interval_precision(bits):
        s = iv.mpf(0)
        for a in angles:
            s = s + a
        return (len(angles) - 2) * iv.pi - s


def _ball_params(a2, bits):
    """(Klein radius tanh r, cosh r - 1) for r = log nu(a)."""
    with interval_precision(bits):
        n2 = nu_sq(a2, bits).interval
        nu_ = iv.sqrt(n2)
        return (n2 - 1) / (n2 + 1), (nu_ - 1) ** 2 / (2 * nu_)


def fan_area(poly, rho, cosh_m1, bits=64):
    """Area of poly intersected with the ball of Klein radius rho (< 1), by
    fanning from the centre.  ``cosh_m1`` is cosh r - 1 for that ball."""
    with interval_precision(bits):
        total = iv.mpf(0)
        pts = [(_iv(x, bits), _iv(y, bits)) for x, y in poly.vertices]
        n = len(pts)
        for i in range(n):
            total = total + _side_area(pts[i], pts[(i + 1) % n], rho, cosh_m1)
        return total


def _side_area(p, q, rho, cosh_m1):
    dx, dy = q[0] - p[0], q[1] - p[1]
    L = iv.sqrt(dx * dx + dy * dy)
    h = (p[0] * q[1] - p[1] * q[0]) / L
    tp = (p[0] * dx + p[1] * dy) / L
    tq = (q[0] * dx + q[1] * dy) / L

    def psi(t):
        return iv.atan2(t, h)

    def tri(t):
        return _asin(t / (iv.sqrt(h * h + t * t) * iv.sqrt(1 - h * h))) - psi(t)

    if float(h.mid) >= float(rho.mid) or h.a >= rho.b:
        return cosh_m1 * (psi(tq) - psi(tp))
    T = iv.sqrt(rho * rho - h * h)
    cuts = [tp]
    for c in (-T, T):
        if float(tp.mid) < float(c.mid) < float(tq.mid):
            cuts.append(c)
    cuts.append(tq)
    s = iv.mpf(0)
    for lo, hi in zip(cuts, cuts[1:]):
        m = (lo + hi) / 2
        if float(abs(m.mid)) <= float(T.mid):
            s = s + tri(hi) - tri(lo)
        else:
            s = s + cosh_m1 * (psi(hi) - psi(lo))
    return s


def area_in_ball(poly, a2, bits=64):
    """Area of poly inside the ball B(i, log nu(a)), as an interval."""
    rho, cm1 = _ball_params(a2, bits)
    return fan_area(poly, rho, cm1, bits)


def ball_area(a2, bits=64):
    with interval_precision(bits):
        _, cm1 = _ball_params(a2, bits)
        return 2 * iv.pi * cm1


@dataclass
class CertifiedBool:
    verdict: object  # True, False or None (unresolved)
    bits: int
    area: object = None
    ball: object = None

    def __bool__(self):
        return self.verdict is True


def stopping_test(poly, a2, bits=64, max_bits=1024):
    """Certified check of area(poly) < 2 area(poly within B(i, log nu(a)))."""
    if not poly.is_finite():
        return CertifiedBool(False, bits, math.inf, None)
    while True:
        A = area(poly, bits)
        B = area_in_ball(poly, a2, bits)
        with interval_precision(bits):
            if _hi(A) < 2 * _lo(B):
                return CertifiedBool(True, bits, A, B)
            if _lo(A) >= 2 * _hi(B):
                return CertifiedBool(False, bits, A, B)
        if bits >= max_bits:
            return CertifiedBool(None, bits, A, B)
        bits *= 2


# -- side pairings and signature ------------------------------------------------------

@dataclass
class Signature:
    genus: int
    elliptic: tuple
    cusps: int

    def __str__(self):
        parts = [str(m) for m in self.elliptic] + ["inf"] * self.cusps
        return "(%d; %s)" % (self.genus, ", ".join(parts))

    def as_tuple(self):
        return (self.genus,) + tuple(self.elliptic) + (math.inf,) * self.cusps


@dataclass
class PairedDomain:
    polygon: KleinPolygon
    pairing: list          # side index -> partner side index
    maps: list             # side index -> matrix sending it onto its partner
    cycles: list = dc_field(default_factory=list)
    signature: Signature = None


def _fixed_point(A):
    """Klein point fixed by an order two element (trace 0)."""
    a, b, c, d = A
    den = a * a + 1 + c * c
    return ((a * a + 1 - c * c) / den, 2 * a * c / den)


def _split_order_two(poly):
    vs, ts = list(poly.vertices), list(poly.tags)
    i = 0
    while i < len(vs):
        A = ts[i]
        if A is not None and trace(A) == 0:
            f = _fixed_point(A)
            p, q = vs[i], vs[(i + 1) % len(vs)]
            if cross((q[0] - p[0], q[1] - p[1]), (f[0] - p[0], f[1] - p[1])) != 0:
                raise Unresolved("fixed point of %s is off its side" % fmt(A))
            vs.insert(i + 1, f)
            ts.insert(i + 1, A)
            i += 2
        else:
            i += 1
    return KleinPolygon(poly.field, vs, ts)


def pair_sides(poly):
    """Match every side with the side its matrix's inverse produces.

    Returns a :class:`PairedDomain` or raises :class:`Unresolved` when some
    side has no exact partner.
    """
    if not poly.is_finite():
        raise Unresolved("domain has free sides")
    if any(t is None for t in poly.tags):
        raise Unresolved("frame side survived")
    poly = _split_order_two(poly)
    vs, ts = poly.vertices, poly.tags
    n = len(vs)
    by_start = {vs[i]: i for i in range(n)}
    pairing, maps = [None] * n, [None] * n
    for i in range(n):
        A = ts[i]
        g = inv(A)
        p, q = vs[i], vs[(i + 1) % n]
        gp, gq = act(g, p), act(g, q)
        j = by_start.get(gq)
        if j is None or vs[(j + 1) % n] != gp or psl_canonical(ts[j]) != psl_canonical(g):
            raise Unresolved("side %d (matrix %s) has no partner" % (i, fmt(A)))
        pairing[i], maps[i] = j, g
    return PairedDomain(poly, pairing, maps)


def signature(paired, bits=64):
    """Vertex cycles, elliptic orders, cusps and genus of the quotient."""
    poly = paired.polygon
    vs = poly.vertices
    n = len(vs)
    by_start = {vs[i]: i for i in range(n)}
    angles = vertex_angles(poly, bits)
    seen = set()
    cycles = []
    for v0 in range(n):
        if v0 in seen:
            continue
        cyc = []
        v = v0
        while True:
            if v in seen:
                raise Unresolved("vertex cycle does not close")
            seen.add(v)
            cyc.append(v)
            w = act(paired.maps[v], vs[v])
            j = by_start.get(w)
            if j is None:
                raise Unresolved("vertex image is not a vertex")
            v = j
            if v == v0:
                break
        cycles.append(cyc)
    elliptic, cusps = [], 0
    for cyc in cycles:
        kinds = {poly.vertex_kind(v) for v in cyc}
        if kinds == {"ideal"}:
            cusps += 1
            continue
        if kinds != {"interior"}:
            raise Unresolved("cycle mixes ideal and interior vertices")
        with interval_precision(bits):
            total = iv.mpf(0)
            for v in cyc:
                total = total + angles[v]
            m = 2 * iv.pi / total
            k = int(round(float(m.mid)))
            if k < 1 or not (m.a <= k <= m.b) or m.delta > 0.25:
                raise Unresolved("vertex cycle angle is not 2pi/m")
        if k > 1:
            elliptic.append(k)
    edges = n // 2
    genus2 = 1 - len(cycles) + edges
    if genus2 % 2:
        raise Unresolved("inconsistent Euler characteristic")
    paired.cycles = cycles
    paired.signature = Signature(genus2 // 2, tuple(sorted(elliptic)), cusps)
    return paired.signature


def side_pairings_and_signature(poly, bits=64):
    paired = pair_sides(poly)
    signature(paired, bits)
    return paired


def signature_area(sig):
    """Hyperbolic area of a Fuchsian group with signature sig."""
    s = 2 * sig.genus - 2 + sig.cusps + sum(1 - 1 / m for m in sig.elliptic)
    return 2 * math.pi * s


__all__ = [
    "HalfPlane", "bisector_half_plane", "klein_line", "dist_center", "klein_point", "klein_to_uhp",
    "act", "klein_of_real", "KleinPolygon", "clip", "dirichlet_domain", "vertex_angles", "area", "area_in_ball",
    "ball_area", "fan_area", "stopping_test", "CertifiedBool", "Signature", "PairedDomain",
    "pair_sides", "signature", "side_pairings_and_signature", "signature_area", "Unresolved",
]
