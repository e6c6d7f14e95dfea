"""Named surfaces: tori, L-shaped surfaces and a genus two prototype family."""

from __future__ import annotations

import re

from .exactnum import QQ, NumberField, field_from_expression
from .surface import TranslationSurface, SurfaceError


def _opposite_gluings(n, poly=0):
    """Glue edge k to edge k + n/2 of a centrally symmetric 2n-gon."""
    return [((poly, k), (poly, k + n // 2)) for k in range(n // 2)]


def square_torus():
    K = QQ
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    return TranslationSurface(K, [square], _opposite_gluings(4), marked=[(0, 0)], name="square-torus")


def rectangle_torus(width, height, field=QQ):
    w, h = field(width), field(height)
    z = field.zero
    rect = [(z, z), (w, z), (w, h), (z, h)]
    return TranslationSurface(field, [rect], _opposite_gluings(4), marked=[(0, 0)],
                              name="torus(%s,%s)" % (w, h))


def hex_torus():
    """Regular hexagon with opposite sides glued; both vertex classes marked."""
    K = NumberField.quadratic(3)
    s = K.gen
    pts = [(0, 0), (2, 0), (3, s), (2, 2 * s), (0, 2 * s), (-1, s)]
    return TranslationSurface(K, [[(K(x), K(y)) for x, y in pts]], _opposite_gluings(6),
                              marked=[(0, 0), (0, 1)], name="hex-torus")


def l_surface(a=2, b=2, field=None):
    """L-shape: a 1 x b column with an (a - 1) x 1 arm attached at the top right."""
    if field is None:
        field = field_from_expression(str(a), str(b))
    a, b = field(a), field(b)
    if a <= 1 or b <= 1:
        raise SurfaceError("L-surface needs a > 1 and b > 1")
    one, z = field.one, field.zero
    pts = [(z, z), (one, z), (one, b - 1), (a, b - 1), (a, b), (one, b), (z, b), (z, b - 1)]
    gluings = [((0, 0), (0, 5)), ((0, 2), (0, 4)), ((0, 1), (0, 7)), ((0, 3), (0, 6))]
    return TranslationSurface(field, [pts], gluings, name="L(%s,%s)" % (a, b))


def mcmullen_genus2(a_text="1+sqrt3"):
    """Genus two staircase in H(1,1) with facing sides glued.

    Lower row ``[0, 2+a] x [0, 1]``, upper row ``[1, 2+2a] x [1, 1+a]``.  The
    vertical and horizontal directions are parabolic with twists 1 and 2 + a.
    For a = 1 + sqrt3 the Veech group is infinitely generated.
    """
    field = field_from_expression(a_text)
    a = field(a_text)
    if a <= 0:
        raise SurfaceError("mcmullen-genus2 needs a > 0")
    one, z = field.one, field.zero
    pts = [(z, z), (one, z), (2 + a, z), (2 + a, one), (2 + 2 * a, one), (2 + 2 * a, 1 + a),
           (2 + a, 1 + a), (one, 1 + a), (one, one), (z, one)]
    # bottom edges split where the row above them changes
    gluings = [((0, 0), (0, 8)), ((0, 1), (0, 6)), ((0, 2), (0, 9)), ((0, 3), (0, 5)), ((0, 4), (0, 7))]
    return TranslationSurface(field, [pts], gluings, name="mcmullen-genus2(%s)" % a)


CATALOG = {
    "square-torus": square_torus,
    "hex-torus": hex_torus,
    "L": l_surface,
    "mcmullen-genus2": mcmullen_genus2,
}

_L_RE = re.compile(r"^L\((.+),(.+)\)$")


def by_name(name, a=None):
    """Build a catalog surface.  ``L(a,b)`` takes the arm sizes inline."""
    name = name.strip()
    m = _L_RE.match(name.replace(" ", ""))
    if m:
        return l_surface(m.group(1), m.group(2))
    if name == "mcmullen-genus2":
        return mcmullen_genus2(a or "1+sqrt3")
    if name in CATALOG:
        return CATALOG[name]()
    raise SurfaceError("unknown catalog surface %r (known: %s, L(a,b))" % (name, ", ".join(sorted(CATALOG))))
