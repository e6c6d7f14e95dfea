"""SVG pictures of fundamental domains in the Klein disk.

Geodesics are straight chords in the Klein model, so the domain is drawn as
an ordinary polygon clipped to the unit disk.  The ball B(i, log nu(a)) is
the disk of euclidean radius tanh(log nu(a)) about the origin.
"""

from __future__ import annotations

from .membership import nu_sq

SIZE = 600
PAD = 30


def _xy(p):
    # Klein (x, y) with i at the origin; draw y to the right and x upward
    s = (SIZE - 2 * PAD) / 2
    return (SIZE / 2 + s * float(p[1]), SIZE / 2 - s * float(p[0]))


def _num(v):
    return "%.4f" % v


def ball_radius(a2):
    """Euclidean Klein radius of B(i, log nu(a))."""
    n2 = float(nu_sq(a2).interval.mid)
    return (n2 - 1) / (n2 + 1)


def render(domain, a2=None, title=None):
    """SVG text for a KleinPolygon or paired domain (None gives the empty placeholder)."""
    poly = getattr(domain, "polygon", domain)
    pairing = getattr(domain, "pairing", None)
    s = (SIZE - 2 * PAD) / 2
    c = SIZE / 2
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (SIZE, SIZE, SIZE, SIZE),
        '<defs><clipPath id="disk"><circle cx="%s" cy="%s" r="%s"/></clipPath></defs>'
        % (_num(c), _num(c), _num(s)),
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        out.append('<title>%s</title>' % title.replace("&", "&amp;").replace("<", "&lt;"))
    if poly is None:
        out.append('<circle cx="%s" cy="%s" r="%s" fill="#dde6f0" stroke="none"/>'
                   % (_num(c), _num(c), _num(s)))
    else:
        pts = " ".join("%s,%s" % tuple(_num(t) for t in _xy(p)) for p in poly.vertices)
        out.append('<polygon points="%s" fill="#dde6f0" stroke="#203050" stroke-width="1.5" '
                   'clip-path="url(#disk)"/>' % pts)
    out.append('<circle cx="%s" cy="%s" r="%s" fill="none" stroke="black" stroke-width="1"/>'
               % (_num(c), _num(c), _num(s)))
    if a2 is not None:
        r = ball_radius(a2) * s
        out.append('<circle cx="%s" cy="%s" r="%s" fill="#f0c040" fill-opacity="0.35" '
                   'stroke="#b08000" stroke-dasharray="4 3"/>' % (_num(c), _num(c), _num(r)))
    if poly is not None:
        n = len(poly.vertices)
        for i in range(n):
            if poly.tags[i] is None:
                continue
            p, q = poly.vertices[i], poly.vertices[(i + 1) % n]
            mx, my = (float(p[0]) + float(q[0])) / 2, (float(p[1]) + float(q[1])) / 2
            # pull labels a little towards the centre so they stay inside the disk
            x, y = _xy((0.88 * mx, 0.88 * my))
            label = "s%d" % i if pairing is None else "s%d-s%d" % (i, pairing[i])
            out.append('<text x="%s" y="%s" font-size="11" text-anchor="middle" '
                       'font-family="monospace">%s</text>' % (_num(x), _num(y), label))
    out.append('<circle cx="%s" cy="%s" r="2.5" fill="black"/>' % (_num(c), _num(c)))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(domain, path, a2=None, title=None):
    with open(path, "w") as fh:
        fh.write(render(domain, a2=a2, title=title))


__all__ = ["render", "write_svg", "ball_radius"]
