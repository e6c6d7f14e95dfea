"""2x2 matrices and plane vectors over a number field, as plain tuples.

A matrix is ``(a, b, c, d)`` meaning [[a, b], [c, d]]; a vector is ``(x, y)``.
"""

from __future__ import annotations

from .exactnum import FieldElement, NumberField, QQ, field_from_expression


def mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def det(m):
    return m[0] * m[3] - m[1] * m[2]


def inv(m):
    a, b, c, d = m
    D = a * d - b * c
    if D == 1:
        return (d, -b, -c, a)
    return (d / D, -b / D, -c / D, a / D)


def neg(m):
    return tuple(-x for x in m)


def trace(m):
    return m[0] + m[3]


def frob2(m):
    """Squared Frobenius norm a^2 + b^2 + c^2 + d^2."""
    return sum(x * x for x in m)


def apply(m, v):
    return (m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1])


def identity(field):
    return (field.one, field.zero, field.zero, field.one)


def is_identity(m):
    return m[0] == 1 and m[1] == 0 and m[2] == 0 and m[3] == 1


def psl_canonical(m):
    """Representative of +-m whose first nonzero entry is positive."""
    for x in m:
        if x != 0:
            return m if x > 0 else neg(m)
    return m


def psl_equal(m, n):
    return m == n or m == neg(n)


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def vadd(u, v):
    return (u[0] + v[0], u[1] + v[1])


def vsub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def vneg(u):
    return (-u[0], -u[1])


def norm2(u):
    return u[0] * u[0] + u[1] * u[1]


def from_columns(u, v):
    return (u[0], v[0], u[1], v[1])


def parse(text, field=None):
    """Read ``"a,b;c,d"`` (rows separated by ``;``) into a matrix.

    Without an explicit field the entries choose it, e.g. ``sqrt3`` gives Q(sqrt 3).
    """
    rows = [r.split(",") for r in text.replace(" ", "").strip("[]").split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ValueError("matrix must look like 'a,b;c,d', got %r" % text)
    entries = [e for r in rows for e in r]
    if field is None:
        field = field_from_expression(*entries)
    return tuple(field(e) for e in entries)


def fmt(m):
    return "[[%s, %s], [%s, %s]]" % tuple(str(x) for x in m)


def to_json(m):
    return [x.to_json() for x in m]


def from_json(field, data):
    return tuple(field.from_json(x) for x in data)


def coerce(field, m):
    return tuple(field(x) for x in m)


def sort_key(m):
    """Deterministic total order: exact coefficients, lexicographic."""
    return tuple(tuple(x.coeffs) for x in m)


__all__ = [
    "mul", "det", "inv", "neg", "trace", "frob2", "apply", "identity", "is_identity",
    "psl_canonical", "psl_equal", "cross", "dot", "vadd", "vsub", "vneg", "norm2",
    "from_columns", "parse", "fmt", "to_json", "from_json", "coerce", "sort_key",
    "FieldElement", "NumberField", "QQ",
]
