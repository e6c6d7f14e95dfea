"""JSON documents for surfaces, domains and computation results."""

from __future__ import annotations

import json
import math
import os

from .catalog import by_name
from .exactnum import NumberField, QQ
from .hyperbolic import bisector_half_plane, klein_line
from .mat2 import frob2, to_json as mat_json, from_json as mat_from_json
from .surface import SurfaceError, TranslationSurface


def load_surface(source, a=None):
    """A catalog name (``L``, ``L(2,3)``, ``square-torus``, ...) or a path to a surface document."""
    if os.path.exists(source):
        with open(source) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SurfaceError("%s: line %d column %d: %s" % (source, exc.lineno, exc.colno, exc.msg))
        if not isinstance(doc, dict):
            raise SurfaceError("%s: a surface document must be a JSON object" % source)
        return TranslationSurface.from_document(doc)
    return by_name(source, a=a)


def surface_to_json(surface):
    return surface.to_document()


def dump_surface(surface, path):
    with open(path, "w") as fh:
        json.dump(surface.to_document(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def field_from_spec(spec):
    if spec is None:
        return QQ
    return NumberField(spec["min_poly"], spec["embedding"])


def _interval_json(x):
    if x is None:
        return None
    if x is math.inf:
        return "inf"
    return [float(x.a), float(x.b)]


def _side_json(A, pairing_matrix=None):
    if A is None:
        return {"geodesic": None, "matrix": None, "pairing_matrix": None}
    hp = bisector_half_plane(A)
    return {
        "geodesic": {"klein": [c.to_json() for c in klein_line(A)], "uhp": hp.describe()},
        "matrix": mat_json(A),
        "pairing_matrix": None if pairing_matrix is None else mat_json(pairing_matrix),
    }


def polygon_to_json(poly, maps=None):
    """Klein polygon: vertices with their kind, sides with the bisector they lie on.

    ``maps`` (side pairings) fills ``pairing_matrix`` when known.
    """
    kinds = poly.kinds()
    return {
        "model": "klein",
        "field": poly.field.spec(),
        "vertices": [{"x": x.to_json(), "y": y.to_json(), "kind": k}
                     for (x, y), k in zip(poly.vertices, kinds)],
        "sides": [_side_json(t, None if maps is None else maps[i]) for i, t in enumerate(poly.tags)],
    }


def domain_to_json(domain):
    """A bare Klein polygon or a side-paired domain."""
    if domain is None:
        return None
    if hasattr(domain, "pairing"):
        out = polygon_to_json(domain.polygon, domain.maps)
        out["pairing"] = list(domain.pairing)
        out["cycles"] = [list(c) for c in domain.cycles]
        return out
    return polygon_to_json(domain)


def result_to_json(result, surface=None):
    field = None
    if result.elements:
        field = result.elements[0][0][0].field
    elif surface is not None:
        field = surface.field
    sig = result.signature
    cert = result.certificate
    out = {
        "status": result.status,
        "field": field.spec() if field is not None else None,
        "a2": None if result.a2 is None else result.a2.to_json(),
        "elements": [{"matrix": mat_json(A), "norm2": n2.to_json()} for A, n2 in result.elements],
        "generators": [mat_json(g) for g in result.generators],
        "signature": None if sig is None else {
            "genus": sig.genus, "elliptic": list(sig.elliptic), "cusps": sig.cusps, "text": str(sig)},
        "area": _interval_json(result.area),
        "shift": None if result.shift is None else mat_json(result.shift),
        "shift_n": result.shift_n,
        "contains_minus_identity": result.contains_minus_identity,
        "ell2": None if result.ell2 is None else result.ell2.to_json(),
        "staples": result.staples,
        "certificate": None if cert is None else {
            "verdict": cert.verdict, "bits": cert.bits,
            "area": _interval_json(cert.area), "ball_area": _interval_json(cert.ball)},
        "rungs": result.rungs,
        "domain": domain_to_json(result.domain),
    }
    if surface is not None:
        out["surface"] = surface.to_document()
    return out


def elements_from_json(doc):
    """(matrix, norm2) pairs back from a result document."""
    field = field_from_spec(doc.get("field"))
    out = []
    for item in doc["elements"]:
        A = mat_from_json(field, item["matrix"])
        out.append((A, frob2(A)))
    return out


def write_json(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_matrices(path, field=None):
    """Matrix list file: ``{"field": ..., "matrices": [[e, e, e, e], ...]}``.

    Entries may be coefficient arrays or expressions such as ``"1+sqrt3"``.
    """
    with open(path) as fh:
        doc = json.load(fh)
    if field is None:
        field = field_from_spec(doc.get("field"))
    out = []
    for i, m in enumerate(doc["matrices"]):
        if len(m) != 4:
            raise ValueError("matrices[%d]: expected four entries" % i)
        out.append(tuple(field.from_json(x) if isinstance(x, list) else field(x) for x in m))
    return out


__all__ = [
    "load_surface", "surface_to_json", "dump_surface", "field_from_spec", "polygon_to_json",
    "domain_to_json", "result_to_json", "elements_from_json", "write_json", "read_matrices",
]
