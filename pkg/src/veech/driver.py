"""End-to-end Veech group computation over a ladder of Frobenius norm bounds."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dc_field

from .exactnum import QQ
from .mat2 import frob2, inv, mul, neg, psl_canonical, sort_key, fmt
from .membership import SurfaceData
from .hyperbolic import (
    dirichlet_domain, stopping_test, side_pairings_and_signature, area, klein_line, act,
    Unresolved,
)

log = logging.getLogger("veech")


def shift_matrix(field, n):
    return (field.one, field.zero, field.one / n, field.one)


def conjugate(g, M):
    """M^-1 g M."""
    return mul(mul(inv(M), g), M)


def rotation_stabilizer_nontrivial(data):
    """True if a rotation other than +-I preserves the surface."""
    for A in data.members_up_to(2):
        if not (A[1] == 0 and A[2] == 0):
            return True
    return False


def contains_minus_identity(data):
    K = data.field
    return data.is_member((-K.one, K.zero, K.zero, -K.one))


def shift_surface(surface, start=1, limit=64):
    """Smallest n >= start such that M = [[1,0],[1/n,1]] gives M.X no rotations."""
    for n in range(start, limit + 1):
        M = shift_matrix(surface.field, n)
        shifted = surface.transform(M)
        data = SurfaceData(shifted)
        if not rotation_stabilizer_nontrivial(data):
            return M, shifted, n, data
    raise RuntimeError("no shift up to n = %d removes the rotations" % limit)


@dataclass
class VeechResult:
    status: str                       # "Terminated" or "NormBoundReached"
    elements: list                    # (matrix, norm2) in the input coordinates, one per +-pair
    generators: list = dc_field(default_factory=list)
    domain: object = None             # PairedDomain or KleinPolygon, in shifted coordinates
    signature: object = None
    shift: tuple = None
    shift_n: int = None
    contains_minus_identity: bool = False
    a2: object = None
    certificate: object = None
    area: object = None
    ell2: object = None
    staples: int = 0
    rungs: list = dc_field(default_factory=list)

    @property
    def terminated(self):
        return self.status == "Terminated"

    def element_set(self):
        return {psl_canonical(A) for A, _ in self.elements}


def _ladder(max_a2, start=2, factor=2):
    a2 = QQ(start)
    out = []
    while a2 < max_a2:
        out.append(a2)
        a2 = a2 * factor
    out.append(max_a2)
    return out


def compute(surface, max_norm2, no_shift=False, shift_n=None, bits=64, max_bits=1024,
            stop_when_certified=True, progress=None):
    """Compute Veech group elements along the norm ladder and try to certify a lattice.

    ``max_norm2`` bounds the squared Frobenius norm (in the coordinates where the
    ladder runs, i.e. after the shift).
    """
    say = progress or (lambda msg: log.info(msg))
    base = SurfaceData(surface)
    K = surface.field
    max_a2 = K(max_norm2)
    minus_I = contains_minus_identity(base)
    M = None
    work = base
    n = None
    if not no_shift:
        if shift_n is not None:
            n = int(shift_n)
            M = shift_matrix(K, n)
            work = SurfaceData(surface.transform(M))
        elif rotation_stabilizer_nontrivial(base):
            M, _, n, work = shift_surface(surface)
        if M is not None:
            say("shifted by M = %s (n = %d)" % (fmt(M), n))
    result = VeechResult("NormBoundReached", [], shift=M, shift_n=n,
                         contains_minus_identity=minus_I, ell2=base.ell2, staples=len(base.staples))
    found = []
    for a2 in _ladder(max_a2):
        found = work.members_up_to(a2)
        result.a2 = a2
        say("a^2 = %s: %d elements (segments: %d)" % (a2, len(found), len(work.index)))
        rung = {"a2": str(a2), "elements": len(found)}
        result.rungs.append(rung)
        if no_shift:
            continue
        poly = dirichlet_domain(found, field=K)
        cert = stopping_test(poly, a2, bits=bits, max_bits=max_bits)
        rung["certified"] = cert.verdict
        result.domain = poly
        result.certificate = cert
        if cert.verdict is True:
            try:
                paired = side_pairings_and_signature(poly, bits)
            except Unresolved as exc:
                say("certified area but sides unpaired (%s); continuing" % exc)
                continue
            result.status = "Terminated"
            result.domain = paired
            result.signature = paired.signature
            result.area = area(paired.polygon, bits)
            gens = {}
            for g in paired.maps:
                g = psl_canonical(g)
                gi = psl_canonical(inv(g))
                if gi not in gens:
                    gens[g] = None
            result.generators = [conjugate(g, M) if M is not None else g for g in gens]
            if stop_when_certified:
                break
    els = [conjugate(g, M) if M is not None else g for g in found]
    els = [psl_canonical(g) for g in els]
    result.elements = sorted(((g, frob2(g)) for g in els), key=lambda t: (t[1], sort_key(t[0])))
    return result


# -- subgroup membership by point reduction ---------------------------------------

def domain_sides(poly):
    """(klein line, matrix to apply when the line is violated) for each tagged side."""
    out = []
    for A in poly.tags:
        if A is not None:
            out.append((klein_line(A), inv(A)))
    return out


def uhp_half_plane(alpha, beta, gamma):
    """Klein line of {alpha |z|^2 + 2 beta Re z + gamma <= 0}."""
    return (alpha - gamma, 2 * beta, -(alpha + gamma))


def reduce_point(g, sides, max_steps=100000):
    """Push g.i into the region cut out by ``sides`` by greedy side moves.

    Returns ``(h, point)`` where ``h`` is the product of applied matrices so
    that ``point = h g . i``.  Raises RuntimeError when the step budget runs out.
    """
    K = g[0].field
    q = act(g, (K.zero, K.zero))
    h = (K.one, K.zero, K.zero, K.one)
    for _ in range(max_steps):
        for (p, qq, r), m in sides:
            if (p * q[0] + qq * q[1] - r).sign() > 0:
                q = act(m, q)
                h = mul(m, h)
                break
        else:
            return h, q
    raise RuntimeError("point reduction did not finish in %d steps" % max_steps)


def in_subgroup(g, sides):
    """True if g lies in the group generated by the side matrices and -I.

    Valid when ``sides`` cut out a fundamental domain whose interior contains i.
    """
    h, q = reduce_point(g, sides)
    if not (q[0] == 0 and q[1] == 0):
        return False
    hg = mul(h, g)
    K = g[0].field
    one = (K.one, K.zero, K.zero, K.one)
    return hg == one or hg == neg(one)


def words(gens, length):
    """All products of at most ``length`` generators (and inverses), one per +-pair."""
    gens = [psl_canonical(g) for g in gens]
    alphabet = []
    for g in gens:
        for x in (g, psl_canonical(inv(g))):
            if x not in alphabet:
                alphabet.append(x)
    K = gens[0][0].field
    layer = {psl_canonical((K.one, K.zero, K.zero, K.one))}
    seen = set(layer)
    for _ in range(length):
        nxt = set()
        for w in layer:
            for a in alphabet:
                x = psl_canonical(mul(w, a))
                if x not in seen:
                    seen.add(x)
                    nxt.add(x)
        layer = nxt
    return seen


def same_group(result, gens, word_length=6, bits=64):
    """Check that a terminated result's group equals the group generated by ``gens``
    (given in input coordinates, all known members).

    Each given generator must reduce into the computed domain, and the
    Dirichlet domain of short words in the given generators must have the same
    area as the computed domain.  Returns a dict of the individual checks.
    """
    M = result.shift
    paired = result.domain
    sides = domain_sides(paired.polygon)
    shifted = [mul(mul(M, g), inv(M)) if M is not None else g for g in gens]
    contained = all(in_subgroup(g, sides) for g in shifted)
    W = [w for w in words(shifted, word_length) if frob2(w) != 2]
    poly = dirichlet_domain(W, field=paired.polygon.field)
    sub_area = area(poly, bits) if poly.is_finite() else math.inf
    full_area = area(paired.polygon, bits)
    ok_area = sub_area is not math.inf and abs(float(sub_area.mid) - float(full_area.mid)) < 1e-9
    return {"contained": contained, "area_sub": sub_area, "area": full_area, "equal": contained and ok_area}


__all__ = [
    "VeechResult", "compute", "rotation_stabilizer_nontrivial", "contains_minus_identity",
    "shift_surface", "shift_matrix", "conjugate", "reduce_point", "in_subgroup", "domain_sides",
    "uhp_half_plane", "words", "same_group",
]
