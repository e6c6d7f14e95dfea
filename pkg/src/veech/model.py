"""Marked segments on the model surface and the maps acting on them.

The model surface has one infinite cone per singularity; a cone of order d
is d + 1 copies of the plane glued along the positive x-axis.  A marked
segment is a saddle connection recorded on its source cone as
``(cone, sector, holonomy)``.  The model surface itself is never built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .mat2 import apply, det, vneg
from .surface import arg_less


@dataclass(frozen=True)
class MarkedSegment:
    cone: int
    sector: int
    holonomy: tuple

    @property
    def key(self):
        return (self.cone, self.sector, self.holonomy)

    def to_json(self, pair=None):
        d = {"cone": self.cone, "sector": self.sector,
             "holonomy": [self.holonomy[0].to_json(), self.holonomy[1].to_json()]}
        if pair is not None:
            d["pair"] = pair
        return d


class MarkedSegmentSet:
    """Marked segments up to a squared radius, indexed for exact lookup.

    ``pair[key]`` is the key of the orientation-paired segment.
    """

    def __init__(self, connections, radius2):
        self.radius2 = radius2
        self.pair = {}
        for sc in connections:
            if sc.length2 <= radius2:
                self.pair[sc.key] = (sc.target, sc.target_sector, vneg(sc.holonomy))
        for k, p in self.pair.items():
            if self.pair.get(p) != k:
                raise ValueError("segment set is not closed under reversal at %r" % (k,))

    def __len__(self):
        return len(self.pair)

    def __contains__(self, key):
        return key in self.pair

    def segments(self):
        return [MarkedSegment(*k) for k in self.pair]

    def holonomies(self):
        """Distinct holonomy vectors."""
        return list({k[2] for k in self.pair})

    def to_json(self):
        keys = sorted(self.pair, key=lambda k: (k[0], k[1], tuple(x.coeffs for x in k[2])))
        index = {k: i for i, k in enumerate(keys)}
        return [MarkedSegment(*k).to_json(pair=index[self.pair[k]]) for k in keys]


def mark_segments(connections, radius2):
    return MarkedSegmentSet(connections, radius2)


@dataclass(frozen=True)
class TransElement:
    """Cone permutation ``perm`` together with sector rotations ``rot``."""
    perm: tuple
    rot: tuple

    def is_identity(self):
        return all(p == i for i, p in enumerate(self.perm)) and not any(self.rot)


def trans_group(orders):
    """All translation automorphisms of the model surface for cone orders ``orders``.

    Cones of equal order may be permuted; each cone may be rotated by a
    multiple of 2 pi.
    """
    orders = list(orders)
    n = len(orders)
    classes = {}
    for i, d in enumerate(orders):
        classes.setdefault(d, []).append(i)
    perm_choices = []
    for d, ids in sorted(classes.items()):
        perm_choices.append([(ids, p) for p in itertools.permutations(ids)])
    perms = []
    for combo in itertools.product(*perm_choices):
        perm = [None] * n
        for ids, p in combo:
            for src, dst in zip(ids, p):
                perm[src] = dst
        perms.append(tuple(perm))
    rots = itertools.product(*[range(d + 1) for d in orders])
    rots = list(rots)
    out = [TransElement(p, r) for p in perms for r in rots]
    # identity first, a deterministic order otherwise
    out.sort(key=lambda t: (not t.is_identity(), t.perm, t.rot))
    return out


def trans_order(orders):
    from math import factorial
    counts = {}
    for d in orders:
        counts[d] = counts.get(d, 0) + 1
    total = 1
    for c in counts.values():
        total *= factorial(c)
    for d in orders:
        total *= d + 1
    return total


def apply_trans(t, m, orders):
    """Translation automorphism applied to a marked segment (or its key)."""
    cone, sector, hol = m.key if isinstance(m, MarkedSegment) else m
    key = (t.perm[cone], (sector + t.rot[cone]) % (orders[cone] + 1), hol)
    return MarkedSegment(*key) if isinstance(m, MarkedSegment) else key


def sector_shift(A):
    """How the lift of A's circle action shifts the sector of each direction.

    The lift is pinned by sending angle 0 into (-pi, pi].  When A sends the
    positive x-axis onto the negative one the lift of 0 is pi if the upper
    right entry is >= 0 and -pi otherwise, so that A and its inverse use
    inverse lifts (except for -I, which is its own inverse).  Returns a
    function of a direction v giving the sector increment (-1, 0 or 1) and Av.
    """
    one = A[0].field.one
    zero = A[0].field.zero
    beta = apply(A, (one, zero))
    sy = beta[1].sign()
    upper = sy > 0 or (sy == 0 and (beta[0].sign() > 0 or A[1].sign() >= 0))

    def shift(v):
        w = apply(A, v)
        below = arg_less(w, beta)
        if upper:
            return (1 if below else 0), w
        return (0 if below else -1), w

    return shift


def apply_fA(A, m, orders, shift=None):
    """The affine map of the model surface with derivative A, on a marked segment
    (or key).  ``orders`` lists the cone orders."""
    if det(A).sign() <= 0:
        raise ValueError("f_A needs det(A) > 0")
    if shift is None:
        shift = sector_shift(A)
    cone, sector, hol = m.key if isinstance(m, MarkedSegment) else m
    j, w = shift(hol)
    key = (cone, (sector + j) % (orders[cone] + 1), w)
    return MarkedSegment(*key) if isinstance(m, MarkedSegment) else key


__all__ = [
    "MarkedSegment", "MarkedSegmentSet", "mark_segments", "TransElement", "trans_group",
    "trans_order", "apply_trans", "apply_fA", "sector_shift",
]
