"""Candidate matrices and the staple membership test for the Veech group."""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np
from gmpy2 import mpq
from mpmath import iv

from .exactnum import FieldElement, interval_precision, interval_bounds
from .flat import delaunay, voronoi_staples, enumerate_segments, trace, max_length2
from .mat2 import cross, det, frob2, norm2, mul, psl_canonical, sort_key
from .model import MarkedSegmentSet, apply_fA, apply_trans, sector_shift, trans_group


def frobenius_norm_sq(A):
    return frob2(A)


@dataclass(frozen=True)
class NuSquared:
    """nu(a)^2 as an interval plus an exact rational upper bound."""
    interval: object
    upper: object


def _as_interval(x, bits):
    if isinstance(x, FieldElement):
        return x.to_interval(bits)
    x = mpq(x)
    return iv.mpf(int(x.numerator)) / int(x.denominator)


def nu_sq(a2, bits=64):
    """Square of the largest singular value of any matrix with det 1 and
    squared Frobenius norm a2: (a2 + sqrt(a2^2 - 4)) / 2."""
    if isinstance(a2, FieldElement):
        if a2 < 2:
            raise ValueError("squared norm below 2 is impossible for det 1")
    elif mpq(a2) < 2:
        raise ValueError("squared norm below 2 is impossible for det 1")
    with interval_precision(bits + 16):
        x = _as_interval(a2, bits + 16)
        disc = x * x - 4
        disc = iv.mpf([max(disc.a, 0), max(disc.b, 0)])
        v = (x + iv.sqrt(disc)) / 2
        upper = interval_bounds(v)[1]
    return NuSquared(v, upper)


def nu(a2, bits=64):
    with interval_precision(bits + 16):
        return iv.sqrt(nu_sq(a2, bits).interval)


def _float(x):
    return float(x)


class SurfaceData:
    """Delaunay triangulation, staples and a growing index of marked segments."""

    def __init__(self, surface, include_degenerate=False):
        self.surface = surface
        self.field = surface.field
        self.tri = delaunay(surface)
        self.staples, self.degenerate = voronoi_staples(self.tri)
        if include_degenerate:
            self.staples = self.staples + self.degenerate
        self.ell2 = max_length2(self.staples)
        self.orders = self.tri.orders
        self.trans = trans_group(self.orders)
        self.index = MarkedSegmentSet([], self.field.zero)
        self._connections = []
        self._traced = {}
        self._float = {}

    # -- segment index ------------------------------------------------------

    def ensure_radius2(self, r2):
        """Make the index complete up to squared length r2 (grows monotonically)."""
        r2 = self.field(r2)
        if r2 <= self.index.radius2:
            return self.index
        self._connections = enumerate_segments(self.tri, r2)
        self.index = MarkedSegmentSet(self._connections, r2)
        return self.index

    @property
    def connections(self):
        return self._connections

    def lookup(self, key):
        """Key of the orientation pair of marked segment ``key``, or None if
        ``key`` is not a marked segment."""
        hol = key[2]
        if norm2(hol) <= self.index.radius2:
            return self.index.pair.get(key)
        if key not in self._traced:
            sc = trace(self.tri, *key)
            self._traced[key] = None if sc is None else sc.reverse().key
        return self._traced[key]

    def float_vec(self, v):
        f = self._float.get(v)
        if f is None:
            f = self._float[v] = (_float(v[0]), _float(v[1]))
        return f

    # -- membership ----------------------------------------------------------

    def staple_images(self, A):
        shift = sector_shift(A)
        return [(apply_fA(A, st.s.key, self.orders, shift), apply_fA(A, st.s_rev.key, self.orders, shift))
                for st in self.staples]

    def membership_witness(self, A):
        """A Trans element t with t.f_A mapping staples to paired marked segments, or None."""
        A = tuple(self.field(x) for x in A)
        if det(A) != 1:
            raise ValueError("membership test needs det(A) = 1, got %s" % det(A))
        images = self.staple_images(A)
        for t in self.trans:
            for m, m2 in images:
                tm = apply_trans(t, m, self.orders)
                if self.lookup(tm) != apply_trans(t, m2, self.orders):
                    break
            else:
                return t
        return None

    def is_member(self, A):
        return self.membership_witness(A) is not None

    # -- candidates ------------------------------------------------------------

    def base_pair(self):
        """Two shortest staples with independent holonomies."""
        order = sorted(self.staples, key=lambda st: (st.length2, st.edge))
        v1 = order[0].s.holonomy
        for st in order[1:]:
            if cross(v1, st.s.holonomy) != 0:
                return v1, st.s.holonomy
        raise ValueError("no independent staple pair")

    def candidate_matrices(self, a2):
        """Every det 1 matrix of squared norm <= a2 sending the base staple
        pair to holonomies of marked segments."""
        a2 = self.field(a2)
        v1, v2 = self.base_pair()
        nu2 = nu_sq(a2).upper
        r1, r2 = nu2 * norm2(v1), nu2 * norm2(v2)
        self.ensure_radius2(max(r1, r2))
        hols = sorted(self.index.holonomies(), key=lambda v: (tuple(v[0].coeffs), tuple(v[1].coeffs)))
        w1s = [w for w in hols if norm2(w) <= r1]
        w2s = [w for w in hols if norm2(w) <= r2]
        D = cross(v1, v2)
        # A = W V^-1 with V = [v1 v2]
        vi = (v2[1] / D, -v2[0] / D, -v1[1] / D, v1[0] / D)
        if not w1s or not w2s:
            return []
        f2 = np.array([self.float_vec(w) for w in w2s])
        fD = float(D)
        fvi = [float(x) for x in vi]
        fa2 = float(a2)
        tol = 1e-7 * max(1.0, abs(fD))
        out = {}
        for w1 in w1s:
            x1, y1 = self.float_vec(w1)
            c = x1 * f2[:, 1] - y1 * f2[:, 0]
            # entries of A in floats
            a = x1 * fvi[0] + f2[:, 0] * fvi[2]
            b = x1 * fvi[1] + f2[:, 0] * fvi[3]
            cc = y1 * fvi[0] + f2[:, 1] * fvi[2]
            d = y1 * fvi[1] + f2[:, 1] * fvi[3]
            n2 = a * a + b * b + cc * cc + d * d
            hits = np.nonzero((np.abs(c - fD) <= tol) & (n2 <= fa2 * (1 + 1e-9) + 1e-9))[0]
            for j in hits:
                w2 = w2s[j]
                if cross(w1, w2) != D:
                    continue
                W = (w1[0], w2[0], w1[1], w2[1])
                A = mul(W, vi)
                if frob2(A) <= a2:
                    out[A] = None
        return sorted(out, key=lambda A: (frob2(A), sort_key(A)))

    def members_up_to(self, a2):
        """Veech group elements of squared norm <= a2, one per +-pair."""
        found = {}
        for A in self.candidate_matrices(a2):
            c = psl_canonical(A)
            if c in found:
                continue
            if self.is_member(A):
                found[c] = None
        return list(found)


def candidate_matrices(data, a2):
    return data.candidate_matrices(a2)


def is_member(A, data):
    return data.is_member(A)


__all__ = [
    "frobenius_norm_sq", "nu_sq", "nu", "NuSquared", "SurfaceData", "candidate_matrices",
    "is_member",
]
