import cmath
import math
import random

import numpy as np
from gmpy2 import mpq
import pytest
from mpmath import iv, mp, mpf, acosh, log, sqrt as msqrt

from veech.exactnum import QQ, NumberField, interval_bounds
from veech.hyperbolic import (
    KleinPolygon, act, area, area_in_ball, ball_area, bisector_half_plane, clip, dirichlet_domain,
    dist_center, klein_line, klein_point, klein_to_uhp, side_pairings_and_signature, signature_area,
    stopping_test,
)
from veech.mat2 import inv, mul
from veech.membership import nu_sq


def M(*xs):
    return tuple(QQ(x) for x in xs)


I = M(1, 0, 0, 1)
T = M(1, 1, 0, 1)
SHIFT = M(1, 0, "1/2", 1)


def sl2z(bound):
    r = range(-bound, bound + 1)
    return [M(a, b, c, d) for a in r for b in r for c in r for d in r if a * d - b * c == 1]


def modular_conjugated(bound=3):
    """Elements M g M^-1 for the modular group with M = [[1,0],[1/2,1]], which moves
    the elliptic points away from i."""
    return [mul(mul(SHIFT, g), inv(SHIFT)) for g in sl2z(bound)]


def exact(x):
    man, exp = mpf(x).man_exp
    return mpq(man) * mpq(2) ** exp if exp >= 0 else mpq(man, 2 ** -exp)


def contains(iv_, x):
    lo, hi = interval_bounds(iv_)
    return lo <= exact(x) <= hi


def test_dist_center_examples():
    mp.prec = 100
    assert contains(dist_center(M(2, 0, 0, "1/2")), mp.log(4))
    assert contains(dist_center(T), mp.log((3 + msqrt(5)) / 2))
    assert dist_center(I) == 0


def test_dist_center_matches_acosh():
    rng = random.Random(3)
    mp.prec = 120
    for A in rng.sample(sl2z(4), 40):
        a, b, c, d = (int(x.coeffs[0]) for x in A)
        z = mp.mpc(b * d + a * c, 1) / (c * c + d * d)
        want = acosh(1 + abs(z - mp.mpc(0, 1)) ** 2 / (2 * z.imag))
        got = dist_center(A)
        assert abs(float(got.mid) - float(want)) < 1e-12


def test_bisector_examples():
    hp = bisector_half_plane(T)
    assert hp.describe() == "Re z <= 1/2"
    hp = bisector_half_plane(M(2, 0, 0, "1/2"))
    assert hp.contains(1.99j) and not hp.contains(2.01j)
    with pytest.raises(ValueError):
        bisector_half_plane(M(0, -1, 1, 0))


def test_bisector_is_equidistant():
    rng = random.Random(5)
    for A in rng.sample([A for A in sl2z(3) if sum(x * x for x in A) != 2], 30):
        a, b, c, d = (float(x) for x in A)
        Ai = (a * 1j + b) / (c * 1j + d)
        hp = bisector_half_plane(A)
        for _ in range(20):
            z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
            di = abs(z - 1j) / abs(z + 1j)
            dA = abs(z - Ai) / abs(z - Ai.conjugate())
            if abs(di - dA) > 1e-9:
                assert hp.contains(z) == (di < dA)


def test_klein_line_agrees_with_half_plane():
    rng = random.Random(9)
    for A in rng.sample([A for A in sl2z(3) if sum(x * x for x in A) != 2], 30):
        hp = bisector_half_plane(A)
        p, q, r = (float(t) for t in klein_line(A))
        for _ in range(20):
            z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
            x, y = klein_point(z)
            lhs = p * x + q * y - r
            if abs(lhs) > 1e-9:
                assert (lhs < 0) == hp.contains(z)


def test_act_matches_mobius():
    rng = random.Random(13)
    for A in rng.sample(sl2z(3), 20):
        a, b, c, d = (float(x) for x in A)
        for z in (1j, 0.3 + 2j, -1.2 + 0.4j):
            w = (a * z + b) / (c * z + d)
            p = klein_point(z)
            q = act(A, (QQ(repr(p[0])), QQ(repr(p[1]))))
            assert klein_to_uhp(q) == pytest.approx(w, rel=1e-9)


def test_strip_has_infinite_area():
    poly = dirichlet_domain([T, inv(T)])
    assert not poly.is_finite()
    assert area(poly) is math.inf


def test_clip_is_idempotent():
    poly = dirichlet_domain(modular_conjugated())
    for A in poly.side_matrices():
        again = clip(poly, A)
        assert again.vertices == poly.vertices


def test_ideal_triangle():
    tri = KleinPolygon.ideal([-1, 0, None], QQ)
    mp.prec = 80
    assert contains(area(tri), mp.pi)
    quad = KleinPolygon.ideal([-1, 0, 1, None], QQ)
    assert contains(area(quad), 2 * mp.pi)


def test_full_ball_area():
    mp.prec = 100
    for a2 in ("3", "6", "257/16"):
        x = mpf(QQ(a2).coeffs[0].numerator) / QQ(a2).coeffs[0].denominator
        r = log((x + msqrt(x * x - 4)) / 2) / 2
        want = 2 * mp.pi * (mp.cosh(r) - 1)
        assert contains(ball_area(QQ(a2)), want)
        frame = KleinPolygon.frame(QQ)
        assert abs(float(area_in_ball(frame, QQ(a2)).mid) - float(want)) < 1e-12


def test_half_ball_area():
    half = KleinPolygon(QQ, [(QQ(-2), QQ(0)), (QQ(2), QQ(0)), (QQ(2), QQ(2)), (QQ(-2), QQ(2))], [None] * 4)
    mp.prec = 100
    for a2 in (3, 10):
        r = log((a2 + msqrt(a2 * a2 - 4)) / 2) / 2
        got = area_in_ball(half, QQ(a2))
        assert contains(got, mp.pi * (mp.cosh(r) - 1))
        assert float(got.delta) < 1e-8


def polar_oracle(poly, rho, n=20000):
    """Area of poly within the Klein ball of radius rho by quadrature over the angle."""
    vs = [(float(x), float(y)) for x, y in poly.vertices]
    total = 0.0
    for k in range(n):
        th = 2 * math.pi * (k + 0.5) / n
        u = (math.cos(th), math.sin(th))
        R = math.inf
        for i in range(len(vs)):
            a, b = vs[i], vs[(i + 1) % len(vs)]
            nx, ny = b[1] - a[1], a[0] - b[0]
            den = nx * u[0] + ny * u[1]
            if den > 1e-15:
                R = min(R, (nx * a[0] + ny * a[1]) / den)
        R = min(R, rho)
        total += 1 / math.sqrt(1 - R * R) - 1
    return total * 2 * math.pi / n


def test_area_in_ball_against_quadrature():
    poly = dirichlet_domain(modular_conjugated())
    for a2 in ("3", "6", "20"):
        n2 = float(nu_sq(QQ(a2)).interval.mid)
        rho = (n2 - 1) / (n2 + 1)
        got = float(area_in_ball(poly, QQ(a2)).mid)
        assert got == pytest.approx(polar_oracle(poly, rho), abs=1e-3)


def test_stopping_test_negative_cases():
    assert stopping_test(dirichlet_domain([I, M(-1, 0, 0, -1)]), QQ(4)).verdict is False
    assert stopping_test(dirichlet_domain([T, inv(T)]), QQ(4)).verdict is False


def test_conjugated_modular_group():
    poly = dirichlet_domain(modular_conjugated())
    assert poly.is_finite()
    mp.prec = 80
    assert contains(area(poly), mp.pi / 3)
    paired = side_pairings_and_signature(poly)
    assert str(paired.signature) == "(0; 2, 3, inf)"
    assert signature_area(paired.signature) == pytest.approx(math.pi / 3)
    assert stopping_test(poly, QQ(16)).verdict is True


def test_domains_nest():
    els = modular_conjugated()
    small = dirichlet_domain([A for A in els if float(sum(x * x for x in A)) <= 6])
    big = dirichlet_domain(els)
    rng = random.Random(17)
    for _ in range(2000):
        p = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        if p[0] ** 2 + p[1] ** 2 < 1 and big.contains(p):
            assert small.contains(p)


def test_half_planes_contain_the_ball():
    # every bisector of an element of norm^2 > a2 misses the open ball B(i, log nu(a))
    rng = random.Random(19)
    a2 = QQ(6)
    n2 = float(nu_sq(a2).interval.mid)
    rho = (n2 - 1) / (n2 + 1)
    for A in [A for A in modular_conjugated(4) if sum(x * x for x in A) > a2]:
        p, q, r = (float(t) for t in klein_line(A))
        for _ in range(50):
            t = rng.uniform(0, 2 * math.pi)
            s = rho * math.sqrt(rng.random())
            assert p * s * math.cos(t) + q * s * math.sin(t) <= r + 1e-12


def test_ball_radius_oracle():
    # Klein radius tanh r with r = log nu from numpy singular values
    rng = np.random.default_rng(23)
    for _ in range(50):
        a, b, c = rng.integers(1, 30, size=3)
        A = np.array([[a, b], [c, (1 + b * c) / a]], dtype=float)
        s = np.linalg.svd(A, compute_uv=False)[0]
        a2 = QQ(int(a)) ** 2 + QQ(int(b)) ** 2 + QQ(int(c)) ** 2 + (QQ(1 + int(b) * int(c)) / int(a)) ** 2
        n2 = float(nu_sq(a2).interval.mid)
        assert (n2 - 1) / (n2 + 1) == pytest.approx(math.tanh(math.log(s)), rel=1e-10)
