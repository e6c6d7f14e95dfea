import random

import numpy as np
import pytest
from mpmath import mp, mpf, sqrt as msqrt

from veech.catalog import l_surface, square_torus
from veech.exactnum import QQ, interval_bounds
from veech.mat2 import frob2, inv, mul, psl_canonical
from veech.membership import SurfaceData, candidate_matrices, frobenius_norm_sq, is_member, nu, nu_sq


def M(*xs):
    return tuple(QQ(x) for x in xs)


I = M(1, 0, 0, 1)
S = M(0, -1, 1, 0)
B = M(1, 0, 2, 1)
SHIFT = M(1, 0, "1/2", 1)


def test_frobenius_examples():
    assert frobenius_norm_sq(S) == 2
    assert frobenius_norm_sq(B) == 6
    assert frobenius_norm_sq(I) == 2


def test_nu_examples():
    assert nu(QQ(2)).a <= 1 <= nu(QQ(2)).b
    mp.prec = 120
    golden = msqrt((3 + msqrt(5)) / 2)
    v = nu(QQ(3))
    assert v.a <= golden <= v.b
    v = nu(QQ(6))
    assert v.a <= 1 + msqrt(2) <= v.b
    with pytest.raises(ValueError):
        nu_sq(QQ("19/10"))


def test_nu_upper_bound_is_rational_and_above():
    for a2 in ("2", "3", "257/16", "1000"):
        r = nu_sq(QQ(a2))
        lo, hi = (interval_bounds(r.interval))
        assert hi <= r.upper
        assert lo <= r.upper


def test_nu_against_eigenvalues():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (rng.randint(-40, 40) or 1 for _ in range(3))
        d = QQ(1 + b * c) / a
        A = (QQ(a), QQ(b), QQ(c), d)
        AtA = np.array([[float(A[0]), float(A[1])], [float(A[2]), float(A[3])]])
        top = np.linalg.eigvalsh(AtA.T @ AtA)[-1]
        assert float(nu_sq(frob2(A)).interval.mid) == pytest.approx(top, rel=1e-12)


def test_candidates_torus(torus_data):
    cands = set(candidate_matrices(torus_data, 2))
    for A in (I, S, tuple(-x for x in I), tuple(-x for x in S)):
        assert A in cands
    assert all(frob2(A) == 2 for A in cands)


def test_candidates_l(L_data):
    cands = candidate_matrices(L_data, 6)
    assert B in cands
    assert len(cands) == len(set(cands))
    assert all(A[0] * A[3] - A[1] * A[2] == 1 and frob2(A) <= 6 for A in cands)


def test_membership_examples(L_data):
    assert not is_member(M(1, 0, 1, 1), L_data)
    assert is_member(B, L_data)
    assert is_member(I, L_data)
    assert is_member(M(-1, 0, 0, -1), L_data)
    assert is_member(S, L_data)
    assert is_member(M(2, 1, -1, 0), L_data)


def test_det_must_be_one(L_data):
    with pytest.raises(ValueError):
        L_data.is_member(M(2, 0, 0, 1))


def test_closure(L_data):
    members = L_data.members_up_to(16)
    assert len(members) > 5
    for A in members:
        assert L_data.is_member(inv(A))
        for C in members:
            AC = mul(A, C)
            if frob2(AC) <= 40:
                assert L_data.is_member(AC)


def test_conjugation_invariance(L):
    X = SurfaceData(L)
    Y = SurfaceData(L.transform(SHIFT))
    rng = random.Random(11)
    r = range(-3, 4)
    pool = [M(a, b, c, d) for a in r for b in r for c in r for d in r if a * d - b * c == 1]
    for Bm in rng.sample(pool, 60):
        conj = mul(mul(inv(SHIFT), Bm), SHIFT)
        assert Y.is_member(Bm) == X.is_member(conj)


def test_superset_of_staples(L):
    plain = SurfaceData(L)
    wide = SurfaceData(L, include_degenerate=True)
    assert len(wide.staples) > len(plain.staples)
    r = range(-3, 4)
    for A in (M(a, b, c, d) for a in r for b in r for c in r for d in r if a * d - b * c == 1):
        assert plain.is_member(A) == wide.is_member(A)


def test_members_are_psl_canonical(torus_data):
    for A in torus_data.members_up_to(10):
        assert psl_canonical(A) == A


def test_square_torus_is_sl2z():
    data = SurfaceData(square_torus())
    members = set(data.members_up_to(11))
    r = range(-3, 4)
    oracle = {psl_canonical(M(a, b, c, d)) for a in r for b in r for c in r for d in r
              if a * d - b * c == 1 and a * a + b * b + c * c + d * d <= 11}
    assert members == oracle


def test_eigen_oracle_high_precision():
    # independent route: largest singular value from the characteristic polynomial
    mp.prec = 200
    for a2 in (QQ(3), QQ(6), QQ("257/16")):
        x = mpf(int(a2.coeffs[0].numerator)) / int(a2.coeffs[0].denominator)
        want = (x + msqrt(x * x - 4)) / 2
        got = nu_sq(a2, 150).interval
        assert got.a <= want <= got.b
