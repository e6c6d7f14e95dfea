"""Exact arithmetic in a real-embedded algebraic number field.

Elements are rational coefficient vectors in the power basis of a fixed root
of a monic, squarefree minimal polynomial.  Zero is decided symbolically;
signs are decided exactly (closed form for quadratic fields, interval
refinement of the isolated root otherwise).
"""

from __future__ import annotations

import ast
import re
from contextlib import contextmanager
from fractions import Fraction

from gmpy2 import mpq, isqrt
from mpmath import iv
from mpmath.libmp import to_man_exp

__all__ = [
    "NumberField",
    "FieldElement",
    "QQ",
    "compare",
    "to_interval",
    "interval_precision",
    "interval_bounds",
    "field_from_expression",
]


@contextmanager
def interval_precision(bits):
    """Temporarily set the working precision of :mod:`mpmath.iv`."""
    old = iv.prec
    iv.prec = max(int(bits), 16)
    try:
        yield
    finally:
        iv.prec = old


def _q(x):
    if isinstance(x, FieldElement):
        if not x.is_rational():
            raise ValueError("not a rational number: %s" % x)
        return x.coeffs[0]
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted")
    return mpq(x)


# -- polynomials over Q, coefficient lists low degree first ----------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _peval(p, x):
    r = mpq(0)
    for c in reversed(p):
        r = r * x + c
    return r


def _pderiv(p):
    return _trim([i * p[i] for i in range(1, len(p))])


def _pdivmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a = _trim(a)
    return _trim(q), a


def _pmul(a, b):
    if not a or not b:
        return []
    r = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return r


def _psub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return a


def _sturm_chain(p):
    chain = [_trim(p), _pderiv(p)]
    while chain[-1]:
        r = _pdivmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain, x):
    signs = [s for s in ((_peval(p, x) > 0) - (_peval(p, x) < 0) for p in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _roots_in(chain, lo, hi):
    """Number of distinct real roots in (lo, hi]."""
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def _cauchy_bound(p):
    return 1 + max(abs(c / p[-1]) for c in p[:-1]) if len(p) > 1 else mpq(1)


class NumberField:
    """Q(alpha) for one real root alpha of a monic squarefree polynomial.

    Instances are cached: two specs naming the same root of the same
    polynomial give the same object, so element equality is by identity of
    the field plus coefficient vectors.
    """

    _cache = {}

    def __new__(cls, min_poly, embedding, name=None):
        poly = tuple(_q(c) for c in min_poly)
        if len(poly) < 2 or poly[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        lo, hi = _q(embedding[0]), _q(embedding[1])
        if lo > hi:
            raise ValueError("embedding interval is empty")
        chain = _sturm_chain(list(poly))
        if len(_pgcd(list(poly), _pderiv(list(poly)))) > 1:
            raise ValueError("minimal polynomial is not squarefree")
        inside = _roots_in(chain, lo, hi) + (1 if _peval(list(poly), lo) == 0 else 0)
        if inside != 1:
            raise ValueError("embedding interval must isolate exactly one real root (found %d)" % inside)
        bound = _cauchy_bound(list(poly)) + 1
        index = _roots_in(chain, -bound, lo) - (1 if _peval(list(poly), lo) == 0 else 0)
        key = (poly, index)
        field = cls._cache.get(key)
        if field is not None:
            return field
        field = super().__new__(cls)
        field._init(poly, lo, hi, index, chain, name)
        cls._cache[key] = field
        return field

    def _init(self, poly, lo, hi, index, chain, name):
        self.min_poly = poly
        self.degree = len(poly) - 1
        self.root_index = index
        self._chain = chain
        n = self.degree
        if n == 1:
            lo = hi = -poly[0]
        elif _peval(list(poly), lo) == 0:
            hi = lo
        elif _peval(list(poly), hi) == 0:
            lo = hi
        self._lo, self._hi = lo, hi
        # x^k reduced modulo min_poly for k in [n, 2n - 2]
        self._powers = {}
        cur = [mpq(0)] * n + [mpq(1)]
        for k in range(n, 2 * n - 1):
            cur = _pdivmod(cur, list(poly))[1]
            cur = cur + [mpq(0)] * (n - len(cur))
            self._powers[k] = tuple(cur)
            cur = [mpq(0)] + list(cur)
        if n == 2:
            p, q = poly[1], poly[0]
            self._disc = p * p - 4 * q
            # alpha = (-p + sigma * sqrt(disc)) / 2
            self._sigma = 1 if 2 * lo + p >= 0 and 2 * hi + p > 0 else -1
        if name is None:
            name = self._default_name()
        self.name = name

    def _default_name(self):
        if self.degree == 1:
            return "1"
        if self.degree == 2 and self.min_poly[1] == 0 and self._sigma == 1:
            d = -self.min_poly[0]
            if d.denominator == 1:
                return "sqrt%d" % int(d)
        return "t"

    # -- constructors ---------------------------------------------------

    @classmethod
    def quadratic(cls, d):
        """Q(sqrt d) with the positive square root, d a positive non-square integer."""
        d = int(d)
        r = int(isqrt(d))
        if d <= 0 or r * r == d:
            raise ValueError("sqrt(%d) is rational or imaginary" % d)
        return cls([-d, 0, 1], [r, r + 1])

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field is self:
                return x
            if x.is_rational():
                return self._rational(x.coeffs[0])
            raise ValueError("element of %s is not in %s" % (x.field, self))
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (list, tuple)):
            return self.from_json(x)
        return self._rational(_q(x))

    def _rational(self, c):
        return FieldElement(self, (c,) + (mpq(0),) * (self.degree - 1))

    @property
    def zero(self):
        return self._rational(mpq(0))

    @property
    def one(self):
        return self._rational(mpq(1))

    @property
    def gen(self):
        if self.degree == 1:
            return self._rational(self._lo)
        return FieldElement(self, (mpq(0), mpq(1)) + (mpq(0),) * (self.degree - 2))

    def from_json(self, coeffs):
        coeffs = [_q(c) for c in coeffs]
        if len(coeffs) > self.degree:
            raise ValueError("too many coefficients for a degree %d field" % self.degree)
        return FieldElement(self, tuple(coeffs) + (mpq(0),) * (self.degree - len(coeffs)))

    def parse(self, text):
        """Parse an arithmetic expression in the generator name.

        ``"1+sqrt3"``, ``"(2 - t)/3"``, ``"7/4"``, ``"1.25"`` are accepted; the generator
        may be written as the field's name, ``t`` or ``alpha``.
        """
        src = text.strip().replace("^", "**")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ValueError("cannot parse field element %r" % text) from exc
        names = {"t": self.gen, "alpha": self.gen, self.name: self.gen}
        return self(_eval_expr(tree.body, names, src))

    def spec(self):
        return {
            "min_poly": [str(c) for c in self.min_poly],
            "embedding": [str(self._lo), str(self._hi)],
        }

    # -- root refinement ---------------------------------------------------

    def root_bounds(self, width):
        """Rational (lo, hi) around the root with hi - lo <= width."""
        poly = list(self.min_poly)
        lo, hi = self._lo, self._hi
        slo = _peval(poly, lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            sm = _peval(poly, mid)
            if sm == 0:
                lo = hi = mid
                break
            if (sm > 0) == (slo > 0):
                lo, slo = mid, sm
            else:
                hi = mid
        if self.degree > 2:
            self._lo, self._hi = lo, hi
        return lo, hi

    def __repr__(self):
        if self.degree == 1:
            return "QQ"
        if self.name.startswith("sqrt"):
            return "Q(%s)" % self.name
        return "NumberField(%s, root #%d)" % (list(map(str, self.min_poly)), self.root_index)


def _eval_expr(node, names, text):
    if isinstance(node, ast.BinOp):
        a = _eval_expr(node.left, names, text)
        if isinstance(node.op, ast.Pow):
            e = node.right
            if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub) and isinstance(e.operand, ast.Constant):
                return a ** -int(e.operand.value)
            if isinstance(e, ast.Constant) and isinstance(e.value, int):
                return a ** e.value
            raise ValueError("exponent must be an integer literal in %r" % text)
        b = _eval_expr(node.right, names, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    elif isinstance(node, ast.UnaryOp):
        v = _eval_expr(node.operand, names, text)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    elif isinstance(node, ast.Constant) and isinstance(node.value, int):
        return names["t"].field(node.value)
    elif isinstance(node, ast.Constant) and isinstance(node.value, float):
        # decimals are read exactly from their digits
        return names["t"].field(mpq(ast.get_source_segment(text, node)))
    elif isinstance(node, ast.Name) and node.id in names:
        return names[node.id]
    raise ValueError("unsupported syntax in field element %r" % text)


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- coercion ---------------------------------------------------------

    def _other(self, y):
        if isinstance(y, FieldElement):
            if y.field is self.field:
                return y
            if y.is_rational():
                return self.field._rational(y.coeffs[0])
            if self.is_rational():
                return None
            raise ValueError("mismatched fields: %r and %r" % (self.field, y.field))
        if isinstance(y, (int, Fraction, type(mpq(0)))):
            return self.field._rational(mpq(y))
        return NotImplemented

    def _lift(self, y):
        """Return (x, y) over a common field, promoting rationals."""
        o = self._other(y)
        if o is None:
            return y.field(self), y
        return self, o

    # -- arithmetic -----------------------------------------------------

    def __add__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        if o is None:
            return y + self
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        if o is None:
            return -(y - self)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, y):
        return -(self - y)

    def __mul__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        if o is None:
            return y * self
        f = self.field
        a, b = self.coeffs, o.coeffs
        n = f.degree
        if n == 1:
            return FieldElement(f, (a[0] * b[0],))
        if n == 2:
            p, q = f.min_poly[1], f.min_poly[0]
            t = a[1] * b[1]
            return FieldElement(f, (a[0] * b[0] - q * t, a[0] * b[1] + a[1] * b[0] - p * t))
        prod = [mpq(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, z in enumerate(b):
                    prod[i + j] += x * z
        res = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(f._powers[k]):
                    res[i] += c * r
        return FieldElement(f, tuple(res))

    __rmul__ = __mul__

    def inverse(self):
        f = self.field
        a = self.coeffs
        if self.is_zero():
            raise ZeroDivisionError("division by zero in %r" % f)
        if f.degree == 1:
            return FieldElement(f, (1 / a[0],))
        if f.degree == 2:
            p, q = f.min_poly[1], f.min_poly[0]
            norm = a[0] * a[0] - p * a[0] * a[1] + q * a[1] * a[1]
            return FieldElement(f, ((a[0] - p * a[1]) / norm, -a[1] / norm))
        # extended Euclid: u * a + v * m = 1
        m = list(f.min_poly)
        r0, r1 = m, _trim(list(a))
        s0, s1 = [], [mpq(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        inv = [c / r1[0] for c in s1]
        inv = _pdivmod(inv, m)[1]
        return FieldElement(f, tuple(inv) + (mpq(0),) * (f.degree - len(inv)))

    def __truediv__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        if o is None:
            return y.field(self) * y.inverse()
        return self * o.inverse()

    def __rtruediv__(self, y):
        return self.inverse() * y

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        r = self.field.one
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def sign(self):
        """Exact sign under the chosen real embedding: -1, 0 or +1."""
        c = self.coeffs
        f = self.field
        if f.degree == 1 or not any(c[1:]):
            return (c[0] > 0) - (c[0] < 0)
        if f.degree == 2:
            a = 2 * c[0] - c[1] * f.min_poly[1]
            b = c[1] * f._sigma
            sa = (a > 0) - (a < 0)
            sb = (b > 0) - (b < 0)
            if sa == 0 or sa == sb:
                return sb
            if sb == 0:
                return sa
            return sa if a * a > b * b * f._disc else sb
        if self.is_zero():
            return 0
        width = mpq(1, 1 << 20)
        while True:
            lo, hi = _poly_range(c, *f.root_bounds(width))
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            width /= 1 << 32

    def __eq__(self, y):
        o = self._other(y) if isinstance(y, (FieldElement, int, Fraction, type(mpq(0)))) else NotImplemented
        if o is NotImplemented:
            return False
        if o is None:
            return False
        return self.coeffs == o.coeffs

    def __ne__(self, y):
        return not self == y

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((id(self.field), self.coeffs))
        return self._hash

    def __lt__(self, y):
        return compare(self, y) < 0

    def __le__(self, y):
        return compare(self, y) <= 0

    def __gt__(self, y):
        return compare(self, y) > 0

    def __ge__(self, y):
        return compare(self, y) >= 0

    def __bool__(self):
        return not self.is_zero()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- conversions ------------------------------------------------------

    def __float__(self):
        c = self.coeffs
        if self.is_rational():
            return float(c[0])
        with interval_precision(64):
            v = self.to_interval(60)
        return float(v.mid)

    def to_interval(self, precision_bits=53):
        """An :mod:`mpmath.iv` interval containing the element.

        Its width is at most ``2**(1 - precision_bits) * max(1, |x|)``.
        """
        bits = max(int(precision_bits), 16)
        c = self.coeffs
        f = self.field
        work = bits + 24
        while True:
            with interval_precision(work):
                if self.is_rational():
                    v = iv.mpf(int(c[0].numerator)) / int(c[0].denominator)
                elif f.degree == 2:
                    s = iv.sqrt(iv.mpf(int(f._disc.numerator)) / int(f._disc.denominator))
                    p = iv.mpf(int(f.min_poly[1].numerator)) / int(f.min_poly[1].denominator)
                    root = (-p + f._sigma * s) / 2
                    v = _iv(c[0]) + _iv(c[1]) * root
                else:
                    lo, hi = f.root_bounds(mpq(1, 1 << (work + 8)))
                    root = iv.mpf([_iv(lo).a, _iv(hi).b])
                    v = iv.mpf(0)
                    for a in reversed(c):
                        v = v * root + _iv(a)
                mag = max(abs(v.a), abs(v.b), 1)
                if v.delta <= mag * iv.mpf(2) ** (1 - bits):
                    return v
            work *= 2

    def to_json(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return [str(x) for x in c]

    def __str__(self):
        c = self.coeffs
        if self.is_rational():
            return str(c[0])
        name = self.field.name
        terms = []
        for k, a in enumerate(c):
            if a == 0:
                continue
            g = "" if k == 0 else (name if k == 1 else "%s^%d" % (name, k))
            if k == 0:
                t = str(a)
            elif a == 1:
                t = g
            elif a == -1:
                t = "-" + g
            else:
                t = "%s*%s" % (a, g)
            terms.append(t)
        s = terms[0]
        for t in terms[1:]:
            s += " - " + t[1:] if t.startswith("-") else " + " + t
        return s

    def __repr__(self):
        return "FieldElement(%s)" % self


def _iv(c):
    return iv.mpf(int(c.numerator)) / int(c.denominator)


def _poly_range(coeffs, lo, hi):
    """Rational bounds of sum c_k x^k over x in [lo, hi] (interval Horner)."""
    a = b = mpq(0)
    for c in reversed(coeffs):
        cands = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(cands) + c, max(cands) + c
    return a, b


def _raw_to_mpq(raw):
    # to_man_exp drops the sign bit
    man, exp = to_man_exp(raw)
    q = mpq(int(man)) * mpq(2) ** int(exp)
    return -q if raw[0] else q


def interval_bounds(v):
    """Exact rational endpoints (lo, hi) of an :mod:`mpmath.iv` interval."""
    lo, hi = v._mpi_
    return _raw_to_mpq(lo), _raw_to_mpq(hi)


def compare(x, y):
    """Exact comparison under the embedding: -1, 0 or +1 (less/equal/greater)."""
    if isinstance(x, FieldElement):
        return (x - y).sign()
    return -compare(y, x)


def to_interval(x, precision_bits):
    return x.to_interval(precision_bits)


QQ = NumberField([0, 1], [-1, 1])

_SQRT = re.compile(r"sqrt(\d+)")


def field_from_expression(*texts):
    """The field needed to read expressions like ``"1+sqrt3"``.

    Returns ``Q(sqrt d)`` when a single ``sqrtd`` token occurs, otherwise QQ.
    """
    found = set()
    for t in texts:
        found.update(int(m) for m in _SQRT.findall(t))
    if not found:
        return QQ
    if len(found) > 1:
        raise ValueError("expressions mix several square roots: %s" % sorted(found))
    return NumberField.quadratic(found.pop())
