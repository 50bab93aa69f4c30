"""Exact arithmetic in Z[beta, 1/beta] for a real algebraic base beta > 1.

Elements are integer coefficient vectors modulo the minimal polynomial,
together with a power-of-beta shift, so digit-word values never need
rational coefficients.  Sign, comparison and floor are decided exactly by
refining a certified isolating interval of the chosen real root; no
floating point enters any decision.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath


class AlgebraError(Exception):
    pass


class FieldError(AlgebraError):
    """Invalid base polynomial or failed certification."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficients lowest power first)


def _strip_poly(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_eval_frac(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _sturm_chain(coeffs):
    # over Fractions; input assumed squarefree enough for counting
    chain = [[Fraction(c) for c in _strip_poly(coeffs)]]
    chain.append([Fraction(c) for c in _strip_poly(_poly_derivative(coeffs))])
    while chain[-1]:
        a, b = chain[-2], chain[-1]
        r = _poly_mod(a, b)
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _poly_mod(a, b):
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[i + shift] -= q * c
        a = _strip_poly(a)
    return a


def _sign_variations(values):
    signs = [v for v in values if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def _sturm_count(chain, a, b):
    """Number of distinct real roots in (a, b]."""
    va = _sign_variations([_poly_eval_frac(p, a) for p in chain])
    vb = _sign_variations([_poly_eval_frac(p, b) for p in chain])
    return va - vb


# ---------------------------------------------------------------------------
# dyadic interval machinery for the dominant root


def _eval_at_dyadic(coeffs, num, k):
    """2^(k*deg) * p(num / 2^k), an exact integer."""
    rev = list(reversed(coeffs))
    acc = rev[0]
    for step, c in enumerate(rev[1:], start=1):
        acc = acc * num + (c << (k * step))
    return acc


def _interval_mul(alo, ahi, blo, bhi):
    p = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(p), max(p)


def _poly_on_interval(coeffs, lo, hi, k):
    """Bounds of p on [lo/2^k, hi/2^k] as (nlo, nhi, scale_log2)."""
    deg = len(coeffs) - 1
    if deg < 0:
        return 0, 0, 0
    acc_lo = acc_hi = coeffs[-1]
    scale = 0
    for c in reversed(coeffs[:-1]):
        acc_lo, acc_hi = _interval_mul(acc_lo, acc_hi, lo, hi)
        scale += k
        cs = c << scale
        acc_lo += cs
        acc_hi += cs
    return acc_lo, acc_hi, scale


class _RootInterval:
    """Monotonically refinable dyadic bracket of a simple real root."""

    def __init__(self, poly, lo: Fraction, hi: Fraction):
        self.poly = poly
        k = 0
        while (lo * 2**k).denominator != 1 or (hi * 2**k).denominator != 1:
            k += 1
        self.k = k
        self.lo = int(lo * 2**k)
        self.hi = int(hi * 2**k)
        if _eval_at_dyadic(poly, self.lo, self.k) >= 0 or _eval_at_dyadic(poly, self.hi, self.k) <= 0:
            raise FieldError("bracket does not straddle the root with p(lo)<0<p(hi)")

    def refine(self, steps=1):
        for _ in range(steps):
            self.lo, self.hi, self.k = self.lo * 2, self.hi * 2, self.k + 1
            mid = (self.lo + self.hi) // 2
            v = _eval_at_dyadic(self.poly, mid, self.k)
            if v == 0:
                # rational root; nudge the bracket asymmetrically (cannot
                # happen for irreducible degree >= 2 input)
                raise FieldError("rational root hit during refinement")
            if v > 0:
                self.hi = mid
            else:
                self.lo = mid

    def as_fractions(self):
        d = 1 << self.k
        return Fraction(self.lo, d), Fraction(self.hi, d)


# ---------------------------------------------------------------------------
# certified complex disks for the conjugate roots


def _frac_sqrt_bounds(q: Fraction):
    """(lb, ub) rationals with lb <= sqrt(q) <= ub, for q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    n, d = q.numerator, q.denominator
    s = isqrt(n * d)
    ub = s if s * s == n * d else s + 1
    return Fraction(s, d), Fraction(ub, d)


class ConjugateDisk:
    """Complex disk |z - center| <= radius certified to hold one conjugate."""

    def __init__(self, re: Fraction, im: Fraction, radius: Fraction):
        self.re = re
        self.im = im
        self.radius = radius

    def abs_bounds(self):
        m2 = self.re * self.re + self.im * self.im
        lb, ub = _frac_sqrt_bounds(m2)
        return max(Fraction(0), lb - self.radius), ub + self.radius

    def __repr__(self):
        return "ConjugateDisk(%.6f%+.6fi, r<%.3g)" % (
            float(self.re), float(self.im), float(self.radius))


def _disk_mul(a, b):
    abs_a = _frac_sqrt_bounds(a.re * a.re + a.im * a.im)[1]
    abs_b = _frac_sqrt_bounds(b.re * b.re + b.im * b.im)[1]
    return ConjugateDisk(
        a.re * b.re - a.im * b.im,
        a.re * b.im + a.im * b.re,
        abs_a * b.radius + abs_b * a.radius + a.radius * b.radius,
    )


def _disk_add_int(a, n):
    return ConjugateDisk(a.re + n, a.im, a.radius)


def _disk_inv(a):
    m2 = a.re * a.re + a.im * a.im
    lb = _frac_sqrt_bounds(m2)[0]
    if lb <= a.radius:
        raise AlgebraError("disk too close to zero to invert; refine conjugates")
    c_re, c_im = a.re / m2, -a.im / m2
    return ConjugateDisk(c_re, c_im, a.radius / (lb * (lb - a.radius)))


def _certify_conjugates(coeffs, root_lo: Fraction, root_hi: Fraction):
    """Isolating disks for all roots other than the bracketed real one.

    Approximate roots come from mpmath; every radius is an exact rational
    a-posteriori bound (degree * |p(c)| / |p'(c)|), so the certification
    itself involves no floating point.
    """
    deg = len(coeffs) - 1
    deriv = _poly_derivative(coeffs)
    high_first = list(reversed(coeffs))
    for dps in (40, 80, 160):
        with mpmath.workdps(dps):
            roots = mpmath.polyroots([mpmath.mpf(c) for c in high_first], maxsteps=200, extraprec=200)
        disks = []
        scale = 1 << 128
        for z in roots:
            re = Fraction(int(mpmath.floor(z.real * scale)), scale)
            im = Fraction(int(mpmath.floor(z.imag * scale)), scale)
            pc_re = _complex_poly_eval(coeffs, re, im)
            dc_re = _complex_poly_eval(deriv, re, im)
            p_ub = _frac_sqrt_bounds(pc_re[0] ** 2 + pc_re[1] ** 2)[1]
            d_lb = _frac_sqrt_bounds(dc_re[0] ** 2 + dc_re[1] ** 2)[0]
            if d_lb == 0:
                break
            disks.append(ConjugateDisk(re, im, deg * p_ub / d_lb))
        else:
            dominant = [
                i for i, d in enumerate(disks)
                if d.im == 0 or abs(d.im) <= d.radius
                if not (d.re + d.radius < root_lo or d.re - d.radius > root_hi)
            ]
            if len(dominant) != 1:
                continue
            conj = [d for i, d in enumerate(disks) if i != dominant[0]]
            if _disks_disjoint(disks, root_lo, root_hi, dominant[0]):
                return conj
    raise FieldError("could not certify conjugate root disks; is the polynomial squarefree?")


def _complex_poly_eval(coeffs, re: Fraction, im: Fraction):
    are, aim = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        are, aim = are * re - aim * im + c, are * im + aim * re
    return are, aim


def _disks_disjoint(disks, root_lo, root_hi, dominant_idx):
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            a, b = disks[i], disks[j]
            d2 = (a.re - b.re) ** 2 + (a.im - b.im) ** 2
            if d2 <= (a.radius + b.radius) ** 2:
                return False
    for i, d in enumerate(disks):
        if i == dominant_idx:
            continue
        h = max(Fraction(0), root_lo - d.re, d.re - root_hi)
        if h * h + d.im * d.im <= d.radius**2:
            return False
    return True


# ---------------------------------------------------------------------------


class BetaField:
    """A real algebraic base beta > 1 given by its integer minimal polynomial.

    ``min_poly`` is monic, highest degree first.  The instance carries a
    certified dyadic isolating interval for the chosen real root (the
    largest real root > 1) and certified disks for the other roots.
    """

    def __init__(self, min_poly):
        poly = [int(c) for c in min_poly]
        if len(poly) < 3:
            raise FieldError("degree < 2: integer bases are out of scope")
        if poly[0] != 1:
            raise FieldError("minimal polynomial must be monic")
        low = list(reversed(poly))
        if _strip_poly(low) != low:
            raise FieldError("degenerate polynomial")
        self.min_poly = tuple(poly)
        self.degree = len(poly) - 1
        self._low = low

        lo, hi = self._isolate_dominant_root(low)
        self._root = _RootInterval(low, lo, hi)
        self._root.refine(16)

        flo, fhi = self._root.as_fractions()
        self._conj_disks = _certify_conjugates(low, flo, fhi)
        self.conjugate_moduli_bounds = [d.abs_bounds()[1] for d in self._conj_disks]
        self.pisot = all(ub < 1 for ub in self.conjugate_moduli_bounds)

        self.zero = FieldElem(self, (0,) * self.degree, 0, _normalized=True)
        self.one = self.from_int(1)
        self.beta = self.elem([0, 1] + [0] * (self.degree - 2))

    @staticmethod
    def _isolate_dominant_root(low):
        chain = _sturm_chain(low)
        bound = Fraction(1) + max(abs(Fraction(c)) for c in low[:-1])
        one = Fraction(1)
        if _sturm_count(chain, one, bound) == 0 or _poly_eval_frac(low, one) == 0:
            raise FieldError("no real root > 1")
        lo, hi = one, bound
        # keep the rightmost root until the bracket isolates a single one
        for _ in range(4096):
            if (_sturm_count(chain, lo, hi) == 1
                    and _poly_eval_frac(low, lo) < 0 < _poly_eval_frac(low, hi)):
                return lo, hi
            mid = (lo + hi) / 2
            if _sturm_count(chain, mid, hi) >= 1:
                lo = mid
            else:
                hi = mid
        raise FieldError("root isolation did not converge")

    # -- root interval services ------------------------------------------

    @property
    def isolating_interval(self):
        return self._root.as_fractions()

    def refine_root(self, steps=8):
        self._root.refine(steps)

    def _interval_ints(self):
        return self._root.lo, self._root.hi, self._root.k

    # -- element constructors --------------------------------------------

    def elem(self, coeffs, shift=0):
        c = list(coeffs)
        if len(c) > self.degree:
            c = self._reduce(c)
        c = c + [0] * (self.degree - len(c))
        return FieldElem(self, tuple(c), shift)

    def from_int(self, n):
        return self.elem([n] + [0] * (self.degree - 1))

    def beta_power(self, k):
        return self.elem([0, 1] + [0] * (self.degree - 2), k - 1) if k else self.one

    def _reduce(self, coeffs):
        """Reduce a low-first coefficient list modulo the minimal polynomial."""
        c = list(coeffs)
        d = self.degree
        sub = [-x for x in self._low[:-1]]  # x^d = sub[0] + sub[1] x + ...
        for i in range(len(c) - 1, d - 1, -1):
            top = c[i]
            if top:
                c[i] = 0
                for j, s in enumerate(sub):
                    c[i - d + j] += top * s
        return c[:d]

    def _mul_by_x(self, coeffs):
        return self._reduce([0] + list(coeffs))

    def _div_by_x(self, coeffs):
        """Solve x*q = coeffs modulo the minimal polynomial, or None."""
        a0 = self._low[0]
        if coeffs[0] % a0:
            return None
        t = coeffs[0] // a0
        tmp = [c - t * p for c, p in zip(list(coeffs) + [0] * (len(self._low) - len(coeffs)), self._low)]
        assert tmp[0] == 0
        return self._reduce(tmp[1:])

    # -- misc ---------------------------------------------------------------

    def float_beta(self, bits=64):
        while self._root.k < bits:
            self._root.refine(8)
        lo, hi = self._root.as_fractions()
        return float((lo + hi) / 2)

    def __repr__(self):
        return "BetaField(%s)" % (list(self.min_poly),)

    def __eq__(self, other):
        return isinstance(other, BetaField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)


class FieldElem:
    """beta^shift * sum(coeffs[i] * beta^i), coefficients reduced, canonical.

    Zero is always (all-zero coeffs, shift 0).  A positive shift is folded
    into the coefficients; a negative shift is reduced as far as exact
    division by beta permits (fully, whenever beta is a unit of Z[beta]).
    """

    __slots__ = ("field", "coeffs", "shift")

    def __init__(self, field, coeffs, shift, _normalized=False):
        if not _normalized:
            coeffs, shift = self._normalize(field, list(coeffs), shift)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "shift", shift)

    def __setattr__(self, *a):
        raise AttributeError("FieldElem is immutable")

    @staticmethod
    def _normalize(field, coeffs, shift):
        if not any(coeffs):
            return [0] * field.degree, 0
        while shift > 0:
            coeffs = field._mul_by_x(coeffs)
            shift -= 1
        while shift < 0:
            q = field._div_by_x(coeffs)
            if q is None:
                break
            coeffs = q
            shift += 1
        return coeffs, shift

    # -- ring operations --------------------------------------------------

    def _aligned(self, other):
        e = min(self.shift, other.shift)
        a = list(self.coeffs)
        for _ in range(self.shift - e):
            a = self.field._mul_by_x(a)
        b = list(other.coeffs)
        for _ in range(other.shift - e):
            b = self.field._mul_by_x(b)
        return a, b, e

    def __add__(self, other):
        other = self._coerce(other)
        a, b, e = self._aligned(other)
        return FieldElem(self.field, [x + y for x, y in zip(a, b)], e)

    def __sub__(self, other):
        other = self._coerce(other)
        a, b, e = self._aligned(other)
        return FieldElem(self.field, [x - y for x, y in zip(a, b)], e)

    def __neg__(self):
        return FieldElem(self.field, tuple(-c for c in self.coeffs), self.shift, _normalized=True)

    def __mul__(self, other):
        other = self._coerce(other)
        d = self.field.degree
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return FieldElem(self.field, self.field._reduce(prod), self.shift + other.shift)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise AlgebraError("elements from different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def mul_beta(self, k=1):
        """Multiply by beta^k (k may be negative)."""
        return FieldElem(self.field, self.coeffs, self.shift + k)

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return (isinstance(other, FieldElem) and self.field == other.field
                and self.coeffs == other.coeffs and self.shift == other.shift)

    def __hash__(self):
        return hash((self.coeffs, self.shift))

    # -- exact order decisions ---------------------------------------------

    def sign(self):
        """Exact sign of the real embedding."""
        if self.is_zero():
            return 0
        f = self.field
        coeffs = _strip_poly(self.coeffs)
        for _ in range(512):
            lo, hi, k = f._interval_ints()
            nlo, nhi, _ = _poly_on_interval(coeffs, lo, hi, k)
            if nlo > 0:
                return 1
            if nhi < 0:
                return -1
            f.refine_root(4)
        raise AlgebraError("sign refinement did not converge (reducible polynomial?)")

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    def interval(self):
        """A dyadic enclosure (lo, hi, k) of the real embedding."""
        return self._enclosure()

    # -- floors --------------------------------------------------------------

    def floor(self):
        """The unique integer n with n <= x < n+1, decided exactly."""
        return self.floor_div(1)

    def floor_div(self, q: int):
        """floor(x / q) for a positive integer q, decided exactly."""
        if q <= 0:
            raise ValueError("positive divisor required")
        if self.is_zero():
            return 0
        f = self.field
        for _ in range(512):
            nlo, nhi, sc = self._enclosure()
            den = q << sc
            flo = nlo // den
            fhi = nhi // den
            if flo == fhi:
                return flo
            if fhi == flo + 1:
                s = (self - fhi * q).sign()
                return fhi if s >= 0 else flo
            f.refine_root(4)
        raise AlgebraError("floor refinement did not converge")

    def _enclosure(self):
        """Integer enclosure (nlo, nhi, scale_log2), shift handled exactly."""
        if self.is_zero():
            return 0, 0, 0
        f = self.field
        lo, hi, k = f._interval_ints()
        nlo, nhi, sc = _poly_on_interval(_strip_poly(self.coeffs), lo, hi, k)
        e = self.shift
        if e > 0:
            for _ in range(e):
                nlo, nhi = _interval_mul(nlo, nhi, lo, hi)
                sc += k
        elif e < 0:
            g = 2 * k + 8
            invlo = (1 << (k + g)) // hi
            invhi = ((1 << (k + g)) + lo - 1) // lo
            for _ in range(-e):
                nlo, nhi = _interval_mul(nlo, nhi, invlo, invhi)
                sc += g
        return nlo, nhi, sc

    # -- conjugates ------------------------------------------------------------

    def conjugate_abs_bounds(self, j: int):
        """Certified rational (lower, upper) bounds on |x^(j)| for the j-th
        conjugate root (0-based)."""
        if self.is_zero():
            return Fraction(0), Fraction(0)
        disk = self.field._conj_disks[j]
        acc = ConjugateDisk(Fraction(0), Fraction(0), Fraction(0))
        for c in reversed(_strip_poly(self.coeffs)):
            acc = _disk_add_int(_disk_mul(acc, disk), c)
        e = self.shift
        if e > 0:
            for _ in range(e):
                acc = _disk_mul(acc, disk)
        elif e < 0:
            inv = _disk_inv(disk)
            for _ in range(-e):
                acc = _disk_mul(acc, inv)
        return acc.abs_bounds()

    def conjugate_abs_bound(self, j: int) -> Fraction:
        """Certified rational upper bound on |x^(j)| (j-th conjugate, 0-based)."""
        return self.conjugate_abs_bounds(j)[1]

    # -- presentation -----------------------------------------------------------

    def text_form(self):
        return "shift:%d coeffs:[%s]" % (self.shift, ",".join(str(c) for c in self.coeffs))

    def __repr__(self):
        return "FieldElem(%s)" % self.text_form()

    def __float__(self):
        self.field.refine_root(max(0, 64 - self.field._root.k))
        nlo, nhi, sc = self._enclosure()
        return (nlo + nhi) / 2 / 2.0**sc


def parse_elem(field: BetaField, text: str) -> FieldElem:
    """Inverse of FieldElem.text_form."""
    parts = text.split()
    shift = int(parts[0].split(":", 1)[1])
    body = parts[1].split(":", 1)[1].strip("[]")
    coeffs = [int(t) for t in body.split(",")] if body else []
    return field.elem(coeffs, shift)


def field_new(min_poly) -> BetaField:
    """Build a certified BetaField from a monic integer polynomial.

    Coefficients highest degree first, e.g. [1, -1, -1] for the Golden
    Ratio.  Raises FieldError when there is no real root > 1 or the
    polynomial is degenerate.
    """
    return BetaField(min_poly)


def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("op must be add, sub or mul")


def sign(x: FieldElem) -> int:
    return x.sign()


def floor_of(x: FieldElem) -> int:
    return x.floor()


def conjugate_abs_bound(x: FieldElem, j: int) -> Fraction:
    return x.conjugate_abs_bound(j)


# the three bases studied in depth ------------------------------------------

GOLDEN_POLY = (1, -1, -1)
TRIBONACCI_POLY = (1, -1, -1, -1)
SMALLEST_PISOT_POLY = (1, 0, -1, -1)

_field_cache = {}


def golden_field() -> BetaField:
    return _cached_field(GOLDEN_POLY)


def tribonacci_field() -> BetaField:
    return _cached_field(TRIBONACCI_POLY)


def smallest_pisot_field() -> BetaField:
    return _cached_field(SMALLEST_PISOT_POLY)


def _cached_field(poly):
    if poly not in _field_cache:
        _field_cache[poly] = BetaField(poly)
    return _field_cache[poly]
