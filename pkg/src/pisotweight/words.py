"""Digit words, their weights and values, and the shift-equivalence of words
that represent the same number up to a power of the base.

Text grammar: '0'..'9' are the digits 0..9, 'T','U','V','W','X' are -1..-5,
'[n]' escapes any other integer digit, and a single optional '.' marks the
radix point.  This grammar is the bit-exact interchange format of the CLI
and of golden files.
"""

from __future__ import annotations

from .algebra import BetaField, FieldElem

_NEG_CHARS = {"T": -1, "U": -2, "V": -3, "W": -4, "X": -5}
_NEG_BY_DIGIT = {v: k for k, v in _NEG_CHARS.items()}


class WordError(Exception):
    pass


class DigitWord:
    """A finite word of integer digits with an optional radix point.

    ``point=k`` reads the word as x_1 ... x_k . x_{k+1} ...; without a point
    the whole word sits left of the radix point (integer reading).
    """

    __slots__ = ("digits", "point")

    def __init__(self, digits, point=None):
        object.__setattr__(self, "digits", tuple(int(d) for d in digits))
        object.__setattr__(self, "point", point if point is None else int(point))

    def __setattr__(self, *a):
        raise AttributeError("DigitWord is immutable")

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __eq__(self, other):
        return (isinstance(other, DigitWord) and self.digits == other.digits
                and self.point == other.point)

    def __hash__(self):
        return hash((self.digits, self.point))

    def __repr__(self):
        return "DigitWord(%r)" % render_word(self)

    def weight(self):
        return sum(abs(d) for d in self.digits)

    def strip(self):
        """Remove leading and trailing zeros (and the point)."""
        d = self.digits
        i, j = 0, len(d)
        while i < j and d[i] == 0:
            i += 1
        while j > i and d[j - 1] == 0:
            j -= 1
        return DigitWord(d[i:j])

    def negate(self):
        return DigitWord(tuple(-x for x in self.digits), self.point)


def word(digits, point=None) -> DigitWord:
    return DigitWord(digits, point)


def weight(w: DigitWord) -> int:
    return w.weight()


def value_beta(w: DigitWord, f: BetaField) -> FieldElem:
    """Exact value: sum of x_j beta^(p-j) with p the point (or the length)."""
    acc = f.zero
    for d in w.digits:
        acc = acc * f.beta + d
    p = w.point if w.point is not None else len(w.digits)
    return acc.mul_beta(p - len(w.digits))


def value_u(w: DigitWord, sys) -> int:
    """Integer value sum(x_j * U_(n-j)) in a numeration system."""
    if w.point is not None:
        raise WordError("integer words cannot carry a radix point")
    n = len(w.digits)
    return sum(d * sys.term(n - 1 - j) for j, d in enumerate(w.digits) if d)


def scale_exponent(v: FieldElem) -> int:
    """The unique k with |v| in [beta^k, beta^(k+1)), for nonzero v."""
    if v.is_zero():
        raise ValueError("zero has no scale")
    f = v.field
    av = v if v.sign() > 0 else -v
    # float estimate, then exact adjustment
    import math
    k = 0
    fl = float(av)
    if fl > 0:
        k = int(math.floor(math.log(fl) / math.log(f.float_beta())))
    while not (av - f.beta_power(k)).sign() >= 0:
        k -= 1
    while not (av - f.beta_power(k + 1)).sign() < 0:
        k += 1
    return k


def class_key(v: FieldElem):
    """Canonical key of the shift-class {beta^k * v}: zero, or the sign plus
    the canonical form of |v| scaled into [1, beta)."""
    if v.is_zero():
        return ()
    sgn = v.sign()
    av = v if sgn > 0 else -v
    k = scale_exponent(av)
    u = av.mul_beta(-k)
    return (sgn, u.shift, u.coeffs)


def equivalent_beta(x: DigitWord, y: DigitWord, f: BetaField, max_shift: int = 64):
    """The k with value(x) = beta^k * value(y), if any, else None."""
    vx, vy = value_beta(x, f), value_beta(y, f)
    if vx.is_zero() and vy.is_zero():
        return 0
    if vx.is_zero() or vy.is_zero():
        return None
    sx, sy = vx.sign(), vy.sign()
    if sx != sy:
        return None
    ax = vx if sx > 0 else -vx
    ay = vy if sy > 0 else -vy
    kx, ky = scale_exponent(ax), scale_exponent(ay)
    if ax.mul_beta(-kx) != ay.mul_beta(-ky):
        return None
    k = kx - ky
    return k if abs(k) <= max_shift else None


# -- text form ---------------------------------------------------------------


def parse_word(text: str) -> DigitWord:
    digits = []
    point = None
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == ".":
            if point is not None:
                raise WordError("two radix points in %r" % text)
            point = len(digits)
        elif ch.isdigit():
            digits.append(int(ch))
        elif ch in _NEG_CHARS:
            digits.append(_NEG_CHARS[ch])
        elif ch == "[":
            j = text.find("]", i)
            if j < 0:
                raise WordError("unterminated escape in %r" % text)
            digits.append(int(text[i + 1:j]))
            i = j
        elif ch in "- \t":
            raise WordError("bad character %r in word %r" % (ch, text))
        else:
            raise WordError("bad character %r in word %r" % (ch, text))
        i += 1
    return DigitWord(digits, point)


def render_word(w: DigitWord) -> str:
    digits, point = w.digits, w.point
    if point is not None and not (0 <= point <= len(digits)):
        # pad so the point lands inside the word
        if point < 0:
            digits = (0,) * (-point) + digits
            point = 0
        else:
            digits = digits + (0,) * (point - len(digits))
    out = []
    for j, d in enumerate(digits):
        if point is not None and j == point:
            out.append(".")
        if 0 <= d <= 9:
            out.append(str(d))
        elif d in _NEG_BY_DIGIT:
            out.append(_NEG_BY_DIGIT[d])
        else:
            out.append("[%d]" % d)
    if point is not None and point == len(digits):
        out.append(".")
    return "".join(out)
