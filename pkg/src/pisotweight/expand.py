"""Expansion generators: the greedy expansion, the signed NAF-analog
transformations that avoid a forbidden factor set, weight-preserving
normalization into the avoiding form, and branching enumeration of all
minimal-weight expansions of a value.

All transformations run on exact field elements; a digit step is
r -> beta*r - digit and the emitted digit of the avoiding expansion is
floor(slope * r + 1/2), evaluated with exact sign tests.
"""

from __future__ import annotations

from .algebra import BetaField, FieldElem
from .words import DigitWord, value_beta


class ExpandError(Exception):
    pass


class NotMinimalError(ExpandError):
    """Input word rejected because the recognizer refuses it."""


def greedy_expand(z: FieldElem, f: BetaField, max_len: int = 200):
    """Greedy expansion of z >= 0; digits in {0..floor(beta)}.

    Returns (word, exact); ``exact`` is False when max_len was reached with a
    nonzero remainder (the expansion of z is then not finite or longer than
    the cap).
    """
    if z.sign() < 0:
        raise ExpandError("greedy expansion needs a non-negative value")
    if z.is_zero():
        return DigitWord(()), True
    k = 0
    pw = f.one
    while (z - pw).sign() >= 0:
        pw = pw * f.beta
        k += 1
    r = z.mul_beta(-k)
    digits = []
    while not r.is_zero() and len(digits) < max_len:
        br = r * f.beta
        x = br.floor()
        digits.append(x)
        r = br - x
    return DigitWord(digits, point=k), r.is_zero()


class TauSpec:
    """One avoiding transformation: tau(z) = beta*z - floor(slope*z + 1/2)
    on the symmetric domain [-bound, bound), with its forbidden factor set."""

    def __init__(self, name, field, domain_num, domain_den, slope_num, slope_den,
                 forbidden):
        self.name = name
        self.field = field
        self.domain_num = domain_num      # FieldElem, positive
        self.domain_den = domain_den      # FieldElem, positive
        self.slope_num = slope_num        # FieldElem
        self.slope_den = int(slope_den)   # positive integer
        self.forbidden = tuple(tuple(w) for w in forbidden)

    def in_domain(self, z: FieldElem) -> bool:
        t = z * self.domain_den
        return (t + self.domain_num).sign() >= 0 and (self.domain_num - t).sign() > 0

    def digit(self, r: FieldElem) -> int:
        # floor(slope*r + 1/2) with the slope slope_num/slope_den
        return (2 * (self.slope_num * r) + self.slope_den).floor_div(2 * self.slope_den)

    def avoids(self, digits) -> bool:
        w = tuple(digits)
        for bad in self.forbidden:
            m = len(bad)
            if any(w[i:i + m] == bad for i in range(len(w) - m + 1)):
                return False
        return True

    def __repr__(self):
        return "TauSpec(%s)" % self.name


def _with_opposites(patterns):
    pats = [tuple(p) for p in patterns]
    return tuple(pats + [tuple(-d for d in p) for p in pats])


def builtin_tau_specs(fields=None):
    """The six built-in avoiding transformations (main + variant per base)."""
    from .algebra import golden_field, smallest_pisot_field, tribonacci_field
    if fields is None:
        fields = {
            "golden": golden_field(),
            "tribonacci": tribonacci_field(),
            "smallest-pisot": smallest_pisot_field(),
        }
    g, t, s = fields["golden"], fields["tribonacci"], fields["smallest-pisot"]
    bg, bt, bs = g.beta, t.beta, s.beta
    specs = []
    specs.append(TauSpec(
        "golden", g,
        bg * bg, bg * bg + 1,
        (bg * bg + 1).mul_beta(-1), 2,
        _with_opposites([(1, 1), (1, 0, 1), (1, 0, 0, 1), (1, -1), (1, 0, -1)])))
    specs.append(TauSpec(
        "golden-variant", g,
        bg, g.from_int(2),
        g.one, 1,
        _with_opposites([(1, 1), (1, 0, 1), (1, -1), (1, 0, -1), (1, 0, 0, -1)])))
    specs.append(TauSpec(
        "tribonacci", t,
        bt, bt + 1,
        bt + 1, 2,
        _with_opposites([(1, 1), (1, 0, 1), (1, -1)])))
    specs.append(TauSpec(
        "tribonacci-variant", t,
        bt, bt * bt - 1,
        bt * bt - 1, 2,
        _with_opposites([(1, 1), (1, -1), (1, 0, -1)])))
    sp_main = [(1,) + (0,) * k + (1,) for k in range(7)]
    sp_main += [(1,) + (0,) * k + (-1,) for k in range(6)]
    sp_alt = [(1,) + (0,) * k + (1,) for k in range(6)]
    sp_alt += [(1,) + (0,) * k + (-1,) for k in range(7)]
    specs.append(TauSpec(
        "smallest-pisot", s,
        bs * bs * bs, bs * bs + 1,
        (bs * bs + 1).mul_beta(-2), 2,
        _with_opposites(sp_main)))
    specs.append(TauSpec(
        "smallest-pisot-variant", s,
        bs * bs, s.from_int(2),
        bs.mul_beta(-2), 1,           # 1/beta
        _with_opposites(sp_alt)))
    return specs


def tau_expand(z: FieldElem, spec: TauSpec, max_len: int = 400,
               extra_shift: int = 0) -> DigitWord:
    """The unique expansion of z avoiding spec.forbidden, up to leading zeros.

    The value is scaled into the domain by the minimal power of beta (plus
    ``extra_shift`` more, which by uniqueness only prepends zeros).
    """
    if z.is_zero():
        return DigitWord(())
    k = 0
    while not spec.in_domain(z.mul_beta(-k)):
        k += 1
        if k > max_len:
            raise ExpandError("could not scale the value into the domain")
    k += extra_shift
    r = z.mul_beta(-k)
    digits = []
    while not r.is_zero():
        if len(digits) >= max_len:
            raise ExpandError("avoiding expansion of %s did not terminate in %d digits"
                              % (z.text_form(), max_len))
        y = spec.digit(r)
        digits.append(y)
        r = r * spec.field.beta - y
    return DigitWord(digits, point=k)


def normalize_minweight(x: DigitWord, base) -> DigitWord:
    """Convert a recognized minimal-weight word into the unique equal-weight
    word avoiding the base's forbidden set (same value class)."""
    from .bases import resolve_base
    base = resolve_base(base)
    stripped = x.strip()
    if not base.minweight_automaton().accepts(stripped.digits):
        raise NotMinimalError("input word is not a minimal-weight expansion")
    if not stripped.digits:
        return DigitWord(())
    v = value_beta(stripped, base.field)
    out = tau_expand(v, base.tau_main)
    if out.weight() != stripped.weight():
        raise ExpandError("normalization changed the weight; construction bug")
    return out


# ---------------------------------------------------------------------------
# omega-word constants (eventually periodic expansions, summed exactly)


def omega_value(prefix, cycle, f: BetaField):
    """Exact value of .prefix(cycle)^omega as a (numerator, denominator) pair
    of field elements with positive denominator."""
    prefix, cycle = tuple(prefix), tuple(cycle)
    if not cycle:
        raise ValueError("cycle must be nonempty")
    vpre = f.zero
    for d in prefix:
        vpre = vpre * f.beta + d
    vcyc = f.zero
    for d in cycle:
        vcyc = vcyc * f.beta + d
    cyc_den = f.beta_power(len(cycle)) - 1
    num = vpre * cyc_den + vcyc
    den = f.beta_power(len(prefix)) * cyc_den
    return num, den


def frac_cmp(a, b):
    """Compare two (num, den) pairs with positive denominators."""
    return (a[0] * b[1] - b[0] * a[1]).sign()


# ---------------------------------------------------------------------------
# branching enumeration of every minimal-weight expansion of a value


def golden_branching_digits(r: FieldElem, f: BetaField):
    """Digit choices allowed at remainder r by the five-interval rule of the
    Golden Ratio branching transformation."""
    t = r * (f.beta * f.beta + 1)
    two_beta = 2 * f.beta
    marks = [-two_beta, f.from_int(-2), -f.beta, f.beta, f.from_int(2), two_beta]
    sides = [(t - m).sign() for m in marks]
    if any(s == 0 for s in sides):
        raise ExpandError("branching threshold hit exactly; value outside Z[beta]?")
    if sides[0] < 0 or sides[5] > 0:
        return ()
    if sides[1] < 0:
        return (-1,)
    if sides[2] < 0:
        return (-1, 0)
    if sides[3] < 0:
        return (0,)
    if sides[4] < 0:
        return (0, 1)
    return (1,)


def enumerate_minimal(z: FieldElem, base, max_len: int = 32):
    """All minimal-weight expansions of z over {-1,0,1}, deduplicated by
    stripping; each returned word carries the radix point that makes its
    value exactly z.  Complete for stripped lengths up to max_len."""
    from .bases import resolve_base
    base = resolve_base(base)
    f = base.field
    if z.field != f:
        raise ExpandError("value from the wrong field")
    if z.is_zero():
        return {DigitWord(())}
    m = base.minweight_automaton()
    num, den = base.representable_bound
    search = base.search()

    def too_big(r):
        t = r * den
        return (t - num).sign() > 0 or (t + num).sign() < 0

    from .words import scale_exponent
    k0 = scale_exponent(z) - 2
    while too_big(z.mul_beta(-k0)):
        k0 += 1
    kmax = k0 + max_len + search.scaling_margin
    start = z.mul_beta(-kmax)

    results = set()
    budget = kmax - k0 + max_len
    children_cache = {}
    feas_memo = {}

    def children(state, r):
        key = (state, r)
        got = children_cache.get(key)
        if got is None:
            out = []
            base_r = r * f.beta
            for d in m.alphabet:
                t = m.step(state, d)
                if t is not None:
                    r2 = base_r - d
                    if not too_big(r2):
                        out.append((d, t, r2))
            got = tuple(out)
            children_cache[key] = got
        return got

    def feasible(state, r, l):
        # budget l strictly decreases, so the memo recursion is cycle-free
        if r.is_zero():
            return True
        if l <= 0 or not search._conj_feasible(r, l):
            return False
        key = (state, r, l)
        got = feas_memo.get(key)
        if got is None:
            got = any(feasible(t, r2, l - 1) for _d, t, r2 in children(state, r))
            feas_memo[key] = got
        return got

    def rec(state, r, path, depth):
        if r.is_zero():
            digits = tuple(path)
            i = 0
            while i < len(digits) and digits[i] == 0:
                i += 1
            j = len(digits)
            while j > i and digits[j - 1] == 0:
                j -= 1
            results.add(DigitWord(digits[i:j], point=kmax - i))
            return
        for d, t, r2 in children(state, r):
            if feasible(t, r2, budget - depth - 1):
                path.append(d)
                rec(t, r2, path, depth + 1)
                path.pop()

    if not too_big(start):
        rec(m.initial, start, [], 0)
    return results
