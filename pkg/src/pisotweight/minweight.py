"""Minimal-weight machinery for a Pisot base: digit-set witnesses, the
digit-reduction rewriting, the zero automaton on digit differences, the
weight-annotated transducer relating equal-valued words, the recognizer of
minimal-weight expansions, and brute-force heaviness oracles.

Conventions.  Digit words are processed most significant digit first.  A
"remainder" r at a node of a search always denotes the value that the still
unwritten suffix t_1 t_2 ... must realize as sum(t_i beta^-i); appending a
digit d updates r to beta*r - d.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .algebra import BetaField, FieldElem
from .automata import (Dfa, LetterTransducer, Nfa, determinize,
                       factor_complement, minimize, trim)
from .words import DigitWord, class_key, value_beta

INF = float("inf")


class MinweightError(Exception):
    pass


class StateExplosion(MinweightError):
    pass


def _state_cap():
    return int(os.environ.get("MINWEIGHT_MAX_STATES", "100000"))


# ---------------------------------------------------------------------------
# zero automaton on digit differences


def zero_graph(f: BetaField, B: int):
    """All states reachable from 0 via s' = beta*s + e, e in the doubled digit
    alphabet, kept while strictly inside the admissible open interval.

    Returns (states, edges) with edges[s] = [(e, s'), ...]; not trimmed.
    """
    if B < 2:
        raise MinweightError("digit bound B must be >= 2")
    cap = _state_cap()
    beta = f.beta
    bm1 = beta - 1
    hi = f.from_int(2 * (B - 1))
    letters = range(2 * (1 - B), 2 * (B - 1) + 1)
    zero = f.zero

    def inside(s):
        t = s * bm1
        return (hi - t).sign() > 0 and (t + hi).sign() > 0

    states = {zero}
    edges = {}
    queue = [zero]
    while queue:
        s = queue.pop(0)
        out = []
        for e in letters:
            s2 = s * beta + e
            if inside(s2):
                out.append((e, s2))
                if s2 not in states:
                    states.add(s2)
                    if len(states) > cap:
                        raise StateExplosion("zero automaton exceeded %d states" % cap)
                    queue.append(s2)
        edges[s] = out
    return states, edges


def _trim_to(states, edges, targets):
    """States with a path into ``targets`` (plus the targets themselves)."""
    back = {}
    for s, out in edges.items():
        for _e, t in out:
            back.setdefault(t, set()).add(s)
    live = set(targets)
    queue = list(targets)
    while queue:
        s = queue.pop(0)
        for p in back.get(s, ()):
            if p not in live:
                live.add(p)
                queue.append(p)
    return live & states


def build_zero_automaton(f: BetaField, B: int) -> Dfa:
    """Trimmed automaton recognizing the words over the doubled alphabet whose
    value is exactly zero; state 0 is initial and terminal."""
    states, edges = zero_graph(f, B)
    zero = f.zero
    live = _trim_to(states, edges, {zero})
    trans = {s: {e: t for e, t in out if t in live}
             for s, out in edges.items() if s in live}
    trans = {s: row for s, row in trans.items() if row}
    labels = {s: s.text_form() for s in live}
    dfa = Dfa(range(2 * (1 - B), 2 * (B - 1) + 1), zero, {zero}, trans, labels)
    return trim(dfa)


def zero_automaton_states(f: BetaField, B: int):
    """The exact state set of the trimmed zero automaton, as field elements."""
    return set(build_zero_automaton(f, B).states)


def state_weight(s: FieldElem, f: BetaField, max_len: int = 200) -> int:
    """Weight of the greedy expansion of |s| (0 for the zero state)."""
    if s.is_zero():
        return 0
    from .expand import greedy_expand
    a = s if s.sign() > 0 else -s
    w, exact = greedy_expand(a, f, max_len=max_len)
    if not exact:
        raise MinweightError("greedy expansion of %s did not terminate; "
                             "finiteness assumption violated" % s.text_form())
    return w.weight()


# ---------------------------------------------------------------------------
# weight transducer (the delta-windowed relation machine)


class WeightTransducerParts:
    """Windowed transducer plus the numbers the diagnostics report."""

    def __init__(self, field, B, transducer, state_weights, W, n_windowed):
        self.field = field
        self.B = B
        self.transducer = transducer
        self.state_weights = state_weights
        self.W = W
        self.n_windowed_states = n_windowed


def _windowed_reachable(f, B, edges, weights, W):
    """BFS over transducer states (s, delta) with -W-B < delta <= w_s."""
    cap = _state_cap()
    start = (f.zero, 0)
    seen = {start}
    queue = [start]
    digits = range(1 - B, B)
    out_edges = {}
    while queue:
        q = queue.pop(0)
        s, delta = q
        row = []
        for e, s2 in edges.get(s, ()):
            w2 = weights.get(s2)
            if w2 is None:
                continue
            for a in digits:
                b = a - e
                if 1 - B <= b <= B - 1:
                    d2 = delta + abs(b) - abs(a)
                    if -W - B < d2 <= w2:
                        t = (s2, d2)
                        row.append((a, b, t))
                        if t not in seen:
                            seen.add(t)
                            if len(seen) > cap:
                                raise StateExplosion(
                                    "weight transducer exceeded %d states" % cap)
                            queue.append(t)
        out_edges[q] = row
    return seen, out_edges


def _zero_input_closure(seed, edge_map, forward=True):
    if forward:
        adj = {s: [t for a, _b, t in row if a == 0] for s, row in edge_map.items()}
    else:
        adj = {}
        for s, row in edge_map.items():
            for a, _b, t in row:
                if a == 0:
                    adj.setdefault(t, []).append(s)
    closed = set(seed)
    queue = list(seed)
    while queue:
        s = queue.pop(0)
        for t in adj.get(s, ()):
            if t not in closed:
                closed.add(t)
                queue.append(t)
    return closed


def build_weight_transducer(f: BetaField, B: int) -> WeightTransducerParts:
    """The finite transducer whose accepted pairs (x, y) satisfy .x = .y with
    y strictly lighter; its input automaton accepts only heavy words and all
    strictly heavy ones.

    States are (difference value, weight delta) with delta confined to the
    window (-W-B, w_s]; every state reachable from the start by a zero-input
    path is initial, every state reaching a (0, delta<0) state by a
    zero-input path is terminal.
    """
    states, edges = zero_graph(f, B)
    zero = f.zero
    live = _trim_to(states, edges, {zero})
    edges = {s: [(e, t) for e, t in out if t in live]
             for s, out in edges.items() if s in live}
    weights = {s: state_weight(s, f) for s in live}
    W = max(weights.values())
    seen, out_edges = _windowed_reachable(f, B, edges, weights, W)
    initials = _zero_input_closure({(zero, 0)}, out_edges, forward=True)
    base_terms = {q for q in seen if q[0] == zero and q[1] < 0}
    terminals = _zero_input_closure(base_terms, out_edges, forward=False)

    # keep only states on an initial -> terminal path
    back = {}
    for s, row in out_edges.items():
        for _a, _b, t in row:
            back.setdefault(t, set()).add(s)
    co = set(terminals)
    queue = list(terminals)
    while queue:
        s = queue.pop(0)
        for p in back.get(s, ()):
            if p not in co:
                co.add(p)
                queue.append(p)
    fwd = set(initials)
    queue = list(initials)
    while queue:
        s = queue.pop(0)
        for _a, _b, t in out_edges.get(s, ()):
            if t not in fwd:
                fwd.add(t)
                queue.append(t)
    keep = co & fwd
    kept_edges = {s: tuple((a, b, t) for a, b, t in row if t in keep)
                  for s, row in out_edges.items() if s in keep}
    digits = tuple(range(1 - B, B))
    labels = {q: "(%s, %d)" % (q[0].text_form(), q[1]) for q in keep}
    transducer = LetterTransducer(digits, digits, initials & keep,
                                  terminals & keep, kept_edges, labels)
    return WeightTransducerParts(f, B, transducer, weights, W, len(seen))


def heavy_language(f: BetaField, B: int, parts: WeightTransducerParts | None = None) -> Dfa:
    """Minimal DFA of the input language of the weight transducer: a set of
    heavy words containing every strictly heavy word."""
    if parts is None:
        parts = build_weight_transducer(f, B)
    return minimize(determinize(parts.transducer.input_automaton()))


def build_minweight_automaton(f: BetaField, B: int, parts=None) -> Dfa:
    """Recognizer of all minimal-weight expansions over {1-B, ..., B-1}: the
    factor complement of the heavy-word language.  All states terminal."""
    return factor_complement(heavy_language(f, B, parts))


# ---------------------------------------------------------------------------
# integer-system variant: terminality by value lattice, last-letter aware


def integer_heavy_language(f: BetaField, B: int, lattice_test) -> Dfa:
    """Input language of the weight transducer with terminality decided by
    delta < 0 together with lattice_test(s', e) at the state s' reached by
    the last consumed edge, e being that edge's input-output difference.

    Recognizes words that admit an equal-integer-value companion of smaller
    weight, both aligned at their final (units) position, leading zeros free
    on either side.  Trailing zeros are significant, as they must be in a
    positional integer system.
    """
    states, edges = zero_graph(f, B)
    weights = {s: state_weight(s, f) for s in states}
    W = max(weights.values())
    seen, out_edges = _windowed_reachable(f, B, edges, weights, W)
    initials = _zero_input_closure({(f.zero, 0)}, out_edges, forward=True)

    lattice_cache = {}

    def hit(s2, e):
        got = lattice_cache.get((s2, e))
        if got is None:
            got = lattice_test(s2, e)
            lattice_cache[(s2, e)] = got
        return got

    trans = {}
    for q, row in out_edges.items():
        nrow = {}
        for a, b, t in row:
            flag = t[1] < 0 and hit(t[0], a - b)
            nrow.setdefault(a, set()).add((t, flag))
        trans[(q, False)] = nrow
        trans[(q, True)] = nrow
    nfa = Nfa(tuple(range(1 - B, B)),
              {(q, False) for q in initials},
              {(q, True) for q in seen},
              trans)
    return minimize(determinize(nfa))


def lattice_test_from_coeffs(coeff_rule):
    """Wrap a rule on the power-basis coefficients of s - e into a test
    usable by integer_heavy_language."""
    def test(s: FieldElem, e: int) -> bool:
        t = s - e
        if t.shift != 0:
            return False
        return coeff_rule(t.coeffs)
    return test


# ---------------------------------------------------------------------------
# explicit Golden Ratio construction: the eight heavy-factor families
# 1(0100)*1, 1(0100)*0101, 1(00T0)*T, 1(00T0)*0T and their negations


GOLDEN_HEAVY_FAMILIES = (
    ((1,), (0, 1, 0, 0), (1,)),
    ((1,), (0, 1, 0, 0), (0, 1, 0, 1)),
    ((1,), (0, 0, -1, 0), (-1,)),
    ((1,), (0, 0, -1, 0), (0, -1)),
)


def _family_nfa(families, alphabet):
    trans = {}
    initials, terminals = set(), set()
    for fid, (prefix, cycle, suffix) in enumerate(families):
        start = ("f", fid, "p", 0)
        initials.add(start)
        node = start
        for i, a in enumerate(prefix):
            nxt = ("f", fid, "p", i + 1)
            trans.setdefault(node, {}).setdefault(a, set()).add(nxt)
            node = nxt
        loop_head = node
        for i, a in enumerate(cycle):
            nxt = loop_head if i == len(cycle) - 1 else ("f", fid, "c", i + 1)
            trans.setdefault(node, {}).setdefault(a, set()).add(nxt)
            node = nxt
        node = loop_head
        for i, a in enumerate(suffix):
            nxt = ("f", fid, "s", i + 1)
            trans.setdefault(node, {}).setdefault(a, set()).add(nxt)
            node = nxt
        terminals.add(node)
    return Nfa(alphabet, initials, terminals, trans)


def golden_heavy_words_automaton() -> Dfa:
    fams = list(GOLDEN_HEAVY_FAMILIES)
    fams += [tuple(tuple(-d for d in part) for part in fam) for fam in fams]
    return minimize(determinize(_family_nfa(fams, (-1, 0, 1))))


def golden_explicit_minweight_automaton() -> Dfa:
    """Minimal-weight recognizer for the Golden Ratio built from the explicit
    heavy-factor families instead of the transducer pipeline."""
    return factor_complement(golden_heavy_words_automaton())


# ---------------------------------------------------------------------------
# complete bounded search for lighter equal-valued words


class RemainderSearch:
    """min_tail_weight(r, l): least weight of a word t_1..t_m, m <= l, with
    sum(t_i beta^-i) = r, memoized over exact remainders.

    Pruning is exact: the real embedding must stay inside the open interval
    that any digit tail can reach, and a certified conjugate lower bound must
    not exceed what a tail of the remaining length can produce.  Both tests
    only ever discard provably infeasible remainders, so the search is
    complete within its length horizon.
    """

    def __init__(self, f: BetaField, B: int):
        self.f = f
        self.B = B
        self.digits = sorted(range(1 - B, B), key=lambda d: (abs(d), -d))
        self._edges = {}
        self._memo = {}
        self._conj_lb = {}
        self._bm1 = f.beta - 1
        self._real_hi = f.from_int(B - 1)
        # conjugate machinery in floats with conservative margins: the prune
        # discards a remainder only when a certified lower bound on some
        # conjugate modulus exceeds an inflated upper bound of what a digit
        # tail of the remaining length can produce
        self._conj_z = []
        self._inv_q = []
        for disk in f._conj_disks:
            lb = disk.abs_bounds()[0]
            if lb <= 0:
                raise MinweightError("conjugate disk too coarse for pruning")
            self._conj_z.append(complex(float(disk.re), float(disk.im)))
            self._inv_q.append((1.0 / float(lb)) * (1.0 + 1e-9))
        self._tails = [[0.0] * len(self._conj_z)]
        self._tail_pows = [[1.0] * len(self._conj_z)]
        # how far above the base scaling a stripped word of the class can sit:
        # |.w| >= |norm(value)| / (beta^len * prod of conjugate tail sups)
        lnb = math.log(f.float_beta())
        prod = 1.0
        for ub in f.conjugate_moduli_bounds:
            prod *= (B - 1) / (1.0 - float(ub))
        prod *= (B - 1) / (f.float_beta() - 1)
        self.scaling_margin = int(math.ceil(math.log(max(2.0, prod)) / lnb)) + 4

    def _tail_bound(self, l, j):
        while len(self._tails) <= l:
            pows = [p * q * (1.0 + 1e-12) for p, q in zip(self._tail_pows[-1], self._inv_q)]
            self._tail_pows.append(pows)
            self._tails.append([t + (self.B - 1) * p * (1.0 + 1e-12)
                                for t, p in zip(self._tails[-1], pows)])
        return self._tails[l][j]

    def _real_ok(self, r: FieldElem) -> bool:
        t = r * self._bm1
        return (self._real_hi - t).sign() > 0 and (t + self._real_hi).sign() > 0

    def _conj_lb_floats(self, r: FieldElem):
        lbs = self._conj_lb.get(r)
        if lbs is None:
            out = []
            for z in self._conj_z:
                acc = 0j
                mag = 0.0
                az = abs(z)
                for c in reversed(r.coeffs):
                    acc = acc * z + c
                    mag = mag * az + abs(c)
                if r.shift:
                    acc *= z ** r.shift
                    mag *= az ** r.shift
                # margin dominates float roundoff and the disk radius
                out.append(abs(acc) - mag * 1e-9 - 1e-12)
            lbs = tuple(out)
            self._conj_lb[r] = lbs
        return lbs

    def _conj_feasible(self, r: FieldElem, l: int) -> bool:
        lbs = self._conj_lb_floats(r)
        for j, lb in enumerate(lbs):
            if lb > self._tail_bound(l, j) * (1.0 + 1e-9):
                return False
        return True

    def _children(self, r: FieldElem):
        out = self._edges.get(r)
        if out is None:
            base = r * self.f.beta
            out = tuple((d, base - d) for d in self.digits if self._real_ok(base - d))
            self._edges[r] = out
        return out

    def min_tail_weight(self, r: FieldElem, l: int):
        if r.is_zero():
            return 0
        if l <= 0:
            return INF
        key = (r, l)
        got = self._memo.get(key)
        if got is not None:
            return got
        if not self._conj_feasible(r, l):
            self._memo[key] = INF
            return INF
        best = INF
        for d, r2 in self._children(r):
            w = abs(d) + self.min_tail_weight(r2, l - 1)
            if w < best:
                best = w
        self._memo[key] = best
        return best

    def reconstruct(self, r: FieldElem, l: int):
        """A word achieving min_tail_weight(r, l), or None if infeasible."""
        target = self.min_tail_weight(r, l)
        if target is INF:
            return None
        out = []
        while not r.is_zero():
            for d, r2 in self._children(r):
                tail = self.min_tail_weight(r2, l - 1)
                if tail is not INF and abs(d) + tail == target:
                    out.append(d)
                    target -= abs(d)
                    r, l = r2, l - 1
                    break
            else:
                raise MinweightError("reconstruction lost the optimum")
        return tuple(out)

    # -- class-level queries ------------------------------------------------

    def base_scaling(self, v: FieldElem) -> int:
        """Smallest k with v / beta^k inside the representable interval."""
        if v.is_zero():
            raise ValueError("zero value")
        from .words import scale_exponent
        k = scale_exponent(v) - 1
        while not self._real_ok(v.mul_beta(-k)):
            k += 1
        return k

    def min_class_weight(self, v: FieldElem, max_len: int):
        """Least weight of any word of length <= max_len whose value is
        beta^k * v for some integer k (INF if none in the horizon).

        A single deep start covers every admissible scaling: scalings below
        the start appear as leading zeros, and the norm bound built into
        scaling_margin caps how far above the base scaling a stripped word
        of the allowed length can sit.
        """
        if v.is_zero():
            return 0
        k0 = self.base_scaling(v)
        kmax = k0 + max_len + self.scaling_margin
        return self.min_tail_weight(v.mul_beta(-kmax), kmax - k0 + max_len)

    def class_witness(self, v: FieldElem, max_len: int):
        if v.is_zero():
            return ()
        best = self.min_class_weight(v, max_len)
        if best is INF:
            return None
        k0 = self.base_scaling(v)
        kmax = k0 + max_len + self.scaling_margin
        digits = self.reconstruct(v.mul_beta(-kmax), kmax - k0 + max_len)
        i = 0
        while i < len(digits) and digits[i] == 0:
            i += 1
        return digits[i:]


_search_cache = {}


def remainder_search(f: BetaField, B: int) -> RemainderSearch:
    key = (f.min_poly, B)
    if key not in _search_cache:
        _search_cache[key] = RemainderSearch(f, B)
    return _search_cache[key]


class DigitSetWitness:
    """A word over {1-B..B-1} whose value, read with its radix point, is
    exactly B, with weight <= B."""

    def __init__(self, B: int, word: DigitWord):
        self.B = B
        self.word = word
        self.k = word.point

    def __repr__(self):
        from .words import render_word
        return "DigitSetWitness(B=%d, %s)" % (self.B, render_word(self.word))


def find_witness(f: BetaField, B: int, max_len: int = 40):
    """Minimal-length witness word for the digit-set condition at B, or None
    when none exists within the horizon (the base then behaves like the
    0*B0* fallback as far as this search can tell)."""
    if B < 2:
        raise MinweightError("B must be >= 2")
    search = remainder_search(f, B)
    target = f.from_int(B)
    k0 = search.base_scaling(target)
    for L in range(1, max_len + 1):
        for k in range(k0, k0 + L):
            r0 = target.mul_beta(-k)
            if search.min_tail_weight(r0, L) <= B:
                digits = list(search.reconstruct(r0, L))
                lead = 0
                while digits and digits[0] == 0:
                    digits.pop(0)
                    lead += 1
                word = DigitWord(digits, point=k - lead)
                if value_beta(word, f) != f.from_int(B):
                    raise MinweightError("witness reconstruction inconsistent")
                return DigitSetWitness(B, word)
    return None


def is_heavy_oracle(x: DigitWord, f: BetaField, B: int, slack: int):
    """Complete bounded search for a strictly lighter word with the same value
    up to a power of beta.  None means: not heavy within the horizon
    len(strip(x)) + slack."""
    if slack < 0:
        raise ValueError("slack must be >= 0")
    stripped = x.strip()
    w = stripped.weight()
    if w == 0:
        return None
    v = value_beta(stripped, f)
    search = remainder_search(f, B)
    max_len = len(stripped) + slack
    if search.min_class_weight(v, max_len) < w:
        return DigitWord(search.class_witness(v, max_len))
    return None


def reduce_digits(x: DigitWord, f: BetaField, witness: DigitSetWitness) -> DigitWord:
    """Rewrite x into an equal-valued word over {1-B..B-1} without increasing
    the weight, always attacking the rightmost too-large digit."""
    B = witness.B
    point = x.point if x.point is not None else len(x.digits)
    arr = {}
    for j, d in enumerate(x.digits, start=1):
        if d:
            arr[j - point] = d
    if all(abs(d) < B for d in arr.values()):
        return x
    wpoint = witness.word.point if witness.word.point is not None else len(witness.word.digits)
    units = wpoint - 1
    rel = [(i - units, bd) for i, bd in enumerate(witness.word.digits)]
    cap = 1000 + 200 * sum(abs(d) for d in arr.values())
    for _ in range(cap):
        offenders = [p for p, d in arr.items() if abs(d) >= B]
        if not offenders:
            break
        h = max(offenders)
        sgn = 1 if arr[h] > 0 else -1
        for off, bd in rel:
            delta = bd - (B if off == 0 else 0)
            if delta:
                p = h + off
                nd = arr.get(p, 0) + sgn * delta
                if nd:
                    arr[p] = nd
                else:
                    arr.pop(p, None)
    else:
        raise MinweightError("digit reduction did not terminate; "
                             "the digit-set condition may fail here")
    if not arr:
        return DigitWord(())
    pmin, pmax = min(arr), max(arr)
    digits = [arr.get(p, 0) for p in range(pmin, pmax + 1)]
    return DigitWord(digits, point=1 - pmin)


# ---------------------------------------------------------------------------
# exhaustive enumeration oracle: minimal weights of whole value classes


class MinWeightUniverse:
    """Minimal weight per value class over every word up to a length bound,
    by plain enumeration; the independent referee for the automata.

    ``argmin_for``: optional set of class keys for which all minimal words
    (stripped) should be collected during the scan.
    """

    def __init__(self, f: BetaField, max_len: int, digits=(-1, 0, 1),
                 argmin_for=None):
        self.f = f
        self.max_len = max_len
        self.digits = tuple(digits)
        self.valuer = FastValuer(f)
        self.min_weight = {}
        self.argmin = {}
        self._argmin_for = argmin_for
        self._scan()

    def _scan(self):
        table = self.min_weight
        table[()] = 0  # the zero class: realized by the empty word
        want = self._argmin_for
        argmin = self.argmin
        valuer = self.valuer
        digits = self.digits
        nz = [d for d in digits if d]
        max_len = self.max_len
        zero_c = valuer.zero_coeffs
        zero_i = valuer.zero_interval
        step = valuer.step
        key_of = valuer.key

        # DFS over words with a nonzero first digit; every node whose last
        # digit is nonzero is a stripped word of the universe.
        stack = [(zero_c, zero_i, 0, 0, iter(nz))]
        path = []
        while stack:
            c, iv, wt, depth, it = stack[-1]
            d = next(it, None)
            if d is None:
                stack.pop()
                if path:
                    path.pop()
                continue
            c2 = step(c, d)
            iv2 = valuer.step_interval(iv, d)
            wt2 = wt + abs(d)
            path.append(d)
            if d != 0:
                k = key_of(c2, iv2)
                old = table.get(k)
                if old is None or wt2 < old:
                    table[k] = wt2
                if want is not None and k in want:
                    argmin.setdefault(k, []).append((wt2, tuple(path)))
            if depth + 1 < max_len:
                stack.append((c2, iv2, wt2, depth + 1, iter(digits)))
            else:
                path.pop()
        if want is not None:
            for k, cand in list(argmin.items()):
                m = table[k]
                argmin[k] = {w for wt, w in cand if wt == m}

    def key_of_stripped(self, stripped_digits):
        c = self.valuer.zero_coeffs
        iv = self.valuer.zero_interval
        for d in stripped_digits:
            iv = self.valuer.step_interval(iv, d)
            c = self.valuer.step(c, d)
        return self.valuer.key(c, iv)

    def word_is_minimal(self, digits_tuple) -> bool:
        w = tuple(digits_tuple)
        i, j = 0, len(w)
        while i < j and w[i] == 0:
            i += 1
        while j > i and w[j - 1] == 0:
            j -= 1
        w = w[i:j]
        if not w:
            return True
        k = self.key_of_stripped(w)
        return sum(abs(d) for d in w) == self.min_weight[k]


class FastValuer:
    """Exact shift-class keys with an integer fixed-point fast path."""

    PREC = 120

    def __init__(self, f: BetaField):
        self.f = f
        prec = self.PREC
        while f._root.k < prec:
            f.refine_root(16)
        lo, hi, k = f._interval_ints()
        if k >= prec:
            self.blo = lo >> (k - prec)
            self.bhi = (hi >> (k - prec)) + 1
        else:
            self.blo = lo << (prec - k)
            self.bhi = hi << (prec - k)
        d = f.degree
        sub = [-c for c in f._low[:-1]]
        rows = []
        for i in range(d):
            if i + 1 < d:
                row = [0] * d
                row[i + 1] = 1
            else:
                row = list(sub)
            rows.append(tuple(row))
        self._rows = tuple(rows)
        self.zero_coeffs = (0,) * d
        self.zero_interval = (0, 0)
        self._pows = {0: (1 << prec, 1 << prec)}
        self._ln2_over_lnb = math.log(2.0) / math.log(f.float_beta())

    def step(self, c, digit):
        d = self.f.degree
        rows = self._rows
        nc = [0] * d
        for i in range(d):
            ci = c[i]
            if ci:
                row = rows[i]
                for j in range(d):
                    rj = row[j]
                    if rj:
                        nc[j] += ci * rj
        nc[0] += digit
        return tuple(nc)

    def step_interval(self, iv, digit):
        lo, hi = iv
        prec = self.PREC
        nlo = (lo * (self.bhi if lo < 0 else self.blo)) >> prec
        nhi = ((hi * (self.blo if hi < 0 else self.bhi)) >> prec) + 1
        add = digit << prec
        return nlo + add, nhi + add

    def _pow(self, k):
        got = self._pows.get(k)
        if got is None:
            prec = self.PREC
            if k > 0:
                plo, phi = self._pow(k - 1)
                got = ((plo * self.blo) >> prec, ((phi * self.bhi) >> prec) + 1)
            else:
                plo, phi = self._pow(k + 1)
                got = ((plo << prec) // self.bhi, ((phi << prec) // self.blo) + 1)
            self._pows[k] = got
        return got

    def key(self, coeffs, interval):
        """Class key of the value with the given exact coefficients; the
        fixed-point interval accelerates the scale search, falling back to
        fully exact comparisons whenever it is inconclusive."""
        if not any(coeffs):
            return ()
        lo, hi = interval
        if lo <= 0 <= hi:
            return self._slow_key(coeffs)
        sgn = 1 if lo > 0 else -1
        alo, ahi = (lo, hi) if sgn > 0 else (-hi, -lo)
        k = int(round((alo.bit_length() - self.PREC) * self._ln2_over_lnb))
        for _ in range(300):
            plo, phi = self._pow(k)
            if ahi < plo:
                k -= 1
                continue
            qlo, qhi = self._pow(k + 1)
            if alo >= qhi:
                k += 1
                continue
            if alo >= phi and ahi < qlo:
                break
            return self._slow_key(coeffs)
        else:
            return self._slow_key(coeffs)
        v = self.f.elem(coeffs if sgn > 0 else [-x for x in coeffs]).mul_beta(-k)
        return (sgn, v.shift, v.coeffs)

    def _slow_key(self, coeffs):
        return class_key(self.f.elem(coeffs))
