"""Finite automata and letter-to-letter transducers over integer digit
alphabets: subset construction, minimization, complement, product,
language equivalence with counterexamples, and the factor-avoidance
construction (all words containing no factor from a given set).

Automata are immutable once built.  Deterministic automata are partial:
a missing transition means rejection, and every public constructor
relabels states 0..n-1 in breadth-first order (letters sorted), so DOT
and JSON output is stable and diffable.
"""

from __future__ import annotations

import json


class AutomatonError(Exception):
    pass


class Dfa:
    __slots__ = ("alphabet", "initial", "terminals", "transitions", "state_labels")

    def __init__(self, alphabet, initial, terminals, transitions, state_labels=None):
        self.alphabet = tuple(sorted(alphabet))
        self.initial = initial
        self.terminals = frozenset(terminals)
        self.transitions = {s: dict(t) for s, t in transitions.items()}
        self.state_labels = dict(state_labels or {})

    @property
    def states(self):
        out = {self.initial}
        out.update(self.transitions)
        for t in self.transitions.values():
            out.update(t.values())
        out.update(self.terminals)
        return out

    def step(self, state, letter):
        return self.transitions.get(state, {}).get(letter)

    def run(self, word):
        s = self.initial
        for a in word:
            s = self.step(s, a)
            if s is None:
                return None
        return s

    def accepts(self, word) -> bool:
        s = self.run(word)
        return s is not None and s in self.terminals

    def n_states(self):
        return len(self.states)

    def __repr__(self):
        return "Dfa(%d states, %d terminal)" % (self.n_states(), len(self.terminals))


class Nfa:
    __slots__ = ("alphabet", "initials", "terminals", "transitions")

    def __init__(self, alphabet, initials, terminals, transitions):
        self.alphabet = tuple(sorted(alphabet))
        self.initials = frozenset(initials)
        self.terminals = frozenset(terminals)
        self.transitions = {s: {a: frozenset(d) for a, d in t.items()}
                            for s, t in transitions.items()}

    def step(self, states, letter):
        out = set()
        for s in states:
            out.update(self.transitions.get(s, {}).get(letter, ()))
        return frozenset(out)

    def accepts(self, word) -> bool:
        cur = self.initials
        for a in word:
            cur = self.step(cur, a)
            if not cur:
                return False
        return bool(cur & self.terminals)


def relabel(dfa: Dfa) -> Dfa:
    """Canonical state numbering: BFS from the initial state, sorted letters."""
    order = {dfa.initial: 0}
    queue = [dfa.initial]
    while queue:
        s = queue.pop(0)
        for a in dfa.alphabet:
            t = dfa.step(s, a)
            if t is not None and t not in order:
                order[t] = len(order)
                queue.append(t)
    trans = {}
    for s, n in order.items():
        row = {a: order[t] for a, t in dfa.transitions.get(s, {}).items() if t in order}
        if row:
            trans[n] = row
    labels = {order[s]: dfa.state_labels.get(s, str(s)) for s in order}
    terms = frozenset(order[s] for s in dfa.terminals if s in order)
    return Dfa(dfa.alphabet, 0, terms, trans, labels)


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction; the empty subset is left out (partial result)."""
    init = nfa.initials
    seen = {init}
    queue = [init]
    trans = {}
    labels = {}
    while queue:
        cur = queue.pop(0)
        row = {}
        for a in nfa.alphabet:
            nxt = nfa.step(cur, a)
            if nxt:
                row[a] = nxt
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        if row:
            trans[cur] = row
    terms = {s for s in seen if s & nfa.terminals}
    labels = {s: "{%s}" % ",".join(sorted(str(q) for q in s)) for s in seen}
    return relabel(Dfa(nfa.alphabet, init, terms, trans, labels))


def trim(dfa: Dfa) -> Dfa:
    """Keep states that are reachable and can still reach a terminal."""
    reach = {dfa.initial}
    queue = [dfa.initial]
    while queue:
        s = queue.pop(0)
        for t in dfa.transitions.get(s, {}).values():
            if t not in reach:
                reach.add(t)
                queue.append(t)
    back = {}
    for s, row in dfa.transitions.items():
        for t in row.values():
            back.setdefault(t, set()).add(s)
    live = set(t for t in dfa.terminals if t in reach)
    queue = list(live)
    while queue:
        s = queue.pop(0)
        for p in back.get(s, ()):
            if p in reach and p not in live:
                live.add(p)
                queue.append(p)
    if dfa.initial not in live:
        return Dfa(dfa.alphabet, dfa.initial, (), {}, {dfa.initial: dfa.state_labels.get(dfa.initial, "0")})
    trans = {s: {a: t for a, t in row.items() if t in live}
             for s, row in dfa.transitions.items() if s in live}
    trans = {s: row for s, row in trans.items() if row}
    return Dfa(dfa.alphabet, dfa.initial, live & dfa.terminals, trans, dfa.state_labels)


_DEAD = object()


def minimize(dfa: Dfa) -> Dfa:
    """The unique minimal partial DFA of the language (dead state removed)."""
    d = trim(dfa)
    states = sorted(d.states, key=lambda s: (str(type(s)), str(s)))
    if not d.terminals:
        return relabel(d)
    cls = {s: (s in d.terminals) for s in states}
    cls[_DEAD] = "dead"
    while True:
        sig = {}
        for s in states:
            sig[s] = (cls[s], tuple(cls[d.step(s, a)] if d.step(s, a) is not None else cls[_DEAD]
                                    for a in d.alphabet))
        mapping = {}
        for s in states:
            mapping.setdefault(sig[s], []).append(s)
        new_cls = {}
        for i, (k, group) in enumerate(sorted(mapping.items(), key=lambda kv: str(kv[0]))):
            for s in group:
                new_cls[s] = i
        new_cls[_DEAD] = "dead"
        if len(set(new_cls[s] for s in states)) == len(set(cls[s] for s in states)):
            break
        cls = new_cls
    rep = {}
    for s in states:
        rep.setdefault(cls[s], s)
    quot_trans = {}
    for s in states:
        c = cls[s]
        if rep[c] is not s:
            continue
        row = {}
        for a in d.alphabet:
            t = d.step(s, a)
            if t is not None:
                row[a] = rep[cls[t]]
        if row:
            quot_trans[s] = row
    quot = Dfa(d.alphabet, rep[cls[d.initial]],
               {rep[cls[t]] for t in d.terminals},
               quot_trans,
               {rep[cls[s]]: d.state_labels.get(s, str(s)) for s in states})
    return relabel(trim(quot))


def totalize(dfa: Dfa, sink="__dead__"):
    trans = {}
    states = dfa.states | {sink}
    for s in states:
        row = dict(dfa.transitions.get(s, {}))
        for a in dfa.alphabet:
            row.setdefault(a, sink)
        trans[s] = row
    return Dfa(dfa.alphabet, dfa.initial, dfa.terminals, trans, dfa.state_labels)


def complement(dfa: Dfa) -> Dfa:
    t = totalize(dfa)
    return minimize(Dfa(t.alphabet, t.initial, t.states - t.terminals, t.transitions, t.state_labels))


def intersect(a: Dfa, b: Dfa) -> Dfa:
    if a.alphabet != b.alphabet:
        raise AutomatonError("alphabet mismatch: %r vs %r" % (a.alphabet, b.alphabet))
    init = (a.initial, b.initial)
    seen = {init}
    queue = [init]
    trans = {}
    while queue:
        s = queue.pop(0)
        row = {}
        for letter in a.alphabet:
            ta, tb = a.step(s[0], letter), b.step(s[1], letter)
            if ta is not None and tb is not None:
                t = (ta, tb)
                row[letter] = t
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        if row:
            trans[s] = row
    terms = {s for s in seen if s[0] in a.terminals and s[1] in b.terminals}
    return minimize(Dfa(a.alphabet, init, terms, trans))


def language_equal(a: Dfa, b: Dfa):
    """(True, None) when the languages agree, else (False, shortest witness)."""
    if a.alphabet != b.alphabet:
        raise AutomatonError("alphabet mismatch")
    ta, tb = totalize(a), totalize(b)
    start = (ta.initial, tb.initial)
    parent = {start: None}
    queue = [start]
    while queue:
        s = queue.pop(0)
        in_a = s[0] in ta.terminals
        in_b = s[1] in tb.terminals
        if in_a != in_b:
            letters = []
            cur = s
            while parent[cur] is not None:
                cur, a0 = parent[cur]
                letters.append(a0)
            return False, tuple(reversed(letters))
        for letter in ta.alphabet:
            t = (ta.step(s[0], letter), tb.step(s[1], letter))
            if t not in parent:
                parent[t] = (s, letter)
                queue.append(t)
    return True, None


def factor_complement(h) -> Dfa:
    """Minimal DFA of the words containing no factor recognized by ``h``.

    Follows the pipeline: build an automaton for (anything)(H)(anything),
    complement, minimize.  When H contains the empty word the result is the
    empty language (every word has an empty factor).
    """
    if isinstance(h, Dfa):
        h = nfa_from_dfa(h)
    if h.initials & h.terminals:
        return Dfa(h.alphabet, 0, (), {})
    pre, post = "__pre__", "__post__"
    trans = {pre: {}}
    for a in h.alphabet:
        dests = {pre}
        started = h.step(h.initials, a)
        dests.update(started)
        if started & h.terminals:
            dests.add(post)
        trans[pre][a] = frozenset(dests)
    for s, row in h.transitions.items():
        new_row = {}
        for a, dst in row.items():
            d = set(dst)
            if dst & h.terminals:
                d.add(post)
            new_row[a] = frozenset(d)
        trans[s] = new_row
    trans[post] = {a: frozenset({post}) for a in h.alphabet}
    bad = Nfa(h.alphabet, {pre}, {post}, trans)
    return complement(determinize(bad))


def nfa_from_dfa(dfa: Dfa) -> Nfa:
    trans = {s: {a: {t} for a, t in row.items()} for s, row in dfa.transitions.items()}
    return Nfa(dfa.alphabet, {dfa.initial}, dfa.terminals, trans)


def enumerate_language(dfa: Dfa, max_len: int):
    """Yield all accepted words of length <= max_len (lexicographic order)."""
    def rec(state, prefix):
        if state in dfa.terminals:
            yield tuple(prefix)
        if len(prefix) == max_len:
            return
        for a in dfa.alphabet:
            t = dfa.step(state, a)
            if t is not None:
                prefix.append(a)
                yield from rec(t, prefix)
                prefix.pop()
    yield from rec(dfa.initial, [])


class LetterTransducer:
    """Letter-to-letter transducer: edges carry (input letter, output letter)."""

    __slots__ = ("alphabet_in", "alphabet_out", "initials", "terminals", "edges", "state_labels")

    def __init__(self, alphabet_in, alphabet_out, initials, terminals, edges, state_labels=None):
        self.alphabet_in = tuple(sorted(alphabet_in))
        self.alphabet_out = tuple(sorted(alphabet_out))
        self.initials = frozenset(initials)
        self.terminals = frozenset(terminals)
        # edges: dict state -> tuple of (a, b, dst)
        self.edges = {s: tuple(e) for s, e in edges.items()}
        self.state_labels = dict(state_labels or {})

    @property
    def states(self):
        out = set(self.initials) | set(self.terminals) | set(self.edges)
        for es in self.edges.values():
            out.update(dst for _, _, dst in es)
        return out

    def n_states(self):
        return len(self.states)

    def input_automaton(self) -> Nfa:
        trans = {}
        for s, es in self.edges.items():
            row = {}
            for a, _b, dst in es:
                row.setdefault(a, set()).add(dst)
            trans[s] = row
        return Nfa(self.alphabet_in, self.initials, self.terminals, trans)

    def __repr__(self):
        return "LetterTransducer(%d states)" % self.n_states()


# -- export -------------------------------------------------------------------


def to_dot(obj) -> str:
    """Stable DOT text for a Dfa or LetterTransducer."""
    lines = ["digraph {", "  rankdir=LR;"]
    if isinstance(obj, LetterTransducer):
        states = sorted(obj.states, key=str)
        for s in states:
            shape = "doublecircle" if s in obj.terminals else "circle"
            label = obj.state_labels.get(s, str(s))
            lines.append('  "%s" [shape=%s,label="%s"];' % (s, shape, label))
        for s in states:
            for a, b, dst in sorted(obj.edges.get(s, ()), key=str):
                lines.append('  "%s" -> "%s" [label="%s|%s"];' % (s, dst, a, b))
        for s in sorted(obj.initials, key=str):
            lines.append('  "__start_%s" [shape=point]; "__start_%s" -> "%s";' % (s, s, s))
    else:
        d = obj
        states = sorted(d.states, key=str)
        for s in states:
            shape = "doublecircle" if s in d.terminals else "circle"
            label = d.state_labels.get(s, str(s))
            lines.append('  "%s" [shape=%s,label="%s"];' % (s, shape, label))
        for s in states:
            for a in d.alphabet:
                t = d.step(s, a)
                if t is not None:
                    lines.append('  "%s" -> "%s" [label="%s"];' % (s, t, a))
        lines.append('  "__start" [shape=point]; "__start" -> "%s";' % d.initial)
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(dfa: Dfa) -> str:
    states = sorted(dfa.states, key=str)
    data = {
        "alphabet": list(dfa.alphabet),
        "states": [str(s) for s in states],
        "initial": str(dfa.initial),
        "terminals": sorted(str(s) for s in dfa.terminals),
        "labels": {str(s): dfa.state_labels[s] for s in states if s in dfa.state_labels},
        "edges": sorted([str(s), a, str(dfa.step(s, a))]
                        for s in states for a in dfa.alphabet if dfa.step(s, a) is not None),
    }
    return json.dumps(data, indent=1, sort_keys=True)


def from_json(text: str) -> Dfa:
    data = json.loads(text)
    trans = {}
    for src, a, dst in data["edges"]:
        trans.setdefault(src, {})[int(a)] = dst
    return Dfa(data["alphabet"], data["initial"], data["terminals"], trans,
               data.get("labels"))
