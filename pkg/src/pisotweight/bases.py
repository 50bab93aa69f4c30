"""Per-base bundles for the three studied Pisot bases: field, avoiding
transformations, recognizers, witness, and the bounded search oracle.

Everything heavy is built lazily and cached on the bundle.
"""

from __future__ import annotations

from .algebra import golden_field, smallest_pisot_field, tribonacci_field
from .expand import builtin_tau_specs, omega_value
from . import minweight as mw


class Base:
    def __init__(self, name, field, tau_main, tau_variant, representable):
        self.name = name
        self.field = field
        self.B = 2
        self.tau_main = tau_main
        self.tau_variant = tau_variant
        # (num, den) field-element pair: sup of |.w| over minimal words
        self.representable_bound = representable
        self._parts = None
        self._heavy = None
        self._minweight = None
        self._witness = None

    def transducer_parts(self):
        if self._parts is None:
            self._parts = mw.build_weight_transducer(self.field, self.B)
        return self._parts

    def heavy_language(self):
        if self._heavy is None:
            self._heavy = mw.heavy_language(self.field, self.B, self.transducer_parts())
        return self._heavy

    def minweight_automaton(self):
        if self._minweight is None:
            self._minweight = mw.factor_complement(self.heavy_language())
        return self._minweight

    def witness(self):
        if self._witness is None:
            self._witness = mw.find_witness(self.field, self.B)
        return self._witness

    def search(self) -> mw.RemainderSearch:
        return mw.remainder_search(self.field, self.B)

    def __repr__(self):
        return "Base(%s)" % self.name


_bundles = {}

_ALIASES = {
    "golden": "golden",
    "golden-ratio": "golden",
    "fibonacci": "golden",
    "f": "golden",
    "tribonacci": "tribonacci",
    "t": "tribonacci",
    "smallest-pisot": "smallest-pisot",
    "smallest_pisot": "smallest-pisot",
    "plastic": "smallest-pisot",
    "s": "smallest-pisot",
}


def resolve_base(base) -> Base:
    if isinstance(base, Base):
        return base
    name = _ALIASES.get(str(base).lower())
    if name is None:
        raise ValueError("unknown base %r (use golden, tribonacci or smallest-pisot)"
                         % (base,))
    if name not in _bundles:
        _bundles[name] = _make(name)
    return _bundles[name]


def _make(name):
    specs = {s.name: s for s in builtin_tau_specs()}
    if name == "golden":
        f = golden_field()
        rep = omega_value((1,), (0, 1, 0, 0), f)       # .1(0100)^w = 2b/(b^2+1)
        return Base(name, f, specs["golden"], specs["golden-variant"], rep)
    if name == "tribonacci":
        f = tribonacci_field()
        rep = omega_value((1,), (1, 0, 0), f)          # .1(100)^w
        return Base(name, f, specs["tribonacci"], specs["tribonacci-variant"], rep)
    f = smallest_pisot_field()
    rep = omega_value((1,), (0, 0, 0, 0, 0, 1, 0, 0), f)   # .1(0^5 1 0^2)^w
    return Base(name, f, specs["smallest-pisot"], specs["smallest-pisot-variant"], rep)
