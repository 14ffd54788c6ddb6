"""Built-in inputs, addressed on the command line as ``fixture:NAME``."""
from __future__ import annotations

from .core import empty, terminal
from .shapes import arrow, chain, cyclic_group, free_iso, idempotent, parallel_pair


def _counterexample():
    from .twocat import counterexample

    return counterexample()


def _sset(name):
    def build():
        from . import simplicial as s

        return {
            "horn21": lambda: s.horn(2, 1),
            "horn20": lambda: s.horn(2, 0),
            "boundary2": lambda: s.boundary(2),
            "delta1": lambda: s.delta(1),
            "delta2": lambda: s.delta(2),
            "loop": lambda: s.circle(2),
        }[name]()

    return build


FIXTURES = {
    "empty": empty,
    "one": terminal,
    "two": arrow,
    "three": lambda: chain(3, name="𝟛"),
    "iso": free_iso,
    "parallel": parallel_pair,
    "z2": lambda: cyclic_group(2),
    "idempotent": idempotent,
    "horn21": _sset("horn21"),
    "horn20": _sset("horn20"),
    "boundary2": _sset("boundary2"),
    "delta1": _sset("delta1"),
    "delta2": _sset("delta2"),
    "loop": _sset("loop"),
    "counterexample": lambda: _counterexample().alpha,
    "counterexample-F": lambda: _counterexample().F,
    "counterexample-G": lambda: _counterexample().G,
    "counterexample-cat": lambda: _counterexample().fragment.two,
}

ALIASES = {"∅": "empty", "𝟙": "one", "𝟚": "two", "𝟛": "three", "I": "iso", "⇉": "parallel", "Z/2": "z2",
           "E": "idempotent", "Λ21": "horn21", "Δ1": "delta1", "S1": "loop"}


def fixture(name: str):
    key = ALIASES.get(name, name)
    if key not in FIXTURES:
        raise KeyError(name)
    return FIXTURES[key]()


def names() -> list:
    return sorted(FIXTURES)
