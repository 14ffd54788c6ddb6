"""Check reports.

A report carries a verdict, witnesses and a description of the corpus it
quantified over.  ``as_dict`` is deterministic: witnesses keep insertion
order (checkers enumerate in a fixed order) and no timing is included.
"""
from __future__ import annotations

import json

PASS, FAIL, UNDETERMINED = "pass", "fail", "undetermined"
EXIT_CODES = {PASS: 0, FAIL: 1, UNDETERMINED: 2}


def jsonable(x):
    """Best-effort conversion of witness data to JSON values."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, (tuple, list)):
        return [jsonable(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(y) for y in x), key=repr)
    if isinstance(x, dict):
        return {k if isinstance(k, str) else repr(k): jsonable(v) for k, v in x.items()}
    if hasattr(x, "as_dict"):
        return jsonable(x.as_dict())
    from . import serialize

    enc = serialize.encode_or_none(x)
    return enc if enc is not None else repr(x)


class Report:
    def __init__(self, name, instance=None, corpus=None, seed=None):
        self.name = name
        self.instance = instance
        self.corpus = dict(corpus or {})
        self.seed = seed
        self.witnesses = []
        self.stats = {}
        self.notes = []
        self.children = []
        self._verdict = None
        self.result = None

    def fail(self, **witness):
        self.witnesses.append(witness)

    def count(self, key, n=1):
        self.stats[key] = self.stats.get(key, 0) + n

    def undetermined(self, note):
        self.notes.append(note)
        self._verdict = UNDETERMINED

    def add(self, child: "Report"):
        self.children.append(child)
        return child

    @property
    def verdict(self) -> str:
        verdicts = [c.verdict for c in self.children]
        if self.witnesses or FAIL in verdicts:
            return FAIL
        if self._verdict == UNDETERMINED or UNDETERMINED in verdicts:
            return UNDETERMINED
        return PASS

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def as_dict(self) -> dict:
        d = {
            "axiom": self.name,
            "instance": self.instance,
            "corpus": jsonable(self.corpus),
            "verdict": self.verdict,
            "witnesses": jsonable(self.witnesses),
            "seed": self.seed,
        }
        if self.stats:
            d["stats"] = dict(self.stats)
        if self.notes:
            d["notes"] = list(self.notes)
        if self.result is not None:
            d["result"] = jsonable(self.result)
        if self.children:
            d["checks"] = [c.as_dict() for c in self.children]
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, ensure_ascii=False, indent=2)

    def summary(self) -> str:
        lines = [f"{self.name}: {self.verdict}"]
        for c in self.children:
            lines.append(f"  {c.name}: {c.verdict}")
        for w in self.witnesses[:5]:
            lines.append(f"  witness: {jsonable(w)}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)

    def __repr__(self):
        return f"Report({self.name!r}, {self.verdict})"
