"""Standard small shapes and seeded random categories."""
from __future__ import annotations

import random

from .core import FinCategory, discrete, empty, iter_functors, terminal, thin_category

__all__ = [
    "arrow",
    "chain",
    "codiscrete",
    "cyclic_group",
    "discrete",
    "empty",
    "free_iso",
    "idempotent",
    "parallel_pair",
    "posets_up_to",
    "random_category",
    "random_functor",
    "small_categories",
    "terminal",
    "thin_category",
]


def chain(n: int, name=None) -> FinCategory:
    """The ordinal ``0 < 1 < ... < n-1``."""
    return thin_category(range(n), [(a, b) for a in range(n) for b in range(n) if a <= b], name=name)


def arrow() -> FinCategory:
    return chain(2, name="𝟚")


def codiscrete(objects, name=None) -> FinCategory:
    objects = list(objects)
    return thin_category(objects, [(a, b) for a in objects for b in objects], name=name)


def free_iso() -> FinCategory:
    """The free-living isomorphism ``0 ≅ 1``."""
    return codiscrete([0, 1], name="I")


def parallel_pair() -> FinCategory:
    """``a ⇉ b`` with arrows ``s`` and ``t``."""
    morphisms = [("id_a", "a", "a"), ("id_b", "b", "b"), ("s", "a", "b"), ("t", "a", "b")]
    comp = {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b"}
    for m in ("s", "t"):
        comp[("id_b", m)] = m
        comp[(m, "id_a")] = m
    return FinCategory(["a", "b"], morphisms, {"a": "id_a", "b": "id_b"}, comp, name="⇉")


def cyclic_group(n: int) -> FinCategory:
    names = ["e"] + [f"g{k}" for k in range(1, n)]
    comp = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    return FinCategory(["*"], [(x, "*", "*") for x in names], {"*": "e"}, comp, name=f"Z/{n}")


def idempotent() -> FinCategory:
    """The monoid ``{1, e}`` with ``e∘e = e``."""
    comp = {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"}
    return FinCategory(["*"], [("1", "*", "*"), ("e", "*", "*")], {"*": "1"}, comp, name="E")


_POSETS = [
    ("∅", 0, []),
    ("𝟙", 1, []),
    ("𝟙⊔𝟙", 2, []),
    ("𝟚", 2, [(0, 1)]),
    ("𝟙⊔𝟙⊔𝟙", 3, []),
    ("𝟚⊔𝟙", 3, [(0, 1)]),
    ("𝟛", 3, [(0, 1), (1, 2), (0, 2)]),
    ("span", 3, [(0, 1), (0, 2)]),
    ("cospan", 3, [(0, 2), (1, 2)]),
]


def posets_up_to(n: int) -> list:
    """Every poset with at most ``n ≤ 3`` elements, one per isomorphism class."""
    if n > 3:
        raise ValueError("only posets with at most 3 elements are catalogued")
    out = []
    for name, k, rel in _POSETS:
        if k <= n:
            out.append(empty() if k == 0 else thin_category(range(k), rel, name=name))
    return out


def small_categories(max_objects: int = 3) -> list:
    """The category corpus: all small posets plus a few non-thin shapes."""
    cats = posets_up_to(min(max_objects, 3))
    extra = [free_iso(), parallel_pair(), cyclic_group(2), idempotent()]
    return cats + [C for C in extra if len(C.objects) <= max_objects]


def random_category(rng: random.Random, max_objects=5, max_morphisms=12, max_set=3) -> FinCategory:
    """A seeded random concrete category.

    Objects are small finite sets, morphisms the closure of a few random
    functions under composition.  Morphism ids are ``(source, target,
    values)`` so that the result depends only on the random draws.
    """
    while True:
        k = rng.randint(1, max_objects)
        sizes = [rng.randint(1, max_set) for _ in range(k)]
        ident = {a: (a, a, tuple(range(sizes[a]))) for a in range(k)}
        mors = set(ident.values())
        for _ in range(rng.randint(0, 4)):
            s, t = rng.randrange(k), rng.randrange(k)
            mors.add((s, t, tuple(rng.randrange(sizes[t]) for _ in range(sizes[s]))))
        frontier = list(mors)
        too_big = False
        while frontier and not too_big:
            nxt = []
            for f in list(mors):
                for g in list(mors):
                    if g[0] != f[1]:
                        continue
                    h = (f[0], g[1], tuple(g[2][x] for x in f[2]))
                    if h not in mors:
                        mors.add(h)
                        nxt.append(h)
            frontier = nxt
            too_big = len(mors) > max_morphisms
        if too_big:
            continue
        order = sorted(mors)
        comp = {}
        for f in order:
            for g in order:
                if g[0] == f[1]:
                    comp[(g, f)] = (f[0], g[1], tuple(g[2][x] for x in f[2]))
        return FinCategory(range(k), [(m, m[0], m[1]) for m in order], ident, comp)


def random_functor(rng: random.Random, A: FinCategory, B: FinCategory):
    functors = list(iter_functors(A, B))
    return rng.choice(functors) if functors else None

