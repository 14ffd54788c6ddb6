"""Finite-set-valued diagrams, their maps, limits and colimits.

Element sets are tuples (their order fixes representatives and limit
coordinates) and functions are dicts.  Diagram data is shared, never
copied, by restriction, so values must be treated as immutable.
"""
from __future__ import annotations

import random
from itertools import product as _product
from typing import Iterator, NamedTuple

from .core import FinCategory, Functor, NatTrans
from .errors import DiagramViolation, NaturalityViolation


class SetFunction:
    __slots__ = ("domain", "codomain", "table")

    def __init__(self, domain, codomain, table):
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        self.table = dict(table)

    def __call__(self, x):
        return self.table[x]

    def __repr__(self):
        return f"SetFunction({self.table!r})"

    def __eq__(self, other):
        if not isinstance(other, SetFunction):
            return NotImplemented
        return self.domain == other.domain and self.codomain == other.codomain and self.table == other.table

    def __hash__(self):
        return hash((self.domain, tuple(self.table[x] for x in self.domain)))

    def validate(self) -> list:
        cod = set(self.codomain)
        bad = [x for x in self.domain if x not in self.table or self.table[x] not in cod]
        return [DiagramViolation(x, f"function undefined or out of range at {x!r}") for x in bad]

    def compose(self, other: "SetFunction") -> "SetFunction":
        """``self∘other``."""
        return SetFunction(other.domain, self.codomain, {x: self.table[y] for x, y in other.table.items()})

    def is_bijective(self) -> bool:
        return len(self.domain) == len(self.codomain) == len(set(self.table.values()))


class FinSetDiagram:
    """A functor ``shape → FinSet``.

    ``values[a]`` is a tuple of elements and ``action[m]`` a dict.  Missing
    identity actions are filled in.
    """

    def __init__(self, shape: FinCategory, values, action=None):
        self.shape = shape
        self.values = {a: tuple(values[a]) for a in shape.objects}
        action = dict(action or {})
        for a in shape.objects:
            i = shape.identity[a]
            if i not in action:
                action[i] = {x: x for x in self.values[a]}
        self.action = action
        self._key = None

    @classmethod
    def _raw(cls, shape, values, action):
        """Build without normalising; ``action`` must cover every morphism."""
        D = object.__new__(cls)
        D.shape, D.values, D.action, D._key = shape, values, action, None
        return D

    def key(self):
        if self._key is None:
            S = self.shape
            self._key = (
                tuple(self.values[a] for a in S.objects),
                tuple(tuple(self.action[m][x] for x in self.values[S.src[m]]) for m in S.morphisms),
            )
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinSetDiagram):
            return NotImplemented
        return self.key() == other.key() and self.shape == other.shape

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        sizes = {a: len(v) for a, v in self.values.items()}
        return f"FinSetDiagram({sizes})"

    def sizes(self) -> tuple:
        return tuple(len(self.values[a]) for a in self.shape.objects)

    def function(self, m) -> SetFunction:
        S = self.shape
        return SetFunction(self.values[S.src[m]], self.values[S.tgt[m]], self.action[m])


def validate_diagram(D: FinSetDiagram) -> list:
    S = D.shape
    report = []
    for m in S.morphisms:
        f = D.action.get(m)
        if f is None:
            report.append(DiagramViolation(m, f"no action for {m!r}"))
            continue
        cod = set(D.values[S.tgt[m]])
        if any(x not in f or f[x] not in cod for x in D.values[S.src[m]]):
            report.append(DiagramViolation(m, f"action of {m!r} is not a function between the right sets"))
    if report:
        return report
    for a in S.objects:
        if any(D.action[S.identity[a]][x] != x for x in D.values[a]):
            report.append(DiagramViolation(S.identity[a], "identity not sent to an identity"))
    for (g, f), h in S.composition.items():
        ag, af, ah = D.action[g], D.action[f], D.action[h]
        if any(ag[af[x]] != ah[x] for x in D.values[S.src[f]]):
            report.append(DiagramViolation((g, f), "composite not preserved"))
    return report


class DiagramMap:
    """A natural transformation between set-valued diagrams on one shape."""

    def __init__(self, source: FinSetDiagram, target: FinSetDiagram, components):
        self.source = source
        self.target = target
        self.components = components

    def __getitem__(self, a):
        return self.components[a]

    def key(self):
        S = self.source.shape
        return tuple(tuple(self.components[a][x] for x in self.source.values[a]) for a in S.objects)

    def __eq__(self, other):
        if not isinstance(other, DiagramMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"DiagramMap({self.components!r})"

    def component(self, a) -> SetFunction:
        return SetFunction(self.source.values[a], self.target.values[a], self.components[a])


def validate_diagram_map(phi: DiagramMap) -> list:
    X, Y = phi.source, phi.target
    S = X.shape
    report = []
    for a in S.objects:
        c = phi.components.get(a)
        vals = set(Y.values[a])
        if c is None or any(x not in c or c[x] not in vals for x in X.values[a]):
            report.append(NaturalityViolation(a, f"component at {a!r} is not a function"))
    if report:
        return report
    for m in S.generators():
        s, t = S.src[m], S.tgt[m]
        xm, ym, cs, ct = X.action[m], Y.action[m], phi.components[s], phi.components[t]
        if any(ct[xm[x]] != ym[cs[x]] for x in X.values[s]):
            report.append(NaturalityViolation(m))
    return report


def identity_map(X: FinSetDiagram) -> DiagramMap:
    return DiagramMap(X, X, {a: {x: x for x in X.values[a]} for a in X.shape.objects})


def compose_maps(psi: DiagramMap, phi: DiagramMap) -> DiagramMap:
    """``ψ∘φ``."""
    return DiagramMap(
        phi.source,
        psi.target,
        {a: {x: psi.components[a][y] for x, y in c.items()} for a, c in phi.components.items()},
    )


def is_iso_map(phi: DiagramMap) -> bool:
    X, Y = phi.source, phi.target
    for a in X.shape.objects:
        if len(X.values[a]) != len(Y.values[a]) or len(set(phi.components[a].values())) != len(X.values[a]):
            return False
    return True


def inverse_map(phi: DiagramMap) -> DiagramMap:
    return DiagramMap(phi.target, phi.source, {a: {y: x for x, y in c.items()} for a, c in phi.components.items()})


def restrict(X: FinSetDiagram, u: Functor) -> FinSetDiagram:
    """``u^*X = X∘u``."""
    return FinSetDiagram._raw(
        u.domain,
        {a: X.values[u.obj[a]] for a in u.domain.objects},
        {m: X.action[u.mor[m]] for m in u.domain.morphisms},
    )


def restrict_map(phi: DiagramMap, u: Functor, source=None, target=None) -> DiagramMap:
    return DiagramMap(
        source or restrict(phi.source, u),
        target or restrict(phi.target, u),
        {a: phi.components[u.obj[a]] for a in u.domain.objects},
    )


def two_cell_map(alpha: NatTrans, X: FinSetDiagram) -> DiagramMap:
    """``α^*_X : u^*X → v^*X`` for ``α: u ⇒ v``."""
    return DiagramMap(
        restrict(X, alpha.source),
        restrict(X, alpha.target),
        {a: X.action[c] for a, c in alpha.component.items()},
    )


def iter_diagram_maps(X: FinSetDiagram, Y: FinSetDiagram, bijective=False) -> Iterator[DiagramMap]:
    """Every map ``X → Y`` (every isomorphism if ``bijective``)."""
    S = X.shape
    if bijective and X.sizes() != Y.sizes():
        return
    variables = [(a, x) for a in S.objects for x in X.values[a]]
    pos = {v: i for i, v in enumerate(variables)}
    # constraint (j, k, ymap): value[k] == ymap[value[j]]
    checks = [[] for _ in variables]
    for m in S.generators():
        s, t = S.src[m], S.tgt[m]
        xm, ym = X.action[m], Y.action[m]
        for x in X.values[s]:
            j, k = pos[(s, x)], pos[(t, xm[x])]
            checks[max(j, k)].append((j, k, ym))
    domains = [Y.values[a] for a, _ in variables]
    n = len(variables)
    val = [None] * n
    used = {a: set() for a in S.objects}

    def rec(i):
        if i == n:
            comps = {a: {} for a in S.objects}
            for (a, x), y in zip(variables, val):
                comps[a][x] = y
            yield DiagramMap(X, Y, comps)
            return
        a = variables[i][0]
        for y in domains[i]:
            if bijective and y in used[a]:
                continue
            val[i] = y
            if all(val[k] == ym[val[j]] for j, k, ym in checks[i]):
                if bijective:
                    used[a].add(y)
                yield from rec(i + 1)
                if bijective:
                    used[a].discard(y)
        val[i] = None

    yield from rec(0)


def find_diagram_iso(X: FinSetDiagram, Y: FinSetDiagram):
    return next(iter_diagram_maps(X, Y, bijective=True), None)


# ---------------------------------------------------------------------------
# limits and colimits


class Limit(NamedTuple):
    """Compatible families; ``projection(a)`` reads coordinate ``a``."""

    elements: tuple
    diagram: FinSetDiagram

    def projection(self, a) -> SetFunction:
        i = self.diagram.shape.object_index(a)
        return SetFunction(self.elements, self.diagram.values[a], {e: e[i] for e in self.elements})


class Colimit(NamedTuple):
    """Classes of the disjoint union; ``tables[a]`` sends ``x ∈ D(a)`` to its class."""

    elements: tuple
    diagram: FinSetDiagram
    tables: dict

    def injection(self, a) -> SetFunction:
        return SetFunction(self.diagram.values[a], self.elements, self.tables[a])


def limit_finset(D: FinSetDiagram) -> Limit:
    """Compatible families, stored as tuples in object order."""
    S = D.shape
    objs = S.objects
    pos = {a: i for i, a in enumerate(objs)}
    checks = [[] for _ in objs]
    for m in S.generators():
        i, j = pos[S.src[m]], pos[S.tgt[m]]
        checks[max(i, j)].append((i, j, D.action[m]))
    family = [None] * len(objs)
    out = []

    def rec(i):
        if i == len(objs):
            out.append(tuple(family))
            return
        for x in D.values[objs[i]]:
            family[i] = x
            if all(f[family[s]] == family[t] for s, t, f in checks[i]):
                rec(i + 1)

    rec(0)
    return Limit(tuple(out), D)


def colimit_finset(D: FinSetDiagram) -> Colimit:
    """The quotient of the disjoint union by the zig-zag relation.

    Elements are pairs ``(object, element)``; each class is represented
    by its least member in (object, element) enumeration order.
    """
    S = D.shape
    offset = {}
    elems = []
    index = {}
    for a in S.objects:
        offset[a] = len(elems)
        index[a] = {x: i for i, x in enumerate(D.values[a])}
        elems.extend((a, x) for x in D.values[a])
    parent = list(range(len(elems)))

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    for m in S.generators():
        a, b = S.src[m], S.tgt[m]
        f, ib, oa, ob = D.action[m], index[b], offset[a], offset[b]
        for i, x in enumerate(D.values[a]):
            r1, r2 = find(oa + i), find(ob + ib[f[x]])
            if r1 < r2:
                parent[r2] = r1
            elif r2 < r1:
                parent[r1] = r2
    reps = [find(i) for i in range(len(elems))]
    elements = tuple(elems[i] for i in sorted(set(reps)))
    tables = {a: {x: elems[reps[offset[a] + i]] for i, x in enumerate(D.values[a])} for a in S.objects}
    return Colimit(elements, D, tables)


# ---------------------------------------------------------------------------
# corpora of diagrams


def _all_functions(n, k):
    return [dict(enumerate(t)) for t in _product(range(k), repeat=n)]


def _plan(S: FinCategory):
    """Derivation plan: generators, and per generator step the morphisms and checks it unlocks."""
    gens = S.generators()
    gpos = {g: i for i, g in enumerate(gens)}
    avail = {S.identity[a]: -1 for a in S.objects}
    derive = [[] for _ in gens]
    expr = S.derivations()
    # expr is in breadth-first order, so each s is derived before h
    for h in expr:
        g, s = expr[h]
        step = max(gpos[g], avail[s])
        avail[h] = step
        derive[step].append((h, g, s))
    checks = [[] for _ in gens]
    for (g, f), h in S.composition.items():
        step = max(avail[g], avail[f], avail[h])
        if step >= 0:
            checks[step].append((g, f, h))
    return gens, derive, checks


def _iter_actions(S, values, gens, derive, checks, order_fn=None):
    act = {S.identity[a]: {x: x for x in values[a]} for a in S.objects}
    n = len(gens)

    def rec(i):
        if i == n:
            yield dict(act)
            return
        g = gens[i]
        cands = _all_functions(len(values[S.src[g]]), len(values[S.tgt[g]]))
        if order_fn is not None:
            order_fn(cands)
        for f in cands:
            act[g] = f
            for h, g2, s in derive[i]:
                ag, as_ = act[g2], act[s]
                act[h] = {x: ag[y] for x, y in as_.items()}
            if all(
                all(act[gg][act[ff][x]] == act[hh][x] for x in values[S.src[ff]]) for gg, ff, hh in checks[i]
            ):
                yield from rec(i + 1)
        for h, _, _ in derive[i]:
            act.pop(h, None)
        act.pop(g, None)

    yield from rec(0)


def iter_diagrams(S: FinCategory, max_size: int = 2) -> Iterator[FinSetDiagram]:
    """Every diagram on ``S`` whose value at each object is ``range(k)``, ``k ≤ max_size``."""
    gens, derive, checks = _plan(S)
    for sizes in _product(range(max_size + 1), repeat=len(S.objects)):
        values = {a: tuple(range(k)) for a, k in zip(S.objects, sizes)}
        for act in _iter_actions(S, values, gens, derive, checks):
            yield FinSetDiagram(S, values, act)


def sample_diagrams(S: FinCategory, max_size: int, count: int, rng: random.Random) -> list:
    """Up to ``count`` distinct random diagrams, found by randomized search."""
    gens, derive, checks = _plan(S)
    seen = {}
    attempts = 0
    while len(seen) < count and attempts < 20 * count:
        attempts += 1
        sizes = [rng.randint(0, max_size) for _ in S.objects]
        values = {a: tuple(range(k)) for a, k in zip(S.objects, sizes)}
        act = next(_iter_actions(S, values, gens, derive, checks, order_fn=rng.shuffle), None)
        if act is not None:
            D = FinSetDiagram(S, values, act)
            seen.setdefault(D.key(), D)
    return list(seen.values())
