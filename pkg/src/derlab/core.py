"""Finite categories, functors and natural transformations.

Categories are given by total composition tables, so every law is
checked by enumeration.  Identifiers are arbitrary hashables; the
constructions below build composite identifiers by tupling in a fixed
order so that results are reproducible.
"""
from __future__ import annotations

from collections.abc import Mapping
from itertools import product as _product
from typing import Hashable, Iterator, NamedTuple

from .errors import (
    AssociativityViolation,
    BoundaryMismatch,
    CodomainMismatch,
    FunctorViolation,
    IdentityViolation,
    IllTypedComposite,
    MalformedCategory,
    MissingComposite,
    NaturalityViolation,
)

Id = Hashable


class FinCategory:
    """A finite category.

    Args:
        objects: object identifiers, in enumeration order.
        morphisms: ``(id, source, target)`` triples.
        identity: object -> identity morphism.
        composition: ``(g, f) -> g∘f`` for every composable pair.
    """

    def __init__(self, objects, morphisms, identity, composition, name=None):
        morphisms = list(morphisms)
        self.objects = tuple(objects)
        self.morphisms = tuple(m for m, _, _ in morphisms)
        self.src = {m: s for m, s, _ in morphisms}
        self.tgt = {m: t for m, _, t in morphisms}
        self.identity = dict(identity)
        self.composition = dict(composition)
        self.name = name
        self._hom = None
        self._hash = None
        self._inverse = None
        self._inverse_rule = None
        self._gens = None
        self._index = None

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"FinCategory({label}{len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and self.src == other.src
            and self.tgt == other.tgt
            and self.identity == other.identity
            and self.composition == other.composition
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.objects), frozenset(self.morphisms)))
        return self._hash

    def __len__(self):
        return len(self.objects)

    def hom(self, a, b) -> tuple:
        if self._hom is None:
            hom = {}
            for m in self.morphisms:
                hom.setdefault((self.src[m], self.tgt[m]), []).append(m)
            self._hom = {k: tuple(v) for k, v in hom.items()}
        return self._hom.get((a, b), ())

    def compose(self, g, f):
        return self.composition[(g, f)]

    def compose_path(self, *ms):
        """Compose ``ms[0]∘ms[1]∘...`` (rightmost applied first)."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.composition[(m, out)]
        return out

    def is_identity(self, m) -> bool:
        return self.identity.get(self.src[m]) == m

    def nonidentity(self) -> list:
        return [m for m in self.morphisms if not self.is_identity(m)]

    def object_index(self, a) -> int:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.objects)}
        return self._index[a]

    def inverse(self, m):
        """The inverse of ``m``, or None."""
        if self._inverse is None:
            self._inverse = {}
        inv = self._inverse
        if m not in inv and self._inverse_rule is not None:
            inv[m] = self._inverse_rule(m)
        if m not in inv:
            s, t = self.src[m], self.tgt[m]
            ids, idt, comp = self.identity[s], self.identity[t], self.composition
            back = self.hom(t, s)
            inv[m] = None
            for g in back:
                if comp[(g, m)] == ids and comp[(m, g)] == idt:
                    inv[m] = g
                    break
        return inv[m]

    def is_iso(self, m) -> bool:
        return self.inverse(m) is not None

    def is_groupoid(self) -> bool:
        return all(self.is_iso(m) for m in self.morphisms)

    def is_thin(self) -> bool:
        return all(len(self.hom(a, b)) <= 1 for a in self.objects for b in self.objects)

    def generators(self) -> tuple:
        """A generating set of non-identity morphisms, indecomposables first."""
        if self._gens is None:
            self._gens, self._expr = _generating_set(self)
        return self._gens

    def derivations(self) -> dict:
        """``h -> (g, s)`` with ``h = g∘s`` and ``g`` a generator, in breadth-first order."""
        self.generators()
        return self._expr


def _generating_set(C):
    nonid = C.nonidentity()
    decomposable = set()
    for (g, f), h in C.composition.items():
        if g != h and f != h and not C.is_identity(g) and not C.is_identity(f):
            decomposable.add(h)
    gens = [m for m in nonid if m not in decomposable]

    def closure(gens):
        expr = {}
        reached = set(C.identity.values())
        frontier = list(reached)
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens:
                    if C.src[g] != C.tgt[s]:
                        continue
                    h = C.composition[(g, s)]
                    if h not in reached:
                        reached.add(h)
                        expr[h] = (g, s)
                        nxt.append(h)
            frontier = nxt
        return reached, expr

    reached, expr = closure(gens)
    for m in nonid:
        if m not in reached:
            gens.append(m)
            reached, expr = closure(gens)
    return tuple(gens), expr


def validate_category(C: FinCategory) -> list:
    """Every violated category law, with witnesses; empty iff C is valid."""
    report = []
    objs = set(C.objects)
    if len(objs) != len(C.objects):
        report.append(MalformedCategory(C.objects, "duplicate object identifiers"))
    if len(set(C.morphisms)) != len(C.morphisms):
        report.append(MalformedCategory(C.morphisms, "duplicate morphism identifiers"))
    for m in C.morphisms:
        if C.src[m] not in objs or C.tgt[m] not in objs:
            report.append(MalformedCategory(m, f"morphism {m!r} has an unknown endpoint"))
    for a in C.objects:
        i = C.identity.get(a)
        if i is None or i not in C.src or C.src[i] != a or C.tgt[i] != a:
            report.append(MalformedCategory(a, f"object {a!r} lacks a well-typed identity"))
    if report:
        return report

    for (g, f), h in C.composition.items():
        if g not in C.src or f not in C.src or C.src[g] != C.tgt[f]:
            report.append(IllTypedComposite((g, f), f"composite entry for non-composable pair {(g, f)!r}"))
        elif h not in C.src or C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            report.append(IllTypedComposite((g, f), f"composite of {(g, f)!r} has the wrong boundary"))
    for f in C.morphisms:
        for g in C.morphisms:
            if C.src[g] == C.tgt[f] and (g, f) not in C.composition:
                report.append(MissingComposite((g, f)))
    if report:
        return report

    for f in C.morphisms:
        s, t = C.src[f], C.tgt[f]
        if C.composition[(C.identity[t], f)] != f or C.composition[(f, C.identity[s])] != f:
            report.append(IdentityViolation(f))
    comp = C.composition
    for f in C.morphisms:
        for g in C.morphisms:
            if C.src[g] != C.tgt[f]:
                continue
            gf = comp[(g, f)]
            for h in _out(C, C.tgt[g]):
                if comp[(comp[(h, g)], f)] != comp[(h, gf)]:
                    report.append(AssociativityViolation((h, g, f)))
    return report


def _out(C, a):
    return [m for b in C.objects for m in C.hom(a, b)]


def check_category(C: FinCategory) -> FinCategory:
    from .errors import raise_first

    raise_first(validate_category(C))
    return C


# ---------------------------------------------------------------------------
# functors and natural transformations


class Functor:
    def __init__(self, domain: FinCategory, codomain: FinCategory, on_objects, on_morphisms, name=None):
        self.domain = domain
        self.codomain = codomain
        self.obj = dict(on_objects)
        self.mor = dict(on_morphisms)
        self.name = name
        self._hash = None

    def __repr__(self):
        label = self.name or "Functor"
        return f"<{label}: {self.domain!r} -> {self.codomain!r}>"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.obj == other.obj
            and self.mor == other.mor
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, self.codomain, frozenset(self.obj.items())))
        return self._hash


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {a: a for a in C.objects}, {m: m for m in C.morphisms}, name="id")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G∘F``."""
    if F.codomain is not G.domain and F.codomain != G.domain:
        raise BoundaryMismatch("functors are not composable")
    return Functor(
        F.domain,
        G.codomain,
        {a: G.obj[b] for a, b in F.obj.items()},
        {m: G.mor[n] for m, n in F.mor.items()},
    )


def constant_functor(A: FinCategory, C: FinCategory, c) -> Functor:
    i = C.identity[c]
    return Functor(A, C, {a: c for a in A.objects}, {m: i for m in A.morphisms})


def object_functor(C: FinCategory, c) -> Functor:
    """The functor ``𝟙 → C`` picking out ``c``."""
    return constant_functor(terminal(), C, c)


def validate_functor(F: Functor) -> list:
    A, B = F.domain, F.codomain
    report = []
    for a in A.objects:
        if F.obj.get(a) not in set(B.objects):
            report.append(FunctorViolation(a, f"object {a!r} has no image"))
    for m in A.morphisms:
        n = F.mor.get(m)
        if n not in B.src:
            report.append(FunctorViolation(m, f"morphism {m!r} has no image"))
        elif B.src[n] != F.obj.get(A.src[m]) or B.tgt[n] != F.obj.get(A.tgt[m]):
            report.append(FunctorViolation(m, f"image of {m!r} has the wrong boundary"))
    if report:
        return report
    for a in A.objects:
        if F.mor[A.identity[a]] != B.identity[F.obj[a]]:
            report.append(FunctorViolation(A.identity[a], "identity not preserved"))
    for (g, f), h in A.composition.items():
        if B.composition[(F.mor[g], F.mor[f])] != F.mor[h]:
            report.append(FunctorViolation((g, f), "composite not preserved"))
    return report


class NatTrans:
    """A natural transformation ``source ⇒ target`` given by components."""

    def __init__(self, source: Functor, target: Functor, components):
        self.source = source
        self.target = target
        self.component = dict(components)

    def __getitem__(self, a):
        return self.component[a]

    def __repr__(self):
        return f"NatTrans({self.component!r})"

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.component == other.component and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(frozenset(self.component.items()))

    @property
    def domain(self):
        return self.source.domain

    @property
    def codomain(self):
        return self.source.codomain


def validate_nat(alpha: NatTrans) -> list:
    F, G = alpha.source, alpha.target
    A, B = F.domain, F.codomain
    if G.domain != A or G.codomain != B:
        return [NaturalityViolation(None, "source and target functors are not parallel")]
    report = []
    for a in A.objects:
        c = alpha.component.get(a)
        if c not in B.src or B.src[c] != F.obj[a] or B.tgt[c] != G.obj[a]:
            report.append(NaturalityViolation(a, f"component at {a!r} has the wrong boundary"))
    if report:
        return report
    comp = B.composition
    for m in A.morphisms:
        s, t = A.src[m], A.tgt[m]
        if comp[(G.mor[m], alpha.component[s])] != comp[(alpha.component[t], F.mor[m])]:
            report.append(NaturalityViolation(m))
    return report


def identity_nat(F: Functor) -> NatTrans:
    B = F.codomain
    return NatTrans(F, F, {a: B.identity[F.obj[a]] for a in F.domain.objects})


def vcompose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``β∘α`` for ``α: F ⇒ G`` and ``β: G ⇒ H``."""
    if alpha.target is not beta.source and alpha.target != beta.source:
        raise BoundaryMismatch("vertical composite of non-composable transformations")
    B = alpha.codomain
    return NatTrans(
        alpha.source,
        beta.target,
        {a: B.composition[(beta.component[a], alpha.component[a])] for a in alpha.domain.objects},
    )


def hcompose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``β*α : H∘F ⇒ K∘G`` for ``α: F ⇒ G: A → B`` and ``β: H ⇒ K: B → C``."""
    if alpha.codomain != beta.domain:
        raise BoundaryMismatch("horizontal composite of non-composable transformations")
    H, G = beta.source, alpha.target
    C = beta.codomain
    return NatTrans(
        compose_functors(beta.source, alpha.source),
        compose_functors(beta.target, alpha.target),
        {a: C.composition[(beta.component[G.obj[a]], H.mor[alpha.component[a]])] for a in alpha.domain.objects},
    )


def whisker(x, y) -> NatTrans:
    """``whisker(H, α) = Hα`` and ``whisker(α, F) = αF``."""
    if isinstance(x, Functor) and isinstance(y, NatTrans):
        if y.codomain != x.domain:
            raise BoundaryMismatch("cannot whisker")
        return NatTrans(
            compose_functors(x, y.source),
            compose_functors(x, y.target),
            {a: x.mor[c] for a, c in y.component.items()},
        )
    if isinstance(x, NatTrans) and isinstance(y, Functor):
        if y.codomain != x.domain:
            raise BoundaryMismatch("cannot whisker")
        return NatTrans(
            compose_functors(x.source, y),
            compose_functors(x.target, y),
            {a: x.component[y.obj[a]] for a in y.domain.objects},
        )
    raise TypeError("whisker expects a functor and a natural transformation")


# ---------------------------------------------------------------------------
# standard shapes needed by the constructions


def thin_category(objects, relation, name=None) -> FinCategory:
    """The category with a single morphism ``(a, b)`` whenever ``(a, b)`` is in ``relation``.

    ``relation`` must be reflexive and transitive.
    """
    objects = list(objects)
    rel = set(relation) | {(a, a) for a in objects}
    morphisms = [((a, b), a, b) for a in objects for b in objects if (a, b) in rel]
    comp = {}
    for (a, b), _, _ in morphisms:
        for (b2, c), _, _ in morphisms:
            if b2 == b:
                comp[((b, c), (a, b))] = (a, c)
    return FinCategory(objects, morphisms, {a: (a, a) for a in objects}, comp, name=name)


def discrete(objects, name=None) -> FinCategory:
    return thin_category(objects, (), name=name)


def empty() -> FinCategory:
    return FinCategory((), (), {}, {}, name="∅")


def terminal() -> FinCategory:
    return discrete(["*"], name="𝟙")


# ---------------------------------------------------------------------------
# Dia constructions


class Product(NamedTuple):
    category: FinCategory
    proj0: Functor
    proj1: Functor


class Coproduct(NamedTuple):
    category: FinCategory
    inj0: Functor
    inj1: Functor


class Pullback(NamedTuple):
    category: FinCategory
    proj0: Functor
    proj1: Functor


class CommaResult(NamedTuple):
    """``f↓g`` with projections and the canonical ``f∘proj0 ⇒ g∘proj1``."""

    category: FinCategory
    proj0: Functor
    proj1: Functor
    nat: NatTrans


def opposite(C: FinCategory) -> FinCategory:
    return FinCategory(
        C.objects,
        [(m, C.tgt[m], C.src[m]) for m in C.morphisms],
        C.identity,
        {(f, g): h for (g, f), h in C.composition.items()},
        name=f"{C.name}^op" if C.name else None,
    )


def product(C: FinCategory, D: FinCategory) -> Product:
    objects = [(c, d) for c in C.objects for d in D.objects]
    morphisms = [((f, g), (C.src[f], D.src[g]), (C.tgt[f], D.tgt[g])) for f in C.morphisms for g in D.morphisms]
    comp = {}
    for (g1, f1), h1 in C.composition.items():
        for (g2, f2), h2 in D.composition.items():
            comp[((g1, g2), (f1, f2))] = (h1, h2)
    P = FinCategory(
        objects,
        morphisms,
        {(c, d): (C.identity[c], D.identity[d]) for c, d in objects},
        comp,
        name=f"{C.name}×{D.name}" if C.name and D.name else None,
    )
    p0 = Functor(P, C, {x: x[0] for x in objects}, {m: m[0] for m, _, _ in morphisms})
    p1 = Functor(P, D, {x: x[1] for x in objects}, {m: m[1] for m, _, _ in morphisms})
    return Product(P, p0, p1)


def product_functor(F: Functor, G: Functor, P: FinCategory | None = None, Q: FinCategory | None = None) -> Functor:
    """``F × G``; pass the already built products to avoid rebuilding them."""
    P = P or product(F.domain, G.domain).category
    Q = Q or product(F.codomain, G.codomain).category
    return Functor(
        P,
        Q,
        {(a, b): (F.obj[a], G.obj[b]) for a, b in P.objects},
        {(m, n): (F.mor[m], G.mor[n]) for m, n in P.morphisms},
    )


def product_nat(alpha: NatTrans, beta: NatTrans, P=None, Q=None) -> NatTrans:
    """``α × β : F×H ⇒ G×K``."""
    src = product_functor(alpha.source, beta.source, P, Q)
    tgt = product_functor(alpha.target, beta.target, src.domain, src.codomain)
    return NatTrans(src, tgt, {(a, b): (alpha.component[a], beta.component[b]) for a, b in src.domain.objects})


def coproduct(C: FinCategory, D: FinCategory) -> Coproduct:
    objects = [(0, c) for c in C.objects] + [(1, d) for d in D.objects]
    morphisms = [((0, m), (0, C.src[m]), (0, C.tgt[m])) for m in C.morphisms]
    morphisms += [((1, m), (1, D.src[m]), (1, D.tgt[m])) for m in D.morphisms]
    comp = {((0, g), (0, f)): (0, h) for (g, f), h in C.composition.items()}
    comp.update({((1, g), (1, f)): (1, h) for (g, f), h in D.composition.items()})
    ident = {(0, c): (0, C.identity[c]) for c in C.objects}
    ident.update({(1, d): (1, D.identity[d]) for d in D.objects})
    S = FinCategory(objects, morphisms, ident, comp, name=f"{C.name}⊔{D.name}" if C.name and D.name else None)
    i0 = Functor(C, S, {c: (0, c) for c in C.objects}, {m: (0, m) for m in C.morphisms})
    i1 = Functor(D, S, {d: (1, d) for d in D.objects}, {m: (1, m) for m in D.morphisms})
    return Coproduct(S, i0, i1)


def pullback_cat(f: Functor, g: Functor) -> Pullback:
    if f.codomain != g.codomain:
        raise CodomainMismatch("pullback of functors with different codomains")
    A, B = f.domain, g.domain
    objects = [(a, b) for a in A.objects for b in B.objects if f.obj[a] == g.obj[b]]
    morphisms = [
        ((m, n), (A.src[m], B.src[n]), (A.tgt[m], B.tgt[n]))
        for m in A.morphisms
        for n in B.morphisms
        if f.mor[m] == g.mor[n]
    ]
    present = {m for m, _, _ in morphisms}
    comp = {}
    for (m2, n2) in present:
        for (m1, n1) in present:
            if A.src[m2] == A.tgt[m1] and B.src[n2] == B.tgt[n1]:
                comp[((m2, n2), (m1, n1))] = (A.composition[(m2, m1)], B.composition[(n2, n1)])
    P = FinCategory(objects, morphisms, {(a, b): (A.identity[a], B.identity[b]) for a, b in objects}, comp)
    p0 = Functor(P, A, {x: x[0] for x in objects}, {m: m[0] for m in P.morphisms})
    p1 = Functor(P, B, {x: x[1] for x in objects}, {m: m[1] for m in P.morphisms})
    return Pullback(P, p0, p1)


class LazyComposition(dict):
    """Composition table filled on first lookup; ``items()`` shows only computed entries."""

    def __init__(self, fn):
        super().__init__()
        self._fn = fn

    def __missing__(self, key):
        value = self._fn(*key)
        self[key] = value
        return value


def comma(f: Functor, g: Functor, lazy=False) -> CommaResult:
    """``f↓g``: objects ``(a, b, h: f a → g b)``.

    A morphism ``(a, b, h) → (a', b', h')`` is a pair ``(p, q)`` with
    ``g(q)∘h = h'∘f(p)``; its identifier is ``(p, q, h, h')``.
    """
    if f.codomain != g.codomain:
        raise CodomainMismatch("comma of functors with different codomains")
    A, B, C = f.domain, g.domain, f.codomain
    cc = C.composition
    objects = [(a, b, h) for a in A.objects for b in B.objects for h in C.hom(f.obj[a], g.obj[b])]
    a_out, b_out = {}, {}
    for p in A.morphisms:
        a_out.setdefault(A.src[p], []).append(p)
    for q in B.morphisms:
        b_out.setdefault(B.src[q], []).append(q)
    C.hom(None, None)
    chom = C._hom
    morphisms = []
    by_src = {}
    # same order as looping over target objects (a2, b2, h2), then p, then q
    order = {y: n for n, y in enumerate(objects)}
    for x in objects:
        a, b, h = x
        found = []
        for p in a_out.get(a, ()):
            a2, fp = A.tgt[p], f.mor[p]
            for q in b_out.get(b, ()):
                b2 = B.tgt[q]
                gqh = cc[(g.mor[q], h)]
                for h2 in chom.get((f.obj[a2], g.obj[b2]), ()):
                    if gqh == cc[(h2, fp)]:
                        y = (a2, b2, h2)
                        found.append((order[y], p, q, y))
        found.sort(key=lambda e: e[0])
        for _, p, q, y in found:
            m = (p, q, h, y[2])
            morphisms.append((m, x, y))
            by_src.setdefault(x, []).append((m, y))
    ident = {x: (A.identity[x[0]], B.identity[x[1]], x[2], x[2]) for x in objects}
    if lazy:

        def compose(m2, m1):
            if K.src[m2] != K.tgt[m1]:
                raise KeyError((m2, m1))
            return (A.composition[(m2[0], m1[0])], B.composition[(m2[1], m1[1])], m1[2], m2[3])

        def inverse(m):
            p, q = A.inverse(m[0]), B.inverse(m[1])
            return None if p is None or q is None else (p, q, m[3], m[2])

        K = FinCategory(objects, morphisms, ident, {})
        K.composition = LazyComposition(compose)
        K._inverse_rule = inverse
    else:
        comp = {}
        for m1, x, y in morphisms:
            for m2, z in by_src.get(y, ()):
                comp[(m2, m1)] = (A.composition[(m2[0], m1[0])], B.composition[(m2[1], m1[1])], m1[2], m2[3])
        K = FinCategory(objects, morphisms, ident, comp)
    p0 = Functor(K, A, {x: x[0] for x in objects}, {m: m[0] for m in K.morphisms})
    p1 = Functor(K, B, {x: x[1] for x in objects}, {m: m[1] for m in K.morphisms})
    nat = NatTrans(compose_functors(f, p0), compose_functors(g, p1), {x: x[2] for x in objects})
    return CommaResult(K, p0, p1, nat)


def slice(C: FinCategory, c) -> CommaResult:
    """``C/c`` as ``id_C ↓ c``."""
    return comma(identity_functor(C), object_functor(C, c))


def coslice(C: FinCategory, c) -> CommaResult:
    """``c/C`` as ``c ↓ id_C``."""
    return comma(object_functor(C, c), identity_functor(C))


def arrow_category(C: FinCategory) -> CommaResult:
    return comma(identity_functor(C), identity_functor(C))


# ---------------------------------------------------------------------------
# properties of functors


class FunctorProperties(NamedTuple):
    surjective_on_objects: bool
    essentially_surjective: bool
    full: bool
    faithful: bool
    conservative: bool
    smothering: bool
    weakly_smothering: bool
    witnesses: dict

    def as_dict(self):
        d = self._asdict()
        d["witnesses"] = dict(self.witnesses)
        return d


def functor_properties(F: Functor) -> FunctorProperties:
    A, B = F.domain, F.codomain
    witnesses = {}
    image = set(F.obj.values())
    missed = [b for b in B.objects if b not in image]
    if missed:
        witnesses["surjective_on_objects"] = missed[0]
    for b in missed:
        if not any(B.is_iso(m) for a in A.objects for m in B.hom(F.obj[a], b)):
            witnesses["essentially_surjective"] = b
            break
    A.hom(None, None), B.hom(None, None)
    ahom, bhom, fo, fm = A._hom, B._hom, F.obj, F.mor
    pre = {}
    for a in A.objects:
        pre.setdefault(fo[a], []).append(a)
    pairs = set(ahom)
    for b, b2 in bhom:
        for a in pre.get(b, ()):
            pairs.update((a, a2) for a2 in pre.get(b2, ()))
    rank = {a: n for n, a in enumerate(A.objects)}
    for a, a2 in sorted(pairs, key=lambda p: (rank[p[0]], rank[p[1]])):
        images = [fm[m] for m in ahom.get((a, a2), ())]
        target = bhom.get((fo[a], fo[a2]), ())
        if not images and not target:
            continue
        if "full" not in witnesses:
            hit = set(images)
            gap = [n for n in target if n not in hit]
            if gap:
                witnesses["full"] = gap[0]
        if "faithful" not in witnesses and len(set(images)) < len(images):
            witnesses["faithful"] = (a, a2)
    for m in A.morphisms:
        if B.is_iso(F.mor[m]) and not A.is_iso(m):
            witnesses["conservative"] = m
            break
    so = "surjective_on_objects" not in witnesses
    es = "essentially_surjective" not in witnesses
    full = "full" not in witnesses
    cons = "conservative" not in witnesses
    return FunctorProperties(
        so, es, full, "faithful" not in witnesses, cons, so and full and cons, es and full and cons, witnesses
    )


def is_fully_faithful(F: Functor) -> bool:
    p = functor_properties(F)
    return p.full and p.faithful


# ---------------------------------------------------------------------------
# enumeration and isomorphism search


def _checks_by_step(C: FinCategory, order):
    """Group composition constraints by the step at which they become decidable."""
    pos = {m: i for i, m in enumerate(order)}
    checks = [[] for _ in order]
    for (g, f), h in C.composition.items():
        steps = [pos[x] for x in (g, f, h) if x in pos]
        if steps:
            checks[max(steps)].append((g, f, h))
    return checks


def iter_functors(A: FinCategory, B: FinCategory, injective=False) -> Iterator[Functor]:
    """All functors ``A → B`` (injective on objects and morphisms if asked)."""
    order = A.nonidentity()
    checks = _checks_by_step(A, order)
    bcomp = B.composition
    for images in _product(B.objects, repeat=len(A.objects)):
        if injective and len(set(images)) < len(images):
            continue
        o = dict(zip(A.objects, images))
        cands = [B.hom(o[A.src[m]], o[A.tgt[m]]) for m in order]
        if any(not c for c in cands):
            continue
        mor = {A.identity[a]: B.identity[o[a]] for a in A.objects}
        used = set(mor.values())
        if injective and len(used) < len(mor):
            continue

        def rec(i):
            if i == len(order):
                yield Functor(A, B, o, mor)
                return
            m = order[i]
            for n in cands[i]:
                if injective and n in used:
                    continue
                mor[m] = n
                if all(bcomp[(mor[g], mor[f])] == mor[h] for g, f, h in checks[i]):
                    if injective:
                        used.add(n)
                    yield from rec(i + 1)
                    if injective:
                        used.discard(n)
            mor.pop(m, None)

        yield from rec(0)


def iter_nat_trans(F: Functor, G: Functor) -> Iterator[NatTrans]:
    A, B = F.domain, F.codomain
    objs = A.objects
    pos = {a: i for i, a in enumerate(objs)}
    checks = [[] for _ in objs]
    for m in A.generators():
        checks[max(pos[A.src[m]], pos[A.tgt[m]])].append(m)
    cands = [B.hom(F.obj[a], G.obj[a]) for a in objs]
    comp = B.composition
    alpha = {}

    def rec(i):
        if i == len(objs):
            yield NatTrans(F, G, alpha)
            return
        for c in cands[i]:
            alpha[objs[i]] = c
            if all(
                comp[(G.mor[m], alpha[A.src[m]])] == comp[(alpha[A.tgt[m]], F.mor[m])] for m in checks[i]
            ):
                yield from rec(i + 1)
        alpha.pop(objs[i], None)

    yield from rec(0)


def _object_signature(C, a):
    return (
        len(C.hom(a, a)),
        tuple(sorted(len(C.hom(a, b)) for b in C.objects)),
        tuple(sorted(len(C.hom(b, a)) for b in C.objects)),
        sum(1 for m in C.hom(a, a) if C.is_iso(m)),
    )


def find_isomorphism(C: FinCategory, D: FinCategory) -> Functor | None:
    """An isomorphism of categories ``C → D``, or None."""
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None
    sig_c = {a: _object_signature(C, a) for a in C.objects}
    sig_d = {b: _object_signature(D, b) for b in D.objects}
    if sorted(sig_c.values()) != sorted(sig_d.values()):
        return None
    objs = sorted(C.objects, key=lambda a: -len(C.hom(a, a)))
    omap = {}
    used = set()

    def assign_objects(i):
        if i == len(objs):
            yield dict(omap)
            return
        a = objs[i]
        for b in D.objects:
            if b in used or sig_d[b] != sig_c[a]:
                continue
            if all(
                len(C.hom(a, x)) == len(D.hom(b, omap[x])) and len(C.hom(x, a)) == len(D.hom(omap[x], b))
                for x in objs[:i]
            ):
                omap[a] = b
                used.add(b)
                yield from assign_objects(i + 1)
                used.discard(b)
                del omap[a]

    order = C.nonidentity()
    checks = _checks_by_step(C, order)
    dcomp = D.composition
    for o in assign_objects(0):
        mor = {C.identity[a]: D.identity[o[a]] for a in C.objects}
        taken = set(mor.values())

        def rec(i):
            if i == len(order):
                return True
            m = order[i]
            for n in D.hom(o[C.src[m]], o[C.tgt[m]]):
                if n in taken:
                    continue
                mor[m] = n
                if all(dcomp[(mor[g], mor[f])] == mor[h] for g, f, h in checks[i]):
                    taken.add(n)
                    if rec(i + 1):
                        return True
                    taken.discard(n)
            mor.pop(m, None)
            return False

        if rec(0):
            return Functor(C, D, o, mor)
    return None


def is_isomorphism(F: Functor) -> bool:
    return (
        len(set(F.obj.values())) == len(F.domain.objects) == len(F.codomain.objects)
        and len(set(F.mor.values())) == len(F.domain.morphisms) == len(F.codomain.morphisms)
        and not validate_functor(F)
    )


class FunctorCategory(NamedTuple):
    """``[A, B]`` with objects indexed by integers.

    ``functors[i]`` is the functor with id ``i``; a morphism id is
    ``(i, j, k)``, the ``k``-th natural transformation ``i ⇒ j``.
    """

    category: FinCategory
    functors: tuple
    nats: dict
    index: dict
    keyed: dict
    components: dict

    def id_of(self, F: Functor):
        return self.index[F]

    def nat_id(self, alpha: NatTrans):
        i, j = self.index[alpha.source], self.index[alpha.target]
        return self.keyed[(i, j, tuple(alpha.component[a] for a in alpha.domain.objects))]


class _NatTable(Mapping):
    """Natural transformations built from component tuples on access."""

    def __init__(self, functors, objs, comps):
        self._functors, self._objs, self._comps = functors, objs, comps

    def __getitem__(self, m):
        c = self._comps[m]
        return NatTrans(self._functors[m[0]], self._functors[m[1]], dict(zip(self._objs, c)))

    def __iter__(self):
        return iter(self._comps)

    def __len__(self):
        return len(self._comps)


def functor_category(A: FinCategory, B: FinCategory, lazy=False) -> FunctorCategory:
    """``[A, B]``; with ``lazy`` the composition is computed on demand (for property checks)."""
    functors = tuple(iter_functors(A, B))
    index = {F: i for i, F in enumerate(functors)}
    objs = A.objects
    pos = {a: n for n, a in enumerate(objs)}
    gens = [(pos[A.src[m]], pos[A.tgt[m]], m) for m in A.generators()]
    bc = B.composition
    B.hom(None, None)
    bhom = B._hom
    images = [([F.obj[a] for a in objs], [F.mor[m] for _, _, m in gens]) for F in functors]
    # bitmask of targets j whose n-th object is reachable from the n-th object of i
    reach = {}
    for x, y in bhom:
        reach.setdefault(x, []).append(y)
    buckets = [{} for _ in objs]
    for j, (Go, _) in enumerate(images):
        for n, y in enumerate(Go):
            buckets[n][y] = buckets[n].get(y, 0) | (1 << j)
    everything = (1 << len(functors)) - 1
    keyed, comps_of, morphisms = {}, {}, []
    # same order as iter_nat_trans: lexicographic in the components
    for i in range(len(functors)):
        Fo, Fg = images[i]
        mask = everything
        for n, x in enumerate(Fo):
            mask &= sum(buckets[n].get(y, 0) for y in reach.get(x, ()))
        j = -1
        while mask:
            low = mask & -mask
            j = low.bit_length() - 1
            mask ^= low
            Go, Gg = images[j]
            cands = [bhom[xy] for xy in zip(Fo, Go)]
            k = 0
            for c in _product(*cands):
                if all(bc[(Gg[n], c[s])] == bc[(c[t], Fg[n])] for n, (s, t, _) in enumerate(gens)):
                    keyed[(i, j, c)] = (i, j, k)
                    comps_of[(i, j, k)] = c
                    morphisms.append(((i, j, k), i, j))
                    k += 1
    nats = _NatTable(functors, objs, comps_of)
    if not lazy:
        nats = dict(nats.items())
    ident = {i: keyed[(i, i, tuple(B.identity[x] for x in images[i][0]))] for i in range(len(functors))}
    if lazy:

        def compose(m2, m1):
            if m2[0] != m1[1]:
                raise KeyError((m2, m1))
            cs = tuple(bc[(y, x)] for y, x in zip(comps_of[m2], comps_of[m1]))
            return keyed[(m1[0], m2[1], cs)]

        def inverse(m):
            cs = tuple(B.inverse(c) for c in comps_of[m])
            return None if None in cs else keyed[(m[1], m[0], cs)]

        C = FinCategory(range(len(functors)), morphisms, ident, {})
        C.composition = LazyComposition(compose)
        C._inverse_rule = inverse
        return FunctorCategory(C, functors, nats, index, keyed, comps_of)
    by_source = {}
    for m2, bcomps in comps_of.items():
        by_source.setdefault(m2[0], []).append((m2, bcomps))
    comp = {}
    for m1, ac in comps_of.items():
        i, j = m1[0], m1[1]
        for m2, bcomps in by_source.get(j, ()):
            comp[(m2, m1)] = keyed[(i, m2[1], tuple(bc[(y, x)] for y, x in zip(bcomps, ac)))]
    C = FinCategory(range(len(functors)), morphisms, ident, comp)
    return FunctorCategory(C, functors, nats, index, keyed, comps_of)
