"""Collages of weights, profunctors and cospans, and weighted limits.

A weight ``W: A → FinSet`` is a :class:`FinSetDiagram`; its collage adds
one object ``●`` with ``hom(●, a) = W a``.  Cross morphisms of a weight
collage are ``("●", a, w)``; those of a profunctor or cospan collage are
``("x", a, b, x)`` between the tagged objects ``(0, a)`` and ``(1, b)``.
"""
from __future__ import annotations

import random
from typing import NamedTuple

from .core import (
    FinCategory,
    Functor,
    compose_functors,
    is_isomorphism,
    iter_functors,
    validate_category,
    validate_functor,
)
from .errors import CodomainMismatch, DiagramViolation
from .finset import DiagramMap, FinSetDiagram, SetFunction, iter_diagram_maps, validate_diagram_map
from .kan import ran

BULLET = "●"
BULLET_ID = "id_●"


class CollageResult(NamedTuple):
    category: FinCategory
    inc_a: Functor
    inc_b: Functor | None
    bullet: object = None


class Profunctor:
    """Cross arrows from an ``A``-side to a ``B``-side.

    ``values[(a, b)]`` is the set of cross arrows ``a → b``; ``post[(n, a)]``
    acts by a morphism ``n`` of ``B`` and ``pre[(m, b)]`` by a morphism ``m``
    of ``A`` (contravariantly).
    """

    def __init__(self, source: FinCategory, target: FinCategory, values, post, pre):
        self.source = source
        self.target = target
        self.values = {k: tuple(v) for k, v in values.items()}
        self.post = post
        self.pre = pre

    def get(self, a, b):
        return self.values.get((a, b), ())


def validate_profunctor(P: Profunctor) -> list:
    A, B = P.source, P.target
    report = []
    for a in A.objects:
        for b in B.objects:
            xs = P.get(a, b)
            if any(P.post[(B.identity[b], a)][x] != x for x in xs):
                report.append(DiagramViolation((a, b), "identity of the target does not act trivially"))
            if any(P.pre[(A.identity[a], b)][x] != x for x in xs):
                report.append(DiagramViolation((a, b), "identity of the source does not act trivially"))
    for (n2, n1), n in B.composition.items():
        for a in A.objects:
            f1, f2, f = P.post[(n1, a)], P.post[(n2, a)], P.post[(n, a)]
            if any(f2[f1[x]] != f[x] for x in P.get(a, B.src[n1])):
                report.append(DiagramViolation((n2, n1, a), "target action is not functorial"))
    for (m2, m1), m in A.composition.items():
        for b in B.objects:
            g1, g2, g = P.pre[(m1, b)], P.pre[(m2, b)], P.pre[(m, b)]
            if any(g1[g2[x]] != g[x] for x in P.get(A.tgt[m2], b)):
                report.append(DiagramViolation((m2, m1, b), "source action is not functorial"))
    for m in A.morphisms:
        for n in B.morphisms:
            a, b = A.tgt[m], B.src[n]
            for x in P.get(a, b):
                if P.pre[(m, B.tgt[n])][P.post[(n, a)][x]] != P.post[(n, A.src[m])][P.pre[(m, b)][x]]:
                    report.append(DiagramViolation((m, n, x), "the two actions do not commute"))
    return report


def representable_profunctor(f: Functor, g: Functor) -> Profunctor:
    """``C(f-, g-)`` for a cospan ``A → C ← B``."""
    if f.codomain != g.codomain:
        raise CodomainMismatch("cospan legs have different codomains")
    A, B, C = f.domain, g.domain, f.codomain
    cc = C.composition
    values = {(a, b): C.hom(f.obj[a], g.obj[b]) for a in A.objects for b in B.objects}
    post = {(n, a): {h: cc[(g.mor[n], h)] for h in values[(a, B.src[n])]} for n in B.morphisms for a in A.objects}
    pre = {(m, b): {h: cc[(h, f.mor[m])] for h in values[(A.tgt[m], b)]} for m in A.morphisms for b in B.objects}
    return Profunctor(A, B, values, post, pre)


def collage_profunctor(P: Profunctor) -> CollageResult:
    A, B = P.source, P.target
    objects = [(0, a) for a in A.objects] + [(1, b) for b in B.objects]
    morphisms = [((0, m), (0, A.src[m]), (0, A.tgt[m])) for m in A.morphisms]
    morphisms += [((1, n), (1, B.src[n]), (1, B.tgt[n])) for n in B.morphisms]
    cross = [(("x", a, b, x), (0, a), (1, b)) for a in A.objects for b in B.objects for x in P.get(a, b)]
    morphisms += cross
    ident = {(0, a): (0, A.identity[a]) for a in A.objects}
    ident.update({(1, b): (1, B.identity[b]) for b in B.objects})
    comp = {((0, g), (0, f)): (0, h) for (g, f), h in A.composition.items()}
    comp.update({((1, g), (1, f)): (1, h) for (g, f), h in B.composition.items()})
    for c, (_, a), (_, b) in cross:
        x = c[3]
        for n in B.morphisms:
            if B.src[n] == b:
                comp[((1, n), c)] = ("x", a, B.tgt[n], P.post[(n, a)][x])
        for m in A.morphisms:
            if A.tgt[m] == a:
                comp[(c, (0, m))] = ("x", A.src[m], b, P.pre[(m, b)][x])
    K = FinCategory(objects, morphisms, ident, comp)
    ia = Functor(A, K, {a: (0, a) for a in A.objects}, {m: (0, m) for m in A.morphisms})
    ib = Functor(B, K, {b: (1, b) for b in B.objects}, {n: (1, n) for n in B.morphisms})
    return CollageResult(K, ia, ib)


def collage_cospan(f: Functor, g: Functor) -> CollageResult:
    """``coll(f, g)``: cross arrows ``(0, a) → (1, b)`` are ``C(f a, g b)``."""
    return collage_profunctor(representable_profunctor(f, g))


def pi_functor(f: Functor, g: Functor, coll: CollageResult | None = None) -> Functor:
    """``π: coll(f, g) → C``, acting as ``f`` and ``g`` and sending cross arrows to themselves."""
    coll = coll or collage_cospan(f, g)
    K = coll.category
    obj = {}
    for tag, x in K.objects:
        obj[(tag, x)] = f.obj[x] if tag == 0 else g.obj[x]
    mor = {}
    for m in K.morphisms:
        if m[0] == 0:
            mor[m] = f.mor[m[1]]
        elif m[0] == 1:
            mor[m] = g.mor[m[1]]
        else:
            mor[m] = m[3]
    return Functor(K, f.codomain, obj, mor)


def collage_weight(W: FinSetDiagram) -> CollageResult:
    """``coll(W)``: ``A`` plus an object ``●`` with ``hom(●, a) = W a``."""
    A = W.shape
    if BULLET in A.objects:
        raise ValueError("the weight's shape already has an object named ●")
    objects = list(A.objects) + [BULLET]
    morphisms = [(m, A.src[m], A.tgt[m]) for m in A.morphisms] + [(BULLET_ID, BULLET, BULLET)]
    cross = [((BULLET, a, w), BULLET, a) for a in A.objects for w in W.values[a]]
    morphisms += cross
    ident = dict(A.identity)
    ident[BULLET] = BULLET_ID
    comp = dict(A.composition)
    comp[(BULLET_ID, BULLET_ID)] = BULLET_ID
    for c, _, a in cross:
        comp[(c, BULLET_ID)] = c
        for m in A.morphisms:
            if A.src[m] == a:
                comp[(m, c)] = (BULLET, A.tgt[m], W.action[m][c[2]])
    K = FinCategory(objects, morphisms, ident, comp)
    inc = Functor(A, K, {a: a for a in A.objects}, {m: m for m in A.morphisms})
    return CollageResult(K, inc, None, BULLET)


def collage_weight_map(alpha: DiagramMap) -> Functor:
    """``coll(α): coll(W) → coll(W')`` for ``α: W → W'``."""
    K0, K1 = collage_weight(alpha.source).category, collage_weight(alpha.target).category
    mor = {}
    for m in K0.morphisms:
        if isinstance(m, tuple) and len(m) == 3 and m[0] == BULLET:
            mor[m] = (BULLET, m[1], alpha.components[m[1]][m[2]])
        else:
            mor[m] = m
    return Functor(K0, K1, {a: a for a in K0.objects}, mor)


def collage_report(coll: CollageResult) -> list:
    """Check the case table: originals embed fully, nothing returns to the first side."""
    K, ia, ib = coll.category, coll.inc_a, coll.inc_b
    report = [*validate_category(K), *validate_functor(ia)]
    A = ia.domain
    for a in A.objects:
        for a2 in A.objects:
            if len(K.hom(ia.obj[a], ia.obj[a2])) != len(A.hom(a, a2)):
                report.append(DiagramViolation((a, a2), "inclusion is not full on this hom"))
    if ib is not None:
        report.extend(validate_functor(ib))
        B = ib.domain
        for b in B.objects:
            for b2 in B.objects:
                if len(K.hom(ib.obj[b], ib.obj[b2])) != len(B.hom(b, b2)):
                    report.append(DiagramViolation((b, b2), "inclusion is not full on this hom"))
            for a in A.objects:
                if K.hom(ib.obj[b], ia.obj[a]):
                    report.append(DiagramViolation((b, a), "arrow from the second side back to the first"))
    elif coll.bullet is not None:
        for a in A.objects:
            if K.hom(a, coll.bullet):
                report.append(DiagramViolation(a, "arrow into ●"))
    return report


# ---------------------------------------------------------------------------
# idempotence


def idempotence_check(f: Functor, g: Functor) -> dict:
    """``coll(i_A, i_B) ≅ coll(f, g)`` via the canonical comparison."""
    first = collage_cospan(f, g)
    K = first.category
    second = collage_cospan(first.inc_a, first.inc_b)
    K2 = second.category
    # coll(i_A, i_B) reuses the tags (0, a), (1, b); cross arrows wrap those of coll(f, g)
    obj = {x: x for x in K2.objects}
    mor = {m: m if m[0] in (0, 1) else m[3] for m in K2.morphisms}
    comparison = Functor(K2, K, obj, mor)
    iso = is_isomorphism(comparison)
    commutes = (
        compose_functors(comparison, second.inc_a) == first.inc_a
        and compose_functors(comparison, second.inc_b) == first.inc_b
    )
    witnesses = []
    if not iso:
        witnesses.append({"reason": "canonical comparison is not an isomorphism", "problems": [
            e.message for e in validate_functor(comparison)
        ]})
    if not commutes:
        witnesses.append({"reason": "comparison does not commute with the inclusions"})
    return {"verdict": "pass" if iso and commutes else "fail", "witnesses": witnesses,
            "objects": len(K.objects), "morphisms": len(K.morphisms)}


def random_cospan(rng: random.Random, max_objects=3, max_morphisms=8):
    """A seeded random cospan ``A → C ← B`` of small concrete categories."""
    from .shapes import random_category

    while True:
        C = random_category(rng, max_objects, max_morphisms, max_set=2)
        A = random_category(rng, 2, 4, max_set=2)
        B = random_category(rng, 2, 4, max_set=2)
        fs = list(iter_functors(A, C))
        gs = list(iter_functors(B, C))
        if fs and gs:
            return rng.choice(fs), rng.choice(gs)


# ---------------------------------------------------------------------------
# weighted limits


class WeightedLimit(NamedTuple):
    elements: tuple
    cone: dict

    def __len__(self):
        return len(self.elements)


def weighted_limit_direct(W: FinSetDiagram, F: FinSetDiagram) -> WeightedLimit:
    """``lim^W F`` as the set of natural families ``W a → F a``.

    Elements are tuples of values listed over ``(a, w)`` in enumeration
    order; ``cone[(a, w)]`` evaluates each family at ``w``.
    """
    keys = [(a, w) for a in W.shape.objects for w in W.values[a]]
    elements = tuple(tuple(phi.components[a][w] for a, w in keys) for phi in iter_diagram_maps(W, F))
    cone = {k: {e: e[i] for e in elements} for i, k in enumerate(keys)}
    return WeightedLimit(elements, cone)


def weighted_limit_via_collage(W: FinSetDiagram, F: FinSetDiagram) -> WeightedLimit:
    """``(Ran_ι F)(●)`` for the collage inclusion ``ι: A → coll(W)``."""
    coll = collage_weight(W)
    R = ran(coll.inc_a, F)
    elements = R.diagram.values[BULLET]
    objs = R.tables[BULLET]
    cone = {(c[1], c[2][2]): {e: e[i] for e in elements} for i, c in enumerate(objs)}
    return WeightedLimit(elements, cone)


def compare_weighted_limits(W: FinSetDiagram, F: FinSetDiagram) -> dict:
    """Match the two constructions through their cones.

    An element of one side corresponds to the element of the other side
    with the same cone values; the check passes when this matching is a
    bijection.
    """
    direct = weighted_limit_direct(W, F)
    via = weighted_limit_via_collage(W, F)
    keys = sorted(direct.cone, key=repr)
    if sorted(via.cone, key=repr) != keys:
        return {"verdict": "fail", "reason": "cones have different legs", "direct": len(direct), "collage": len(via)}

    def signature(lim, e):
        return tuple(lim.cone[k][e] for k in keys)

    d_sig = {signature(direct, e): e for e in direct.elements}
    v_sig = {signature(via, e): e for e in via.elements}
    iso = len(d_sig) == len(direct) and len(v_sig) == len(via) and set(d_sig) == set(v_sig)
    return {
        "verdict": "pass" if iso else "fail",
        "direct": len(direct),
        "collage": len(via),
        "bijection": {repr(v_sig[s]): repr(d_sig[s]) for s in v_sig if s in d_sig} if iso else None,
    }


def weight_morphism_induced_map(alpha: DiagramMap, F: FinSetDiagram) -> SetFunction:
    """``lim^{W'} F → lim^W F`` for ``α: W → W'``, computed as a mate.

    The square ``ι' = coll(α)∘ι`` has a right mate
    ``coll(α)^* Ran_ι' ⇒ Ran_ι``; its component at ``●`` is the map.
    Elements are those of :func:`weighted_limit_via_collage`.
    """
    from .core import identity_functor, identity_nat
    from .derivator import BCSquare, RepresentedFinSet, bc_mate

    if validate_diagram_map(alpha):
        raise ValueError("α is not a natural transformation of weights")
    c0, c1 = collage_weight(alpha.source), collage_weight(alpha.target)
    v = collage_weight_map(alpha)
    A = alpha.source.shape
    p = identity_functor(A)
    cell = identity_nat(compose_functors(v, c0.inc_a))
    cell = type(cell)(cell.source, compose_functors(c1.inc_a, p), cell.component)
    sq = BCSquare(p=p, q=c0.inc_a, u=c1.inc_a, v=v, alpha=cell, side="right")
    m = bc_mate(RepresentedFinSet(), sq, F)
    return SetFunction(m.source.values[BULLET], m.target.values[BULLET], m.components[BULLET])


def weight_map_direct(alpha: DiagramMap, F: FinSetDiagram) -> SetFunction:
    """Precomposition with ``α`` on natural families, in the collage element encoding."""
    via0 = weighted_limit_via_collage(alpha.source, F)
    via1 = weighted_limit_via_collage(alpha.target, F)
    keys0 = sorted(via0.cone, key=repr)
    index0 = {tuple(via0.cone[k][e] for k in keys0): e for e in via0.elements}
    table = {}
    for e in via1.elements:
        sig = tuple(via1.cone[(a, alpha.components[a][w])][e] for a, w in keys0)
        table[e] = index0[sig]
    return SetFunction(via1.elements, via0.elements, table)


# ---------------------------------------------------------------------------
# strict limits of diagrams of finite categories


class CatDiagram:
    """A functor ``shape → Cat`` with finite values."""

    def __init__(self, shape: FinCategory, values, action):
        self.shape = shape
        self.values = dict(values)
        self.action = dict(action)


def limit_cat(D: CatDiagram) -> FinCategory:
    """The strict limit: compatible families of objects and of morphisms."""
    S = D.shape
    objs = S.objects
    gens = S.generators()

    def families(choices, image):
        out = [()]
        for i, a in enumerate(objs):
            out = [fam + (x,) for fam in out for x in choices(a)]
        return [
            fam for fam in out
            if all(image(m, fam[S.object_index(S.src[m])]) == fam[S.object_index(S.tgt[m])] for m in gens)
        ]

    ob = families(lambda a: D.values[a].objects, lambda m, x: D.action[m].obj[x])
    mo = families(lambda a: D.values[a].morphisms, lambda m, x: D.action[m].mor[x])
    obset = set(ob)

    def src(fam):
        return tuple(D.values[a].src[x] for a, x in zip(objs, fam))

    def tgt(fam):
        return tuple(D.values[a].tgt[x] for a, x in zip(objs, fam))

    morphisms = [(m, src(m), tgt(m)) for m in mo if src(m) in obset]
    ident = {o: tuple(D.values[a].identity[x] for a, x in zip(objs, o)) for o in ob}
    by_src = {}
    for m, s, _ in morphisms:
        by_src.setdefault(s, []).append(m)
    comp = {}
    for f, _, t in morphisms:
        for g in by_src.get(t, ()):
            comp[(g, f)] = tuple(D.values[a].composition[(y, x)] for a, x, y in zip(objs, f, g))
    return FinCategory(ob, morphisms, ident, comp)


__all__ = [
    "BULLET",
    "CatDiagram",
    "CollageResult",
    "Profunctor",
    "WeightedLimit",
    "collage_cospan",
    "collage_profunctor",
    "collage_report",
    "collage_weight",
    "collage_weight_map",
    "compare_weighted_limits",
    "idempotence_check",
    "limit_cat",
    "pi_functor",
    "random_cospan",
    "representable_profunctor",
    "validate_profunctor",
    "weight_map_direct",
    "weight_morphism_induced_map",
    "weighted_limit_direct",
    "weighted_limit_via_collage",
]
