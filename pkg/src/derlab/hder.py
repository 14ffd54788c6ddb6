"""The 2-derivator axioms for the represented 2-prederivator ``J ↦ [J, C]``.

Fibers are the finite functor categories ``[J, C]`` indexed as in
:func:`core.functor_category`; restriction along ``u`` is precomposition.
Kan extensions are found by a representability search over the fibers,
so a target ``C`` lacking the needed (co)limits fails HDer 4 with the
object that has no universal arrow.
"""
from __future__ import annotations

from functools import lru_cache

from .core import (
    FinCategory,
    Functor,
    coproduct,
    discrete,
    functor_category,
    functor_properties,
    is_isomorphism,
    iter_functors,
    object_functor,
    product,
)
from .derivator import collage_square, shape_label
from .report import Report
from .shapes import arrow, posets_up_to
from .twocat import _functor_keys, comma_smothering_check

# ---------------------------------------------------------------------------
# fibers and restriction


@lru_cache(maxsize=512)
def _fiber(J: FinCategory, C: FinCategory, order):
    return functor_category(J, C)


def fiber(J: FinCategory, C: FinCategory):
    """``[J, C]`` (cached)."""
    return _fiber(J, C, (J.objects, C.objects))


def restriction(u: Functor, C: FinCategory) -> Functor:
    """``u^* : [K, C] → [J, C]`` for ``u: J → K``."""
    J, K = u.domain, u.codomain
    FK, FJ = fiber(K, C), fiber(J, C)
    keys = _functor_keys(FJ, J)
    pos = {k: n for n, k in enumerate(K.objects)}
    obj = {}
    for i, F in enumerate(FK.functors):
        obj[i] = keys[(tuple(F.obj[u.obj[j]] for j in J.objects), tuple(F.mor[u.mor[m]] for m in J.morphisms))]
    mor = {}
    for (i, j, k), cs in FK.components.items():
        mor[(i, j, k)] = FJ.keyed[(obj[i], obj[j], tuple(cs[pos[u.obj[a]]] for a in J.objects))]
    return Functor(FK.category, FJ.category, obj, mor)


def _pair_functor(F: Functor, G: Functor, P: FinCategory) -> Functor:
    """``⟨F, G⟩ : A → B × B'`` into the given product category."""
    A = F.domain
    return Functor(A, P, {a: (F.obj[a], G.obj[a]) for a in A.objects}, {m: (F.mor[m], G.mor[m]) for m in A.morphisms})


# ---------------------------------------------------------------------------
# adjoints by representability


def left_adjoint(R: Functor):
    """A left adjoint to ``R: A → B`` as universal arrows ``b → R a``.

    Returns ``({b: (a, η_b)}, None)`` or ``(partial, b)`` where ``b`` has no
    universal arrow.  The first universal arrow in enumeration order wins.
    """
    A, B = R.domain, R.codomain
    out = {}
    for b in B.objects:
        found = None
        for a in A.objects:
            for eta in B.hom(b, R.obj[a]):
                if all(_bijective([B.composition[(R.mor[p], eta)] for p in A.hom(a, a2)], B.hom(b, R.obj[a2]))
                       for a2 in A.objects):
                    found = (a, eta)
                    break
            if found:
                break
        if found is None:
            return out, b
        out[b] = found
    return out, None


def right_adjoint(L: Functor):
    """A right adjoint to ``L: A → B`` as couniversal arrows ``L a → b``."""
    A, B = L.domain, L.codomain
    out = {}
    for b in B.objects:
        found = None
        for a in A.objects:
            for eps in B.hom(L.obj[a], b):
                if all(_bijective([B.composition[(eps, L.mor[p])] for p in A.hom(a2, a)], B.hom(L.obj[a2], b))
                       for a2 in A.objects):
                    found = (a, eps)
                    break
            if found:
                break
        if found is None:
            return out, b
        out[b] = found
    return out, None


def _bijective(images, target) -> bool:
    return len(images) == len(target) and len(set(images)) == len(images)


# ---------------------------------------------------------------------------
# the axioms


def check_hder1(C, shapes) -> Report:
    """``[I ⊔ J, C] → [I, C] × [J, C]`` and ``[∅, C] → 𝟙`` are isomorphisms."""
    rep = Report("HDer1", shape_label(C), {"shapes": [shape_label(S) for S in shapes]})
    E = next((S for S in shapes if not S.objects), None)
    if E is not None:
        FE = fiber(E, C).category
        rep.count("pairs")
        if len(FE.objects) != 1 or len(FE.morphisms) != 1:
            rep.fail(kind="fiber over ∅ is not terminal", objects=len(FE.objects), morphisms=len(FE.morphisms))
    for n, I in enumerate(shapes):
        for J in shapes[n:]:
            S = coproduct(I, J)
            P = product(fiber(I, C).category, fiber(J, C).category).category
            comparison = _pair_functor(restriction(S.inj0, C), restriction(S.inj1, C), P)
            rep.count("pairs")
            if not is_isomorphism(comparison):
                rep.fail(kind="coproduct comparison not an isomorphism", I=shape_label(I), J=shape_label(J))
    return rep


def check_hder2(C, shapes) -> Report:
    """Restriction to the objects of ``J`` reflects invertible 2-cells."""
    rep = Report("HDer2", shape_label(C), {"shapes": [shape_label(S) for S in shapes]})
    for J in shapes:
        D = discrete(J.objects)
        inc = Functor(D, J, {a: a for a in J.objects}, {D.identity[a]: J.identity[a] for a in J.objects})
        p = functor_properties(restriction(inc, C))
        rep.count("shapes")
        if not p.conservative:
            rep.fail(kind="not conservative", J=shape_label(J), morphism=p.witnesses["conservative"])
    return rep


def dia_arrow_comparison(I: FinCategory, C: FinCategory) -> Functor:
    """``[I × 𝟚, C] → [𝟚, [I, C]]``, currying a diagram into an arrow of diagrams."""
    two = arrow()
    P = product(I, two)
    FP, FI = fiber(P.category, C), fiber(I, C)
    F2 = functor_category(two, FI.category)
    ends = [Functor(I, P.category, {a: (a, e) for a in I.objects}, {m: (m, two.identity[e]) for m in I.morphisms})
            for e in (0, 1)]
    r0, r1 = restriction(ends[0], C), restriction(ends[1], C)
    keys = _functor_keys(F2, two)
    obj = {}
    for i, H in enumerate(FP.functors):
        x, y = r0.obj[i], r1.obj[i]
        link = FI.keyed[(x, y, tuple(H.mor[(I.identity[a], (0, 1))] for a in I.objects))]
        images = {two.identity[0]: FI.category.identity[x], two.identity[1]: FI.category.identity[y], (0, 1): link}
        obj[i] = keys[((x, y), tuple(images[m] for m in two.morphisms))]
    mor = {}
    for m, _ in FP.components.items():
        i, j = m[0], m[1]
        mor[m] = F2.keyed[(obj[i], obj[j], (r0.mor[m], r1.mor[m]))]
    return Functor(FP.category, F2.category, obj, mor)


def check_hder3b(C, shapes) -> Report:
    """The arrow comparison ``[I × 𝟚, C] → [𝟚, [I, C]]`` is smothering."""
    rep = Report("HDer3b", shape_label(C), {"shapes": [shape_label(S) for S in shapes]})
    for I in shapes:
        p = functor_properties(dia_arrow_comparison(I, C))
        rep.count("shapes")
        if not p.smothering:
            rep.fail(kind="comparison not smothering", I=shape_label(I), witnesses=dict(p.witnesses))
    return rep


def check_hder4(C, shapes) -> Report:
    """Every ``u^*`` has a left and a right adjoint."""
    rep = Report("HDer4", shape_label(C), {"shapes": [shape_label(S) for S in shapes]})
    for J in shapes:
        for K in shapes:
            for u in iter_functors(J, K):
                R = restriction(u, C)
                rep.count("functors")
                for side, search in (("left", left_adjoint), ("right", right_adjoint)):
                    _, missing = search(R)
                    if missing is not None:
                        rep.fail(kind=f"no {side} Kan extension", J=shape_label(J), K=shape_label(K),
                                 u=sorted(map(repr, u.obj.items())), diagram=missing)
                        return rep
    return rep


def collage_mate(f: Functor, b, C: FinCategory, side="left") -> Report:
    """Exactness of the collage square of ``f: A → B`` and ``b`` in ``[−, C]``.

    The mate is the unique map restricting to the comparison of units (or
    counits); its component at the collage point must be invertible.
    """
    A = f.domain
    sq, bside = collage_square(f, object_functor(f.codomain, b), side)
    iota, pi = sq.q, sq.v
    FA, FK = fiber(A, C), fiber(iota.codomain, C)
    ri, rf, rp = restriction(iota, C), restriction(f, C), restriction(pi, C)
    rep = Report(f"HDer5-{side}", shape_label(C), {"A": shape_label(A), "B": shape_label(f.codomain), "b": b})
    search = left_adjoint if side == "left" else right_adjoint
    ext_i, miss_i = search(ri)
    ext_f, miss_f = search(rf)
    if miss_i is not None or miss_f is not None:
        rep.fail(kind="Kan extension missing", diagram=miss_i if miss_i is not None else miss_f)
        return rep
    K, KA = FK.category, FA.category
    at = iota.codomain.objects.index(bside.obj["*"])
    for X in KA.objects:
        Li, ui = ext_i[X]
        Lf, uf = ext_f[X]
        target = rp.obj[Lf]
        if ri.obj[target] != rf.obj[Lf]:
            rep.fail(kind="square does not commute strictly", X=X)
            continue
        if side == "left":
            cands = [phi for phi in K.hom(Li, target) if KA.composition[(ri.mor[phi], ui)] == uf]
        else:
            cands = [phi for phi in K.hom(target, Li) if KA.composition[(ui, ri.mor[phi])] == uf]
        rep.count("diagrams")
        if len(cands) != 1:
            rep.fail(kind="mate not unique", X=X, candidates=len(cands))
            continue
        c = FK.components[cands[0]][at]
        if not C.is_iso(c):
            rep.fail(kind="collage mate not invertible", X=X, component=c)
    return rep


def check_hder5(C, shapes) -> Report:
    rep = Report("HDer5", shape_label(C), {"shapes": [shape_label(S) for S in shapes]})
    for A in shapes:
        for B in shapes:
            for f in iter_functors(A, B):
                for b in B.objects:
                    for side in ("left", "right"):
                        part = collage_mate(f, b, C, side)
                        rep.count("squares")
                        for w in part.witnesses:
                            rep.fail(A=shape_label(A), B=shape_label(B), b=b, side=side, **w)
    return rep


def check_hder6(C, shapes) -> Report:
    """``[Y, f↓g] → [Y, f] ↓ [Y, g]`` is smothering for ``Y = C``."""
    rep = Report("HDer6", shape_label(C), {"shapes": [shape_label(S) for S in shapes], "Y": shape_label(C)})
    for A in shapes:
        for B in shapes:
            for Z in shapes:
                for f in iter_functors(A, Z):
                    for g in iter_functors(B, Z):
                        r = comma_smothering_check(C, f, g)
                        rep.count("cospans")
                        if r["verdict"] != "pass":
                            rep.fail(kind="comparison not smothering", A=shape_label(A), B=shape_label(B),
                                     Z=shape_label(Z), witnesses=r["witnesses"])
    return rep


def check_hder(C: FinCategory | None = None, shapes=None, seed=0, exact_shapes=None) -> Report:
    """HDer 1, 2, 3b, 4, 5 and 6 for ``[−, C]`` (default ``C = 𝟚``).

    ``shapes`` defaults to the posets with at most 2 elements; HDer 5 and 6
    run over ``exact_shapes`` (default: the nonempty ones among them).
    """
    C = arrow() if C is None else C
    shapes = posets_up_to(2) if shapes is None else list(shapes)
    exact_shapes = [S for S in shapes if S.objects] if exact_shapes is None else exact_shapes
    top = Report("HDer", shape_label(C), {"shapes": [shape_label(S) for S in shapes]}, seed)
    top.add(check_hder1(C, shapes))
    top.add(check_hder2(C, shapes))
    top.add(check_hder3b(C, shapes))
    top.add(check_hder4(C, shapes))
    top.add(check_hder5(C, exact_shapes))
    top.add(check_hder6(C, exact_shapes))
    for child in top.children:
        child.seed = seed
    return top
