"""Finite strict 2-categories, pseudonatural transformations and mates.

1-cell and 2-cell identifiers are global: a 1-cell id names exactly one
hom, and a 2-cell id is a morphism of exactly one hom-category.  For a
pseudonatural ``α: F ⇒ G`` the naturality cell at ``f: a → b`` is
``α_f : G f ∘ α_a ⇒ α_b ∘ F f``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product as _product
from typing import NamedTuple

from .core import (
    FinCategory,
    Functor,
    NatTrans,
    comma,
    compose_functors,
    discrete,
    functor_category,
    functor_properties,
    hcompose,
    identity_functor,
    iter_functors,
    iter_nat_trans,
    validate_category,
    validate_functor,
    whisker,
)
from .errors import (
    CoherenceViolation,
    FunctorViolation,
    InterchangeViolation,
    MissingWitness,
    NonInvertibleNaturality2Cell,
    NotPointwiseEquivalence,
)


class Fin2Category:
    """A finite strict 2-category.

    Args:
        objects: object identifiers.
        homs: ``(a, b) -> FinCategory`` of 1-cells and 2-cells.
        id1: object -> identity 1-cell.
        comp1: ``(g, f) -> g∘f`` on composable 1-cells.
        comp2h: ``(β, α) -> β*α`` on 2-cells between composable 1-cells.
    """

    def __init__(self, objects, homs, id1, comp1, comp2h, name=None):
        self.objects = tuple(objects)
        self.homs = dict(homs)
        self.id1 = dict(id1)
        self.comp1 = dict(comp1)
        self.comp2h = dict(comp2h)
        self.name = name
        self.src1, self.tgt1, self.hom_of2 = {}, {}, {}
        for (a, b), H in self.homs.items():
            for f in H.objects:
                self.src1[f], self.tgt1[f] = a, b
            for m in H.morphisms:
                self.hom_of2[m] = (a, b)

    def __repr__(self):
        return f"Fin2Category({self.name or ''}, {len(self.objects)} objects, {len(self.src1)} 1-cells)"

    def hom(self, a, b) -> FinCategory:
        H = self.homs.get((a, b))
        return H if H is not None else discrete([])

    def cells1(self, a=None, b=None) -> tuple:
        if a is None:
            return tuple(self.src1)
        return self.hom(a, b).objects

    def cells2(self) -> tuple:
        return tuple(self.hom_of2)

    def src2(self, x):
        return self.homs[self.hom_of2[x]].src[x]

    def tgt2(self, x):
        return self.homs[self.hom_of2[x]].tgt[x]

    def id2(self, f):
        return self.homs[(self.src1[f], self.tgt1[f])].identity[f]

    def vcomp(self, *cells):
        """``cells[0]∘cells[1]∘...`` inside one hom-category."""
        H = self.homs[self.hom_of2[cells[0]]]
        return H.compose_path(*cells)

    def hcomp(self, *cells):
        """``cells[0]*cells[1]*...`` (rightmost is the first 2-cell in the path)."""
        out = cells[-1]
        for x in reversed(cells[:-1]):
            out = self.comp2h[(x, out)]
        return out

    def whisker(self, *items):
        """Horizontal composite where 1-cells stand for their identity 2-cells."""
        return self.hcomp(*(self.id2(x) if x in self.src1 else x for x in items))

    def compose1(self, *cells):
        out = cells[-1]
        for g in reversed(cells[:-1]):
            out = self.comp1[(g, out)]
        return out

    def inverse2(self, x):
        return self.homs[self.hom_of2[x]].inverse(x)

    def is_invertible2(self, x) -> bool:
        return self.inverse2(x) is not None


def validate_2category(A: Fin2Category) -> list:
    report = []
    for key, H in A.homs.items():
        report.extend(validate_category(H))
    if report:
        return report
    ones = A.cells1()
    for a in A.objects:
        i = A.id1.get(a)
        if i is None or A.src1.get(i) != a or A.tgt1.get(i) != a:
            report.append(CoherenceViolation(a, f"no identity 1-cell at {a!r}"))
    if report:
        return report
    for f in ones:
        for g in ones:
            if A.src1[g] != A.tgt1[f]:
                continue
            h = A.comp1.get((g, f))
            if h is None or A.src1.get(h) != A.src1[f] or A.tgt1.get(h) != A.tgt1[g]:
                report.append(CoherenceViolation((g, f), "1-cell composite missing or ill-typed"))
    if report:
        return report
    for f in ones:
        if A.comp1[(A.id1[A.tgt1[f]], f)] != f or A.comp1[(f, A.id1[A.src1[f]])] != f:
            report.append(CoherenceViolation(f, "identity 1-cell is not a unit"))
        for g in ones:
            if A.src1[g] != A.tgt1[f]:
                continue
            for h in ones:
                if A.src1[h] == A.tgt1[g] and A.comp1[(h, A.comp1[(g, f)])] != A.comp1[(A.comp1[(h, g)], f)]:
                    report.append(CoherenceViolation((h, g, f), "1-cell composition is not associative"))
    twos = A.cells2()
    for x in twos:
        for y in twos:
            if A.src1[A.src2(y)] != A.tgt1[A.src2(x)]:
                continue
            z = A.comp2h.get((y, x))
            want_src = A.comp1[(A.src2(y), A.src2(x))]
            want_tgt = A.comp1[(A.tgt2(y), A.tgt2(x))]
            if z is None or z not in A.hom_of2 or A.src2(z) != want_src or A.tgt2(z) != want_tgt:
                report.append(CoherenceViolation((y, x), "horizontal composite missing or ill-typed"))
    if report:
        return report
    for f in ones:
        for g in ones:
            if A.src1[g] == A.tgt1[f] and A.comp2h[(A.id2(g), A.id2(f))] != A.id2(A.comp1[(g, f)]):
                report.append(InterchangeViolation((g, f), "identity 2-cells do not compose to an identity"))
    for x in twos:
        a = A.src1[A.src2(x)]
        b = A.tgt1[A.src2(x)]
        if A.comp2h[(A.id2(A.id1[b]), x)] != x or A.comp2h[(x, A.id2(A.id1[a]))] != x:
            report.append(CoherenceViolation(x, "identity 2-cell on an identity 1-cell is not a unit"))
        for y in twos:
            if A.src1[A.src2(y)] != b:
                continue
            for z in twos:
                if A.src1[A.src2(z)] == A.tgt1[A.src2(y)]:
                    if A.comp2h[(z, A.comp2h[(y, x)])] != A.comp2h[(A.comp2h[(z, y)], x)]:
                        report.append(CoherenceViolation((z, y, x), "horizontal composition is not associative"))
    # middle four: (y'∘y)*(x'∘x) = (y'*x')∘(y*x)
    for key_ab, Hab in A.homs.items():
        for key_bc, Hbc in A.homs.items():
            if key_bc[0] != key_ab[1]:
                continue
            for (x2, x1), x in Hab.composition.items():
                for (y2, y1), y in Hbc.composition.items():
                    lhs = A.comp2h[(y, x)]
                    rhs = A.vcomp(A.comp2h[(y2, x2)], A.comp2h[(y1, x1)])
                    if lhs != rhs:
                        report.append(InterchangeViolation((y2, y1, x2, x1)))
    return report


def locally_discrete(C: FinCategory, name=None) -> Fin2Category:
    """``C`` with only identity 2-cells; the 2-cell on ``f`` is ``(f, f)``."""
    homs = {}
    for a in C.objects:
        for b in C.objects:
            hs = C.hom(a, b)
            if hs:
                homs[(a, b)] = discrete(hs)
    comp2h = {((g, g), (f, f)): (h, h) for (g, f), h in C.composition.items()}
    return Fin2Category(C.objects, homs, C.identity, C.composition, comp2h, name=name or C.name)


class CatFragment(NamedTuple):
    """A full sub-2-category of Cat on finitely many finite categories.

    1-cell ids are ``(a, b, i)``: the ``i``-th functor ``a → b``; 2-cell
    ids ``(a, b, i, j, k)``: the ``k``-th transformation from ``i`` to ``j``.
    """

    two: Fin2Category
    categories: dict
    functor: dict
    nat: dict
    functor_id: dict


def cat_fragment(categories: dict, name="Cat") -> CatFragment:
    names = list(categories)
    homs, functor, nat, functor_id = {}, {}, {}, {}
    nat_key = {}
    for a in names:
        for b in names:
            fc = functor_category(categories[a], categories[b])
            objs = [(a, b, i) for i in range(len(fc.functors))]
            for i, F in enumerate(fc.functors):
                functor[(a, b, i)] = F
                functor_id[(a, b, F)] = (a, b, i)
            mors = []
            for (i, j, k), alpha in fc.nats.items():
                x = (a, b, i, j, k)
                nat[x] = alpha
                nat_key[(a, b, i, j, tuple(alpha.component[o] for o in categories[a].objects))] = x
                mors.append((x, (a, b, i), (a, b, j)))
            ident = {(a, b, i): (a, b) + fc.category.identity[i] for i in range(len(fc.functors))}
            comp = {((a, b) + g, (a, b) + f): (a, b) + h for (g, f), h in fc.category.composition.items()}
            homs[(a, b)] = FinCategory(objs, mors, ident, comp)
    id1 = {a: functor_id[(a, a, identity_functor(categories[a]))] for a in names}
    comp1 = {}
    for f, F in functor.items():
        for g, G in functor.items():
            if g[0] == f[1]:
                comp1[(g, f)] = functor_id[(f[0], g[1], compose_functors(G, F))]
    comp2h = {}
    for x, alpha in nat.items():
        for y, beta in nat.items():
            if y[0] != x[1]:
                continue
            z = hcompose(beta, alpha)
            i = functor_id[(x[0], y[1], z.source)][2]
            j = functor_id[(x[0], y[1], z.target)][2]
            comps = tuple(z.component[o] for o in categories[x[0]].objects)
            comp2h[(y, x)] = nat_key[(x[0], y[1], i, j, comps)]
    two = Fin2Category(names, homs, id1, comp1, comp2h, name=name)
    return CatFragment(two, dict(categories), functor, nat, functor_id)


# ---------------------------------------------------------------------------
# 2-functors, pseudonatural transformations, modifications


class TwoFunctor:
    def __init__(self, source: Fin2Category, target: Fin2Category, obj, one, two, name=None):
        self.source = source
        self.target = target
        self.obj = dict(obj)
        self.one = dict(one)
        self.two = dict(two)
        self.name = name


def validate_2functor(F: TwoFunctor) -> list:
    A, B = F.source, F.target
    report = []
    for f in A.cells1():
        g = F.one.get(f)
        if g not in B.src1 or B.src1[g] != F.obj[A.src1[f]] or B.tgt1[g] != F.obj[A.tgt1[f]]:
            report.append(FunctorViolation(f, "1-cell image has the wrong boundary"))
    for x in A.cells2():
        y = F.two.get(x)
        if y not in B.hom_of2 or B.src2(y) != F.one.get(A.src2(x)) or B.tgt2(y) != F.one.get(A.tgt2(x)):
            report.append(FunctorViolation(x, "2-cell image has the wrong boundary"))
    if report:
        return report
    for a in A.objects:
        if F.one[A.id1[a]] != B.id1[F.obj[a]]:
            report.append(FunctorViolation(a, "identity 1-cell not preserved"))
    for (g, f), h in A.comp1.items():
        if B.comp1[(F.one[g], F.one[f])] != F.one[h]:
            report.append(FunctorViolation((g, f), "1-cell composite not preserved"))
    for f in A.cells1():
        if F.two[A.id2(f)] != B.id2(F.one[f]):
            report.append(FunctorViolation(f, "identity 2-cell not preserved"))
    for H in A.homs.values():
        for (y, x), z in H.composition.items():
            if B.vcomp(F.two[y], F.two[x]) != F.two[z]:
                report.append(FunctorViolation((y, x), "vertical composite not preserved"))
    for (y, x), z in A.comp2h.items():
        if B.comp2h[(F.two[y], F.two[x])] != F.two[z]:
            report.append(FunctorViolation((y, x), "horizontal composite not preserved"))
    return report


def identity_2functor(A: Fin2Category) -> TwoFunctor:
    return TwoFunctor(A, A, {a: a for a in A.objects}, {f: f for f in A.cells1()}, {x: x for x in A.cells2()})


class Pseudonatural:
    """``α: F ⇒ G`` with components ``α_a`` and cells ``α_f : G f ∘ α_a ⇒ α_b ∘ F f``."""

    def __init__(self, source: TwoFunctor, target: TwoFunctor, components, cells):
        self.source = source
        self.target = target
        self.components = dict(components)
        self.cells = dict(cells)

    @property
    def ambient(self) -> Fin2Category:
        return self.source.target

    def is_2natural(self) -> bool:
        D = self.ambient
        return all(D.homs[D.hom_of2[x]].is_identity(x) for x in self.cells.values())


def validate_pseudonatural(alpha: Pseudonatural) -> list:
    F, G = alpha.source, alpha.target
    A, D = F.source, F.target
    report = []
    for a in A.objects:
        c = alpha.components.get(a)
        if c not in D.src1 or D.src1[c] != F.obj[a] or D.tgt1[c] != G.obj[a]:
            report.append(CoherenceViolation(a, f"component at {a!r} has the wrong boundary"))
    if report:
        return report
    comp = alpha.components
    for f in A.cells1():
        a, b = A.src1[f], A.tgt1[f]
        x = alpha.cells.get(f)
        want = (D.comp1[(G.one[f], comp[a])], D.comp1[(comp[b], F.one[f])])
        if x not in D.hom_of2 or (D.src2(x), D.tgt2(x)) != want:
            report.append(CoherenceViolation(f, f"naturality cell at {f!r} has the wrong boundary"))
        elif not D.is_invertible2(x):
            report.append(NonInvertibleNaturality2Cell(f, f"naturality cell at {f!r} is not invertible"))
    if report:
        return report
    for a in A.objects:
        if alpha.cells[A.id1[a]] != D.id2(comp[a]):
            report.append(CoherenceViolation(a, "unit axiom fails"))
    for (g, f), h in A.comp1.items():
        # α_{gf} = (α_g * F f) ∘ (G g * α_f)
        rhs = D.vcomp(D.whisker(alpha.cells[g], F.one[f]), D.whisker(G.one[g], alpha.cells[f]))
        if alpha.cells[h] != rhs:
            report.append(CoherenceViolation((g, f), "composition axiom fails"))
    for x in A.cells2():
        f, f2 = A.src2(x), A.tgt2(x)
        a, b = A.src1[f], A.tgt1[f]
        lhs = D.vcomp(alpha.cells[f2], D.whisker(G.two[x], comp[a]))
        rhs = D.vcomp(D.whisker(comp[b], F.two[x]), alpha.cells[f])
        if lhs != rhs:
            report.append(CoherenceViolation(x, "local naturality fails"))
    return report


def identity_pseudonatural(F: TwoFunctor) -> Pseudonatural:
    D = F.target
    comps = {a: D.id1[F.obj[a]] for a in F.source.objects}
    return Pseudonatural(F, F, comps, {f: D.id2(F.one[f]) for f in F.source.cells1()})


def compose_pseudonatural(beta: Pseudonatural, alpha: Pseudonatural) -> Pseudonatural:
    """``β∘α`` with ``(βα)_f = (β_b * α_f) ∘ (β_f * α_a)``."""
    F, A, D = alpha.source, alpha.source.source, alpha.ambient
    comps = {a: D.comp1[(beta.components[a], alpha.components[a])] for a in A.objects}
    cells = {}
    for f in A.cells1():
        a, b = A.src1[f], A.tgt1[f]
        cells[f] = D.vcomp(
            D.whisker(beta.components[b], alpha.cells[f]),
            D.whisker(beta.cells[f], alpha.components[a]),
        )
    return Pseudonatural(F, beta.target, comps, cells)


class Modification:
    def __init__(self, source: Pseudonatural, target: Pseudonatural, components):
        self.source = source
        self.target = target
        self.components = dict(components)

    def is_invertible(self) -> bool:
        D = self.source.ambient
        return all(D.is_invertible2(x) for x in self.components.values())


def validate_modification(phi: Modification) -> list:
    alpha, beta = phi.source, phi.target
    F, G = alpha.source, alpha.target
    A, D = F.source, F.target
    report = []
    for a in A.objects:
        x = phi.components.get(a)
        if x not in D.hom_of2 or D.src2(x) != alpha.components[a] or D.tgt2(x) != beta.components[a]:
            report.append(CoherenceViolation(a, f"modification component at {a!r} has the wrong boundary"))
    if report:
        return report
    for f in A.cells1():
        a, b = A.src1[f], A.tgt1[f]
        lhs = D.vcomp(beta.cells[f], D.whisker(G.one[f], phi.components[a]))
        rhs = D.vcomp(D.whisker(phi.components[b], F.one[f]), alpha.cells[f])
        if lhs != rhs:
            report.append(CoherenceViolation(f, "modification axiom fails"))
    return report


# ---------------------------------------------------------------------------
# equivalences and the quasi-inverse construction


class AdjunctionWitness2(NamedTuple):
    """``f ⊣ u`` in ``ambient`` with ``η: id ⇒ u f`` and ``ε: f u ⇒ id``."""

    ambient: Fin2Category
    f: object
    u: object
    eta: object
    eps: object


def adjunction_triangles(w: AdjunctionWitness2) -> list:
    D, f, u = w.ambient, w.f, w.u
    report = []
    if D.vcomp(D.whisker(w.eps, f), D.whisker(f, w.eta)) != D.id2(f):
        report.append(CoherenceViolation("εf∘fη", "first triangle identity fails"))
    if D.vcomp(D.whisker(u, w.eps), D.whisker(w.eta, u)) != D.id2(u):
        report.append(CoherenceViolation("uε∘ηu", "second triangle identity fails"))
    return report


class EquivalenceWitness(NamedTuple):
    g: object
    eta: object
    eps: object


def is_equivalence_1cell(D: Fin2Category, f) -> EquivalenceWitness | None:
    """A quasi-inverse with invertible ``η: id ⇒ g f`` and ``ε: f g ⇒ id``, first in enumeration order."""
    a, b = D.src1[f], D.tgt1[f]
    for g in D.cells1(b, a):
        gf, fg = D.comp1[(g, f)], D.comp1[(f, g)]
        Ha, Hb = D.hom(a, a), D.hom(b, b)
        eta = next((x for x in Ha.hom(D.id1[a], gf) if Ha.is_iso(x)), None)
        if eta is None:
            continue
        eps = next((x for x in Hb.hom(fg, D.id1[b]) if Hb.is_iso(x)), None)
        if eps is not None:
            return EquivalenceWitness(g, eta, eps)
    return None


def adjoint_equivalence(D: Fin2Category, f) -> AdjunctionWitness2 | None:
    """Promote an equivalence to an adjoint one: keep ``η``, replace ``ε``.

    ``ε' = ε ∘ (f η⁻¹ g) ∘ (ε⁻¹ f g)``.
    """
    w = is_equivalence_1cell(D, f)
    if w is None:
        return None
    g = w.g
    eps_inv = D.inverse2(w.eps)
    eta_inv = D.inverse2(w.eta)
    corrected = D.vcomp(w.eps, D.whisker(f, eta_inv, g), D.whisker(eps_inv, D.comp1[(f, g)]))
    return AdjunctionWitness2(D, f, g, w.eta, corrected)


class QuasiInverse(NamedTuple):
    inverse: Pseudonatural
    adjunctions: dict
    unit: Modification
    counit: Modification


def pointwise_quasi_inverse(alpha: Pseudonatural) -> QuasiInverse:
    """A pseudonatural ``γ: G ⇒ F`` with ``αγ ≅ id`` and ``γα ≅ id``.

    Each component is promoted to an adjoint equivalence ``α_a ⊣ γ_a``
    and ``γ_f`` is the pasting ``(γ_b G f ε_a) ∘ (γ_b α_f⁻¹ γ_a) ∘ (η_b F f γ_a)``.
    ``counit`` has components ``ε_a : α_a γ_a ⇒ id`` and ``unit`` has
    ``η_a⁻¹ : γ_a α_a ⇒ id``.
    """
    F, G = alpha.source, alpha.target
    A, D = F.source, F.target
    adj = {}
    for a in A.objects:
        w = adjoint_equivalence(D, alpha.components[a])
        if w is None:
            raise NotPointwiseEquivalence(a)
        adj[a] = w
    gamma_c = {a: adj[a].u for a in A.objects}
    cells = {}
    for f in A.cells1():
        a, b = A.src1[f], A.tgt1[f]
        ga, gb = gamma_c[a], gamma_c[b]
        step1 = D.whisker(adj[b].eta, F.one[f], ga)
        step2 = D.whisker(gb, D.inverse2(alpha.cells[f]), ga)
        step3 = D.whisker(gb, G.one[f], adj[a].eps)
        cells[f] = D.vcomp(step3, step2, step1)
    gamma = Pseudonatural(G, F, gamma_c, cells)
    ag = compose_pseudonatural(alpha, gamma)
    ga = compose_pseudonatural(gamma, alpha)
    counit = Modification(ag, identity_pseudonatural(G), {a: adj[a].eps for a in A.objects})
    unit = Modification(ga, identity_pseudonatural(F), {a: D.inverse2(adj[a].eta) for a in A.objects})
    return QuasiInverse(gamma, adj, unit, counit)


def validate_quasi_inverse(alpha: Pseudonatural, q: QuasiInverse) -> list:
    report = [*validate_pseudonatural(q.inverse), *validate_modification(q.unit), *validate_modification(q.counit)]
    for a, w in q.adjunctions.items():
        report.extend(adjunction_triangles(w))
    if not q.unit.is_invertible():
        report.append(CoherenceViolation("unit", "modification is not invertible"))
    if not q.counit.is_invertible():
        report.append(CoherenceViolation("counit", "modification is not invertible"))
    return report


def _iter_2natural(F: TwoFunctor, G: TwoFunctor):
    """Strictly 2-natural ``β: F ⇒ G``, by backtracking over components."""
    A, D = F.source, F.target
    objs = A.objects
    pos = {a: i for i, a in enumerate(objs)}
    checks = [[] for _ in objs]
    for f in A.cells1():
        checks[max(pos[A.src1[f]], pos[A.tgt1[f]])].append(f)
    two_checks = [[] for _ in objs]
    for x in A.cells2():
        f = A.src2(x)
        two_checks[max(pos[A.src1[f]], pos[A.tgt1[f]])].append(x)
    comp = {}

    def ok(i):
        for f in checks[i]:
            a, b = A.src1[f], A.tgt1[f]
            if D.comp1[(G.one[f], comp[a])] != D.comp1[(comp[b], F.one[f])]:
                return False
        for x in two_checks[i]:
            f = A.src2(x)
            a, b = A.src1[f], A.tgt1[f]
            if D.whisker(G.two[x], comp[a]) != D.whisker(comp[b], F.two[x]):
                return False
        return True

    def rec(i):
        if i == len(objs):
            yield Pseudonatural(F, G, comp, {f: D.id2(D.comp1[(G.one[f], comp[A.src1[f]])]) for f in A.cells1()})
            return
        a = objs[i]
        for c in D.cells1(F.obj[a], G.obj[a]):
            comp[a] = c
            if ok(i):
                yield from rec(i + 1)
        comp.pop(a, None)

    yield from rec(0)


def _find_invertible_modification(alpha: Pseudonatural, beta: Pseudonatural) -> Modification | None:
    A, D = alpha.source.source, alpha.ambient
    objs = A.objects
    cands = []
    for a in objs:
        H = D.homs[(D.src1[alpha.components[a]], D.tgt1[alpha.components[a]])]
        cands.append([x for x in H.hom(alpha.components[a], beta.components[a]) if H.is_iso(x)])
    for choice in _product(*cands):
        phi = Modification(alpha, beta, dict(zip(objs, choice)))
        if not validate_modification(phi):
            return phi
    return None


class StrictInverse(NamedTuple):
    inverse: Pseudonatural
    unit: Modification
    counit: Modification


def exhaustive_2natural_inverse_search(alpha: Pseudonatural) -> StrictInverse | None:
    """A 2-natural ``β: G ⇒ F`` with invertible modifications ``βα ≅ id``, ``αβ ≅ id``, or None."""
    F, G = alpha.source, alpha.target
    for beta in _iter_2natural(G, F):
        unit = _find_invertible_modification(compose_pseudonatural(beta, alpha), identity_pseudonatural(F))
        if unit is None:
            continue
        counit = _find_invertible_modification(compose_pseudonatural(alpha, beta), identity_pseudonatural(G))
        if counit is not None:
            return StrictInverse(beta, unit, counit)
    return None


# ---------------------------------------------------------------------------
# quotient, smothering, mates


class Quotient(NamedTuple):
    category: FinCategory
    classes: dict
    functor_to_classes: dict
    problems: list


def quotient_T(A: Fin2Category) -> Quotient:
    """Objects of ``A``; morphisms are isomorphism classes of 1-cells."""
    cls = {}
    for (a, b), H in A.homs.items():
        for f in H.objects:
            if f in cls:
                continue
            for g in H.objects:
                if g not in cls and any(H.is_iso(x) for x in H.hom(f, g)):
                    cls[g] = f
    morphisms = [(r, A.src1[r], A.tgt1[r]) for r in dict.fromkeys(cls.values())]
    problems = []
    comp = {}
    for (g, f), h in A.comp1.items():
        key = (cls[g], cls[f])
        if key in comp and comp[key] != cls[h]:
            problems.append(CoherenceViolation((g, f), "composition is not well defined on classes"))
        comp[key] = cls[h]
    ident = {a: cls[A.id1[a]] for a in A.objects}
    C = FinCategory(A.objects, morphisms, ident, comp, name=f"T({A.name})" if A.name else None)
    problems.extend(validate_category(C))
    classes = {}
    for f, r in cls.items():
        classes.setdefault(r, []).append(f)
    return Quotient(C, classes, cls, problems)


def quotient_T_functor(F: TwoFunctor, TA: Quotient, TB: Quotient) -> Functor:
    mor = {r: TB.functor_to_classes[F.one[r]] for r in TA.category.morphisms}
    return Functor(TA.category, TB.category, F.obj, mor)


def hom_functor(F: TwoFunctor, a, b) -> Functor:
    A, B = F.source, F.target
    H = A.hom(a, b)
    K = B.hom(F.obj[a], F.obj[b])
    return Functor(H, K, {f: F.one[f] for f in H.objects}, {x: F.two[x] for x in H.morphisms})


def is_smothering_2functor(F: TwoFunctor) -> dict:
    A, B = F.source, F.target
    image = set(F.obj.values())
    missed = [b for b in B.objects if b not in image]
    homs = {}
    for a in A.objects:
        for b in A.objects:
            p = functor_properties(hom_functor(F, a, b))
            homs[(a, b)] = p
    failing = [k for k, p in homs.items() if not p.smothering]
    return {
        "surjective_on_objects": not missed,
        "homwise_smothering": not failing,
        "smothering": not missed and not failing,
        "witnesses": {"missed_objects": missed, "failing_homs": failing},
    }


class StrictSquare(NamedTuple):
    """``x: a → c``, ``h: a → b``, ``y: b → d``, ``k: c → d`` and ``α: y h ⇒ k x``."""

    x: object
    h: object
    y: object
    k: object
    alpha: object


def mate_strict(D: Fin2Category, sq: StrictSquare, adj_x: AdjunctionWitness2, adj_y: AdjunctionWitness2):
    """``h x' ⇒ y' k``: the pasting ``(y' k ε_x) ∘ (y' α x') ∘ (η_y h x')``."""
    if adj_x is None or adj_y is None:
        raise MissingWitness("mate_strict needs adjunctions on both vertical legs")
    if adj_x.f != sq.x or adj_y.f != sq.y:
        raise MissingWitness("adjunctions do not match the square's legs")
    xr, yr = adj_x.u, adj_y.u
    s1 = D.whisker(adj_y.eta, sq.h, xr)
    s2 = D.whisker(yr, sq.alpha, xr)
    s3 = D.whisker(yr, sq.k, adj_x.eps)
    return D.vcomp(s3, s2, s1)


def paste_strict(D: Fin2Category, left: StrictSquare, right: StrictSquare) -> StrictSquare:
    """Paste ``left`` and ``right`` along ``left.y = right.x``."""
    if left.y != right.x:
        raise ValueError("squares do not share a vertical edge")
    h = D.comp1[(right.h, left.h)]
    k = D.comp1[(right.k, left.k)]
    # y2 h2 h1 ⇒ k2 y1 h1 ⇒ k2 k1 x1
    alpha = D.vcomp(D.whisker(right.k, left.alpha), D.whisker(right.alpha, left.h))
    return StrictSquare(left.x, h, right.y, k, alpha)


def mates_compose(D: Fin2Category, left, right, adj_x, adj_m, adj_y):
    """Both sides of ``mate(left | right) = (mate(right) k1) ∘ (h2 mate(left))``."""
    whole = mate_strict(D, paste_strict(D, left, right), adj_x, adj_y)
    m_left = mate_strict(D, left, adj_x, adj_m)
    m_right = mate_strict(D, right, adj_m, adj_y)
    pasted = D.vcomp(D.whisker(m_right, left.k), D.whisker(right.h, m_left))
    return whole, pasted


# ---------------------------------------------------------------------------
# comma objects and the HDer 6 comparison


def comma_object_cat(f: Functor, g: Functor):
    return comma(f, g)


@lru_cache(maxsize=2048)
def _functor_category(A: FinCategory, B: FinCategory, order, lazy):
    return functor_category(A, B, lazy=lazy)


def cached_functor_category(A: FinCategory, B: FinCategory, lazy=False):
    return _functor_category(A, B, (A.objects, B.objects), lazy)


def _functor_keys(FA, Y):
    """Functor lookup by object and morphism images, avoiding Functor hashing."""
    return {(tuple(F.obj[y] for y in Y.objects), tuple(F.mor[m] for m in Y.morphisms)): i
            for i, F in enumerate(FA.functors)}


def postcompose_functor(f: Functor, Y: FinCategory, FA, FC) -> Functor:
    """``f∘− : [Y, A] → [Y, C]`` on indexed functor categories."""
    keys = _functor_keys(FC, Y)
    obj = {}
    for i, F in enumerate(FA.functors):
        obj[i] = keys[(tuple(f.obj[F.obj[y]] for y in Y.objects), tuple(f.mor[F.mor[m]] for m in Y.morphisms))]
    mor = {}
    for (i, j, k), alpha in FA.nats.items():
        mor[(i, j, k)] = FC.keyed[(obj[i], obj[j], tuple(f.mor[alpha.component[y]] for y in alpha.domain.objects))]
    return Functor(FA.category, FC.category, obj, mor)


@lru_cache(maxsize=256)
def _cached_comma(f: Functor, g: Functor):
    return comma(f, g)


@lru_cache(maxsize=1024)
def _postcompose(f: Functor, Y: FinCategory) -> Functor:
    FA, FC = cached_functor_category(Y, f.domain), cached_functor_category(Y, f.codomain)
    return postcompose_functor(f, Y, FA, FC)


def comma_comparison(Y: FinCategory, f: Functor, g: Functor):
    """``[Y, f↓g] → [Y, f] ↓ [Y, g]`` with the categories it relates."""
    K = _cached_comma(f, g)
    FK = functor_category(Y, K.category, lazy=True)
    FA = cached_functor_category(Y, f.domain)
    FB = cached_functor_category(Y, g.domain)
    FC = cached_functor_category(Y, f.codomain)
    pf, pg = _postcompose(f, Y), _postcompose(g, Y)
    T = comma(pf, pg, lazy=True)
    ka, kb = _functor_keys(FA, Y), _functor_keys(FB, Y)
    ys, ms = Y.objects, Y.morphisms
    obj = {}
    for i, H in enumerate(FK.functors):
        a = ka[(tuple(H.obj[y][0] for y in ys), tuple(H.mor[m][0] for m in ms))]
        b = kb[(tuple(H.obj[y][1] for y in ys), tuple(H.mor[m][1] for m in ms))]
        obj[i] = (a, b, FC.keyed[(pf.obj[a], pg.obj[b], tuple(H.obj[y][2] for y in ys))])
    mor = {}
    for (i, j, k), cs in FK.components.items():
        x, y = obj[i], obj[j]
        p = FA.keyed[(x[0], y[0], tuple(c[0] for c in cs))]
        q = FB.keyed[(x[1], y[1], tuple(c[1] for c in cs))]
        mor[(i, j, k)] = (p, q, x[2], y[2])
    return Functor(FK.category, T.category, obj, mor)


def comma_smothering_check(Y: FinCategory, f: Functor, g: Functor) -> dict:
    H = comma_comparison(Y, f, g)
    p = functor_properties(H)
    ok = p.surjective_on_objects and p.full and p.conservative
    return {
        "verdict": "pass" if ok else "fail",
        "surjective_on_objects": p.surjective_on_objects,
        "full": p.full,
        "conservative": p.conservative,
        "faithful": p.faithful,
        "witnesses": dict(p.witnesses),
        "sizes": [len(H.domain.objects), len(H.codomain.objects)],
    }


# ---------------------------------------------------------------------------
# the counterexample


class Counterexample(NamedTuple):
    fragment: CatFragment
    F: TwoFunctor
    G: TwoFunctor
    alpha: Pseudonatural


def counterexample() -> Counterexample:
    """``F, G: (⇉) → Cat`` with ``F = (0, 1: 𝟙 ⇉ I)``, ``G = (id, id: I ⇉ I)``.

    ``α_a = 0: 𝟙 → I`` and ``α_b = Δ₀: I → I``; both squares commute on
    the nose, so ``α`` is 2-natural with identity cells.
    """
    from .core import constant_functor, terminal
    from .shapes import free_iso, parallel_pair

    one, iso = terminal(), free_iso()
    frag = cat_fragment({"𝟙": one, "I": iso})
    D = frag.two
    src = locally_discrete(parallel_pair(), name="⇉")

    def fid(a, b, F):
        return frag.functor_id[(a, b, F)]

    zero = fid("𝟙", "I", constant_functor(one, iso, 0))
    unit1 = fid("𝟙", "I", constant_functor(one, iso, 1))
    id_iso = fid("I", "I", identity_functor(iso))
    delta0 = fid("I", "I", constant_functor(iso, iso, 0))

    def two_functor(obj, one_map):
        one_cells = {src.id1[a]: D.id1[obj[a]] for a in src.objects}
        one_cells.update(one_map)
        return TwoFunctor(src, D, obj, one_cells, {x: D.id2(one_cells[src.src2(x)]) for x in src.cells2()})

    F = two_functor({"a": "𝟙", "b": "I"}, {"s": zero, "t": unit1})
    G = two_functor({"a": "I", "b": "I"}, {"s": id_iso, "t": id_iso})
    comps = {"a": zero, "b": delta0}
    cells = {f: D.id2(D.comp1[(G.one[f], comps[src.src1[f]])]) for f in src.cells1()}
    return Counterexample(frag, F, G, Pseudonatural(F, G, comps, cells))
