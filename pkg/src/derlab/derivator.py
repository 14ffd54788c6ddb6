"""Prederivator instances, Beck–Chevalley mates and the derivator axioms.

An instance exposes its fibers through a small interface: a corpus of
objects for each shape, hom enumeration and composition, restriction
along functors and natural transformations, and Kan extension data.  The
checkers only use that interface, so the shifted instance is checked by
exactly the same code as the represented one.

Restriction is assumed strict: ``p^*u^*X`` and ``(u∘p)^*X`` must compare
equal.  Both instances here satisfy this on the nose.
"""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import islice
from typing import NamedTuple

from . import kan
from .core import (
    FinCategory,
    vcompose,
    whisker,
    Functor,
    NatTrans,
    compose_functors,
    coproduct,
    identity_functor,
    identity_nat,
    is_fully_faithful,
    iter_functors,
    object_functor,
    product,
    product_functor,
    product_nat,
    terminal,
)
from .errors import MissingWitness, ValidationError
from .finset import (
    DiagramMap,
    FinSetDiagram,
    compose_maps,
    identity_map,
    is_iso_map,
    iter_diagram_maps,
    iter_diagrams,
    restrict,
    restrict_map,
    sample_diagrams,
    two_cell_map,
    validate_diagram,
    validate_diagram_map,
)
from .report import Report
from .shapes import arrow, posets_up_to


def shape_label(S: FinCategory) -> str:
    return S.name or f"<{len(S.objects)} objects, {len(S.morphisms)} morphisms>"


def _shape_seed(seed, S: FinCategory) -> str:
    return f"{seed}|{S.objects!r}|{sorted(map(repr, S.morphisms))!r}"


class PrederivatorInstance:
    """The interface the checkers consume.

    Subclasses provide the fiber category (``corpus``, ``hom``,
    ``identity``, ``compose``, ``is_iso``), the restriction 2-functor
    (``restrict``, ``restrict_map``, ``two_cell``) and optionally Kan
    extension data and the witnesses used by Der 1 and Der 5.
    """

    name = "abstract"

    def corpus(self, J: FinCategory, seed=0) -> list:
        raise NotImplementedError

    def corpus_info(self, J: FinCategory) -> dict:
        return {}

    def hom(self, X, Y):
        raise NotImplementedError

    def identity(self, X):
        raise NotImplementedError

    def compose(self, psi, phi):
        raise NotImplementedError

    def is_iso(self, phi) -> bool:
        raise NotImplementedError

    def same(self, phi, psi) -> bool:
        return phi == psi

    def isomorphic(self, X, Y) -> bool:
        if X == Y:
            return True
        return any(self.is_iso(phi) for phi in self.hom(X, Y))

    def problems(self, phi) -> list:
        """Validation problems of a fiber morphism (empty when well formed)."""
        return []

    def restrict(self, X, u: Functor):
        raise NotImplementedError

    def restrict_map(self, phi, u: Functor):
        raise NotImplementedError

    def two_cell(self, alpha: NatTrans, X):
        """``α^*_X : u^*X → v^*X`` for ``α: u ⇒ v``."""
        raise NotImplementedError

    def _missing(self, what):
        raise MissingWitness(f"instance {self.name!r} provides no {what}")

    def lan(self, u, X):
        """``(Lan_u X, unit X → u^* Lan_u X)``."""
        self._missing("left Kan extensions")

    def lan_map(self, u, phi):
        self._missing("left Kan extensions")

    def lan_counit(self, u, Y):
        self._missing("left Kan extensions")

    def ran(self, u, X):
        """``(Ran_u X, counit u^* Ran_u X → X)``."""
        self._missing("right Kan extensions")

    def ran_map(self, u, phi):
        self._missing("right Kan extensions")

    def ran_unit(self, u, Y):
        self._missing("right Kan extensions")

    def lan_transpose(self, u, Y, phi):
        """``ε_Y ∘ u_!φ`` for ``φ: X → u^*Y``."""
        return self.compose(self.lan_counit(u, Y), self.lan_map(u, phi))

    def ran_transpose(self, u, Y, phi):
        """``u_*φ ∘ η_Y`` for ``φ: u^*Y → X``."""
        return self.compose(self.ran_map(u, phi), self.ran_unit(u, Y))

    def glue(self, I, J, Y, Z):
        """An object of ``𝔻(I ⊔ J)`` restricting to ``Y`` and ``Z``."""
        self._missing("gluing witness")

    def lift_arrow_family(self, J, phi):
        """An object of ``𝔻(J × 𝟚)`` whose underlying arrow is ``phi``."""
        self._missing("arrow lifting witness")


class RepresentedFinSet(PrederivatorInstance):
    """``J ↦ [J, FinSet]``, with fibers bounded by ``size_bound``.

    Shapes with at most ``exhaustive_objects`` objects get every diagram
    whose sets are ``range(k)`` for ``k ≤ size_bound``; larger shapes get
    ``sample_count`` seeded random diagrams.
    """

    name = "represented-finset"

    def __init__(self, size_bound=2, sample_count=12, exhaustive_objects=3):
        self.size_bound = size_bound
        self.sample_count = sample_count
        self.exhaustive_objects = exhaustive_objects
        self._corpus = {}

    def exhaustive(self, J) -> bool:
        return len(J.objects) <= self.exhaustive_objects

    def corpus(self, J, seed=0):
        key = (J, None if self.exhaustive(J) else seed)
        if key not in self._corpus:
            if self.exhaustive(J):
                self._corpus[key] = list(iter_diagrams(J, self.size_bound))
            else:
                rng = random.Random(_shape_seed(seed, J))
                self._corpus[key] = sample_diagrams(J, self.size_bound, self.sample_count, rng)
        return self._corpus[key]

    def corpus_info(self, J):
        info = {"shape": shape_label(J), "size_bound": self.size_bound}
        info["mode"] = "exhaustive" if self.exhaustive(J) else f"sampled({self.sample_count})"
        return info

    def hom(self, X, Y):
        return iter_diagram_maps(X, Y)

    def identity(self, X):
        return identity_map(X)

    def compose(self, psi, phi):
        return compose_maps(psi, phi)

    def is_iso(self, phi):
        return is_iso_map(phi)

    def same(self, phi, psi):
        return phi.key() == psi.key()

    def isomorphic(self, X, Y):
        if X == Y:
            return True
        if X.sizes() != Y.sizes():
            return False
        return next(iter_diagram_maps(X, Y, bijective=True), None) is not None

    def problems(self, phi):
        return [*validate_diagram(phi.source), *validate_diagram(phi.target), *validate_diagram_map(phi)]

    def restrict(self, X, u):
        return restrict(X, u)

    def restrict_map(self, phi, u):
        return restrict_map(phi, u)

    def two_cell(self, alpha, X):
        return two_cell_map(alpha, X)

    def lan(self, u, X):
        k = kan.lan(u, X)
        return k.diagram, k.unit

    def lan_map(self, u, phi):
        return kan.lan_map(u, phi)

    def lan_counit(self, u, Y):
        return kan.lan_counit(u, Y)

    def ran(self, u, X):
        k = kan.ran(u, X)
        return k.diagram, k.counit

    def ran_map(self, u, phi):
        return kan.ran_map(u, phi)

    def ran_unit(self, u, Y):
        return kan.ran_unit(u, Y)

    def lan_transpose(self, u, Y, phi):
        return kan.lan_transpose(u, Y, phi)

    def ran_transpose(self, u, Y, phi):
        return kan.ran_transpose(u, Y, phi)

    def glue(self, I, J, Y, Z):
        S = coproduct(I, J).category
        values = {(0, a): Y.values[a] for a in I.objects}
        values.update({(1, b): Z.values[b] for b in J.objects})
        action = {(0, m): Y.action[m] for m in I.morphisms}
        action.update({(1, m): Z.action[m] for m in J.morphisms})
        return FinSetDiagram(S, values, action)

    def lift_arrow_family(self, J, phi):
        P = _times_arrow(J)
        X0, X1 = phi.source, phi.target
        values = {(j, e): (X0 if e == 0 else X1).values[j] for j, e in P.objects}
        action = {}
        for m, e in P.morphisms:
            if e == (0, 0):
                action[(m, e)] = X0.action[m]
            elif e == (1, 1):
                action[(m, e)] = X1.action[m]
            else:
                f, c = X1.action[m], phi.components[J.src[m]]
                action[(m, e)] = {x: f[c[x]] for x in X0.values[J.src[m]]}
        return FinSetDiagram(P, values, action)


class CorruptedRestriction(RepresentedFinSet):
    """Represented fibers with every restriction replaced by the terminal diagram.

    Used to exercise the failure paths of the checkers.
    """

    name = "corrupted-restriction"

    def restrict(self, X, u):
        D = u.domain
        return FinSetDiagram(D, {a: (0,) for a in D.objects}, {m: {0: 0} for m in D.morphisms})

    def restrict_map(self, phi, u):
        X = self.restrict(phi.source, u)
        return DiagramMap(X, X, {a: {0: 0} for a in u.domain.objects})

    def two_cell(self, alpha, X):
        X0 = self.restrict(X, alpha.source)
        return DiagramMap(X0, X0, {a: {0: 0} for a in alpha.domain.objects})


@lru_cache(maxsize=None)
def _times_arrow(J: FinCategory) -> FinCategory:
    return product(J, arrow()).category


@lru_cache(maxsize=1024)
def _product_shape(A: FinCategory, J: FinCategory) -> FinCategory:
    return product(A, J).category


@lru_cache(maxsize=8192)
def _shift_functor(A: FinCategory, u: Functor) -> Functor:
    return product_functor(identity_functor(A), u, _product_shape(A, u.domain), _product_shape(A, u.codomain))


class ShiftedInstance(PrederivatorInstance):
    """``𝔻^A``: ``J ↦ 𝔻(A × J)``, with all structure precomposed with ``A × −``."""

    def __init__(self, inner: PrederivatorInstance, A: FinCategory):
        self.inner = inner
        self.A = A
        self.name = f"shift({inner.name}, {shape_label(A)})"

    def shape(self, J):
        return _product_shape(self.A, J)

    def lift(self, u):
        return _shift_functor(self.A, u)

    def lift_nat(self, alpha):
        P = self.shape(alpha.domain)
        Q = self.shape(alpha.codomain)
        return product_nat(identity_nat(identity_functor(self.A)), alpha, P, Q)

    def corpus(self, J, seed=0):
        return self.inner.corpus(self.shape(J), seed)

    def corpus_info(self, J):
        info = self.inner.corpus_info(self.shape(J))
        info["shape"] = f"{shape_label(self.A)}×{shape_label(J)}"
        return info

    def hom(self, X, Y):
        return self.inner.hom(X, Y)

    def identity(self, X):
        return self.inner.identity(X)

    def compose(self, psi, phi):
        return self.inner.compose(psi, phi)

    def is_iso(self, phi):
        return self.inner.is_iso(phi)

    def same(self, phi, psi):
        return self.inner.same(phi, psi)

    def isomorphic(self, X, Y):
        return self.inner.isomorphic(X, Y)

    def problems(self, phi):
        return self.inner.problems(phi)

    def restrict(self, X, u):
        return self.inner.restrict(X, self.lift(u))

    def restrict_map(self, phi, u):
        return self.inner.restrict_map(phi, self.lift(u))

    def two_cell(self, alpha, X):
        return self.inner.two_cell(self.lift_nat(alpha), X)

    def lan(self, u, X):
        return self.inner.lan(self.lift(u), X)

    def lan_map(self, u, phi):
        return self.inner.lan_map(self.lift(u), phi)

    def lan_counit(self, u, Y):
        return self.inner.lan_counit(self.lift(u), Y)

    def ran(self, u, X):
        return self.inner.ran(self.lift(u), X)

    def ran_map(self, u, phi):
        return self.inner.ran_map(self.lift(u), phi)

    def ran_unit(self, u, Y):
        return self.inner.ran_unit(self.lift(u), Y)

    def lan_transpose(self, u, Y, phi):
        return self.inner.lan_transpose(self.lift(u), Y, phi)

    def ran_transpose(self, u, Y, phi):
        return self.inner.ran_transpose(self.lift(u), Y, phi)

    def glue(self, I, J, Y, Z):
        A = self.A
        AI, AJ = self.shape(I), self.shape(J)
        G = self.inner.glue(AI, AJ, Y, Z)
        S = self.shape(coproduct(I, J).category)
        # A × (I ⊔ J) ≅ (A × I) ⊔ (A × J)
        obj = {(a, (t, x)): (t, (a, x)) for a, (t, x) in S.objects}
        mor = {(m, (t, n)): (t, (m, n)) for m, (t, n) in S.morphisms}
        theta = Functor(S, G.shape, obj, mor)
        return self.inner.restrict(G, theta)

    def lift_arrow_family(self, J, phi):
        AJ = self.shape(J)
        X = self.inner.lift_arrow_family(AJ, phi)
        S = self.shape(_times_arrow(J))
        # A × (J × 𝟚) ≅ (A × J) × 𝟚
        obj = {(a, (j, e)): ((a, j), e) for a, (j, e) in S.objects}
        mor = {(m, (n, e)): ((m, n), e) for m, (n, e) in S.morphisms}
        theta = Functor(S, X.shape, obj, mor)
        return self.inner.restrict(X, theta)


def shift(inst: PrederivatorInstance, A: FinCategory) -> ShiftedInstance:
    return ShiftedInstance(inst, A)


# ---------------------------------------------------------------------------
# mates


class BCSquare(NamedTuple):
    """A square ``p: P → J``, ``q: P → L``, ``u: J → K``, ``v: L → K`` with a 2-cell.

    ``side="left"``: ``α: u∘p ⇒ v∘q`` and the mate is ``q_! p^* ⇒ v^* u_!``.
    ``side="right"``: ``α: v∘q ⇒ u∘p`` and the mate is ``v^* u_* ⇒ q_* p^*``.
    """

    p: Functor
    q: Functor
    u: Functor
    v: Functor
    alpha: NatTrans
    side: str = "left"


def bc_mate(inst: PrederivatorInstance, sq: BCSquare, X):
    """The component at ``X`` of the mate of ``sq``, pasted as ``ε ∘ α^* ∘ η``.

    The outer unit or counit is applied through the instance's transpose,
    which never materialises ``q_!q^*`` or ``q_*q^*``.
    """
    if sq.side == "left":
        L, eta = inst.lan(sq.u, X)
        mid = inst.compose(inst.two_cell(sq.alpha, L), inst.restrict_map(eta, sq.p))
        return inst.lan_transpose(sq.q, inst.restrict(L, sq.v), mid)
    if sq.side == "right":
        R, eps = inst.ran(sq.u, X)
        mid = inst.compose(inst.restrict_map(eps, sq.p), inst.two_cell(sq.alpha, R))
        return inst.ran_transpose(sq.q, inst.restrict(R, sq.v), mid)
    raise ValueError(f"unknown side {sq.side!r}")


def comma_square(u: Functor, k, side="left") -> BCSquare:
    """The Der 4 square of ``u: J → K`` at ``k``."""
    if side == "left":
        c = kan.lower_comma(u, k)
        return BCSquare(c.proj0, c.proj1, u, object_functor(u.codomain, k), c.nat, "left")
    c = kan.upper_comma(u, k)
    return BCSquare(c.proj1, c.proj0, u, object_functor(u.codomain, k), c.nat, "right")


def identity_square(J: FinCategory, side="left") -> BCSquare:
    i = identity_functor(J)
    return BCSquare(i, i, i, i, identity_nat(i), side)


def paste_vertical(top: BCSquare, bottom: BCSquare) -> BCSquare:
    """Stack ``top`` (``P → J``, ``P → L`` over ``J → K``, ``L → K``) on ``bottom``.

    ``bottom`` must have ``bottom.u == top.q``, i.e. it is a square
    ``P' → P``, ``P' → L'`` over ``P → L``, ``L' → L``.  The pasted
    square is ``p∘p'``, ``q'``, ``u``, ``v∘v'``.  Left sides only.
    """
    if top.side != "left" or bottom.side != "left":
        raise ValueError("vertical pasting is implemented for left squares")
    p = compose_functors(top.p, bottom.p)
    v = compose_functors(top.v, bottom.v)
    # u p p' ⇒ v q p' = v u' p' ⇒ v v' q'
    first = whisker(top.alpha, bottom.p)
    second = whisker(top.v, bottom.alpha)
    first = NatTrans(compose_functors(top.u, p), first.target, first.component)
    second = NatTrans(first.target, compose_functors(v, bottom.q), second.component)
    return BCSquare(p, bottom.q, top.u, v, vcompose(second, first), "left")


def mate_of_pasting(inst, top: BCSquare, bottom: BCSquare, X):
    """Both sides of ``mate(top ⊞ bottom) = v'^* mate(top) ∘ mate(bottom) p^*``."""
    whole = bc_mate(inst, paste_vertical(top, bottom), X)
    # mate(bottom) at p^*X : q'_! p'^* p^* X → v'^* q_! p^* X
    m_bottom = bc_mate(inst, bottom, inst.restrict(X, top.p))
    m_top = inst.restrict_map(bc_mate(inst, top, X), bottom.v)
    return whole, inst.compose(m_top, m_bottom)


# ---------------------------------------------------------------------------
# adjunctions


def adjunction_check(inst, u: Functor, X_corpus=None, Y_corpus=None, side="left", hom_pairs=None, seed=0,
                     report=None) -> Report:
    """Triangle identities for ``u_! ⊣ u^*`` (``side="left"``) or ``u^* ⊣ u_*``.

    ``hom_pairs`` limits the hom-set bijection test to that many seeded
    random pairs (None: every pair).
    """
    J, K = u.domain, u.codomain
    Xs = inst.corpus(J, seed) if X_corpus is None else X_corpus
    Ys = inst.corpus(K, seed) if Y_corpus is None else Y_corpus
    rep = report or Report(f"adjunction-{side}", inst.name, {"J": inst.corpus_info(J), "K": inst.corpus_info(K)},
                           seed)
    if side == "left":
        for X in Xs:
            L, eta = inst.lan(u, X)
            bad = inst.problems(eta)
            if bad:
                rep.fail(kind="unit", X=X, problems=[e.message for e in bad])
                continue
            t = inst.compose(inst.lan_counit(u, L), inst.lan_map(u, eta))
            rep.count("triangles")
            if not inst.same(t, inst.identity(L)):
                rep.fail(kind="TriangleFailure", triangle="ε Lan ∘ Lan η", X=X)
        for Y in Ys:
            uY = inst.restrict(Y, u)
            _, eta = inst.lan(u, uY)
            t = inst.compose(inst.restrict_map(inst.lan_counit(u, Y), u), eta)
            rep.count("triangles")
            if not inst.same(t, inst.identity(uY)):
                rep.fail(kind="TriangleFailure", triangle="u^*ε ∘ η u^*", Y=Y)
    else:
        for X in Xs:
            R, eps = inst.ran(u, X)
            bad = inst.problems(eps)
            if bad:
                rep.fail(kind="counit", X=X, problems=[e.message for e in bad])
                continue
            t = inst.compose(inst.ran_map(u, eps), inst.ran_unit(u, R))
            rep.count("triangles")
            if not inst.same(t, inst.identity(R)):
                rep.fail(kind="TriangleFailure", triangle="Ran ε ∘ η Ran", X=X)
        for Y in Ys:
            uY = inst.restrict(Y, u)
            _, eps = inst.ran(u, uY)
            t = inst.compose(eps, inst.restrict_map(inst.ran_unit(u, Y), u))
            rep.count("triangles")
            if not inst.same(t, inst.identity(uY)):
                rep.fail(kind="TriangleFailure", triangle="ε u^* ∘ u^*η", Y=Y)
    pairs = [(X, Y) for X in Xs for Y in Ys]
    if hom_pairs is not None and len(pairs) > hom_pairs:
        pairs = random.Random(f"{seed}|pairs").sample(pairs, hom_pairs)
    for X, Y in pairs:
        _hom_bijection(inst, u, X, Y, side, rep)
    return rep


def _hom_bijection(inst, u, X, Y, side, rep):
    """``ψ ↦ u^*ψ ∘ η`` is a bijection inverted by ``φ ↦ ε ∘ Lan φ`` (dually on the right)."""
    uY = inst.restrict(Y, u)
    if side == "left":
        L, eta = inst.lan(u, X)
        counit = inst.lan_counit(u, Y)
        src, tgt = list(inst.hom(L, Y)), list(inst.hom(X, uY))

        def forward(psi):
            return inst.compose(inst.restrict_map(psi, u), eta)

        def backward(phi):
            return inst.compose(counit, inst.lan_map(u, phi))
    else:
        R, eps = inst.ran(u, X)
        unit = inst.ran_unit(u, Y)
        src, tgt = list(inst.hom(Y, R)), list(inst.hom(uY, X))

        def forward(psi):
            return inst.compose(eps, inst.restrict_map(psi, u))

        def backward(phi):
            return inst.compose(inst.ran_map(u, phi), unit)

    rep.count("hom_pairs")
    if len(src) != len(tgt):
        rep.fail(kind="TriangleFailure", reason="hom sets of different sizes", X=X, Y=Y,
                 sizes=[len(src), len(tgt)])
        return
    for psi in src:
        if not inst.same(backward(forward(psi)), psi):
            rep.fail(kind="TriangleFailure", reason="hom bijection does not round-trip", X=X, Y=Y)
            return
    for phi in tgt:
        if not inst.same(forward(backward(phi)), phi):
            rep.fail(kind="TriangleFailure", reason="hom bijection does not round-trip", X=X, Y=Y)
            return


# ---------------------------------------------------------------------------
# the axioms


def check_der1(inst, I: FinCategory, J: FinCategory, seed=0, max_pairs=400) -> Report:
    """``𝔻(I ⊔ J) → 𝔻(I) × 𝔻(J)`` is an equivalence, tested on the canonical comparison.

    Fullness and faithfulness compare hom sets on pairs of corpus objects
    (at most ``max_pairs`` seeded pairs); essential surjectivity glues
    every pair of corpus objects and checks the restrictions.
    """
    co = coproduct(I, J)
    S, i0, i1 = co.category, co.inj0, co.inj1
    rep = Report("Der1", inst.name, {"I": inst.corpus_info(I), "J": inst.corpus_info(J),
                                     "I⊔J": inst.corpus_info(S)}, seed)
    objs = inst.corpus(S, seed)
    pairs = [(X, Y) for X in objs for Y in objs]
    if len(pairs) > max_pairs:
        pairs = random.Random(f"{seed}|der1").sample(pairs, max_pairs)
    for X, Y in pairs:
        maps = list(inst.hom(X, Y))
        images = {}
        for phi in maps:
            key = (inst.restrict_map(phi, i0).key(), inst.restrict_map(phi, i1).key())
            if key in images:
                rep.fail(kind="not faithful", X=X, Y=Y)
                break
            images[key] = phi
        n0 = sum(1 for _ in inst.hom(inst.restrict(X, i0), inst.restrict(Y, i0)))
        n1 = sum(1 for _ in inst.hom(inst.restrict(X, i1), inst.restrict(Y, i1)))
        rep.count("hom_pairs")
        if len(images) != n0 * n1:
            rep.fail(kind="not full", X=X, Y=Y, maps=len(images), expected=n0 * n1)
    for Y in inst.corpus(I, seed):
        for Z in inst.corpus(J, seed):
            X = inst.glue(I, J, Y, Z)
            rep.count("glued")
            if not (inst.isomorphic(inst.restrict(X, i0), Y) and inst.isomorphic(inst.restrict(X, i1), Z)):
                rep.fail(kind="not essentially surjective", Y=Y, Z=Z)
    if not S.objects:
        # 𝔻(∅) must be the terminal category
        if len(objs) != 1 or sum(1 for _ in inst.hom(objs[0], objs[0])) != 1:
            rep.fail(kind="𝔻(∅) is not terminal", objects=len(objs))
    return rep


def check_der2(inst, I: FinCategory, seed=0) -> Report:
    """Pointwise isomorphisms are isomorphisms."""
    rep = Report("Der2", inst.name, {"I": inst.corpus_info(I)}, seed)
    points = [object_functor(I, i) for i in I.objects]
    objs = inst.corpus(I, seed)
    pointwise = [[inst.restrict(X, p) for p in points] for X in objs]
    for x, X in enumerate(objs):
        for y, Y in enumerate(objs):
            if not all(inst.isomorphic(a, b) for a, b in zip(pointwise[x], pointwise[y])):
                continue
            for phi in inst.hom(X, Y):
                rep.count("maps")
                if all(inst.is_iso(inst.restrict_map(phi, p)) for p in points) and not inst.is_iso(phi):
                    rep.fail(kind="pointwise iso that is not an iso", map=phi)
                    return rep
    return rep


def check_der3(inst, u: Functor, seed=0, hom_pairs=4) -> Report:
    """``u^*`` has both adjoints (triangles exhaustive, hom bijection sampled)."""
    rep = Report("Der3", inst.name, {"J": inst.corpus_info(u.domain), "K": inst.corpus_info(u.codomain)}, seed)
    for side in ("left", "right"):
        adjunction_check(inst, u, side=side, hom_pairs=hom_pairs, seed=seed, report=rep)
    return rep


def check_der4(inst, u: Functor, k=None, seed=0) -> Report:
    """The comma-square mates are invertible, at ``k`` or at every object."""
    rep = Report("Der4", inst.name, {"J": inst.corpus_info(u.domain)}, seed)
    ks = u.codomain.objects if k is None else [k]
    Xs = inst.corpus(u.domain, seed)
    for kk in ks:
        for side in ("left", "right"):
            sq = comma_square(u, kk, side)
            for X in Xs:
                m = bc_mate(inst, sq, X)
                rep.count("mates")
                if not inst.is_iso(m):
                    rep.fail(kind="mate not invertible", side=side, k=kk, X=X)
    return rep


def _arrow_cell():
    A2 = arrow()
    e0, e1 = object_functor(A2, 0), object_functor(A2, 1)
    return A2, e0, e1, NatTrans(e0, e1, {"*": (0, 1)})


def dia_arrow(inst, X):
    """``dia_𝟚 X = (0^*X, 1^*X, α^*_X)``."""
    _, e0, e1, a = _arrow_cell()
    return inst.restrict(X, e0), inst.restrict(X, e1), inst.two_cell(a, X)


def check_der5(inst, I: FinCategory | None = None, seed=0, max_pairs=100, max_arrows=40) -> Report:
    """``dia_𝟚: 𝔼(𝟚) → 𝔼(𝟙)^𝟚`` is full and essentially surjective for ``𝔼 = 𝔻^I``."""
    E = inst if I is None else shift(inst, I)
    A2, e0, e1, a = _arrow_cell()
    pt = terminal()
    rep = Report("Der5", E.name, {"E(𝟚)": E.corpus_info(A2), "E(𝟙)": E.corpus_info(pt)}, seed)
    rng = random.Random(f"{seed}|der5")
    objs = E.corpus(A2, seed)
    arrows = [dia_arrow(E, X) for X in objs]
    pairs = [(x, y) for x in range(len(objs)) for y in range(len(objs))]
    if len(pairs) > max_pairs:
        pairs = rng.sample(pairs, max_pairs)
    for x, y in pairs:
        (X0, X1, f), (Y0, Y1, g) = arrows[x], arrows[y]
        hit = {(E.restrict_map(phi, e0).key(), E.restrict_map(phi, e1).key()) for phi in E.hom(objs[x], objs[y])}
        rep.count("square_pairs")
        for s in E.hom(X0, Y0):
            for t in E.hom(X1, Y1):
                if E.same(E.compose(t, f), E.compose(g, s)) and (s.key(), t.key()) not in hit:
                    rep.fail(kind="not full", X=objs[x], Y=objs[y], square=[s, t])
                    return rep
    base = E.corpus(pt, seed)
    cands = []
    for Y in base:
        for Z in base:
            cands.extend(islice(E.hom(Y, Z), 4))
    if len(cands) > max_arrows:
        cands = rng.sample(cands, max_arrows)
    iso = _iso_2()
    for phi in cands:
        X = E.restrict(E.lift_arrow_family(pt, phi), iso)
        X0, X1, f = dia_arrow(E, X)
        rep.count("lifted_arrows")
        if not (X0 == phi.source and X1 == phi.target and E.same(f, phi)):
            if not _arrows_isomorphic(E, (X0, X1, f), (phi.source, phi.target, phi)):
                rep.fail(kind="not essentially surjective", arrow=phi)
    return rep


@lru_cache(maxsize=None)
def _iso_2() -> Functor:
    """``𝟚 ≅ 𝟙 × 𝟚``."""
    A2 = arrow()
    P = _times_arrow(terminal())
    return Functor(A2, P, {e: ("*", e) for e in A2.objects}, {m: (("*", "*"), m) for m in A2.morphisms})


def _arrows_isomorphic(E, first, second) -> bool:
    (X0, X1, f), (Y0, Y1, g) = first, second
    for s in E.hom(X0, Y0):
        if not E.is_iso(s):
            continue
        for t in E.hom(X1, Y1):
            if E.is_iso(t) and E.same(E.compose(t, f), E.compose(g, s)):
                return True
    return False


def check_derivator(inst, shapes=None, seed=0, der5_shapes=None, hom_pairs=4, max_pairs=400) -> Report:
    """Der 1–5 over ``shapes`` (default: posets with at most 3 elements)."""
    shapes = posets_up_to(3) if shapes is None else shapes
    der5_shapes = shapes if der5_shapes is None else der5_shapes
    top = Report("Der1-5", inst.name, {"shapes": [shape_label(S) for S in shapes]}, seed)
    parts = {name: top.add(Report(name, inst.name, {}, seed)) for name in ("Der1", "Der2", "Der3", "Der4", "Der5")}
    for I in shapes:
        for J in shapes:
            if len(I.objects) + len(J.objects) <= max(len(S.objects) for S in shapes):
                _guarded(parts["Der1"], check_der1, inst, I, J, seed, max_pairs)
        _guarded(parts["Der2"], check_der2, inst, I, seed)
    functors = [u for J in shapes for K in shapes for u in iter_functors(J, K)]
    parts["Der3"].stats["functors"] = parts["Der4"].stats["functors"] = len(functors)
    for u in functors:
        _guarded(parts["Der3"], check_der3, inst, u, seed, hom_pairs)
        _guarded(parts["Der4"], check_der4, inst, u, None, seed)
    for I in der5_shapes:
        _guarded(parts["Der5"], check_der5, inst, I, seed)
    return top


def _guarded(into: Report, check, inst, *args):
    """Merge a sub-check; a structurally broken instance (maps that do not
    compose) is recorded as a failure instead of aborting the run."""
    try:
        part = check(inst, *args)
    except (KeyError, ValidationError) as e:
        into.fail(kind="instance produced ill-typed data", check=check.__name__, error=repr(e)[:200])
        return
    _merge(into, part)


def _merge(into: Report, part: Report):
    for w in part.witnesses:
        into.witnesses.append({"corpus": part.corpus, **w})
    for k, v in part.stats.items():
        into.count(k, v)


# ---------------------------------------------------------------------------
# underlying diagrams, exactness, fully faithful units


class IncoherentDiagram(NamedTuple):
    """A diagram ``I → 𝔻(𝟙)``: an object per object of ``I`` and a map per morphism."""

    shape: FinCategory
    objects: dict
    maps: dict


def underlying_diagram(inst, I: FinCategory, X) -> IncoherentDiagram:
    objs = {i: inst.restrict(X, object_functor(I, i)) for i in I.objects}
    maps = {}
    for m in I.morphisms:
        a = NatTrans(object_functor(I, I.src[m]), object_functor(I, I.tgt[m]), {"*": m})
        maps[m] = inst.two_cell(a, X)
    return IncoherentDiagram(I, objs, maps)


def underlying_finset(D: IncoherentDiagram) -> FinSetDiagram:
    """Read an incoherent diagram of one-object FinSet diagrams as a FinSet diagram."""
    S = D.shape
    return FinSetDiagram(S, {i: D.objects[i].values["*"] for i in S.objects},
                         {m: D.maps[m].components["*"] for m in S.morphisms})


def exactness_check(f: Functor, b, X: FinSetDiagram, side="left", inst=None) -> Report:
    """Exactness of the collage square of ``f: A → B`` and the object ``b``."""
    return exactness_check_cospan(f, object_functor(f.codomain, b), [X], side, inst)


def collage_square(f: Functor, g: Functor, side="left"):
    """The square ``π∘ι = f`` on ``coll(f, g)`` (left) or ``coll(g, f)`` (right).

    Returns the square and the inclusion of ``g``'s domain into the collage.
    """
    from .collage import collage_cospan, pi_functor

    A = f.domain
    p = identity_functor(A)
    ids = {a: f.codomain.identity[f.obj[a]] for a in A.objects}
    if side == "left":
        coll = collage_cospan(f, g)
        iota, bside = coll.inc_a, coll.inc_b
        pi = pi_functor(f, g, coll)
        cell = NatTrans(compose_functors(f, p), compose_functors(pi, iota), ids)
    else:
        coll = collage_cospan(g, f)
        iota, bside = coll.inc_b, coll.inc_a
        pi = pi_functor(g, f, coll)
        cell = NatTrans(compose_functors(pi, iota), compose_functors(f, p), ids)
    return BCSquare(p, iota, f, pi, cell, side), bside


def exactness_check_cospan(f: Functor, g: Functor, Xs, side="left", inst=None) -> Report:
    """The collage mate for ``f: A → C`` and ``g: B → C`` is invertible at the ``B``-side objects.

    Left: ``Lan_ι X → π^* Lan_f X`` on ``coll(f, g)``.  Right:
    ``π^* Ran_f X → Ran_ι X`` on ``coll(g, f)``.  ``Xs`` is a list of
    diagrams on ``A``.
    """
    inst = inst or RepresentedFinSet()
    rep = Report(f"exactness-{side}", inst.name, {"A": shape_label(f.domain), "B": shape_label(g.domain),
                                                  "diagrams": len(Xs)})
    sq, bside = collage_square(f, g, side)
    for X in Xs:
        m = bc_mate(inst, sq, X)
        for b in g.domain.objects:
            c = m.components[bside.obj[b]]
            n_src, n_tgt = len(m.source.values[bside.obj[b]]), len(m.target.values[bside.obj[b]])
            rep.count("components")
            if not (n_src == n_tgt == len(set(c.values()))):
                rep.fail(kind="collage mate not invertible", b=b, X=X, sizes=[n_src, n_tgt])
    return rep


def unit_is_iso(F: Functor, X: FinSetDiagram) -> bool:
    """Whether ``X → F^* Lan_F X`` is invertible."""
    return is_iso_map(kan.lan(F, X).unit)


def check_ff_unit(F: Functor, Xs) -> Report:
    """For fully faithful ``F`` the unit is invertible on every ``X``."""
    ff = is_fully_faithful(F)
    rep = Report("ff-unit", "represented-finset", {"fully_faithful": ff, "diagrams": len(Xs)})
    failures = [X for X in Xs if not unit_is_iso(F, X)]
    rep.stats["non_iso_units"] = len(failures)
    if ff and failures:
        rep.fail(kind="unit of a fully faithful functor not invertible", X=failures[0])
    return rep
