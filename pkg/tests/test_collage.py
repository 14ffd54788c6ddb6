import random

from hypothesis import given, strategies as st

from conftest import CORPUS2
from derlab.collage import (
    BULLET,
    CatDiagram,
    collage_cospan,
    collage_report,
    collage_weight,
    compare_weighted_limits,
    idempotence_check,
    limit_cat,
    pi_functor,
    random_cospan,
    representable_profunctor,
    validate_profunctor,
    weight_map_direct,
    weight_morphism_induced_map,
    weighted_limit_direct,
    weighted_limit_via_collage,
)
from derlab.core import (
    FinCategory,
    coproduct,
    find_isomorphism,
    identity_functor,
    iter_functors,
    object_functor,
    pullback_cat,
    terminal,
    validate_functor,
)
from derlab.finset import DiagramMap, FinSetDiagram, compose_maps, iter_diagram_maps, iter_diagrams
from derlab.shapes import arrow, chain, discrete, thin_category

ONE = terminal()


def test_weight_collage_examples():
    K = collage_weight(FinSetDiagram(ONE, {"*": ("*",)})).category
    assert find_isomorphism(K, arrow()) is not None
    K = collage_weight(FinSetDiagram(ONE, {"*": ()})).category
    assert find_isomorphism(K, coproduct(ONE, ONE).category) is not None
    two = arrow()
    rep0 = FinSetDiagram(two, {0: ((0, 0),), 1: ((0, 1),)}, {(0, 1): {(0, 0): (0, 1)}})
    coll = collage_weight(rep0)
    assert collage_report(coll) == []
    assert find_isomorphism(coll.category, chain(3)) is not None
    assert coll.category.compose((0, 1), (BULLET, 0, (0, 0))) == (BULLET, 1, (0, 1))


def _collage_oracle(f, g):
    """The cospan collage written out from its case table."""
    A, B, C = f.domain, g.domain, f.codomain
    objects = [(0, a) for a in A.objects] + [(1, b) for b in B.objects]
    mors = [((0, m), (0, A.src[m]), (0, A.tgt[m])) for m in A.morphisms]
    mors += [((1, n), (1, B.src[n]), (1, B.tgt[n])) for n in B.morphisms]
    mors += [(("x", a, b, h), (0, a), (1, b)) for a in A.objects for b in B.objects
             for h in C.hom(f.obj[a], g.obj[b])]
    kind = {m: m[0] for m, _, _ in mors}
    src = {m: s for m, s, _ in mors}
    tgt = {m: t for m, _, t in mors}
    comp = {}
    for m2, _, _ in mors:
        for m1, _, _ in mors:
            if src[m2] != tgt[m1]:
                continue
            k1, k2 = kind[m1], kind[m2]
            if k1 == k2 == 0:
                comp[(m2, m1)] = (0, A.compose(m2[1], m1[1]))
            elif k1 == k2 == 1:
                comp[(m2, m1)] = (1, B.compose(m2[1], m1[1]))
            elif k1 == 0:
                comp[(m2, m1)] = ("x", src[m1][1], m2[2], C.compose(m2[3], f.mor[m1[1]]))
            else:
                comp[(m2, m1)] = ("x", m1[1], tgt[m2][1], C.compose(g.mor[m2[1]], m1[3]))
    ident = {(0, a): (0, A.identity[a]) for a in A.objects}
    ident.update({(1, b): (1, B.identity[b]) for b in B.objects})
    return FinCategory(objects, mors, ident, comp)


def test_cospan_collage_of_identities():
    i = identity_functor(ONE)
    coll = collage_cospan(i, i)
    assert find_isomorphism(coll.category, arrow()) is not None
    pi = pi_functor(i, i, coll)
    assert validate_functor(pi) == [] and set(pi.obj.values()) == {"*"}


@st.composite
def cospans(draw):
    return random_cospan(random.Random(draw(st.integers(0, 10**6))))


@given(cospans())
def test_cospan_collage_matches_case_table(fg):
    f, g = fg
    coll = collage_cospan(f, g)
    assert coll.category == _collage_oracle(f, g)
    assert collage_report(coll) == []
    assert validate_profunctor(representable_profunctor(f, g)) == []
    assert validate_functor(pi_functor(f, g, coll)) == []


def test_idempotence_examples():
    i = identity_functor(ONE)
    assert idempotence_check(i, i)["verdict"] == "pass"
    two = arrow()
    assert idempotence_check(object_functor(two, 0), object_functor(two, 1))["verdict"] == "pass"


@given(cospans())
def test_idempotence_on_random_cospans(fg):
    assert idempotence_check(*fg)["verdict"] == "pass"


def _representable(A, a):
    values = {b: A.hom(a, b) for b in A.objects}
    action = {m: {h: A.compose(m, h) for h in values[A.src[m]]} for m in A.morphisms}
    return FinSetDiagram(A, values, action)


def test_weighted_limit_examples():
    span = thin_category([0, 1, 2], [(0, 1), (0, 2)])
    for F in list(iter_diagrams(span, 2))[::5]:
        for a in span.objects:
            W = _representable(span, a)
            assert len(weighted_limit_direct(W, F)) == len(F.values[a])
            assert len(weighted_limit_via_collage(W, F)) == len(F.values[a])
    D2 = discrete([0, 1])
    W = FinSetDiagram(D2, {0: ("*",), 1: ("*",)})
    for F in iter_diagrams(D2, 3):
        n = len(F.values[0]) * len(F.values[1])
        assert len(weighted_limit_direct(W, F)) == len(weighted_limit_via_collage(W, F)) == n
    W2 = FinSetDiagram(ONE, {"*": ("p", "q")})
    for k in range(4):
        F = FinSetDiagram(ONE, {"*": tuple(range(k))})
        assert len(weighted_limit_direct(W2, F)) == len(weighted_limit_via_collage(W2, F)) == k * k


@given(st.sampled_from(CORPUS2), st.data())
def test_weighted_limit_routes_agree(A, data):
    Ds = list(iter_diagrams(A, 2))
    W, F = data.draw(st.sampled_from(Ds)), data.draw(st.sampled_from(Ds))
    r = compare_weighted_limits(W, F)
    assert r["verdict"] == "pass" and r["direct"] == r["collage"]


def _weight_maps(A):
    Ws = list(iter_diagrams(A, 2))
    return [phi for W in Ws for W2 in Ws for phi in iter_diagram_maps(W, W2)]


def test_weight_map_examples():
    W = FinSetDiagram(ONE, {"*": ("*",)})
    W2 = FinSetDiagram(ONE, {"*": ("*", "'")})
    F = FinSetDiagram(ONE, {"*": (0, 1, 2)})
    ident = DiagramMap(W2, W2, {"*": {"*": "*", "'": "'"}})
    m = weight_morphism_induced_map(ident, F)
    assert all(m(e) == e for e in m.domain)
    pick = DiagramMap(W, W2, {"*": {"*": "*"}})
    m = weight_morphism_induced_map(pick, F)
    assert len(m.domain) == 9 and len(m.codomain) == 3
    via2 = weighted_limit_via_collage(W2, F)
    via1 = weighted_limit_via_collage(W, F)
    for e in m.domain:
        assert via1.cone[("*", "*")][m(e)] == via2.cone[("*", "*")][e]
    E = FinSetDiagram(ONE, {"*": ()})
    m = weight_morphism_induced_map(DiagramMap(E, W2, {"*": {}}), F)
    assert len(m.codomain) == 1 and len(m.domain) == 9


@given(st.sampled_from(CORPUS2[:4]), st.data())
def test_weight_map_mate_matches_precomposition(A, data):
    alpha = data.draw(st.sampled_from(_weight_maps(A)))
    F = data.draw(st.sampled_from(list(iter_diagrams(A, 2))))
    assert weight_morphism_induced_map(alpha, F) == weight_map_direct(alpha, F)


@given(st.sampled_from(CORPUS2[:4]), st.data())
def test_weight_maps_are_contravariantly_functorial(A, data):
    maps = _weight_maps(A)
    alpha = data.draw(st.sampled_from(maps))
    after = [b for b in maps if b.source == alpha.target]
    beta = data.draw(st.sampled_from(after))
    F = data.draw(st.sampled_from(list(iter_diagrams(A, 2))))
    whole = weight_morphism_induced_map(compose_maps(beta, alpha), F)
    parts = weight_morphism_induced_map(alpha, F).compose(weight_morphism_induced_map(beta, F))
    assert whole == parts


@given(st.sampled_from(CORPUS2), st.sampled_from(CORPUS2), st.sampled_from(CORPUS2), st.data())
def test_strict_category_limit_of_cospan_is_pullback(A, B, C, data):
    fs, gs = list(iter_functors(A, C)), list(iter_functors(B, C))
    if not fs or not gs:
        return
    f, g = data.draw(st.sampled_from(fs)), data.draw(st.sampled_from(gs))
    shape = thin_category(["a", "b", "c"], [("a", "c"), ("b", "c")])
    D = CatDiagram(shape, {"a": A, "b": B, "c": C}, {("a", "c"): f, ("b", "c"): g})
    L = limit_cat(D)
    P = pullback_cat(f, g).category
    assert len(L.objects) == len(P.objects) and len(L.morphisms) == len(P.morphisms)
    assert find_isomorphism(L, P) is not None
