from itertools import product as iproduct

import pytest
from hypothesis import given, strategies as st

from conftest import CORPUS, corpus_categories, corpus_functors, random_categories
from derlab.core import (
    FinCategory,
    NatTrans,
    comma,
    compose_functors,
    coproduct,
    discrete,
    empty,
    find_isomorphism,
    functor_properties,
    hcompose,
    identity_functor,
    identity_nat,
    iter_functors,
    iter_nat_trans,
    object_functor,
    opposite,
    product,
    pullback_cat,
    slice,
    terminal,
    validate_category,
    validate_functor,
    validate_nat,
    vcompose,
    whisker,
)
from derlab.errors import (
    AssociativityViolation,
    BoundaryMismatch,
    CodomainMismatch,
    IdentityViolation,
    MissingComposite,
)
from derlab.shapes import arrow, chain, cyclic_group, free_iso, parallel_pair


def test_terminal_is_valid():
    assert validate_category(terminal()) == []


def test_missing_composite_names_the_pair():
    C = arrow()
    comp = dict(C.composition)
    del comp[((1, 1), (0, 1))]
    broken = FinCategory(C.objects, [(m, C.src[m], C.tgt[m]) for m in C.morphisms], C.identity, comp)
    assert validate_category(broken) == [MissingComposite(((1, 1), (0, 1)))]


def _brute_associativity_failures(C):
    comp = C.composition
    out = set()
    for h, g, f in iproduct(C.morphisms, repeat=3):
        if C.src[h] == C.tgt[g] and C.src[g] == C.tgt[f]:
            if comp[(comp[(h, g)], f)] != comp[(h, comp[(g, f)])]:
                out.add((h, g, f))
    return out


def test_associativity_violation_reports_triples():
    P = product(chain(3), cyclic_group(2)).category
    comp = dict(P.composition)
    comp[(((1, 2), "g1"), ((0, 1), "e"))] = ((0, 2), "e")
    broken = FinCategory(P.objects, [(m, P.src[m], P.tgt[m]) for m in P.morphisms], P.identity, comp)
    report = validate_category(broken)
    assert report and all(isinstance(v, AssociativityViolation) for v in report)
    expected = _brute_associativity_failures(broken)
    assert {v.witness for v in report} == expected
    assert (((1, 2), "e"), ((1, 1), "g1"), ((0, 1), "e")) in expected


def test_identity_violation():
    C = cyclic_group(2)
    comp = dict(C.composition)
    comp[("e", "g1")] = "e"
    broken = FinCategory(C.objects, [(m, "*", "*") for m in C.morphisms], C.identity, comp)
    assert IdentityViolation("g1") in validate_category(broken)


def test_opposite_examples():
    assert opposite(terminal()) == terminal()
    op = opposite(arrow())
    assert (op.src[(0, 1)], op.tgt[(0, 1)]) == (1, 0)
    assert validate_category(op) == []


@given(random_categories())
def test_opposite_is_an_involution(C):
    assert opposite(opposite(C)) == C
    assert validate_category(opposite(C)) == []


def test_product_and_coproduct_examples():
    two = arrow()
    assert len(product(two, two).category.morphisms) == 9
    for C in CORPUS:
        assert find_isomorphism(product(C, terminal()).category, C) is not None
    S = coproduct(terminal(), terminal()).category
    assert find_isomorphism(S, discrete([0, 1])) is not None


@given(corpus_categories(), corpus_categories())
def test_products_and_coproducts_are_valid(C, D):
    P = product(C, D)
    S = coproduct(C, D)
    assert validate_category(P.category) == [] and validate_category(S.category) == []
    assert len(P.category.morphisms) == len(C.morphisms) * len(D.morphisms)
    assert len(S.category.objects) == len(C.objects) + len(D.objects)
    for F in (P.proj0, P.proj1, S.inj0, S.inj1):
        assert validate_functor(F) == []


def test_pullback_examples():
    C = parallel_pair()
    idC = identity_functor(C)
    assert find_isomorphism(pullback_cat(idC, idC).category, C) is not None
    two = arrow()
    f, g = object_functor(two, 0), object_functor(two, 1)
    assert pullback_cat(f, g).category.objects == ()
    with pytest.raises(CodomainMismatch):
        pullback_cat(f, object_functor(C, "a"))


def test_comma_examples():
    one, two = terminal(), arrow()
    assert find_isomorphism(comma(identity_functor(one), identity_functor(one)).category, one) is not None
    K = comma(object_functor(two, 0), object_functor(two, 1)).category
    assert K.objects == (("*", "*", (0, 1)),)
    assert find_isomorphism(K, one) is not None
    assert comma(object_functor(two, 1), object_functor(two, 0)).category.objects == ()


@given(corpus_functors())
def test_comma_is_pullback_of_slice(u):
    # (u/b) is the pullback of u along the slice projection B/b -> B
    B = u.codomain
    for b in B.objects:
        direct = comma(u, object_functor(B, b)).category
        via = pullback_cat(u, slice(B, b).proj0).category
        assert validate_category(direct) == []
        assert find_isomorphism(direct, via) is not None


def test_functor_properties_examples():
    I = free_iso()
    assert functor_properties(identity_functor(I)).smothering
    bang = next(iter_functors(I, terminal()))
    props = functor_properties(bang)
    assert props.surjective_on_objects and props.full and props.conservative and props.smothering
    incl = object_functor(arrow(), 0)
    props = functor_properties(incl)
    assert not props.surjective_on_objects and not props.smothering
    assert props.witnesses["surjective_on_objects"] == 1


def test_weakly_smothering_without_surjectivity():
    # 𝟙 -> I hits one object of an isomorphic pair
    props = functor_properties(object_functor(free_iso(), 0))
    assert props.weakly_smothering and not props.smothering


@given(corpus_functors(), st.data())
def test_conservative_functors_compose(F, data):
    gs = list(iter_functors(F.codomain, data.draw(corpus_categories())))
    if not gs:
        return
    G = data.draw(st.sampled_from(gs))
    if functor_properties(F).conservative and functor_properties(G).conservative:
        assert functor_properties(compose_functors(G, F)).conservative


def test_nat_identities():
    F = object_functor(arrow(), 0)
    i = identity_nat(F)
    assert vcompose(i, i) == i
    G = identity_functor(arrow())
    assert hcompose(identity_nat(G), i) == identity_nat(compose_functors(G, F))
    with pytest.raises(BoundaryMismatch):
        vcompose(i, identity_nat(object_functor(arrow(), 1)))


def _nats(A, B):
    return [a for F in iter_functors(A, B) for G in iter_functors(A, B) for a in iter_nat_trans(F, G)]


def _composable(alphas):
    return [(a2, a1) for a1 in alphas for a2 in alphas if a2.source == a1.target]


@given(corpus_categories(2), corpus_categories(2), corpus_categories(2), st.data())
def test_interchange_law(A, B, C, data):
    lower, upper = _composable(_nats(A, B)), _composable(_nats(B, C))
    if not lower or not upper:
        return
    a2, a1 = data.draw(st.sampled_from(lower))
    b2, b1 = data.draw(st.sampled_from(upper))
    lhs = hcompose(vcompose(b2, b1), vcompose(a2, a1))
    rhs = vcompose(hcompose(b2, a2), hcompose(b1, a1))
    assert lhs == rhs
    assert validate_nat(lhs) == []


def test_whiskering_matches_hcompose_with_identity():
    two = arrow()
    F, G = object_functor(two, 0), object_functor(two, 1)
    alpha = next(iter_nat_trans(F, G))
    H = identity_functor(two)
    assert whisker(H, alpha) == hcompose(identity_nat(H), alpha)
    assert whisker(alpha, identity_functor(terminal())) == alpha


def test_empty_category_is_valid():
    assert validate_category(empty()) == []
    assert len(list(iter_functors(empty(), arrow()))) == 1


def test_nat_trans_naturality_is_checked():
    two = arrow()
    F, G = identity_functor(two), object_functor(two, 0)
    G = compose_functors(G, next(iter_functors(two, terminal())))
    bad = NatTrans(F, G, {0: (0, 0), 1: (0, 0)})
    assert validate_nat(bad) != []
