from itertools import product as iproduct

import pytest
from hypothesis import given, strategies as st

from conftest import CORPUS2
from derlab.core import (
    FinCategory,
    constant_functor,
    discrete,
    empty,
    find_isomorphism,
    identity_functor,
    iter_functors,
    object_functor,
    terminal,
    validate_functor,
)
from derlab.errors import InterchangeViolation, NonInvertibleNaturality2Cell, NotPointwiseEquivalence
from derlab.shapes import arrow, cyclic_group, free_iso
from derlab.twocat import (
    AdjunctionWitness2,
    Fin2Category,
    Pseudonatural,
    StrictSquare,
    TwoFunctor,
    adjoint_equivalence,
    adjunction_triangles,
    cat_fragment,
    comma_comparison,
    comma_smothering_check,
    compose_pseudonatural,
    counterexample,
    exhaustive_2natural_inverse_search,
    identity_2functor,
    identity_pseudonatural,
    is_equivalence_1cell,
    is_smothering_2functor,
    locally_discrete,
    mate_strict,
    mates_compose,
    pointwise_quasi_inverse,
    quotient_T,
    quotient_T_functor,
    validate_2category,
    validate_2functor,
    validate_pseudonatural,
    validate_quasi_inverse,
)

FRAG12 = cat_fragment({"1": terminal(), "2": arrow()})


def _one_object_2category(hcomp):
    """One object, one 1-cell, 2-cells ``e, g1`` composing vertically as Z/2."""
    H = cyclic_group(2)
    comp2h = {("e", x): x for x in ("e", "g1")}
    comp2h.update({(x, "e"): x for x in ("e", "g1")})
    comp2h[("g1", "g1")] = hcomp
    return Fin2Category(["*"], {("*", "*"): H}, {"*": "*"}, {("*", "*"): "*"}, comp2h)


def test_commutative_monoid_is_a_2category():
    assert validate_2category(_one_object_2category("e")) == []


def test_broken_interchange_is_caught():
    report = validate_2category(_one_object_2category("g1"))
    assert report and all(isinstance(v, InterchangeViolation) for v in report)
    assert ("g1", "e", "e", "g1") in {v.witness for v in report}


def test_small_2categories_validate():
    assert validate_2category(locally_discrete(terminal())) == []
    assert validate_2category(FRAG12.two) == []


def _fid(frag, a, b, F):
    return frag.functor_id[(a, b, F)]


def _lax_over_arrow(cell_fn):
    """2-functors 𝟚 → Cat{1, 2} sending the arrow to the two points of 𝟚."""
    D = FRAG12.two
    A = locally_discrete(arrow())
    c0 = _fid(FRAG12, "1", "2", object_functor(arrow(), 0))
    c1 = _fid(FRAG12, "1", "2", object_functor(arrow(), 1))
    obj = {0: "1", 1: "2"}

    def tf(image):
        one = {A.id1[a]: D.id1[obj[a]] for a in A.objects}
        one[(0, 1)] = image
        return TwoFunctor(A, D, obj, one, {x: D.id2(one[A.src2(x)]) for x in A.cells2()})

    return cell_fn(D, A, tf, c0, c1)


def test_non_invertible_naturality_cell():
    def build(D, A, tf, c0, c1):
        F, G = tf(c1), tf(c0)
        comps = {0: D.id1["1"], 1: D.id1["2"]}
        cells = {A.id1[a]: D.id2(comps[a]) for a in A.objects}
        cells[(0, 1)] = next(iter(D.hom("1", "2").hom(c0, c1)))
        return Pseudonatural(F, G, comps, cells)

    alpha = _lax_over_arrow(build)
    assert validate_pseudonatural(alpha) == [NonInvertibleNaturality2Cell((0, 1))]


def test_quasi_inverse_needs_equivalence_components():
    def build(D, A, tf, c0, c1):
        F = G = tf(c0)
        const0 = _fid(FRAG12, "2", "2", constant_functor(arrow(), arrow(), 0))
        comps = {0: D.id1["1"], 1: const0}
        cells = {f: D.id2(D.comp1[(G.one[f], comps[A.src1[f]])]) for f in A.cells1()}
        return Pseudonatural(F, G, comps, cells)

    alpha = _lax_over_arrow(build)
    assert validate_pseudonatural(alpha) == []
    with pytest.raises(NotPointwiseEquivalence):
        pointwise_quasi_inverse(alpha)


def test_counterexample_functors_validate():
    cx = counterexample()
    assert validate_2category(cx.fragment.two) == []
    assert validate_2functor(cx.F) == [] and validate_2functor(cx.G) == []
    assert validate_pseudonatural(cx.alpha) == []
    assert cx.alpha.is_2natural()


def test_counterexample_has_no_2natural_inverse():
    assert exhaustive_2natural_inverse_search(counterexample().alpha) is None


def test_counterexample_pseudo_inverse():
    cx = counterexample()
    q = pointwise_quasi_inverse(cx.alpha)
    assert validate_quasi_inverse(cx.alpha, q) == []
    assert q.unit.is_invertible() and q.counit.is_invertible()
    assert not q.inverse.is_2natural()


def test_equivalence_1cells():
    cx = counterexample()
    D = cx.fragment.two
    w = is_equivalence_1cell(D, D.id1["I"])
    assert w is not None and D.is_invertible2(w.eta) and D.is_invertible2(w.eps)
    zero = cx.alpha.components["a"]
    w = is_equivalence_1cell(D, zero)
    assert w is not None and D.src1[w.g] == "I" and D.tgt1[w.g] == "𝟙"
    incl = _fid(FRAG12, "1", "2", object_functor(arrow(), 0))
    assert is_equivalence_1cell(FRAG12.two, incl) is None


def test_adjoint_equivalence_satisfies_triangles():
    D = counterexample().fragment.two
    for f in D.cells1():
        w = adjoint_equivalence(D, f)
        if w is not None:
            assert adjunction_triangles(w) == []


def _point_2functor(D, a):
    A = locally_discrete(terminal())
    return TwoFunctor(A, D, {"*": a}, {A.id1["*"]: D.id1[a]}, {A.id2(A.id1["*"]): D.id2(D.id1[a])})


def test_identity_transformation_inverses():
    # the identity is the only self-equivalence of 𝟚, so both inverses are forced
    D = FRAG12.two
    F = _point_2functor(D, "2")
    alpha = identity_pseudonatural(F)
    q = pointwise_quasi_inverse(alpha)
    assert q.inverse.components == {"*": D.id1["2"]} and q.inverse.is_2natural()
    s = exhaustive_2natural_inverse_search(alpha)
    assert s is not None and s.inverse.components == {"*": D.id1["2"]}


def test_invertible_2natural_has_strict_inverse():
    S = discrete([0, 1])
    frag = cat_fragment({"S": S})
    D = frag.two
    F = _point_2functor(D, "S")
    swap = _fid(frag, "S", "S", next(G for G in iter_functors(S, S) if G.obj == {0: 1, 1: 0}))
    A = F.source
    alpha = Pseudonatural(F, F, {"*": swap}, {A.id1["*"]: D.id2(swap)})
    assert validate_pseudonatural(alpha) == []
    s = exhaustive_2natural_inverse_search(alpha)
    assert s is not None and s.inverse.components == {"*": swap}
    q = pointwise_quasi_inverse(alpha)
    assert q.inverse.is_2natural()


def test_pseudonatural_composition_with_identity():
    cx = counterexample()
    left = compose_pseudonatural(identity_pseudonatural(cx.G), cx.alpha)
    assert validate_pseudonatural(left) == []
    assert left.components == cx.alpha.components


def _iso_pair_2category():
    """Two objects and two 1-cells ``a → b`` joined by an invertible 2-cell."""
    I = free_iso()
    homs = {("a", "a"): FinCategory(["ia"], [("ja", "ia", "ia")], {"ia": "ja"}, {("ja", "ja"): "ja"}),
            ("b", "b"): FinCategory(["ib"], [("jb", "ib", "ib")], {"ib": "jb"}, {("jb", "jb"): "jb"}),
            ("a", "b"): I}
    comp1 = {("ia", "ia"): "ia", ("ib", "ib"): "ib"}
    comp2h = {("ja", "ja"): "ja", ("jb", "jb"): "jb"}
    for f in I.objects:
        comp1[("ib", f)] = f
        comp1[(f, "ia")] = f
    for x in I.morphisms:
        comp2h[("jb", x)] = x
        comp2h[(x, "ja")] = x
    return Fin2Category(["a", "b"], homs, {"a": "ia", "b": "ib"}, comp1, comp2h)


def test_quotient_examples():
    assert find_isomorphism(quotient_T(locally_discrete(terminal())).category, terminal()) is not None
    A = _iso_pair_2category()
    assert validate_2category(A) == []
    Q = quotient_T(A)
    assert Q.problems == []
    assert find_isomorphism(Q.category, arrow()) is not None


@pytest.mark.parametrize("C", CORPUS2, ids=lambda C: C.name)
def test_quotient_of_locally_discrete_is_the_category(C):
    Q = quotient_T(locally_discrete(C))
    assert Q.problems == [] and Q.category == C


def _ld_functor(u):
    return TwoFunctor(locally_discrete(u.domain), locally_discrete(u.codomain), u.obj, u.mor,
                      {(m, m): (u.mor[m], u.mor[m]) for m in u.domain.morphisms})


def _compose2(G, F):
    return TwoFunctor(F.source, G.target, {a: G.obj[b] for a, b in F.obj.items()},
                      {f: G.one[g] for f, g in F.one.items()}, {x: G.two[y] for x, y in F.two.items()})


@given(st.sampled_from(CORPUS2), st.sampled_from(CORPUS2), st.sampled_from(CORPUS2), st.data())
def test_quotient_preserves_composition(A, B, C, data):
    fs, gs = list(iter_functors(A, B)), list(iter_functors(B, C))
    if not fs or not gs:
        return
    F, G = _ld_functor(data.draw(st.sampled_from(fs))), _ld_functor(data.draw(st.sampled_from(gs)))
    TA, TB, TC = quotient_T(F.source), quotient_T(F.target), quotient_T(G.target)
    whole = quotient_T_functor(_compose2(G, F), TA, TC)
    parts = (quotient_T_functor(G, TB, TC), quotient_T_functor(F, TA, TB))
    assert whole.obj == {a: parts[0].obj[b] for a, b in parts[1].obj.items()}
    assert whole.mor == {m: parts[0].mor[n] for m, n in parts[1].mor.items()}


def test_quotient_functor_of_counterexample_validates():
    cx = counterexample()
    TA, TB = quotient_T(cx.F.source), quotient_T(cx.F.target)
    assert validate_functor(quotient_T_functor(cx.F, TA, TB)) == []


def test_smothering_2functors():
    D = counterexample().fragment.two
    assert is_smothering_2functor(identity_2functor(D))["smothering"]
    F = counterexample().F
    r = is_smothering_2functor(F)
    assert r["surjective_on_objects"] and not r["smothering"]
    assert ("a", "b") in r["witnesses"]["failing_homs"]
    P = _point_2functor(D, "I")
    r = is_smothering_2functor(P)
    assert not r["surjective_on_objects"] and r["witnesses"]["missed_objects"] == ["𝟙"]


def test_hom_collapse_is_smothering():
    A = _iso_pair_2category()
    B = locally_discrete(arrow())
    obj = {"a": 0, "b": 1}
    one = {"ia": (0, 0), "ib": (1, 1), 0: (0, 1), 1: (0, 1)}
    two = {x: (one[A.src2(x)], one[A.src2(x)]) for x in A.cells2()}
    F = TwoFunctor(A, B, obj, one, two)
    assert validate_2functor(F) == []
    assert is_smothering_2functor(F)["smothering"]


def _strict_adjunctions(D):
    out = {}
    for f in D.cells1():
        a, b = D.src1[f], D.tgt1[f]
        for u in D.cells1(b, a):
            for eta in D.hom(a, a).hom(D.id1[a], D.comp1[(u, f)]):
                for eps in D.hom(b, b).hom(D.comp1[(f, u)], D.id1[b]):
                    w = AdjunctionWitness2(D, f, u, eta, eps)
                    if not adjunction_triangles(w):
                        out.setdefault(f, w)
    return out


def test_identity_mate_is_identity():
    D = FRAG12.two
    i = D.id1["1"]
    idw = AdjunctionWitness2(D, i, i, D.id2(i), D.id2(i))
    sq = StrictSquare(i, i, i, i, D.id2(i))
    assert mate_strict(D, sq, idw, idw) == D.id2(i)


def test_mate_of_point_inclusion():
    D = FRAG12.two
    f = _fid(FRAG12, "1", "2", object_functor(arrow(), 0))
    u = _fid(FRAG12, "2", "1", next(iter_functors(arrow(), terminal())))
    adj = _strict_adjunctions(D)
    i = D.id1["1"]
    idw = AdjunctionWitness2(D, i, i, D.id2(i), D.id2(i))
    sq = StrictSquare(f, i, i, u, D.id2(i))
    assert adj[f].u == u
    assert mate_strict(D, sq, adj[f], idw) == D.id2(u)


def test_mates_compose_exhaustively():
    D = FRAG12.two
    adj = _strict_adjunctions(D)
    squares = []
    for x, y in iproduct(adj, repeat=2):
        a, c, b, d = D.src1[x], D.tgt1[x], D.src1[y], D.tgt1[y]
        for h in D.cells1(a, b):
            for k in D.cells1(c, d):
                for alpha in D.hom(a, d).hom(D.comp1[(y, h)], D.comp1[(k, x)]):
                    squares.append(StrictSquare(x, h, y, k, alpha))
    checked = 0
    for left in squares:
        for right in squares:
            if left.y != right.x:
                continue
            whole, pasted = mates_compose(D, left, right, adj[left.x], adj[left.y], adj[right.y])
            assert whole == pasted
            checked += 1
    assert checked > 50


def test_comma_smothering_examples():
    one, two = terminal(), arrow()
    i = identity_functor(one)
    for Y in (empty(), one, two):
        assert comma_smothering_check(Y, i, i)["verdict"] == "pass"
    r = comma_smothering_check(two, object_functor(two, 0), object_functor(two, 1))
    assert r["verdict"] == "pass"


@given(st.sampled_from(CORPUS2), st.sampled_from(CORPUS2), st.sampled_from(CORPUS2),
       st.sampled_from(CORPUS2), st.data())
def test_comma_comparison_is_a_functor(A, B, C, Y, data):
    fs, gs = list(iter_functors(A, C)), list(iter_functors(B, C))
    if not fs or not gs:
        return
    f, g = data.draw(st.sampled_from(fs)), data.draw(st.sampled_from(gs))
    assert validate_functor(comma_comparison(Y, f, g)) == []
