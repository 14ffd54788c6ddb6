import pytest
from hypothesis import given, strategies as st

from derlab.core import (
    Functor,
    empty,
    identity_functor,
    iter_functors,
    object_functor,
    terminal,
)
from derlab.derivator import (
    CorruptedRestriction,
    RepresentedFinSet,
    bc_mate,
    check_der1,
    check_der2,
    check_der3,
    check_der4,
    check_der5,
    check_derivator,
    check_ff_unit,
    comma_square,
    exactness_check,
    exactness_check_cospan,
    identity_square,
    mate_of_pasting,
    shift,
    underlying_diagram,
    underlying_finset,
)
from derlab.errors import MissingWitness
from derlab.finset import FinSetDiagram, identity_map, is_iso_map, iter_diagram_maps, iter_diagrams
from derlab.derivator import PrederivatorInstance
from derlab.shapes import arrow, chain, discrete, posets_up_to, thin_category

INST = RepresentedFinSet()
POSETS3 = posets_up_to(3)
POSET_FUNCTORS = [u for J in POSETS3 for K in POSETS3 for u in iter_functors(J, K)]


def test_empty_fiber_is_terminal():
    rep = check_der1(INST, empty(), empty())
    assert rep.passed
    assert len(INST.corpus(empty())) == 1


def test_der1_on_coproducts():
    two = arrow()
    assert check_der1(INST, two, terminal()).passed


def test_der2_passes_on_represented():
    for I in POSETS3:
        assert check_der2(INST, I).passed


def test_corrupted_restriction_fails_der2_with_witness():
    rep = check_der2(CorruptedRestriction(), arrow())
    assert not rep.passed
    w = rep.witnesses[0]
    assert w["kind"] == "pointwise iso that is not an iso"
    assert not is_iso_map(w["map"])


def test_corrupted_restriction_fails_whole_check():
    rep = check_derivator(CorruptedRestriction(), shapes=posets_up_to(2))
    assert not rep.passed
    assert {c.name for c in rep.children if not c.passed} >= {"Der2"}


@given(st.sampled_from(POSET_FUNCTORS))
def test_der3_and_der4_on_posets(u):
    assert check_der3(INST, u).passed
    assert check_der4(INST, u).passed


def test_der4_square_at_one():
    u = object_functor(arrow(), 0)
    sq = comma_square(u, 1, "left")
    for X in INST.corpus(terminal()):
        assert is_iso_map(bc_mate(INST, sq, X))
    assert check_der4(INST, u, k=1).passed


def test_identity_square_mate_is_identity():
    J = thin_category([0, 1, 2], [(0, 1), (0, 2)])
    for side in ("left", "right"):
        sq = identity_square(J, side)
        for X in INST.corpus(J)[:30]:
            m = bc_mate(INST, sq, X)
            assert m.source == m.target
            assert m.key() == identity_map(m.source).key()


def test_missing_witness_on_bare_instance():
    class Bare(PrederivatorInstance):
        name = "bare"

    with pytest.raises(MissingWitness):
        Bare().lan(identity_functor(terminal()), None)


@given(st.sampled_from(POSET_FUNCTORS))
def test_mate_of_vertical_pasting(u):
    for k in u.codomain.objects:
        top = comma_square(u, k, "left")
        bottom = comma_square(top.q, "*", "left")
        for X in INST.corpus(u.domain)[:20]:
            whole, pasted = mate_of_pasting(INST, top, bottom, X)
            assert whole.key() == pasted.key()


def test_der5_passes():
    assert check_der5(INST).passed
    assert check_der5(INST, arrow()).passed


def test_shift_by_point_matches_original():
    shapes = posets_up_to(2)
    a = check_derivator(INST, shapes=shapes)
    b = check_derivator(shift(INST, terminal()), shapes=shapes)
    assert [c.verdict for c in a.children] == [c.verdict for c in b.children]
    assert [c.stats for c in a.children] == [c.stats for c in b.children]


def test_shifted_base_fiber_is_the_arrow_fiber():
    two = arrow()
    S = shift(INST, two)
    P = S.shape(terminal())
    theta = Functor(two, P, {e: (e, "*") for e in two.objects}, {m: (m, ("*", "*")) for m in two.morphisms})
    moved = {INST.restrict(X, theta) for X in S.corpus(terminal())}
    assert moved == set(INST.corpus(two))


def test_der1_on_shift_by_arrow():
    S = shift(INST, arrow())
    for I in posets_up_to(1):
        for J in posets_up_to(1):
            assert check_der1(S, I, J).passed


def test_underlying_diagram_of_point_is_evaluation():
    for X in INST.corpus(terminal()):
        D = underlying_diagram(INST, terminal(), X)
        assert D.objects["*"].values == X.values


@pytest.mark.parametrize("I", POSETS3, ids=lambda S: S.name)
def test_underlying_diagram_is_identity_reindexing(I):
    for X in INST.corpus(I):
        assert underlying_finset(underlying_diagram(INST, I, X)) == X


def test_underlying_diagram_sends_isos_to_pointwise_isos():
    I = chain(3)
    Xs = INST.corpus(I)
    for X in Xs[::7]:
        for phi in iter_diagram_maps(X, X, bijective=True):
            for i in I.objects:
                assert is_iso_map(INST.restrict_map(phi, object_functor(I, i)))


def test_exactness_examples():
    two = arrow()
    for b in two.objects:
        for X in iter_diagrams(two, 2):
            for side in ("left", "right"):
                assert exactness_check(identity_functor(two), b, X, side).passed
    f = object_functor(two, 0)
    Xs = list(iter_diagrams(terminal(), 2))
    for side in ("left", "right"):
        assert all(exactness_check(f, 1, X, side).passed for X in Xs)
        assert exactness_check_cospan(f, object_functor(two, 1), Xs, side).passed


def test_ff_unit_certified_and_refused():
    two = arrow()
    rep = check_ff_unit(object_functor(two, 0), list(iter_diagrams(terminal(), 2)))
    assert rep.passed and rep.corpus["fully_faithful"] and rep.stats["non_iso_units"] == 0
    fold = next(iter_functors(discrete([0, 1]), terminal()))
    rep = check_ff_unit(fold, list(iter_diagrams(discrete([0, 1]), 2)))
    assert not rep.corpus["fully_faithful"]
    assert rep.stats["non_iso_units"] > 0


def test_lifted_arrow_family_restricts_to_the_arrow():
    Y = FinSetDiagram(terminal(), {"*": (0, 1)})
    for phi in iter_diagram_maps(Y, Y):
        X = INST.lift_arrow_family(terminal(), phi)
        assert X.values[("*", 0)] == X.values[("*", 1)] == (0, 1)
