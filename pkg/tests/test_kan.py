from itertools import product as iproduct

from hypothesis import given, strategies as st

from conftest import corpus_functors
from derlab.core import identity_functor, iter_functors, object_functor, terminal
from derlab.derivator import RepresentedFinSet, adjunction_check
from derlab.finset import (
    DiagramMap,
    FinSetDiagram,
    compose_maps,
    find_diagram_iso,
    is_iso_map,
    iter_diagram_maps,
    iter_diagrams,
    restrict,
    validate_diagram,
    validate_diagram_map,
)
from derlab.kan import lan, lan_counit, lan_map, lan_transpose, ran, ran_map, ran_transpose, ran_unit
from derlab.shapes import arrow, parallel_pair

S2 = FinSetDiagram(terminal(), {"*": ("x", "y")})


def _brute_hom_count(X, Y):
    """Count natural transformations by trying every family of functions."""
    S = X.shape
    objs = S.objects
    choices = [list(iproduct(Y.values[a], repeat=len(X.values[a]))) for a in objs]
    n = 0
    for fam in iproduct(*choices):
        c = {a: dict(zip(X.values[a], f)) for a, f in zip(objs, fam)}
        if all(
            c[S.tgt[m]][X.action[m][x]] == Y.action[m][c[S.src[m]][x]]
            for m in S.morphisms
            for x in X.values[S.src[m]]
        ):
            n += 1
    return n


def test_lan_along_identity():
    for X in iter_diagrams(parallel_pair(), 2):
        u = identity_functor(parallel_pair())
        assert find_diagram_iso(lan(u, X).diagram, X) is not None
        assert find_diagram_iso(ran(u, X).diagram, X) is not None


def test_lan_along_zero():
    L = lan(object_functor(arrow(), 0), S2).diagram
    assert len(L.values[0]) == len(L.values[1]) == 2
    assert is_iso_map(DiagramMap(L, L, {0: {e: e for e in L.values[0]}, 1: {e: e for e in L.values[1]}}))
    assert len(set(L.action[(0, 1)].values())) == 2


def test_lan_along_one_is_empty_at_zero():
    L = lan(object_functor(arrow(), 1), S2).diagram
    assert L.values[0] == () and len(L.values[1]) == 2


def test_ran_along_one():
    R = ran(object_functor(arrow(), 1), S2).diagram
    assert len(R.values[0]) == len(R.values[1]) == 2
    assert len(set(R.action[(0, 1)].values())) == 2


def test_ran_along_zero_is_terminal_at_one():
    # 1/u is empty when u picks 0, so the limit there is a point
    R = ran(object_functor(arrow(), 0), S2).diagram
    assert R.values[1] == ((),) and len(R.values[0]) == 2


@given(corpus_functors(), st.data())
def test_kan_extensions_represent_hom_sets(u, data):
    X = data.draw(st.sampled_from(list(iter_diagrams(u.domain, 1))))
    Y = data.draw(st.sampled_from(list(iter_diagrams(u.codomain, 1))))
    L, R = lan(u, X).diagram, ran(u, X).diagram
    assert validate_diagram(L) == [] and validate_diagram(R) == []
    uY = restrict(Y, u)
    assert _brute_hom_count(L, Y) == _brute_hom_count(X, uY)
    assert _brute_hom_count(Y, R) == _brute_hom_count(uY, X)


@given(corpus_functors(), st.data())
def test_fused_transposes_match_unit_counit_route(u, data):
    X = data.draw(st.sampled_from(list(iter_diagrams(u.domain, 2))))
    Y = data.draw(st.sampled_from(list(iter_diagrams(u.codomain, 2))))
    uY = restrict(Y, u)
    for phi in iter_diagram_maps(X, uY):
        fused = lan_transpose(u, Y, phi)
        assert fused == compose_maps(lan_counit(u, Y), lan_map(u, phi))
        assert validate_diagram_map(fused) == []
    for phi in iter_diagram_maps(uY, X):
        fused = ran_transpose(u, Y, phi)
        assert fused == compose_maps(ran_map(u, phi), ran_unit(u, Y))


def test_adjunction_check_identity():
    inst = RepresentedFinSet()
    u = identity_functor(arrow())
    for side in ("left", "right"):
        assert adjunction_check(inst, u, side=side).passed


def test_adjunction_check_point_into_arrow_exhaustive():
    inst = RepresentedFinSet()
    u = object_functor(arrow(), 0)
    for side in ("left", "right"):
        rep = adjunction_check(inst, u, side=side)
        assert rep.passed
        assert rep.stats["hom_pairs"] == len(inst.corpus(terminal())) * len(inst.corpus(arrow()))


class _BadUnit(RepresentedFinSet):
    name = "bad-unit"

    def lan(self, u, X):
        L, eta = super().lan(u, X)
        target = eta.target
        for phi in iter_diagram_maps(X, target):
            if phi.key() != eta.key():
                return L, phi
        return L, eta


def test_corrupted_unit_gives_triangle_failure():
    u = identity_functor(terminal())
    rep = adjunction_check(_BadUnit(), u, X_corpus=[S2], Y_corpus=[S2], side="left")
    assert not rep.passed
    assert any(w["kind"] == "TriangleFailure" for w in rep.witnesses)


@given(corpus_functors())
def test_units_and_counits_are_natural(u):
    for X in list(iter_diagrams(u.domain, 1)):
        assert validate_diagram_map(lan(u, X).unit) == []
        assert validate_diagram_map(ran(u, X).counit) == []


def test_lan_of_every_functor_between_arrows():
    two = arrow()
    for u in iter_functors(two, two):
        for X in iter_diagrams(two, 2):
            assert validate_diagram(lan(u, X).diagram) == []
