from hypothesis import given

from conftest import corpus_functors
from derlab.core import Functor, discrete, iter_functors, terminal, validate_functor
from derlab.hder import check_hder, dia_arrow_comparison, fiber, left_adjoint, restriction, right_adjoint
from derlab.shapes import arrow, free_iso, parallel_pair, posets_up_to


def _universal_arrows(R, b, left=True):
    """Initial objects of ``b ↓ R`` (or terminal objects of ``R ↓ b``) by brute force."""
    A, B = R.domain, R.codomain
    if left:
        nodes = [(a, h) for a in A.objects for h in B.hom(b, R.obj[a])]
    else:
        nodes = [(a, h) for a in A.objects for h in B.hom(R.obj[a], b)]
    out = []
    for a, h in nodes:
        ok = True
        for a2, h2 in nodes:
            if left:
                fac = [p for p in A.hom(a, a2) if B.compose(R.mor[p], h) == h2]
            else:
                fac = [p for p in A.hom(a2, a) if B.compose(h, R.mor[p]) == h2]
            if len(fac) != 1:
                ok = False
                break
        if ok:
            out.append((a, h))
    return out


def test_hder_on_the_arrow():
    rep = check_hder()
    assert rep.passed
    stats = {c.name: c.stats for c in rep.children}
    assert stats == {
        "HDer1": {"pairs": 11},
        "HDer2": {"shapes": 4},
        "HDer3b": {"shapes": 4},
        "HDer4": {"functors": 24},
        "HDer5": {"squares": 74},
        "HDer6": {"cospans": 154},
    }


def test_hder_on_the_point():
    assert check_hder(terminal()).passed


def test_hder_fails_without_limits():
    for C in (discrete([0, 1]), parallel_pair()):
        rep = check_hder(C)
        assert not rep.passed
        failed = {c.name for c in rep.children if not c.passed}
        assert failed == {"HDer4", "HDer5"}


def test_fiber_sizes():
    two = arrow()
    assert len(fiber(two, two).category.objects) == 3
    assert len(fiber(discrete([0, 1]), two).category.objects) == 4
    assert len(fiber(free_iso(), two).category.objects) == 2


def test_restrictions_are_functors():
    for J in posets_up_to(2):
        for K in posets_up_to(2):
            for u in iter_functors(J, K):
                assert validate_functor(restriction(u, arrow())) == []


def test_arrow_comparison_is_a_functor():
    for I in posets_up_to(2):
        assert validate_functor(dia_arrow_comparison(I, arrow())) == []


def test_adjoint_search_examples():
    two = arrow()
    bang = next(iter_functors(two, terminal()))
    left, missing = left_adjoint(bang)
    assert missing is None and left["*"][0] == 0
    right, missing = right_adjoint(bang)
    assert missing is None and right["*"][0] == 1
    fold = next(iter_functors(discrete([0, 1]), terminal()))
    assert left_adjoint(fold)[1] == "*"
    assert right_adjoint(fold)[1] == "*"


@given(corpus_functors())
def test_adjoint_search_matches_universal_arrows(R):
    for search, left in ((left_adjoint, True), (right_adjoint, False)):
        found, missing = search(R)
        for b in R.codomain.objects:
            arrows = _universal_arrows(R, b, left)
            if b in found:
                assert found[b] in arrows
            else:
                assert missing == b and arrows == []
                break


def test_identity_restriction_is_identity():
    two = arrow()
    ident = Functor(two, two, {a: a for a in two.objects}, {m: m for m in two.morphisms})
    R = restriction(ident, two)
    assert all(R.obj[x] == x for x in R.domain.objects)
