"""The acceptance criteria as report builders.

``python3 tests/acceptance.py N`` prints the JSON report of criterion ``N``;
the determinism criterion compares that output with an in-process run.
"""
from __future__ import annotations

import random
import sys

from derlab.collage import compare_weighted_limits, idempotence_check, random_cospan
from derlab.core import find_isomorphism, is_fully_faithful, iter_functors, object_functor
from derlab.derivator import RepresentedFinSet, check_derivator, check_ff_unit, exactness_check_cospan, shift
from derlab.finset import iter_diagrams
from derlab.report import Report
from derlab.shapes import arrow, random_category, small_categories
from derlab.simplicial import (
    check_hN_adjunction,
    fundamental_category,
    is_isofibration,
    is_kan_up_to,
    is_quasicategory_up_to,
    lifts_isomorphisms,
    nerve,
    nerve_map,
)
from derlab.twocat import (
    comma_smothering_check,
    counterexample,
    exhaustive_2natural_inverse_search,
    pointwise_quasi_inverse,
    validate_2functor,
    validate_pseudonatural,
    validate_quasi_inverse,
)

SEED = 0


def c1() -> Report:
    cx = counterexample()
    rep = Report("counterexample", seed=SEED)
    for p in [*validate_2functor(cx.F), *validate_2functor(cx.G), *validate_pseudonatural(cx.alpha)]:
        rep.fail(kind="fixture invalid", message=p.message)
    found = exhaustive_2natural_inverse_search(cx.alpha)
    if found is not None:
        rep.fail(kind="strict inverse exists", inverse=found.inverse)
    q = pointwise_quasi_inverse(cx.alpha)
    for p in validate_quasi_inverse(cx.alpha, q):
        rep.fail(kind="quasi-inverse invalid", message=p.message)
    if not (q.unit.is_invertible() and q.counit.is_invertible()):
        rep.fail(kind="modification not invertible")
    rep.result = {"strict_inverse": None if found is None else found.inverse,
                  "pseudo_inverse_2natural": q.inverse.is_2natural()}
    return rep


def c2() -> Report:
    rng = random.Random(SEED)
    rep = Report("hN ≅ id", corpus={"categories": 50, "max_objects": 5, "max_morphisms": 12}, seed=SEED)
    for n in range(50):
        C = random_category(rng, 5, 12)
        rep.count("categories")
        h = fundamental_category(nerve(C, 2))
        if find_isomorphism(h.category, C) is None:
            rep.fail(kind="h N C not isomorphic to C", index=n, category=C)
        if not check_hN_adjunction(C).passed:
            rep.fail(kind="counit not an isomorphism", index=n, category=C)
    return rep


def c3() -> Report:
    return check_derivator(RepresentedFinSet(), seed=SEED)


def c4() -> Report:
    return check_derivator(shift(RepresentedFinSet(), arrow()), seed=SEED)


def c5() -> Report:
    rep = Report("weighted limits", corpus={"max_objects": 2, "max_set": 2}, seed=SEED)
    for A in small_categories(2):
        Ds = list(iter_diagrams(A, 2))
        for W in Ds:
            for F in Ds:
                r = compare_weighted_limits(W, F)
                rep.count("pairs")
                if r["verdict"] != "pass":
                    rep.fail(W=W, F=F, direct=r["direct"], collage=r["collage"])
    return rep


def c6() -> Report:
    rng = random.Random(SEED)
    rep = Report("collage idempotence", corpus={"cospans": 100}, seed=SEED)
    for n in range(100):
        f, g = random_cospan(rng)
        rep.count("cospans")
        r = idempotence_check(f, g)
        if r["verdict"] != "pass":
            rep.fail(index=n, witnesses=r.get("witnesses"))
    return rep


def c7() -> Report:
    cats = small_categories(3)
    rep = Report("exactness", "represented-finset", {"max_objects": 3, "max_set": 2}, SEED)
    for A in cats:
        Xs = list(iter_diagrams(A, 2))
        for B in cats:
            for f in iter_functors(A, B):
                for b in B.objects:
                    for side in ("left", "right"):
                        r = exactness_check_cospan(f, object_functor(B, b), Xs, side)
                        rep.count("squares")
                        for w in r.witnesses:
                            rep.fail(b=b, side=side, **w)
    return rep


def c8() -> Report:
    cats = small_categories(3)
    rep = Report("ff unit", "represented-finset", {"max_objects": 3, "max_set": 2}, SEED)
    for A in cats:
        Xs = list(iter_diagrams(A, 2))
        for B in cats:
            for F in iter_functors(A, B):
                r = check_ff_unit(F, Xs)
                if is_fully_faithful(F):
                    rep.count("fully faithful")
                    if not r.passed:
                        rep.fail(kind="unit not invertible", F=F)
                elif r.stats["non_iso_units"] > 0:
                    rep.count("refused")
                    if r.corpus["fully_faithful"]:
                        rep.fail(kind="certified a failing functor", F=F)
    return rep


def c9() -> Report:
    rep = Report("quasi-category / Kan", corpus={"max_objects": 3, "dimension": 3}, seed=SEED)
    for C in small_categories(3):
        X = nerve(C, 3)
        rep.count("categories")
        if not is_quasicategory_up_to(X).passed:
            rep.fail(kind="nerve not a quasi-category", category=C)
        if is_kan_up_to(X).passed != C.is_groupoid():
            rep.fail(kind="Kan iff groupoid fails", category=C)
    return rep


def c10() -> Report:
    cats = small_categories(3)
    nerves = {id(C): nerve(C, 3) for C in cats}
    rep = Report("isofibration", corpus={"max_objects": 3, "dimension": 3}, seed=SEED)
    for A in cats:
        for B in cats:
            for F in iter_functors(A, B):
                rep.count("functors")
                got = is_isofibration(nerve_map(F, 3, nerves[id(A)], nerves[id(B)])).passed
                want = lifts_isomorphisms(F)
                rep.count("isofibrations", int(want))
                if got != want:
                    rep.fail(F=F, simplicial=got, categorical=want)
    return rep


def c11() -> Report:
    cats = small_categories(2)
    rep = Report("HDer6 comma smothering", corpus={"max_objects": 2}, seed=SEED)
    for C in cats:
        for A in cats:
            for B in cats:
                for F in iter_functors(A, C):
                    for G in iter_functors(B, C):
                        for Y in cats:
                            r = comma_smothering_check(Y, F, G)
                            rep.count("triples")
                            if r["verdict"] != "pass":
                                rep.fail(F=F, G=G, Y=Y, witnesses=r["witnesses"])
    return rep


CRITERIA = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9, 10: c10, 11: c11}

if __name__ == "__main__":
    sys.stdout.write(CRITERIA[int(sys.argv[1])]().to_json())
