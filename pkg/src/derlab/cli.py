"""Command line entry point: ``derlab <command> [--in INPUT ...] [options]``.

Inputs are JSON files (see :mod:`derlab.serialize`) or ``fixture:NAME``.
Exit codes: 0 pass, 1 fail, 2 undetermined, 3 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import serialize
from .core import (
    FinCategory,
    Functor,
    comma,
    functor_properties,
    opposite,
    product,
    pullback_cat,
    slice,
)
from .errors import DerlabError, ParseError, SchemaError, UnknownCommand, ValidationError
from .finset import DiagramMap, FinSetDiagram, colimit_finset, iter_diagrams, limit_finset
from .report import EXIT_CODES, Report

INVALID = 3

BOUNDS = {"size_bound": (0, 4), "dim_bound": (1, 5), "path_bound": (2, 32)}


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


# ---------------------------------------------------------------------------
# inputs


def load_input(ref: str):
    if ref.startswith("fixture:"):
        from .fixtures import fixture

        name = ref[len("fixture:"):]
        try:
            return fixture(name)
        except KeyError:
            raise SchemaError(f"unknown fixture {name!r}") from None
    try:
        with open(ref, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {ref}: {e.strerror}") from None
    return serialize.loads(text)


def _parse_id(text):
    if text is None:
        return None
    try:
        return serialize.id_in(json.loads(text))
    except json.JSONDecodeError:
        return text


def _take(inputs, *types, what):
    """Pop the first input that is an instance of ``types``."""
    for n, v in enumerate(inputs):
        if isinstance(v, types):
            return inputs.pop(n)
    raise SchemaError(f"expected {what} among the inputs")


def _maybe(inputs, *types):
    for n, v in enumerate(inputs):
        if isinstance(v, types):
            return inputs.pop(n)
    return None


def _cospan(inputs):
    pair = _maybe(inputs, tuple)
    if pair is not None:
        return pair
    return _take(inputs, Functor, what="a functor f"), _take(inputs, Functor, what="a functor g")


def _object(C: FinCategory, args, name="object"):
    c = _parse_id(args.object)
    if c is None:
        raise SchemaError(f"--object is required", ("object",))
    if c not in C.objects:
        raise SchemaError(f"{c!r} is not an object of the {name} category", ("object",))
    return c


def _from_dict(name, d, seed, instance=None) -> Report:
    rep = Report(name, instance, seed=seed)
    if d.get("verdict", "pass") != "pass":
        rep.fail(**{k: v for k, v in d.items() if k != "verdict"})
    rep.result = {k: v for k, v in d.items() if k != "verdict"}
    return rep


def _shapes(name):
    from .shapes import posets_up_to, small_categories

    table = {
        "posets1": lambda: posets_up_to(1),
        "posets2": lambda: posets_up_to(2),
        "posets3": lambda: posets_up_to(3),
        "small2": lambda: small_categories(2),
    }
    if name not in table:
        raise SchemaError(f"unknown shape corpus {name!r}; choose from {sorted(table)}", ("shapes",))
    return table[name]()


def _instance(name, size_bound):
    from .derivator import CorruptedRestriction, RepresentedFinSet

    table = {"represented-finset": RepresentedFinSet, "corrupted-restriction": CorruptedRestriction}
    if name not in table:
        raise SchemaError(f"unknown instance {name!r}; choose from {sorted(table)}", ("instance",))
    return table[name](size_bound=size_bound)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, inputs):
    rep = Report("validate", seed=args.seed)
    rep.result = [serialize.encode_or_none(v) is not None and type(v).__name__ for v in inputs]
    return rep


def _construction(name, value, seed):
    rep = Report(name, seed=seed)
    rep.result = value
    return rep


def cmd_opposite(args, inputs):
    return _construction("opposite", opposite(_take(inputs, FinCategory, what="a category")), args.seed)


def cmd_product(args, inputs):
    C = _take(inputs, FinCategory, what="a category")
    D = _take(inputs, FinCategory, what="a second category")
    return _construction("product", product(C, D).category, args.seed)


def cmd_pullback(args, inputs):
    f, g = _cospan(inputs)
    return _construction("pullback", pullback_cat(f, g).category, args.seed)


def cmd_comma(args, inputs):
    f, g = _cospan(inputs)
    return _construction("comma", comma(f, g).category, args.seed)


def cmd_slice(args, inputs):
    C = _take(inputs, FinCategory, what="a category")
    return _construction("slice", slice(C, _object(C, args)).category, args.seed)


def cmd_functor_props(args, inputs):
    F = _take(inputs, Functor, what="a functor")
    return _construction("functor-props", functor_properties(F).as_dict(), args.seed)


def cmd_limit(args, inputs):
    D = _take(inputs, FinSetDiagram, what="a diagram")
    L = limit_finset(D)
    return _construction("limit", {"size": len(L.elements), "elements": list(L.elements)}, args.seed)


def cmd_colimit(args, inputs):
    D = _take(inputs, FinSetDiagram, what="a diagram")
    L = colimit_finset(D)
    return _construction("colimit", {"size": len(L.elements), "elements": list(L.elements)}, args.seed)


def _kan(name, args, inputs):
    from . import kan

    u = _take(inputs, Functor, what="a functor u")
    X = _take(inputs, FinSetDiagram, what="a diagram X")
    if X.shape != u.domain:
        raise SchemaError("the diagram must live on the domain of u")
    K = (kan.lan if name == "lan" else kan.ran)(u, X)
    return _construction(name, K.diagram, args.seed)


def cmd_lan(args, inputs):
    return _kan("lan", args, inputs)


def cmd_ran(args, inputs):
    return _kan("ran", args, inputs)


def cmd_mate(args, inputs):
    from .derivator import RepresentedFinSet, bc_mate, comma_square
    from .finset import is_iso_map

    u = _take(inputs, Functor, what="a functor u")
    X = _take(inputs, FinSetDiagram, what="a diagram X")
    if X.shape != u.domain:
        raise SchemaError("the diagram must live on the domain of u")
    k = _object(u.codomain, args, "codomain")
    rep = Report("mate", "represented-finset", {"object": k}, args.seed)
    result = {}
    for side in (["left", "right"] if args.side == "both" else [args.side]):
        m = bc_mate(RepresentedFinSet(), comma_square(u, k, side), X)
        result[side] = m.components
        rep.count("mates")
        if not is_iso_map(m):
            rep.fail(kind="mate not invertible", side=side)
    rep.result = result
    return rep


def cmd_der_check(args, inputs):
    from .derivator import check_derivator

    inst = _instance(args.instance, args.size_bound)
    return check_derivator(inst, _shapes(args.shapes or "posets3"), args.seed)


def cmd_hder_check(args, inputs):
    from .hder import check_hder

    C = _maybe(inputs, FinCategory)
    return check_hder(C, _shapes(args.shapes or "posets2"), args.seed)


def cmd_shift(args, inputs):
    from .derivator import check_derivator, shift
    from .shapes import arrow

    A = _maybe(inputs, FinCategory) or arrow()
    inst = shift(_instance(args.instance, args.size_bound), A)
    return check_derivator(inst, _shapes(args.shapes or "posets2"), args.seed)


def cmd_collage(args, inputs):
    from .collage import Profunctor, collage_cospan, collage_profunctor, collage_report, collage_weight

    P = _maybe(inputs, Profunctor)
    W = _maybe(inputs, FinSetDiagram) if P is None else None
    if P is not None:
        coll = collage_profunctor(P)
    elif W is not None:
        coll = collage_weight(W)
    else:
        coll = collage_cospan(*_cospan(inputs))
    rep = Report("collage", seed=args.seed)
    for p in collage_report(coll):
        rep.fail(kind=type(p).__name__, witness=p.witness, message=p.message)
    rep.result = coll.category
    return rep


def cmd_weighted_limit(args, inputs):
    from .collage import compare_weighted_limits

    W = _take(inputs, FinSetDiagram, what="a weight W")
    F = _take(inputs, FinSetDiagram, what="a diagram F")
    if W.shape != F.shape:
        raise SchemaError("the weight and the diagram must share a shape")
    return _from_dict("weighted-limit", compare_weighted_limits(W, F), args.seed)


def cmd_weight_map(args, inputs):
    from .collage import weight_map_direct, weight_morphism_induced_map

    alpha = _take(inputs, DiagramMap, what="a map of weights")
    F = _take(inputs, FinSetDiagram, what="a diagram F")
    if alpha.source.shape != F.shape:
        raise SchemaError("the weights and the diagram must share a shape")
    via, direct = weight_morphism_induced_map(alpha, F), weight_map_direct(alpha, F)
    rep = Report("weight-map", seed=args.seed)
    if via != direct:
        rep.fail(kind="mate and precomposition disagree", via=via.table, direct=direct.table)
    rep.result = {"map": via.table}
    return rep


def cmd_exactness(args, inputs):
    from .core import object_functor
    from .derivator import exactness_check_cospan

    f = _take(inputs, Functor, what="a functor f")
    Xs = [v for v in inputs if isinstance(v, FinSetDiagram)]
    inputs[:] = [v for v in inputs if not isinstance(v, FinSetDiagram)]
    if any(X.shape != f.domain for X in Xs):
        raise SchemaError("diagrams must live on the domain of f")
    Xs = Xs or list(iter_diagrams(f.domain, args.size_bound))
    objs = [_object(f.codomain, args, "codomain")] if args.object is not None else list(f.codomain.objects)
    rep = Report("exactness", "represented-finset", {"objects": objs, "diagrams": len(Xs)}, args.seed)
    for b in objs:
        for side in (["left", "right"] if args.side == "both" else [args.side]):
            part = exactness_check_cospan(f, object_functor(f.codomain, b), Xs, side)
            rep.count("squares")
            for w in part.witnesses:
                rep.fail(b=b, side=side, **w)
    return rep


def cmd_quotient_t(args, inputs):
    from .twocat import Fin2Category, quotient_T

    Q = quotient_T(_take(inputs, Fin2Category, what="a 2-category"))
    rep = Report("quotient-T", seed=args.seed)
    for p in Q.problems:
        rep.fail(problem=p)
    rep.result = Q.category
    return rep


def cmd_smothering2(args, inputs):
    from .twocat import TwoFunctor, is_smothering_2functor

    d = is_smothering_2functor(_take(inputs, TwoFunctor, what="a 2-functor"))
    rep = Report("smothering2", seed=args.seed)
    if not d["smothering"]:
        rep.fail(**d["witnesses"])
    rep.result = {k: v for k, v in d.items() if k != "witnesses"}
    return rep


def _pseudo_report(alpha, seed):
    from .errors import NotPointwiseEquivalence
    from .twocat import pointwise_quasi_inverse, validate_quasi_inverse

    rep = Report("pseudo-construction", seed=seed)
    try:
        q = pointwise_quasi_inverse(alpha)
    except NotPointwiseEquivalence as e:
        rep.fail(kind="component is not an equivalence", object=e.obj)
        return rep
    for p in validate_quasi_inverse(alpha, q):
        rep.fail(kind=type(p).__name__, witness=p.witness, message=p.message)
    rep.result = {"inverse": q.inverse, "strictly_2natural": q.inverse.is_2natural()}
    return rep


def cmd_pseudo_inverse(args, inputs):
    from .twocat import Pseudonatural

    alpha = _take(inputs, Pseudonatural, what="a pseudonatural transformation")
    return _pseudo_report(alpha, args.seed)


def cmd_counterexample(args, inputs):
    from .twocat import Pseudonatural, counterexample, exhaustive_2natural_inverse_search

    alpha = _maybe(inputs, Pseudonatural) or counterexample().alpha
    top = Report("counterexample", seed=args.seed)
    strict = top.add(Report("strict-search", seed=args.seed))
    found = exhaustive_2natural_inverse_search(alpha)
    strict.result = {"strict_inverse": None if found is None else found.inverse}
    if found is not None:
        strict.fail(kind="a strictly 2-natural quasi-inverse exists", inverse=found.inverse)
    top.add(_pseudo_report(alpha, args.seed))
    return top


def _sset_or_nerve(inputs, N):
    from .simplicial import TruncSSet, nerve

    X = _maybe(inputs, TruncSSet)
    if X is not None:
        return X
    return nerve(_take(inputs, FinCategory, what="a simplicial set or a category"), N)


def cmd_nerve(args, inputs):
    from .simplicial import nerve

    C = _take(inputs, FinCategory, what="a category")
    return _construction("nerve", nerve(C, args.dim_bound), args.seed)


def cmd_fundamental_category(args, inputs):
    from .simplicial import TruncSSet, Undetermined, fundamental_category

    X = _take(inputs, TruncSSet, what="a simplicial set")
    rep = Report("fundamental-category", corpus={"path_bound": args.path_bound}, seed=args.seed)
    h = fundamental_category(X, args.path_bound)
    if isinstance(h, Undetermined):
        rep.undetermined(h.reason)
        rep.result = {"unresolved": h.unresolved}
    else:
        rep.result = h.category
    return rep


def cmd_qcat_check(args, inputs):
    from .simplicial import is_quasicategory_up_to

    rep = is_quasicategory_up_to(_sset_or_nerve(inputs, args.dim_bound), args.dim_bound)
    rep.seed = args.seed
    return rep


def cmd_kan_check(args, inputs):
    from .simplicial import is_kan_up_to

    rep = is_kan_up_to(_sset_or_nerve(inputs, args.dim_bound), args.dim_bound)
    rep.seed = args.seed
    return rep


def cmd_isofib_check(args, inputs):
    from .simplicial import SimplicialMap, is_isofibration, nerve_map

    f = _maybe(inputs, SimplicialMap)
    if f is None:
        f = nerve_map(_take(inputs, Functor, what="a simplicial map or a functor"), args.dim_bound)
    rep = is_isofibration(f, args.path_bound)
    rep.seed = args.seed
    return rep


def cmd_homotopy_2cat(args, inputs):
    from .simplicial import Undetermined, homotopy_2category, nerve_2category
    from .twocat import Fin2Category

    A = _take(inputs, Fin2Category, what="a 2-category")
    rep = Report("homotopy-2cat", corpus={"path_bound": args.path_bound}, seed=args.seed)
    H = homotopy_2category(nerve_2category(A), args.path_bound)
    if isinstance(H, Undetermined):
        rep.undetermined(H.reason)
    else:
        rep.result = H
    return rep


def cmd_hn_adjunction(args, inputs):
    from .simplicial import TruncSSet, check_hN_adjunction

    C = _maybe(inputs, FinCategory)
    X = _maybe(inputs, TruncSSet)
    if C is None and X is None:
        raise SchemaError("expected a category or a simplicial set among the inputs")
    rep = check_hN_adjunction(C, X, args.dim_bound, args.path_bound)
    rep.seed = args.seed
    return rep


COMMANDS = {
    "validate": cmd_validate,
    "opposite": cmd_opposite,
    "product": cmd_product,
    "pullback": cmd_pullback,
    "comma": cmd_comma,
    "slice": cmd_slice,
    "functor-props": cmd_functor_props,
    "limit": cmd_limit,
    "colimit": cmd_colimit,
    "lan": cmd_lan,
    "ran": cmd_ran,
    "mate": cmd_mate,
    "der-check": cmd_der_check,
    "hder-check": cmd_hder_check,
    "shift": cmd_shift,
    "collage": cmd_collage,
    "weighted-limit": cmd_weighted_limit,
    "weight-map": cmd_weight_map,
    "exactness": cmd_exactness,
    "quotient-T": cmd_quotient_t,
    "smothering2": cmd_smothering2,
    "pseudo-inverse": cmd_pseudo_inverse,
    "counterexample": cmd_counterexample,
    "nerve": cmd_nerve,
    "fundamental-category": cmd_fundamental_category,
    "qcat-check": cmd_qcat_check,
    "kan-check": cmd_kan_check,
    "isofib-check": cmd_isofib_check,
    "homotopy-2cat": cmd_homotopy_2cat,
    "hn-adjunction": cmd_hn_adjunction,
}


# ---------------------------------------------------------------------------
# driver


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="derlab", description="Finite checks of derivator and 2-derivator axioms.")
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("--in", dest="inputs", action="append", default=[], metavar="INPUT",
                   help="JSON file or fixture:NAME (repeatable)")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=["human", "json"], default="human")
    p.add_argument("--seed", type=int, default=None, help="default: $DERLAB_SEED or 0")
    p.add_argument("--size-bound", "--sizes", dest="size_bound", type=int, default=2)
    p.add_argument("--dim-bound", dest="dim_bound", type=int, default=3)
    p.add_argument("--path-bound", "--bound", dest="path_bound", type=int, default=8)
    p.add_argument("--object", help="an object id, as JSON (strings may be bare)")
    p.add_argument("--side", choices=["left", "right", "both"], default="both")
    p.add_argument("--instance", default="represented-finset")
    p.add_argument("--shapes", default=None, help="posets1, posets2, posets3 or small2")
    return p


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("DERLAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise SchemaError(f"DERLAB_SEED must be an integer, got {env!r}", ("DERLAB_SEED",)) from None


def _check_bounds(args):
    for key, (lo, hi) in BOUNDS.items():
        v = getattr(args, key)
        if not lo <= v <= hi:
            raise SchemaError(f"must lie in [{lo}, {hi}], got {v}", (key.replace("_", "-"),))


def run(argv) -> tuple:
    """Parse ``argv`` and run the command; returns ``(report, exit code, elapsed seconds)``."""
    return execute(build_parser().parse_args(argv))


def execute(args) -> tuple:
    if args.command not in COMMANDS:
        raise UnknownCommand(f"unknown command {args.command!r}")
    args.seed = _seed(args)
    _check_bounds(args)
    start = time.perf_counter()
    if args.command == "validate":
        inputs = []
        for ref in args.inputs:
            try:
                inputs.append(load_input(ref))
            except ValidationError as e:
                rep = Report("validate", seed=args.seed)
                rep.fail(input=ref, **e.as_dict())
                return rep, EXIT_CODES[rep.verdict], time.perf_counter() - start
        if not inputs:
            raise SchemaError("validate needs at least one --in")
    else:
        inputs = [load_input(ref) for ref in args.inputs]
    rep = COMMANDS[args.command](args, inputs)
    if rep.seed is None:
        rep.seed = args.seed
    return rep, EXIT_CODES[rep.verdict], time.perf_counter() - start


def _render(rep: Report, fmt: str, elapsed: float) -> str:
    if fmt == "json":
        return rep.to_json()
    lines = [rep.summary(), f"  seed: {rep.seed}", f"  time: {elapsed:.3f} s"]
    if rep.stats:
        lines.append("  stats: " + ", ".join(f"{k}={v}" for k, v in rep.stats.items()))
    if rep.result is not None:
        lines.append("  result: " + json.dumps(rep.as_dict()["result"], ensure_ascii=False, sort_keys=True)[:2000])
    return "\n".join(lines)


def _error_text(e, fmt):
    info = {"error": type(e).__name__, "message": str(e)}
    if isinstance(e, ParseError):
        info.update(line=e.line, column=e.column)
    if isinstance(e, SchemaError):
        info["path"] = list(e.path)
    if isinstance(e, ValidationError):
        info.update(e.as_dict())
    return json.dumps(info, ensure_ascii=False, sort_keys=True, default=repr) if fmt == "json" else (
        f"derlab: {type(e).__name__}: {e}")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
    except _ArgumentError as e:
        print(f"derlab: {e}", file=sys.stderr)
        return INVALID
    try:
        rep, code, elapsed = execute(args)
    except DerlabError as e:
        print(_error_text(e, args.format), file=sys.stderr)
        return INVALID
    text = _render(rep, args.format, elapsed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
