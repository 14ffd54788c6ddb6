"""JSON encoding of mathematical values.

Every value is an object with a ``kind`` field.  Identifiers are JSON
scalars or arrays; arrays decode to tuples so that identifiers stay
hashable.  Maps are lists of pairs (identifiers need not be strings).
``dumps`` sorts keys, so equal values give identical text.
"""
from __future__ import annotations

import json

import jsonschema

from .core import FinCategory, Functor, NatTrans, validate_category, validate_functor, validate_nat
from .errors import ParseError, SchemaError, raise_first
from .finset import DiagramMap, FinSetDiagram, validate_diagram, validate_diagram_map

# ---------------------------------------------------------------------------
# identifiers


def id_out(x):
    if isinstance(x, tuple):
        return [id_out(y) for y in x]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    raise TypeError(f"identifier {x!r} has no JSON form")


def id_in(x):
    if isinstance(x, list):
        return tuple(id_in(y) for y in x)
    return x


def _pairs_out(d):
    return [[id_out(k), id_out(v)] for k, v in d.items()]


def _pairs_in(rows):
    return {id_in(k): id_in(v) for k, v in rows}


# ---------------------------------------------------------------------------
# schemas

_ID = {}  # any JSON value
_PAIRS = {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}}


def _obj(kind, required, props):
    props = {"kind": {"const": kind}, **props}
    return {"type": "object", "properties": props, "required": ["kind", *required], "additionalProperties": False}


SCHEMAS = {
    "category": _obj("category", ["objects", "morphisms"], {
        "name": {"type": ["string", "null"]},
        "objects": {"type": "array"},
        "morphisms": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
        "identities": _PAIRS,
        "composition": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
    }),
    "functor": _obj("functor", ["domain", "codomain", "objects", "morphisms"], {
        "name": {"type": ["string", "null"]},
        "domain": {"type": "object"},
        "codomain": {"type": "object"},
        "objects": _PAIRS,
        "morphisms": _PAIRS,
    }),
    "nat": _obj("nat", ["source", "target", "components"], {
        "source": {"type": "object"},
        "target": {"type": "object"},
        "components": _PAIRS,
    }),
    "diagram": _obj("diagram", ["shape", "values"], {
        "shape": {"type": "object"},
        "values": _PAIRS,
        "action": _PAIRS,
    }),
    "diagram_map": _obj("diagram_map", ["source", "target", "components"], {
        "source": {"type": "object"},
        "target": {"type": "object"},
        "components": _PAIRS,
    }),
    "cospan": _obj("cospan", ["f", "g"], {"f": {"type": "object"}, "g": {"type": "object"}}),
    "profunctor": _obj("profunctor", ["source", "target", "values"], {
        "source": {"type": "object"},
        "target": {"type": "object"},
        "values": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
        "post": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
        "pre": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
    }),
    "sset": _obj("sset", ["dim", "simplices", "faces", "degeneracies"], {
        "name": {"type": ["string", "null"]},
        "dim": {"type": "integer", "minimum": 0},
        "simplices": {"type": "array", "items": {"type": "array"}},
        "faces": {"type": "array", "items": {"type": "array", "minItems": 4, "maxItems": 4}},
        "degeneracies": {"type": "array", "items": {"type": "array", "minItems": 4, "maxItems": 4}},
    }),
    "sset_map": _obj("sset_map", ["source", "target", "maps"], {
        "source": {"type": "object"},
        "target": {"type": "object"},
        "maps": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
    }),
    "two_category": _obj("two_category", ["objects", "homs", "id1", "comp1", "comp2h"], {
        "name": {"type": ["string", "null"]},
        "objects": {"type": "array"},
        "homs": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
        "id1": _PAIRS,
        "comp1": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
        "comp2h": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
    }),
    "two_functor": _obj("two_functor", ["source", "target", "objects", "one_cells", "two_cells"], {
        "source": {"type": "object"},
        "target": {"type": "object"},
        "objects": _PAIRS,
        "one_cells": _PAIRS,
        "two_cells": _PAIRS,
    }),
    "pseudonatural": _obj("pseudonatural", ["source", "target", "components", "cells"], {
        "source": {"type": "object"},
        "target": {"type": "object"},
        "components": _PAIRS,
        "cells": _PAIRS,
    }),
}


def _check(data, path=()):
    if not isinstance(data, dict):
        raise SchemaError("expected an object with a 'kind' field", path)
    kind = data.get("kind")
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown kind {kind!r}", (*path, "kind"))
    v = jsonschema.Draft7Validator(SCHEMAS[kind])
    errors = sorted(v.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = list(e.absolute_path)
        if e.validator == "additionalProperties":
            extra = sorted(set(data) - set(SCHEMAS[kind]["properties"]))
            where = where + extra[:1]
            raise SchemaError(f"unknown field {extra[0]!r}" if extra else e.message, (*path, *where))
        raise SchemaError(e.message, (*path, *where))
    return kind


# ---------------------------------------------------------------------------
# encode


def encode(v) -> dict:
    from .collage import Profunctor
    from .simplicial import SimplicialMap, TruncSSet
    from .twocat import Fin2Category, Pseudonatural, TwoFunctor

    if isinstance(v, FinCategory):
        return {
            "kind": "category",
            "name": v.name,
            "objects": [id_out(a) for a in v.objects],
            "morphisms": [[id_out(m), id_out(v.src[m]), id_out(v.tgt[m])] for m in v.morphisms],
            "identities": _pairs_out(v.identity),
            "composition": [[id_out(g), id_out(f), id_out(h)] for (g, f), h in v.composition.items()],
        }
    if isinstance(v, Functor):
        return {
            "kind": "functor",
            "name": v.name,
            "domain": encode(v.domain),
            "codomain": encode(v.codomain),
            "objects": _pairs_out(v.obj),
            "morphisms": _pairs_out(v.mor),
        }
    if isinstance(v, NatTrans):
        return {"kind": "nat", "source": encode(v.source), "target": encode(v.target),
                "components": _pairs_out(v.component)}
    if isinstance(v, FinSetDiagram):
        S = v.shape
        return {
            "kind": "diagram",
            "shape": encode(S),
            "values": [[id_out(a), [id_out(x) for x in v.values[a]]] for a in S.objects],
            "action": [[id_out(m), _pairs_out(v.action[m])] for m in S.morphisms],
        }
    if isinstance(v, DiagramMap):
        return {
            "kind": "diagram_map",
            "source": encode(v.source),
            "target": encode(v.target),
            "components": [[id_out(a), _pairs_out(c)] for a, c in v.components.items()],
        }
    if isinstance(v, Profunctor):
        return {
            "kind": "profunctor",
            "source": encode(v.source),
            "target": encode(v.target),
            "values": [[id_out(a), id_out(b), [id_out(x) for x in xs]] for (a, b), xs in v.values.items()],
            "post": [[id_out(n), id_out(a), _pairs_out(t)] for (n, a), t in v.post.items()],
            "pre": [[id_out(m), id_out(b), _pairs_out(t)] for (m, b), t in v.pre.items()],
        }
    if isinstance(v, TruncSSet):
        return {
            "kind": "sset",
            "name": v.name,
            "dim": v.dim,
            "simplices": [[id_out(x) for x in v.simplices[n]] for n in range(v.dim + 1)],
            "faces": [[n, id_out(x), i, id_out(y)] for (n, x, i), y in v.faces.items()],
            "degeneracies": [[n, id_out(x), j, id_out(y)] for (n, x, j), y in v.degens.items()],
        }
    if isinstance(v, SimplicialMap):
        return {
            "kind": "sset_map",
            "source": encode(v.source),
            "target": encode(v.target),
            "maps": [[n, id_out(x), id_out(y)] for n, m in v.maps.items() for x, y in m.items()],
        }
    if isinstance(v, Fin2Category):
        return {
            "kind": "two_category",
            "name": v.name,
            "objects": [id_out(a) for a in v.objects],
            "homs": [[id_out(a), id_out(b), encode(H)] for (a, b), H in v.homs.items()],
            "id1": _pairs_out(v.id1),
            "comp1": [[id_out(g), id_out(f), id_out(h)] for (g, f), h in v.comp1.items()],
            "comp2h": [[id_out(y), id_out(x), id_out(z)] for (y, x), z in v.comp2h.items()],
        }
    if isinstance(v, TwoFunctor):
        return {
            "kind": "two_functor",
            "source": encode(v.source),
            "target": encode(v.target),
            "objects": _pairs_out(v.obj),
            "one_cells": _pairs_out(v.one),
            "two_cells": _pairs_out(v.two),
        }
    if isinstance(v, Pseudonatural):
        return {
            "kind": "pseudonatural",
            "source": encode(v.source),
            "target": encode(v.target),
            "components": _pairs_out(v.components),
            "cells": _pairs_out(v.cells),
        }
    if isinstance(v, tuple) and len(v) == 2 and all(isinstance(x, Functor) for x in v):
        return {"kind": "cospan", "f": encode(v[0]), "g": encode(v[1])}
    raise TypeError(f"cannot encode {type(v).__name__}")


def encode_or_none(v):
    try:
        return encode(v)
    except TypeError:
        return None


def dumps(v, indent=2) -> str:
    return json.dumps(encode(v), sort_keys=True, ensure_ascii=False, indent=indent)


# ---------------------------------------------------------------------------
# decode


def decode(data, validate=True, path=()):
    """Build a value from parsed JSON, checking the schema and then the laws.

    Law violations are raised as the module validators' ``ValidationError``s.
    """
    from .collage import Profunctor, validate_profunctor
    from .simplicial import SimplicialMap, TruncSSet, validate_simplicial_map, validate_sset
    from .twocat import (
        Fin2Category,
        Pseudonatural,
        TwoFunctor,
        validate_2category,
        validate_2functor,
        validate_pseudonatural,
    )

    kind = _check(data, path)

    def sub(key):
        return decode(data[key], validate, (*path, key))

    def checked(value, problems):
        if validate:
            raise_first(problems(value))
        return value

    if kind == "category":
        objects = [id_in(a) for a in data["objects"]]
        morphisms = [tuple(id_in(x) for x in row) for row in data["morphisms"]]
        ident = _pairs_in(data.get("identities", []))
        comp = {(id_in(g), id_in(f)): id_in(h) for g, f, h in data.get("composition", [])}
        return checked(FinCategory(objects, morphisms, ident, comp, name=data.get("name")), validate_category)
    if kind == "functor":
        F = Functor(sub("domain"), sub("codomain"), _pairs_in(data["objects"]), _pairs_in(data["morphisms"]),
                    name=data.get("name"))
        return checked(F, validate_functor)
    if kind == "nat":
        return checked(NatTrans(sub("source"), sub("target"), _pairs_in(data["components"])), validate_nat)
    if kind == "diagram":
        S = sub("shape")
        values = {id_in(a): tuple(id_in(x) for x in xs) for a, xs in data["values"]}
        missing = [a for a in S.objects if a not in values]
        if missing:
            raise SchemaError(f"no value for object {missing[0]!r}", (*path, "values"))
        action = {id_in(m): _pairs_in(t) for m, t in data.get("action", [])}
        return checked(FinSetDiagram(S, values, action), validate_diagram)
    if kind == "diagram_map":
        comps = {id_in(a): _pairs_in(t) for a, t in data["components"]}
        return checked(DiagramMap(sub("source"), sub("target"), comps), validate_diagram_map)
    if kind == "cospan":
        f, g = sub("f"), sub("g")
        if validate and f.codomain != g.codomain:
            raise SchemaError("the two functors of a cospan need a common codomain", (*path, "g"))
        return (f, g)
    if kind == "profunctor":
        A, B = sub("source"), sub("target")
        values = {(id_in(a), id_in(b)): tuple(id_in(x) for x in xs) for a, b, xs in data["values"]}
        post = {(id_in(n), id_in(a)): _pairs_in(t) for n, a, t in data.get("post", [])}
        pre = {(id_in(m), id_in(b)): _pairs_in(t) for m, b, t in data.get("pre", [])}
        return checked(Profunctor(A, B, values, post, pre), validate_profunctor)
    if kind == "sset":
        simplices = {n: [id_in(x) for x in xs] for n, xs in enumerate(data["simplices"])}
        faces = {(n, id_in(x), i): id_in(y) for n, x, i, y in data["faces"]}
        degens = {(n, id_in(x), j): id_in(y) for n, x, j, y in data["degeneracies"]}
        return checked(TruncSSet(data["dim"], simplices, faces, degens, name=data.get("name")), validate_sset)
    if kind == "sset_map":
        X, Y = sub("source"), sub("target")
        maps = {n: {} for n in range(min(X.dim, Y.dim) + 1)}
        for n, x, y in data["maps"]:
            maps.setdefault(n, {})[id_in(x)] = id_in(y)
        return checked(SimplicialMap(X, Y, maps), validate_simplicial_map)
    if kind == "two_category":
        homs = {}
        for n, (a, b, H) in enumerate(data["homs"]):
            homs[(id_in(a), id_in(b))] = decode(H, validate, (*path, "homs", n, 2))
        A = Fin2Category(
            [id_in(a) for a in data["objects"]],
            homs,
            _pairs_in(data["id1"]),
            {(id_in(g), id_in(f)): id_in(h) for g, f, h in data["comp1"]},
            {(id_in(y), id_in(x)): id_in(z) for y, x, z in data["comp2h"]},
            name=data.get("name"),
        )
        return checked(A, validate_2category)
    if kind == "two_functor":
        F = TwoFunctor(sub("source"), sub("target"), _pairs_in(data["objects"]),
                       _pairs_in(data["one_cells"]), _pairs_in(data["two_cells"]))
        return checked(F, validate_2functor)
    if kind == "pseudonatural":
        alpha = Pseudonatural(sub("source"), sub("target"), _pairs_in(data["components"]), _pairs_in(data["cells"]))
        return checked(alpha, validate_pseudonatural)
    raise SchemaError(f"unknown kind {kind!r}", (*path, "kind"))  # pragma: no cover


def loads(text: str, validate=True):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    return decode(data, validate)


def load(path, validate=True):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), validate)
