"""Pointwise Kan extensions of set-valued diagrams.

``Lan_u X (k)`` is the colimit of ``X∘pr`` over the comma ``u↓k`` and
``Ran_u X (k)`` the limit of ``X∘pr`` over ``k↓u``.  Elements of
``Lan_u X (k)`` are pairs ``((j, '*', h), x)`` and elements of
``Ran_u X (k)`` are families indexed by the objects of ``k↓u``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .core import CommaResult, Functor, comma, object_functor
from .finset import (
    DiagramMap,
    FinSetDiagram,
    colimit_finset,
    limit_finset,
    restrict,
)


@lru_cache(maxsize=2048)
def lower_comma(u: Functor, k) -> CommaResult:
    """``u↓k``."""
    return comma(u, object_functor(u.codomain, k))


@lru_cache(maxsize=2048)
def upper_comma(u: Functor, k) -> CommaResult:
    """``k↓u``."""
    return comma(object_functor(u.codomain, k), u)


class KanExtension(NamedTuple):
    """The extended diagram with its unit (Lan) or counit (Ran)."""

    diagram: FinSetDiagram
    unit: DiagramMap | None
    counit: DiagramMap | None
    tables: dict


@lru_cache(maxsize=8192)
def lan(u: Functor, X: FinSetDiagram) -> KanExtension:
    """``Lan_u X`` with its unit ``X → u^* Lan_u X``."""
    K = u.codomain
    values, inj = {}, {}
    for k in K.objects:
        cr = lower_comma(u, k)
        col = colimit_finset(restrict(X, cr.proj0))
        values[k] = col.elements
        inj[k] = col.tables
    action = {}
    comp = K.composition
    for m in K.morphisms:
        target = inj[K.tgt[m]]
        action[m] = {e: target[(c[0], c[1], comp[(m, c[2])])][x] for e in values[K.src[m]] for c, x in (e,)}
    L = FinSetDiagram._raw(K, values, action)
    J = u.domain
    unit = DiagramMap(
        X,
        restrict(L, u),
        {j: inj[u.obj[j]][(j, "*", K.identity[u.obj[j]])] for j in J.objects},
    )
    return KanExtension(L, unit, None, inj)


def lan_map(u: Functor, phi: DiagramMap) -> DiagramMap:
    """``Lan_u φ``."""
    L0, L1 = lan(u, phi.source), lan(u, phi.target)
    comps = {}
    for k in u.codomain.objects:
        inj = L1.tables[k]
        comps[k] = {e: inj[c][phi.components[c[0]][x]] for e in L0.diagram.values[k] for c, x in (e,)}
    return DiagramMap(L0.diagram, L1.diagram, comps)


def lan_counit(u: Functor, Y: FinSetDiagram) -> DiagramMap:
    """``ε_Y : Lan_u u^*Y → Y``."""
    L = lan(u, restrict(Y, u)).diagram
    comps = {k: {e: Y.action[e[0][2]][e[1]] for e in L.values[k]} for k in u.codomain.objects}
    return DiagramMap(L, Y, comps)


@lru_cache(maxsize=8192)
def ran(u: Functor, X: FinSetDiagram) -> KanExtension:
    """``Ran_u X`` with its counit ``u^* Ran_u X → X``."""
    K = u.codomain
    values, index, objs = {}, {}, {}
    for k in K.objects:
        cr = upper_comma(u, k)
        values[k] = limit_finset(restrict(X, cr.proj1)).elements
        objs[k] = cr.category.objects
        index[k] = {c: i for i, c in enumerate(objs[k])}
    action = {}
    comp = K.composition
    for m in K.morphisms:
        k, k2 = K.src[m], K.tgt[m]
        idx = index[k]
        where = [idx[("*", j, comp[(h, m)])] for _, j, h in objs[k2]]
        action[m] = {e: tuple(e[i] for i in where) for e in values[k]}
    R = FinSetDiagram._raw(K, values, action)
    J = u.domain
    counit = DiagramMap(
        restrict(R, u),
        X,
        {j: {e: e[index[u.obj[j]][("*", j, K.identity[u.obj[j]])]] for e in values[u.obj[j]]} for j in J.objects},
    )
    return KanExtension(R, None, counit, objs)


def ran_map(u: Functor, phi: DiagramMap) -> DiagramMap:
    """``Ran_u φ``."""
    R0, R1 = ran(u, phi.source), ran(u, phi.target)
    comps = {}
    for k in u.codomain.objects:
        cs = [phi.components[j] for _, j, _ in R0.tables[k]]
        comps[k] = {e: tuple(c[x] for c, x in zip(cs, e)) for e in R0.diagram.values[k]}
    return DiagramMap(R0.diagram, R1.diagram, comps)


def ran_unit(u: Functor, Y: FinSetDiagram) -> DiagramMap:
    """``η_Y : Y → Ran_u u^*Y``."""
    R = ran(u, restrict(Y, u))
    comps = {}
    for k in u.codomain.objects:
        acts = [Y.action[h] for _, _, h in R.tables[k]]
        comps[k] = {y: tuple(a[y] for a in acts) for y in Y.values[k]}
    return DiagramMap(Y, R.diagram, comps)


def lan_transpose(u: Functor, Y: FinSetDiagram, phi: DiagramMap) -> DiagramMap:
    """``ε_Y ∘ Lan_u φ : Lan_u X → Y`` for ``φ: X → u^*Y``, without building ``Lan_u u^*Y``."""
    L = lan(u, phi.source).diagram
    comps = {}
    for k in u.codomain.objects:
        comps[k] = {e: Y.action[e[0][2]][phi.components[e[0][0]][e[1]]] for e in L.values[k]}
    return DiagramMap(L, Y, comps)


def ran_transpose(u: Functor, Y: FinSetDiagram, phi: DiagramMap) -> DiagramMap:
    """``Ran_u φ ∘ η_Y : Y → Ran_u X`` for ``φ: u^*Y → X``, without building ``Ran_u u^*Y``."""
    R = ran(u, phi.target)
    comps = {}
    for k in u.codomain.objects:
        legs = [(Y.action[h], phi.components[j]) for _, j, h in R.tables[k]]
        comps[k] = {y: tuple(c[a[y]] for a, c in legs) for y in Y.values[k]}
    return DiagramMap(Y, R.diagram, comps)
