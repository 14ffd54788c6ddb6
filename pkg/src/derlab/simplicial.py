"""Truncated finite simplicial sets.

A ``TruncSSet`` stores simplices up to a dimension bound ``N`` with face
maps ``faces[(n, x, i)] = d_i x`` and degeneracies ``degens[(n, x, j)] = s_j x``
(the latter only for ``n < N``).  Every verdict about horns is "up to
dimension N".  Nerve simplices are ``(c0, (f1, ..., fn))`` with
``f_i : c_{i-1} → c_i``.
"""
from __future__ import annotations

from itertools import product as _product
from typing import NamedTuple

from .core import FinCategory, Functor, find_isomorphism, is_isomorphism, validate_category, validate_functor
from .errors import DimensionOutOfRange, NotQuasiCategoryInput, SimplicialIdentityViolation
from .report import Report
from .twocat import Fin2Category, validate_2category


class TruncSSet:
    def __init__(self, dim: int, simplices, faces, degens, name=None):
        self.dim = dim
        self.simplices = {n: tuple(simplices.get(n, ())) for n in range(dim + 1)}
        self.faces = dict(faces)
        self.degens = dict(degens)
        self.name = name
        self._cache = {}

    def __repr__(self):
        counts = ", ".join(str(len(self.simplices[n])) for n in range(self.dim + 1))
        return f"TruncSSet({self.name or ''}, dim {self.dim}: {counts})"

    def d(self, n, x, i):
        return self.faces[(n, x, i)]

    def s(self, n, x, j):
        return self.degens[(n, x, j)]

    def vertices(self, n, x) -> tuple:
        """The vertices ``x(0), ..., x(n)`` of an ``n``-simplex."""
        return tuple(self.face_onto(n, x, (v,)) for v in range(n + 1))

    def edge(self, n, x, a, b):
        """The edge of an ``n``-simplex from vertex ``a`` to vertex ``b > a``."""
        return self.face_onto(n, x, (a, b))

    def face_onto(self, n, x, keep):
        """The face spanned by the vertices in ``keep`` (deleting from the top down)."""
        y, m = x, n
        for v in range(n, -1, -1):
            if v not in keep:
                y, m = self.faces[(m, y, v)], m - 1
        return y

    def degenerate(self, n) -> set:
        if n == 0:
            return set()
        key = ("degenerate", n)
        if key not in self._cache:
            self._cache[key] = {self.degens[(n - 1, x, j)] for x in self.simplices[n - 1] for j in range(n)}
        return self._cache[key]

    def nondegenerate(self, n) -> tuple:
        deg = self.degenerate(n)
        return tuple(x for x in self.simplices[n] if x not in deg)

    def face_index(self, n) -> dict:
        """``(i, face) -> n-simplices`` with that ``i``-th face."""
        key = ("index", n)
        if key not in self._cache:
            idx = {}
            for x in self.simplices[n]:
                for i in range(n + 1):
                    idx.setdefault((i, self.faces[(n, x, i)]), []).append(x)
            self._cache[key] = idx
        return self._cache[key]


def validate_sset(X: TruncSSet) -> list:
    report = []
    N = X.dim
    sets = {n: set(X.simplices[n]) for n in range(N + 1)}
    for n in range(1, N + 1):
        for x in X.simplices[n]:
            for i in range(n + 1):
                y = X.faces.get((n, x, i))
                if y not in sets[n - 1]:
                    report.append(SimplicialIdentityViolation((n, x, i), f"face d_{i} of {x!r} missing or misplaced"))
    for n in range(N):
        for x in X.simplices[n]:
            for j in range(n + 1):
                y = X.degens.get((n, x, j))
                if y not in sets[n + 1]:
                    report.append(SimplicialIdentityViolation((n, x, j), f"degeneracy s_{j} of {x!r} missing"))
    if report:
        return report
    d, s = X.faces, X.degens
    for n in range(2, N + 1):
        for x in X.simplices[n]:
            for j in range(n + 1):
                for i in range(j):
                    if d[(n - 1, d[(n, x, j)], i)] != d[(n - 1, d[(n, x, i)], j - 1)]:
                        report.append(SimplicialIdentityViolation(
                            (n, x, i, j), f"d_{i} d_{j} ≠ d_{j - 1} d_{i} on {x!r}"))
    for n in range(N):
        for x in X.simplices[n]:
            for j in range(n + 1):
                y = s[(n, x, j)]
                for i in range(n + 2):
                    if i in (j, j + 1):
                        want = x
                    elif n == 0:
                        continue
                    elif i < j:
                        want = s[(n - 1, d[(n, x, i)], j - 1)]
                    else:
                        want = s[(n - 1, d[(n, x, i - 1)], j)]
                    if d[(n + 1, y, i)] != want:
                        report.append(SimplicialIdentityViolation(
                            (n, x, i, j), f"d_{i} s_{j} identity fails on {x!r}"))
                if n + 1 < N:
                    for i in range(j + 1):
                        if s[(n + 1, y, i)] != s[(n + 1, s[(n, x, i)], j + 1)]:
                            report.append(SimplicialIdentityViolation(
                                (n, x, i, j), f"s_{i} s_{j} ≠ s_{j + 1} s_{i} on {x!r}"))
    return report


class SimplicialMap:
    def __init__(self, source: TruncSSet, target: TruncSSet, maps):
        self.source = source
        self.target = target
        self.maps = {n: dict(m) for n, m in maps.items()}

    def __call__(self, n, x):
        return self.maps[n][x]


def validate_simplicial_map(f: SimplicialMap) -> list:
    X, Y = f.source, f.target
    report = []
    N = min(X.dim, Y.dim)
    for n in range(N + 1):
        m = f.maps.get(n, {})
        for x in X.simplices[n]:
            if m.get(x) not in set(Y.simplices[n]):
                report.append(SimplicialIdentityViolation((n, x), "simplex not mapped into the target"))
    if report:
        return report
    for n in range(1, N + 1):
        for x in X.simplices[n]:
            for i in range(n + 1):
                if f.maps[n - 1][X.faces[(n, x, i)]] != Y.faces[(n, f.maps[n][x], i)]:
                    report.append(SimplicialIdentityViolation((n, x, i), "map does not commute with a face"))
    for n in range(N):
        for x in X.simplices[n]:
            for j in range(n + 1):
                if f.maps[n + 1][X.degens[(n, x, j)]] != Y.degens[(n, f.maps[n][x], j)]:
                    report.append(SimplicialIdentityViolation((n, x, j), "map does not commute with a degeneracy"))
    return report


# ---------------------------------------------------------------------------
# standard simplicial sets


def nerve(C: FinCategory, N: int = 3) -> TruncSSet:
    comp, ident = C.composition, C.identity
    out = {}
    for m in C.morphisms:
        out.setdefault(C.src[m], []).append(m)
    simplices = {0: [(c, ()) for c in C.objects]}
    ends = {(c, ()): c for c in C.objects}
    for n in range(1, N + 1):
        layer = []
        for x in simplices[n - 1]:
            for m in out.get(ends[x], ()):
                y = (x[0], x[1] + (m,))
                layer.append(y)
                ends[y] = C.tgt[m]
        simplices[n] = layer
    faces, degens = {}, {}
    for n in range(1, N + 1):
        for x in simplices[n]:
            c0, fs = x
            faces[(n, x, 0)] = (C.tgt[fs[0]], fs[1:])
            faces[(n, x, n)] = (c0, fs[:-1])
            for i in range(1, n):
                faces[(n, x, i)] = (c0, fs[: i - 1] + (comp[(fs[i], fs[i - 1])],) + fs[i + 1:])
    for n in range(N):
        for x in simplices[n]:
            c0, fs = x
            objs = (c0,) + tuple(C.tgt[f] for f in fs)
            for j in range(n + 1):
                degens[(n, x, j)] = (c0, fs[:j] + (ident[objs[j]],) + fs[j:])
    return TruncSSet(N, simplices, faces, degens, name=f"N({C.name})" if C.name else "N")


def nerve_map(F: Functor, N: int = 3, source: TruncSSet | None = None, target: TruncSSet | None = None):
    X = source or nerve(F.domain, N)
    Y = target or nerve(F.codomain, N)
    maps = {n: {x: (F.obj[x[0]], tuple(F.mor[f] for f in x[1])) for x in X.simplices[n]} for n in range(N + 1)}
    return SimplicialMap(X, Y, maps)


def _monotone_sset(n: int, N: int, keep, name) -> TruncSSet:
    """Simplices of ``Δⁿ`` (weakly increasing tuples) that satisfy ``keep``."""
    simplices = {}
    for m in range(N + 1):
        layer = []

        def rec(prefix, lo):
            if len(prefix) == m + 1:
                if keep(prefix):
                    layer.append(prefix)
                return
            for v in range(lo, n + 1):
                rec(prefix + (v,), v)

        rec((), 0)
        simplices[m] = layer
    faces = {(m, x, i): x[:i] + x[i + 1:] for m in range(1, N + 1) for x in simplices[m] for i in range(m + 1)}
    degens = {(m, x, j): x[: j + 1] + x[j:] for m in range(N) for x in simplices[m] for j in range(m + 1)}
    return TruncSSet(N, simplices, faces, degens, name=name)


def delta(n: int, N: int = 3) -> TruncSSet:
    return _monotone_sset(n, N, lambda x: True, f"Δ{n}")


def horn(n: int, k: int, N: int = 3) -> TruncSSet:
    """``Λⁿ_k``: the simplices of ``Δⁿ`` missing some vertex other than ``k``."""
    if not 0 <= k <= n:
        raise DimensionOutOfRange(f"no horn Λ^{n}_{k}")
    full = set(range(n + 1))
    return _monotone_sset(n, N, lambda x: (set(x) | {k}) != full, f"Λ{n}_{k}")


def boundary(n: int, N: int = 3) -> TruncSSet:
    full = set(range(n + 1))
    return _monotone_sset(n, N, lambda x: set(x) != full, f"∂Δ{n}")


def circle(N: int = 2) -> TruncSSet:
    """``Δ¹/∂Δ¹``: one vertex and one nondegenerate loop.

    Constant simplices of ``Δ¹`` are collapsed to ``("*", n)``.
    """
    D = delta(1, N)

    def cls(x):
        return ("*", len(x) - 1) if len(set(x)) == 1 else x

    simplices = {n: list(dict.fromkeys(cls(x) for x in D.simplices[n])) for n in range(N + 1)}
    faces = {(n, cls(x), i): cls(y) for (n, x, i), y in D.faces.items()}
    degens = {(n, cls(x), j): cls(y) for (n, x, j), y in D.degens.items()}
    return TruncSSet(N, simplices, faces, degens, name="S¹")


def product_sset(X: TruncSSet, Y: TruncSSet) -> TruncSSet:
    N = min(X.dim, Y.dim)
    simplices = {n: [(x, y) for x in X.simplices[n] for y in Y.simplices[n]] for n in range(N + 1)}
    faces = {(n, p, i): (X.faces[(n, p[0], i)], Y.faces[(n, p[1], i)])
             for n in range(1, N + 1) for p in simplices[n] for i in range(n + 1)}
    degens = {(n, p, j): (X.degens[(n, p[0], j)], Y.degens[(n, p[1], j)])
              for n in range(N) for p in simplices[n] for j in range(n + 1)}
    return TruncSSet(N, simplices, faces, degens)


# ---------------------------------------------------------------------------
# fundamental category


class Undetermined(NamedTuple):
    """A computation that did not settle within its bounds."""

    reason: str
    unresolved: list


class _Words:
    """Composable words of non-degenerate edges, up to a length bound."""

    def __init__(self, X: TruncSSet, max_words: int):
        self.X = X
        deg = X.degenerate(1)
        self.edges = [e for e in X.simplices[1] if e not in deg]
        self.src = {e: X.faces[(1, e, 1)] for e in self.edges}
        self.tgt = {e: X.faces[(1, e, 0)] for e in self.edges}
        self.out = {}
        for e in self.edges:
            self.out.setdefault(self.src[e], []).append(e)
        self.by_len = [[(v, ()) for v in X.simplices[0]]]
        self.end = {w: w[0] for w in self.by_len[0]}
        self.max_words = max_words
        self.total = len(self.by_len[0])

    def extend(self) -> bool:
        layer = []
        for w in self.by_len[-1]:
            for e in self.out.get(self.end[w], ()):
                y = (w[0], w[1] + (e,))
                layer.append(y)
                self.end[y] = self.tgt[e]
        self.total += len(layer)
        self.by_len.append(layer)
        return self.total <= self.max_words

    def word_of_edge(self, e):
        if e in self.src:
            return (self.src[e], (e,))
        return (self.X.faces[(1, e, 1)], ())


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y, rank):
        a, b = self.find(x), self.find(y)
        if a != b:
            if rank[b] < rank[a]:
                a, b = b, a
            self.parent[b] = a


class FundamentalCategory(NamedTuple):
    category: FinCategory
    class_of: object
    path_bound: int


def fundamental_category(X: TruncSSet, path_bound: int = 8, max_words: int = 200000):
    """``hX`` by congruence closure on words of length ``≤ L′`` for ``L′ = 2, ..., path_bound``.

    Returns a ``FundamentalCategory`` or ``Undetermined``.  At each bound
    the candidate quotient is accepted only if every word of length
    ``L′`` already equals a shorter one and the candidate is a category
    satisfying every 2-simplex relation; the candidate is then
    isomorphic to ``hX``.
    """
    if X.dim < 2:
        raise DimensionOutOfRange("the fundamental category needs 2-simplices")
    cached = X._cache.get(("h", path_bound))
    if cached is not None:
        return cached
    W = _Words(X, max_words)
    relations = {}
    for sigma in X.simplices[2]:
        d0, d1, d2 = (X.faces[(2, sigma, i)] for i in range(3))
        lhs = W.word_of_edge(d1)
        a, b = W.word_of_edge(d2), W.word_of_edge(d0)
        rhs = (a[0], a[1] + b[1])
        if lhs != rhs:
            relations.setdefault(lhs[1], []).append((lhs[0], rhs[1]))
            relations.setdefault(rhs[1], []).append((rhs[0], lhs[1]))
    longest = max((len(k) for k in relations), default=0)
    result = None
    for bound in range(1, max(path_bound, 1) + 1):
        if not W.extend():
            result = Undetermined(f"more than {max_words} words of length ≤ {bound}", [])
            break
        if bound < 2:
            continue
        result = _closure_at(X, W, relations, longest, bound)
        if not isinstance(result, Undetermined):
            break
    X._cache[("h", path_bound)] = result
    return result


def _closure_at(X, W, relations, longest, bound):
    words = [w for layer in W.by_len for w in layer]
    rank = {w: n for n, w in enumerate(words)}
    uf = _UnionFind()
    for w in words:
        uf.add(w)
    for w in words:
        v0, es = w
        n = len(es)
        for i in range(n):
            # the vertex where position i starts
            start = v0 if i == 0 else W.tgt[es[i - 1]]
            for j in range(i + 1, min(n, i + longest) + 1):
                for at, other in relations.get(es[i:j], ()):
                    if at != start:
                        continue
                    y = (v0, es[:i] + other + es[j:])
                    if len(y[1]) <= bound:
                        uf.union(w, y, rank)
    top = W.by_len[bound]
    unresolved = [w for w in top if len(uf.find(w)[1]) == bound]
    if unresolved:
        return Undetermined(f"closure did not stabilize at path length {bound}", unresolved[:10])

    def class_of(word):
        return uf.find(word)

    def compose(g, f):
        # fold the letters of g onto the representative of f
        cur = f
        for e in g[1]:
            cur = uf.find((cur[0], cur[1] + (e,)))
        return cur

    classes = list(dict.fromkeys(uf.find(w) for w in words))
    end = {c: (c[0] if not c[1] else W.tgt[c[1][-1]]) for c in classes}
    out = {}
    for c in classes:
        out.setdefault(c[0], []).append(c)
    morphisms = [(c, c[0], end[c]) for c in classes]
    identity = {v: uf.find((v, ())) for v in X.simplices[0]}
    comp = {}
    for f in classes:
        for g in out.get(end[f], ()):
            comp[(g, f)] = compose(g, f)
    C = FinCategory(X.simplices[0], morphisms, identity, comp, name=f"h({X.name})" if X.name else None)
    if validate_category(C):
        return Undetermined(f"candidate quotient at path length {bound} is not a category", [])
    for v in X.simplices[0]:
        if identity[v] != (v, ()):
            return Undetermined(f"an identity is identified with a non-empty word at length {bound}", [])
    for sigma in X.simplices[2]:
        d0, d1, d2 = (X.faces[(2, sigma, i)] for i in range(3))
        if class_of(W.word_of_edge(d1)) != comp[(class_of(W.word_of_edge(d0)), class_of(W.word_of_edge(d2)))]:
            return Undetermined(f"a 2-simplex relation fails in the candidate at length {bound}", [sigma])
    return FundamentalCategory(C, lambda e: class_of(W.word_of_edge(e)), bound)


def edge_class(h: FundamentalCategory, e):
    return h.class_of(e)


# ---------------------------------------------------------------------------
# horns


def _horn_families(X: TruncSSet, n: int, k: int):
    """Every compatible family ``(x_i)_{i ≠ k}`` of ``(n-1)``-simplices."""
    key = ("horns", n, k)
    if key in X._cache:
        return X._cache[key]
    slots = [i for i in range(n + 1) if i != k]
    idx = X.face_index(n - 1) if n >= 2 else {}
    d = X.faces
    found = []
    chosen = {}

    def rec(p):
        if p == len(slots):
            found.append(tuple(chosen[i] for i in slots))
            return
        j = slots[p]
        earlier = slots[:p]
        if earlier and n >= 2:
            # d_i x_j = d_{j-1} x_i for i < j
            i0 = earlier[0]
            cands = idx.get((i0, d[(n - 1, chosen[i0], j - 1)]), [])
        else:
            cands = X.simplices[n - 1]
        for x in cands:
            if all(d[(n - 1, x, i)] == d[(n - 1, chosen[i], j - 1)] for i in earlier):
                chosen[j] = x
                rec(p + 1)
        chosen.pop(j, None)

    if n == 1:
        found = [(x,) for x in X.simplices[0]]
    else:
        rec(0)
    X._cache[key] = found
    return found


def horn_fillers(X: TruncSSet, n: int, k: int, assignment) -> list:
    """``n``-simplices whose ``i``-th face is ``assignment[i]`` for ``i ≠ k``."""
    if n > X.dim or n < 1:
        raise DimensionOutOfRange(f"horn dimension {n} outside 1..{X.dim}")
    if not 0 <= k <= n:
        raise DimensionOutOfRange(f"no horn Λ^{n}_{k}")
    idx = X.face_index(n)
    slots = [i for i in range(n + 1) if i != k]
    items = dict(assignment) if isinstance(assignment, dict) else dict(zip(slots, assignment))
    first = slots[0]
    return [
        s for s in idx.get((first, items[first]), [])
        if all(X.faces[(n, s, i)] == items[i] for i in slots)
    ]


def _horn_check(X: TruncSSet, inner_only: bool, name: str, N=None) -> Report:
    N = X.dim if N is None else min(N, X.dim)
    rep = Report(name, instance=X.name, corpus={"dimension": N, "up_to_dimension": N})
    for n in range(2 if inner_only else 1, N + 1):
        ks = range(1, n) if inner_only else range(n + 1)
        for k in ks:
            slots = [i for i in range(n + 1) if i != k]
            for fam in _horn_families(X, n, k):
                rep.count("horns")
                if not horn_fillers(X, n, k, dict(zip(slots, fam))):
                    rep.fail(n=n, k=k, horn=dict(zip(slots, fam)))
                    return rep
    return rep


def is_quasicategory_up_to(X: TruncSSet, N=None) -> Report:
    key = ("qcat", N)
    if key not in X._cache:
        X._cache[key] = _horn_check(X, True, "quasi-category", N)
    return X._cache[key]


def is_kan_up_to(X: TruncSSet, N=None) -> Report:
    key = ("kan", N)
    if key not in X._cache:
        X._cache[key] = _horn_check(X, False, "Kan complex", N)
    return X._cache[key]


# ---------------------------------------------------------------------------
# isofibrations


def _invertible_edges(X: TruncSSet, path_bound: int):
    h = fundamental_category(X, path_bound)
    if isinstance(h, Undetermined):
        return None
    C = h.category
    return {e for e in X.simplices[1] if C.is_iso(h.class_of(e))}


def is_isofibration(f: SimplicialMap, path_bound: int = 8) -> Report:
    """Inner-horn lifting up to the truncation plus lifting of invertible edges."""
    X, Y = f.source, f.target
    for Z in (X, Y):
        if not is_quasicategory_up_to(Z).passed:
            raise NotQuasiCategoryInput(f"{Z!r} is not a quasi-category up to dimension {Z.dim}")
    N = min(X.dim, Y.dim)
    rep = Report("isofibration", corpus={"dimension": N}, instance=f"{X.name} → {Y.name}")
    for n in range(2, N + 1):
        yidx = Y.face_index(n)
        for k in range(1, n):
            slots = [i for i in range(n + 1) if i != k]
            for fam in _horn_families(X, n, k):
                image = [f.maps[n - 1][x] for x in fam]
                fillers = horn_fillers(X, n, k, dict(zip(slots, fam)))
                hit = {f.maps[n][s] for s in fillers}
                for tau in yidx.get((slots[0], image[0]), []):
                    if all(Y.faces[(n, tau, i)] == y for i, y in zip(slots, image)):
                        rep.count("horn lifting problems")
                        if tau not in hit:
                            rep.fail(kind="inner horn", n=n, k=k, horn=list(fam), simplex=tau)
                            return rep
    inv_y = _invertible_edges(Y, path_bound)
    inv_x = _invertible_edges(X, path_bound)
    if inv_y is None or inv_x is None:
        rep.undetermined("fundamental category did not stabilize")
        return rep
    fe = f.maps[1]
    lifts = {}
    for e in inv_x:
        lifts.setdefault((X.faces[(1, e, 1)], fe[e]), []).append(e)
    for e in Y.simplices[1]:
        if e not in inv_y:
            continue
        y0 = Y.faces[(1, e, 1)]
        for x in X.simplices[0]:
            if f.maps[0][x] != y0:
                continue
            rep.count("equivalence lifting problems")
            if not lifts.get((x, e)):
                rep.fail(kind="equivalence", edge=e, vertex=x)
                return rep
    return rep


def lifts_isomorphisms(F: Functor) -> bool:
    """Categorical oracle: every iso ``F c → d`` is the image of an iso out of ``c``."""
    C, D = F.domain, F.codomain
    for c in C.objects:
        images = {F.mor[m] for d in C.objects for m in C.hom(c, d) if C.is_iso(m)}
        for d in D.objects:
            for g in D.hom(F.obj[c], d):
                if D.is_iso(g) and g not in images:
                    return False
    return True


# ---------------------------------------------------------------------------
# h ⊣ N


def counit_functor(C: FinCategory, N: int = 3, path_bound: int = 8):
    """``h N C → C`` sending a word of edges to its composite, or Undetermined."""
    X = nerve(C, max(N, 2))
    h = fundamental_category(X, path_bound)
    if isinstance(h, Undetermined):
        return h
    H = h.category
    mor = {}
    for w in H.morphisms:
        v, es = w
        m = C.identity[v[0]]
        for e in es:
            m = C.composition[(e[1][0], m)]
        mor[w] = m
    return Functor(H, C, {v: v[0] for v in H.objects}, mor)


def unit_map(X: TruncSSet, path_bound: int = 8):
    """``X → N h X``: a simplex goes to the chain of classes of its spine edges."""
    h = fundamental_category(X, path_bound)
    if isinstance(h, Undetermined):
        return h
    NH = nerve(h.category, X.dim)
    maps = {}
    for n in range(X.dim + 1):
        m = {}
        for x in X.simplices[n]:
            verts = X.vertices(n, x)
            spine = tuple(h.class_of(X.edge(n, x, i, i + 1)) for i in range(n))
            m[x] = (verts[0], spine)
        maps[n] = m
    return SimplicialMap(X, NH, maps)


def check_hN_adjunction(C: FinCategory | None = None, X: TruncSSet | None = None,
                        N: int = 3, path_bound: int = 8) -> Report:
    rep = Report("h ⊣ N", corpus={"dimension": N, "path_bound": path_bound})
    if C is not None:
        eps = counit_functor(C, N, path_bound)
        if isinstance(eps, Undetermined):
            rep.undetermined(eps.reason)
        else:
            problems = validate_functor(eps)
            if problems or not is_isomorphism(eps):
                rep.fail(kind="counit", category=C.name, problems=[p.message for p in problems])
            rep.count("counit components", len(C.morphisms))
    if X is not None:
        eta = unit_map(X, path_bound)
        if isinstance(eta, Undetermined):
            rep.undetermined(eta.reason)
        else:
            problems = validate_simplicial_map(eta)
            for p in problems[:5]:
                rep.fail(kind="unit", witness=p.witness, message=p.message)
            rep.count("unit simplices", sum(len(v) for v in eta.maps.values()))
    return rep


def h_nerve_iso(C: FinCategory, path_bound: int = 8):
    """An isomorphism ``h N C ≅ C`` found by search (independent of the counit)."""
    h = fundamental_category(nerve(C, 2), path_bound)
    if isinstance(h, Undetermined):
        return h
    return find_isomorphism(h.category, C)


# ---------------------------------------------------------------------------
# simplicially enriched categories


class SSetCategory:
    """Hom simplicial sets with composition maps ``hom(b, c) × hom(a, b) → hom(a, c)``."""

    def __init__(self, objects, homs, comp, ids, name=None):
        self.objects = tuple(objects)
        self.homs = dict(homs)
        self.comp = dict(comp)
        self.ids = dict(ids)
        self.name = name


def validate_ssetcat(M: SSetCategory) -> list:
    report = []
    for (a, b, c), f in M.comp.items():
        report.extend(validate_simplicial_map(f))
    if report:
        return report
    N = min(X.dim for X in M.homs.values())

    def degenerate(X, v, n):
        for j in range(n):
            v = X.degens[(j, v, 0)]
        return v

    for a in M.objects:
        for b in M.objects:
            X = M.homs[(a, b)]
            for n in range(N + 1):
                ia, ib = degenerate(M.homs[(a, a)], M.ids[a], n), degenerate(M.homs[(b, b)], M.ids[b], n)
                for x in X.simplices[n]:
                    if M.comp[(a, b, b)].maps[n][(ib, x)] != x or M.comp[(a, a, b)].maps[n][(x, ia)] != x:
                        report.append(SimplicialIdentityViolation((a, b, n, x), "identity is not a unit"))
            for c in M.objects:
                for d in M.objects:
                    for n in range(N + 1):
                        for z in M.homs[(c, d)].simplices[n]:
                            for y in M.homs[(b, c)].simplices[n]:
                                for x in X.simplices[n]:
                                    left = M.comp[(a, c, d)].maps[n][(z, M.comp[(a, b, c)].maps[n][(y, x)])]
                                    right = M.comp[(a, b, d)].maps[n][(M.comp[(b, c, d)].maps[n][(z, y)], x)]
                                    if left != right:
                                        report.append(SimplicialIdentityViolation(
                                            (a, b, c, d, n), "composition is not associative"))
                                        return report
    return report


def nerve_2category(A: Fin2Category, N: int = 2) -> SSetCategory:
    """Apply the nerve homwise; composition is the nerve of horizontal composition."""
    homs = {(a, b): nerve(A.hom(a, b), N) for a in A.objects for b in A.objects}
    comp = {}
    for a in A.objects:
        for b in A.objects:
            for c in A.objects:
                X, Y, Z = homs[(b, c)], homs[(a, b)], homs[(a, c)]
                P = product_sset(X, Y)
                maps = {}
                for n in range(N + 1):
                    maps[n] = {
                        (g, f): (A.comp1[(g[0], f[0])], tuple(A.comp2h[(y, x)] for y, x in zip(g[1], f[1])))
                        for g, f in P.simplices[n]
                    }
                comp[(a, b, c)] = SimplicialMap(P, Z, maps)
    ids = {a: (A.id1[a], ()) for a in A.objects}
    return SSetCategory(A.objects, homs, comp, ids, name=A.name)


def homotopy_2category(M: SSetCategory, path_bound: int = 8):
    """Fin2Category with hom-categories ``h(M(a, b))``, or Undetermined.

    1-cells are ``(a, b, vertex)`` and 2-cells ``(a, b, class)``.  Horizontal
    composition is ``(β f') ∘ (g α)`` with whiskering through degenerate edges.
    """
    for key, X in M.homs.items():
        if not is_quasicategory_up_to(X).passed:
            return Undetermined(f"hom {key!r} is not a quasi-category; formal composites are not supported", [key])
    hs = {}
    for key, X in M.homs.items():
        h = fundamental_category(X, path_bound)
        if isinstance(h, Undetermined):
            return h
        hs[key] = h
    homs = {}
    for (a, b), h in hs.items():
        C = h.category
        objs = [(a, b, v) for v in C.objects]
        mors = [((a, b, m), (a, b, C.src[m]), (a, b, C.tgt[m])) for m in C.morphisms]
        ident = {(a, b, v): (a, b, C.identity[v]) for v in C.objects}
        comp = {((a, b, g), (a, b, f)): (a, b, m) for (g, f), m in C.composition.items()}
        homs[(a, b)] = FinCategory(objs, mors, ident, comp)
    id1 = {a: (a, a, M.ids[a]) for a in M.objects}
    comp1, comp2h = {}, {}
    for (a, b, c), cm in M.comp.items():
        Hbc, Hab, Hac = hs[(b, c)], hs[(a, b)], hs[(a, c)]
        X, Y = M.homs[(b, c)], M.homs[(a, b)]
        for g in X.simplices[0]:
            for f in Y.simplices[0]:
                comp1[((b, c, g), (a, b, f))] = (a, c, cm.maps[0][(g, f)])

        def whisker_left(g, word):
            # g ∘ word: pair each edge with the degenerate edge on g
            out = Hac.category.identity[cm.maps[0][(g, word[0])]]
            for e in word[1]:
                edge = cm.maps[1][(X.degens[(0, g, 0)], e)]
                out = Hac.category.composition[(Hac.class_of(edge), out)]
            return out

        def whisker_right(word, f):
            out = Hac.category.identity[cm.maps[0][(word[0], f)]]
            for e in word[1]:
                edge = cm.maps[1][(e, Y.degens[(0, f, 0)])]
                out = Hac.category.composition[(Hac.class_of(edge), out)]
            return out

        Cbc, Cab = Hbc.category, Hab.category
        for beta in Cbc.morphisms:
            for alpha in Cab.morphisms:
                g = Cbc.src[beta]
                f2 = Cab.tgt[alpha]
                first = whisker_left(g, alpha)
                second = whisker_right(beta, f2)
                comp2h[((b, c, beta), (a, b, alpha))] = (a, c, Hac.category.composition[(second, first)])
    A = Fin2Category(M.objects, homs, id1, comp1, comp2h, name=f"Ho({M.name})" if M.name else None)
    problems = validate_2category(A)
    if problems:
        return Undetermined("assembled homotopy 2-category fails validation", [p.message for p in problems[:5]])
    return A
