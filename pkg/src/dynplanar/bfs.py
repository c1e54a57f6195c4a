"""BFS trees from every vertex, maintained under edge insertion and deletion.

A forest maps each root ``v`` to a tree, and a tree maps every vertex ``x``
reachable from ``v`` to its root path ``(v, ..., x)``.  That one table is the
compact form of the three relations

* ``Level(v, x, l)``   -- ``l = len(path) - 1``
* ``BFSEdge(v, x, y)`` -- consecutive entries of some root path
* ``Path(v, x, y, z)`` -- ``z`` on the tree path between ``x`` and ``y``

and each update builds the next table from the previous one by splicing
existing root paths, never by searching the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterator, Mapping

from .order import Order, UnknownElement

INF = 1 << 40


class InconsistentRepair(AssertionError):
    """Per-vertex repairs did not assemble into a tree."""


def _lev(tree: Mapping, x) -> int:
    p = tree.get(x)
    return len(p) - 1 if p is not None else INF


def tree_path(tree: Mapping, x, y) -> list:
    """Vertices of the tree path from ``x`` to ``y``, in order."""
    px, py = tree[x], tree[y]
    i = 0
    while i < len(px) and i < len(py) and px[i] == py[i]:
        i += 1
    return list(reversed(px[i - 1:])) + list(py[i:])


def assert_tree(tree: Mapping, changed, what: str = "tree") -> None:
    for x in changed:
        p = tree[x]
        if len(p) > 1 and tree.get(p[-2]) != p[:-1]:
            raise InconsistentRepair(f"{what}: path to {x!r} {p} disagrees with its parent's {tree.get(p[-2])}")


@dataclass(frozen=True)
class BFSForest:
    trees: Mapping = field(default_factory=dict)

    def with_vertex(self, a: Hashable) -> "BFSForest":
        if a in self.trees:
            return self
        trees = dict(self.trees)
        trees[a] = {a: (a,)}
        return BFSForest(trees)

    def level(self, v, x) -> int | None:
        lv = _lev(self.trees[v], x)
        return None if lv == INF else lv

    def parent(self, v, x):
        p = self.trees[v].get(x)
        return p[-2] if p is not None and len(p) > 1 else None

    def level_tuples(self, order: Order) -> Iterator[tuple]:
        for v, tree in self.trees.items():
            for x, p in tree.items():
                yield (v, x, order.element(len(p) - 1))

    def edge_tuples(self) -> Iterator[tuple]:
        for v, tree in self.trees.items():
            for x, p in tree.items():
                if len(p) > 1:
                    yield (v, p[-2], x)
                    yield (v, x, p[-2])

    def path_tuples(self) -> Iterator[tuple]:
        for v, tree in self.trees.items():
            for x in tree:
                for y in tree:
                    for z in tree_path(tree, x, y):
                        yield (v, x, y, z)

    def path_count(self) -> int:
        total = 0
        for tree in self.trees.values():
            for x in tree:
                for y in tree:
                    total += len(tree_path(tree, x, y))
        return total


def distance(forest: BFSForest, order: Order, v, x) -> int | None:
    for s in (v, x):
        if s not in order:
            raise UnknownElement(s)
    return forest.level(v, x)


def path_vertices(forest: BFSForest, order: Order, v, x, y) -> list | None:
    """The x-y path in v's tree, or None if either end is outside it."""
    for s in (v, x, y):
        if s not in order:
            raise UnknownElement(s)
    tree = forest.trees[v]
    if x not in tree or y not in tree:
        return None
    return tree_path(tree, x, y)


def insert(forest: BFSForest, a, b) -> BFSForest:
    """Account for the new edge {a, b}; both endpoints must already have trees."""
    trees = forest.trees
    ta, tb = trees[a], trees[b]
    targets = list(ta) + [x for x in tb if x not in ta]
    out = dict(trees)
    for v, tv in trees.items():
        la, lb = _lev(tv, a), _lev(tv, b)
        if la == INF and lb == INF:
            continue
        # levels of a and b within one of each other: no path can shorten
        if la != INF and lb != INF and abs(la - lb) <= 1:
            continue
        new_tv = None
        for x in targets:
            lax, lbx = _lev(ta, x), _lev(tb, x)
            if lax <= lbx:
                alpha, beta, lbeta, lalpha = b, a, lax, lb
            else:
                alpha, beta, lbeta, lalpha = a, b, lbx, la
            if lalpha == INF:
                continue
            lnew = lalpha + 1 + lbeta
            # ties keep the old path
            if lnew < _lev(tv, x):
                if new_tv is None:
                    new_tv = dict(tv)
                new_tv[x] = tv[alpha] + trees[beta][x]
        if new_tv is not None:
            assert_tree(new_tv, [x for x in new_tv if new_tv[x] is not tv.get(x)], f"BFS tree of {v!r}")
            out[v] = new_tv
    return BFSForest(out)


@dataclass
class DeletionRepairPlan:
    """How one root's tree is repaired after {a, b} leaves it.

    ``r2`` is the part cut off below the deleted tree edge and ``r1`` the
    rest of the root's component.  ``pr`` holds the edges (s, t) from r1 into
    r2; ``pr_min[w]`` those giving a shortest new route to ``w``;
    ``pr_lex_min[w]`` the single one used.
    """

    root: Hashable
    r1: set
    r2: set
    pr: list
    l_min: dict
    pr_min: dict
    pr_lex_min: dict


def _cut_side(tv: Mapping, a, b):
    pa, pb = tv.get(a), tv.get(b)
    if pb is not None and len(pb) > 1 and pb[-2] == a:
        return b
    if pa is not None and len(pa) > 1 and pa[-2] == b:
        return a
    return None


def deletion_plan(forest: BFSForest, order: Order, v, a, b, adj: Mapping) -> DeletionRepairPlan | None:
    """Repair plan for root ``v``; None when {a, b} is not in v's tree.

    ``forest`` is the pre-deletion forest and ``adj`` the post-deletion
    adjacency.  Among the shortest reconnections the one entering r2 deepest
    is used (ties broken lexicographically in the maintained order); that
    keeps every repaired path inside r2 after the crossing edge.
    """
    trees = forest.trees
    tv = trees[v]
    child = _cut_side(tv, a, b)
    if child is None:
        return None
    depth = len(tv[child]) - 1
    r2 = {x for x, p in tv.items() if len(p) > depth and p[depth] == child}
    r1 = {x for x in tv if x not in r2}
    pr = [(s, t) for t in r2 for s in adj[t] if s in r1]
    l_min, pr_min, pr_lex = {}, {}, {}
    for w in r2:
        best, cands = INF, []
        for s, t in pr:
            tw = trees[t].get(w)
            if tw is None:
                continue
            ln = len(tv[s]) + len(tw) - 1
            if ln < best:
                best, cands = ln, [(s, t)]
            elif ln == best:
                cands.append((s, t))
        if not cands:
            continue
        l_min[w] = best
        pr_min[w] = cands
        pr_lex[w] = min(cands, key=lambda st: (-len(tv[st[0]]), order.key(st[0]), order.key(st[1])))
    return DeletionRepairPlan(v, r1, r2, pr, l_min, pr_min, pr_lex)


def delete(forest: BFSForest, order: Order, a, b, adj: Mapping) -> BFSForest:
    """Account for removal of {a, b}; ``adj`` is the post-deletion adjacency."""
    trees = forest.trees
    out = dict(trees)
    for v, tv in trees.items():
        plan = deletion_plan(forest, order, v, a, b, adj)
        if plan is None:
            continue
        new_tv = {x: p for x, p in tv.items() if x not in plan.r2}
        for w, (s, t) in plan.pr_lex_min.items():
            new_tv[w] = tv[s] + trees[t][w]
        assert_tree(new_tv, plan.pr_lex_min, f"BFS tree of {v!r}")
        out[v] = new_tv
    return BFSForest(out)
