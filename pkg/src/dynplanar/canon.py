"""Vertex canons and whole-graph signatures built from canonical BFS trees.

The canon of x in tree [v, v_e] is the set of pairs (level, emnum) over the
vertices q of the tree path v..x, where emnum is q's normalised number around
its parent; the root contributes (0, 0).  Both coordinates are plain ints, so
canons of two unrelated graphs can be compared directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .cbfs import emnum


@dataclass(frozen=True)
class GraphSignature:
    root: tuple
    flipped: bool
    canons: frozenset
    edges: frozenset
    by_canon: Mapping = field(compare=False, repr=False, default=None)

    def matches(self, other: "GraphSignature") -> bool:
        return self.canons == other.canons and self.edges == other.edges


def tree_canons(tree: Mapping, pos: Mapping, ve) -> dict:
    out = {}
    for x, p in sorted(tree.items(), key=lambda kv: len(kv[1])):
        if len(p) == 1:
            out[x] = frozenset({(0, 0)})
            continue
        anchor = p[-3] if len(p) > 2 else ve
        out[x] = out[p[-2]] | {(len(p) - 1, emnum(pos, p[-2], anchor, x))}
    return out


def _view(store, flipped: bool):
    store.require_a()
    if flipped:
        return store.cbfs_flip, store.emb.flipped().pos
    return store.cbfs, store.emb.pos


def vertex_canon(store, v, ve, x, flipped: bool = False) -> frozenset:
    forest, pos = _view(store, flipped)
    tree = forest.trees[(v, ve)]
    p = tree[x]
    pairs = {(0, 0)}
    for i in range(1, len(p)):
        anchor = p[i - 2] if i >= 2 else ve
        pairs.add((i, emnum(pos, p[i - 1], anchor, p[i])))
    return frozenset(pairs)


def _signature(tree, pos, root, flipped, edges) -> GraphSignature:
    cs = tree_canons(tree, pos, root[1])
    return GraphSignature(
        root=root,
        flipped=flipped,
        canons=frozenset(cs.values()),
        edges=frozenset(frozenset((cs[u], cs[w])) for u, w in edges),
        by_canon={c: x for x, c in cs.items()},
    )


def graph_signature(store, v, ve, flipped: bool = False) -> GraphSignature:
    forest, pos = _view(store, flipped)
    return _signature(forest.trees[(v, ve)], pos, (v, ve), flipped, store.edges())


def isomorphic(g, h) -> tuple[bool, dict | None]:
    """Compare one fixed tree of ``g`` with every tree of ``h``, both orientations.

    Returns the vertex bijection read off equal canons on success.
    """
    g.require_a()
    h.require_a()
    ge, he = g.edges(), h.edges()
    if len(ge) != len(he) or len(g.vertices) != len(h.vertices):
        return False, None
    root = ge[0]
    sig_g = graph_signature(g, *root)
    views = [(False, h.cbfs, h.emb.pos), (True, h.cbfs_flip, h.emb.flipped().pos)]
    for u in h.vertices:
        for w in sorted(h.adj[u], key=h.order.key):
            for flipped, forest, pos in views:
                sig_h = _signature(forest.trees[(u, w)], pos, (u, w), flipped, he)
                if sig_g.matches(sig_h):
                    phi = {x: sig_h.by_canon[c] for c, x in sig_g.by_canon.items()}
                    return True, phi
    return False, None
