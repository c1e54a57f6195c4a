"""The relation store and the engine that drives updates through it.

A ``RelationStore`` is an immutable snapshot.  ``update`` computes the next
snapshot from the current one and never touches the old one, so readers can
keep using whatever snapshot they hold while a writer moves on.

Graphs that are 3-connected and planar (state A) carry an embedding and the
canonical BFS forests, updated incrementally while the graph stays in A.
Everything else is state B, where only order/arithmetic and the BFS forest
are kept.  Entering A triggers one full rebuild.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Hashable, Mapping

from . import bfs, canon, cbfs, embedding, oracle
from .bfs import BFSForest
from .cbfs import CBFSForest
from .embedding import PlanarEmbedding
from .order import Order, UnknownElement


class GraphState(str, Enum):
    A = "A"
    B = "B"

    def __str__(self) -> str:
        return self.value


class RejectedRequest(ValueError):
    pass


class StateViolation(RuntimeError):
    """A state-A operation was asked of a graph in state B."""


@dataclass(frozen=True)
class UpdateRequest:
    kind: str
    a: Hashable
    b: Hashable

    def __post_init__(self):
        if self.kind not in ("insert", "delete"):
            raise ValueError(f"unknown request kind {self.kind!r}")


def classify(adj: Mapping) -> GraphState:
    """A iff the graph on non-isolated vertices is 3-connected and planar."""
    g = {v: ns for v, ns in adj.items() if ns}
    n = len(g)
    m = oracle.edge_count(g)
    if n < 4 or m > 3 * n - 6:
        return GraphState.B
    if min(len(ns) for ns in g.values()) < 3:
        return GraphState.B
    if not oracle.connected(g):
        return GraphState.B
    if oracle.planar_rotation(g) is None:
        return GraphState.B
    if oracle.separating_pairs(g, first_only=True):
        return GraphState.B
    return GraphState.A


RELATIONS = ("U", "O", "Sum", "Edge", "Level", "BFSEdge", "Path", "Emb", "Face", "CBFSEdges", "CPath")


@dataclass(frozen=True)
class RelationStore:
    version: int = 0
    rebuilds: int = 0
    state: GraphState = GraphState.B
    order: Order = field(default_factory=Order)
    adj: Mapping = None
    bfs: BFSForest = field(default_factory=BFSForest)
    emb: PlanarEmbedding | None = None
    cbfs: CBFSForest | None = None
    # canonical trees of the mirror image, used for flipped signatures
    cbfs_flip: CBFSForest | None = None

    def __post_init__(self):
        if self.adj is None:
            object.__setattr__(self, "adj", {})

    def has_edge(self, a, b) -> bool:
        return b in self.adj.get(a, ())

    def edges(self) -> list[tuple]:
        key = self.order.key
        out = []
        for u in sorted(self.adj, key=key):
            for w in sorted(self.adj[u], key=key):
                if key(u) < key(w):
                    out.append((u, w))
        return out

    @property
    def vertices(self) -> list:
        return [v for v in self.order if self.adj.get(v)]

    def require_a(self):
        if self.state is not GraphState.A:
            raise StateViolation("graph is not 3-connected planar")

    def mirrored(self) -> "RelationStore":
        """Same graph with the embedding replaced by its mirror image."""
        self.require_a()
        return replace(self, emb=self.emb.flipped(), cbfs=self.cbfs_flip, cbfs_flip=self.cbfs)

    def relation(self, name: str) -> frozenset:
        o = self.order
        if name == "U":
            return o.relation_u()
        if name == "O":
            return o.relation_o()
        if name == "Sum":
            return o.relation_sum()
        if name == "Edge":
            return frozenset((u, w) for u, ns in self.adj.items() for w in ns)
        if name == "Level":
            return frozenset(self.bfs.level_tuples(o))
        if name == "BFSEdge":
            return frozenset(self.bfs.edge_tuples())
        if name == "Path":
            return frozenset(self.bfs.path_tuples())
        if name in ("Emb", "Face", "CBFSEdges", "CPath"):
            if self.emb is None:
                return frozenset()
            if name == "Emb":
                return frozenset(self.emb.emb_tuples(o))
            if name == "Face":
                return frozenset(self.emb.face_tuples())
            if name == "CBFSEdges":
                return frozenset(self.cbfs.edge_tuples())
            return frozenset(self.cbfs.path_tuples())
        raise KeyError(name)

    def cardinalities(self) -> dict:
        """Tuple count of every relation, without materialising the big ones."""
        o = self.order
        out = {
            "U": len(o),
            "O": len(o.relation_o()),
            "Sum": len(o.relation_sum()),
            "Edge": sum(len(ns) for ns in self.adj.values()),
            "Level": sum(len(t) for t in self.bfs.trees.values()),
            "BFSEdge": 2 * sum(len(t) - 1 for t in self.bfs.trees.values()),
            "Path": self.bfs.path_count(),
        }
        if self.emb is None:
            out.update(Emb=0, Face=0, CBFSEdges=0, CPath=0)
        else:
            out["Emb"] = sum(len(r) for r in self.emb.rot.values())
            out["Face"] = self.emb.face_tuple_count()
            out["CBFSEdges"] = sum(len(t) - 1 for t in self.cbfs.trees.values())
            out["CPath"] = self.cbfs.path_count()
        return out


def _with_edge(adj: Mapping, a, b, present: bool) -> dict:
    out = dict(adj)
    if present:
        out[a] = frozenset(out.get(a, frozenset()) | {b})
        out[b] = frozenset(out.get(b, frozenset()) | {a})
    else:
        out[a] = out[a] - {b}
        out[b] = out[b] - {a}
    return out


def validate(store: RelationStore, req: UpdateRequest) -> None:
    a, b = req.a, req.b
    if a == b:
        raise RejectedRequest(f"self-loop {a}")
    if req.kind == "insert" and store.has_edge(a, b):
        raise RejectedRequest(f"edge {a} {b} already present")
    if req.kind == "delete" and not store.has_edge(a, b):
        raise RejectedRequest(f"edge {a} {b} not present")


def rebuild_all(store: RelationStore) -> RelationStore:
    """Recompute embedding and canonical forests from scratch (oracle-backed)."""
    if store.state is not GraphState.A:
        raise StateViolation("rebuild requested outside state A")
    g = {v: ns for v, ns in store.adj.items() if ns}
    rot = oracle.planar_rotation(g, key=store.order.key)
    emb = embedding.from_rotation(rot, store.order)
    if oracle.check_embedding(g, emb.rot) != emb.face_count:
        raise AssertionError("planar rotation failed the face check")
    for v in store.bfs.trees:
        levels, _ = oracle.scratch_bfs(store.adj, v)
        got = {x: len(p) - 1 for x, p in store.bfs.trees[v].items()}
        if got != levels:
            raise AssertionError(f"BFS tree of {v!r} disagrees with scratch distances")
    return replace(
        store,
        state=GraphState.A,
        rebuilds=store.rebuilds + 1,
        emb=emb,
        cbfs=cbfs.rebuild(g, emb),
        cbfs_flip=cbfs.rebuild(g, emb.flipped()),
    )


def update(store: RelationStore, req: UpdateRequest) -> RelationStore:
    """The next snapshot after ``req``; ``store`` itself is left alone."""
    validate(store, req)
    a, b = req.a, req.b
    was_a = store.state is GraphState.A
    if req.kind == "insert":
        order = store.order.register_pair(a, b)
        adj = _with_edge(store.adj, a, b, True)
        with oracle.guard.forbid():
            forest = bfs.insert(store.bfs.with_vertex(a).with_vertex(b), a, b)
    else:
        order = store.order
        adj = _with_edge(store.adj, a, b, False)
        with oracle.guard.forbid():
            forest = bfs.delete(store.bfs, order, a, b, adj)

    state = classify(adj)
    nxt = replace(store, version=store.version + 1, order=order, adj=adj, bfs=forest, state=state)
    if state is GraphState.B:
        return replace(nxt, emb=None, cbfs=None, cbfs_flip=None)
    if not was_a:
        return rebuild_all(nxt)

    with oracle.guard.forbid():
        if req.kind == "insert":
            emb = embedding.insert(store.emb, a, b)
            fwd = cbfs.insert(store.cbfs, emb, store.bfs, forest, a, b)
            mir = cbfs.insert(store.cbfs_flip, emb.flipped(), store.bfs, forest, a, b)
        else:
            emb = embedding.delete(store.emb, a, b)
            fwd = cbfs.delete(store.cbfs, emb, forest, a, b)
            mir = cbfs.delete(store.cbfs_flip, emb.flipped(), forest, a, b)
    return replace(nxt, emb=emb, cbfs=fwd, cbfs_flip=mir)


class Engine:
    """Single-writer holder of the current snapshot.

    ``check=True`` runs the full oracle cross-check after every update and
    raises ``verify.CheckFailed`` on the first disagreement.
    """

    def __init__(self, check: bool = False):
        self.store = RelationStore()
        self.check = check
        self._lock = threading.Lock()

    @classmethod
    def from_edges(cls, edges, check: bool = False) -> "Engine":
        eng = cls(check=check)
        for a, b in edges:
            eng.insert(a, b)
        return eng

    # updates

    def apply_request(self, req: UpdateRequest) -> GraphState:
        with self._lock:
            new = update(self.store, req)
            if self.check:
                from .verify import assert_consistent

                assert_consistent(new)
            self.store = new
            return new.state

    def insert(self, a, b) -> GraphState:
        return self.apply_request(UpdateRequest("insert", a, b))

    def delete(self, a, b) -> GraphState:
        return self.apply_request(UpdateRequest("delete", a, b))

    # queries, each against one snapshot

    @property
    def state(self) -> GraphState:
        return self.store.state

    @property
    def rebuilds(self) -> int:
        return self.store.rebuilds

    def classify(self) -> GraphState:
        return classify(self.store.adj)

    def distance(self, v, x):
        s = self.store
        return bfs.distance(s.bfs, s.order, v, x)

    def path_vertices(self, v, x, y):
        s = self.store
        return bfs.path_vertices(s.bfs, s.order, v, x, y)

    def face_count(self) -> int:
        s = self.store
        s.require_a()
        return s.emb.face_count

    def face_contains(self, f, x, y, z) -> bool:
        s = self.store
        s.require_a()
        return s.emb.face_contains(f, x, y, z)

    def _tree(self, s: RelationStore, v, ve):
        s.require_a()
        try:
            return s.cbfs.trees[(v, ve)]
        except KeyError:
            raise StateViolation(f"({v}, {ve}) is not an edge") from None

    def normalize(self, v, ve) -> dict:
        """Embedding numbers renumbered per tree [v, ve]: ``{t: {x: n}}``."""
        s = self.store
        tree = self._tree(s, v, ve)
        out = {}
        for t, p in tree.items():
            anchor = p[-2] if len(p) > 1 else ve
            out[t] = s.emb.normalized(t, anchor)
        return out

    def flip(self) -> PlanarEmbedding:
        s = self.store
        s.require_a()
        return s.emb.flipped()

    def emnum_rooted(self, v, ve, u, x) -> int:
        s = self.store
        tree = self._tree(s, v, ve)
        if x not in s.adj.get(u, ()) or u not in tree:
            raise StateViolation(f"({u}, {x}) is not an edge of tree [{v}, {ve}]")
        p = tree[u]
        anchor = p[-2] if len(p) > 1 else ve
        return cbfs.emnum(s.emb.pos, u, anchor, x)

    def lca(self, v, ve, x, y):
        s = self.store
        tree = self._tree(s, v, ve)
        for q in (x, y):
            if q not in tree:
                raise UnknownElement(q)
        return cbfs.lca(tree, x, y)

    def path_less(self, v, ve, x1, x2) -> bool:
        s = self.store
        return cbfs.path_less(self._tree(s, v, ve), s.emb.pos, ve, x1, x2)

    def vertex_canon(self, v, ve, x, flipped: bool = False) -> frozenset:
        return canon.vertex_canon(self.store, v, ve, x, flipped)

    def graph_signature(self, v, ve, flipped: bool = False) -> canon.GraphSignature:
        return canon.graph_signature(self.store, v, ve, flipped)

    def isomorphic(self, other) -> tuple[bool, dict | None]:
        o = other.store if isinstance(other, Engine) else other
        return canon.isomorphic(self.store, o)

    def relation(self, name: str) -> frozenset:
        return self.store.relation(name)

    def cardinalities(self) -> dict:
        return self.store.cardinalities()
