"""Cross-check a snapshot against the brute-force oracles.

Used by ``Engine(check=True)``, the CLI's ``--check`` flag and the tests.
Never called from an update path.
"""

from __future__ import annotations

from . import oracle
from .embedding import canonical_faces, from_rotation
from .store import GraphState, RelationStore, classify


class CheckFailed(AssertionError):
    pass


def bfs_problems(store: RelationStore) -> list[str]:
    out = []
    dist = oracle.all_pairs_distances(store.adj)
    for v, tree in store.bfs.trees.items():
        want = dist.get(v, {v: 0})
        got = {x: len(p) - 1 for x, p in tree.items()}
        if got != want:
            out.append(f"distances from {v} differ from scratch search")
            continue
        for x, p in tree.items():
            if p[0] != v or p[-1] != x:
                out.append(f"tree of {v}: bad path to {x}")
            elif len(p) > 1 and (tree.get(p[-2]) != p[:-1] or p[-2] not in store.adj[x]):
                out.append(f"tree of {v}: {x} does not hang off its parent")
    return out


def embedding_problems(store: RelationStore) -> list[str]:
    emb = store.emb
    g = {v: ns for v, ns in store.adj.items() if ns}
    out = []
    for v, ring in emb.rot.items():
        if sorted(emb.pos[v].values()) != list(range(len(g.get(v, ())))):
            out.append(f"numbers around {v} are not 0..d-1")
    f = oracle.check_embedding(g, emb.rot)
    if f is None:
        out.append("rotation system fails the face check")
        return out
    if f != emb.face_count:
        out.append(f"{emb.face_count} faces stored, {f} traced")
    n, m = len(g), oracle.edge_count(g)
    if n - m + emb.face_count != 2:
        out.append("Euler formula fails")
    traced = from_rotation(emb.rot)
    if canonical_faces(traced) != canonical_faces(emb):
        out.append("stored face cycles differ from traced ones")
    return out


def cbfs_problems(store: RelationStore) -> list[str]:
    out = []
    g = {v: ns for v, ns in store.adj.items() if ns}
    for forest, emb in ((store.cbfs, store.emb), (store.cbfs_flip, store.emb.flipped())):
        want_keys = {(v, ve) for v in g for ve in g[v]}
        if set(forest.trees) != want_keys:
            out.append("canonical trees do not match the directed edges")
            continue
        for (v, ve), tree in forest.trees.items():
            want = oracle.cbfs_rootpaths(g, emb.rot, v, ve)
            if dict(tree) != want:
                out.append(f"tree [{v},{ve}] differs from the canonical search")
    return out


def lexmin_problems(store: RelationStore) -> list[str]:
    """Every tree path equals the least shortest path by brute enumeration."""
    out = []
    g = {v: ns for v, ns in store.adj.items() if ns}
    for (v, ve), tree in store.cbfs.trees.items():
        for x, p in tree.items():
            if oracle.lexmin_shortest_path(g, store.emb.rot, v, ve, x) != p:
                out.append(f"tree [{v},{ve}] path to {x} is not the least shortest path")
    return out


def problems(store: RelationStore) -> list[str]:
    out = []
    for u, ns in store.adj.items():
        for w in ns:
            if u not in store.adj.get(w, ()):
                out.append(f"edge {u}-{w} stored one way only")
    state = classify(store.adj)
    if state is not store.state:
        out.append(f"state tag {store.state}, graph is {state}")
    out += bfs_problems(store)
    if store.state is GraphState.A:
        out += embedding_problems(store)
        out += cbfs_problems(store)
    elif store.emb is not None or store.cbfs is not None:
        out.append("state B snapshot carries embedding relations")
    return out


def assert_consistent(store: RelationStore) -> None:
    found = problems(store)
    if found:
        raise CheckFailed("; ".join(found[:5]))


def tree_walk_path(tree, x, y) -> list:
    """x-y path found by walking parent links (independent of root-path slicing)."""
    def up(q):
        chain = [q]
        while len(tree[chain[-1]]) > 1:
            chain.append(tree[chain[-1]][-2])
        return chain

    cx, cy = up(x), up(y)
    common = set(cx) & set(cy)
    i = next(k for k, q in enumerate(cx) if q in common)
    j = cy.index(cx[i])
    return cx[: i + 1] + list(reversed(cy[:j]))

