"""Brute-force reference computations.

Everything here recomputes from scratch.  These functions back
classification, rebuilds and the test-suite, and are barred from the
incremental update paths: the engine runs those inside ``guard.forbid()``
and every oracle entry point records (and refuses) a call made while the
guard is up.

Graphs are plain adjacency mappings ``{vertex: set_of_neighbours}``; rotation
systems map each vertex to the list of its neighbours in anticlockwise order
(list index = embedding number).
"""

from __future__ import annotations

import functools
import itertools
import threading
from collections import deque
from contextlib import contextmanager
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import networkx as nx

Adjacency = Mapping[Hashable, Iterable[Hashable]]
Rotation = Mapping[Hashable, Sequence[Hashable]]


class OracleForbidden(RuntimeError):
    pass


class _Guard(threading.local):
    def __init__(self) -> None:
        self.depth = 0
        self.violations = 0
        self.calls = 0

    @contextmanager
    def forbid(self):
        self.depth += 1
        try:
            yield
        finally:
            self.depth -= 1

    @property
    def active(self) -> bool:
        return self.depth > 0

    def reset(self) -> None:
        self.violations = 0
        self.calls = 0


guard = _Guard()


def _oracle(fn: Callable) -> Callable:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        guard.calls += 1
        if guard.active:
            guard.violations += 1
            raise OracleForbidden(f"{fn.__name__} called from an incremental update path")
        return fn(*args, **kwargs)

    return wrapper


def adjacency(edges: Iterable[tuple], vertices: Iterable = ()) -> dict:
    adj: dict = {v: set() for v in vertices}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def edge_count(adj: Adjacency) -> int:
    return sum(len(ns) for ns in adj.values()) // 2


def _sorted(items, key):
    return sorted(items, key=key) if key is not None else sorted(items, key=repr)


def _bfs_levels(adj: Adjacency, v) -> dict:
    level = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in level:
                level[w] = level[u] + 1
                queue.append(w)
    return level


@_oracle
def scratch_bfs(adj: Adjacency, v, key: Callable | None = None) -> tuple[dict, dict]:
    """Distances from ``v`` and a shortest-path tree.

    The parent of each vertex is its least neighbour one level up, where
    "least" follows ``key`` (the maintained order when called from the
    engine).  Returns ``(level, parent)``; the root has parent None.
    """
    level = _bfs_levels(adj, v)
    parent = {v: None}
    for x, lx in level.items():
        if x == v:
            continue
        ups = [y for y in adj[x] if level.get(y) == lx - 1]
        parent[x] = _sorted(ups, key)[0]
    return level, parent


@_oracle
def all_pairs_distances(adj: Adjacency) -> dict:
    return {v: _bfs_levels(adj, v) for v in adj}


@_oracle
def connected(adj: Adjacency, removed: frozenset = frozenset()) -> bool:
    verts = [v for v in adj if v not in removed]
    if not verts:
        return True
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


@_oracle
def separating_pairs(adj: Adjacency, first_only: bool = False) -> set:
    """Every pair {u, v} whose removal disconnects the graph."""
    verts = list(adj)
    found = set()
    for u, v in itertools.combinations(verts, 2):
        if len(verts) - 2 < 2:
            continue
        if not connected.__wrapped__(adj, frozenset((u, v))):
            found.add(frozenset((u, v)))
            if first_only:
                break
    return found


def _next_dart(rot: Rotation, pos: Mapping, u, v):
    # arriving at v from u, leave along the edge just clockwise of (v, u)
    ring = rot[v]
    return v, ring[(pos[v][u] - 1) % len(ring)]


@_oracle
def faces(rot: Rotation) -> list[tuple]:
    """Face boundaries as vertex cycles, each traced anticlockwise."""
    pos = {v: {x: i for i, x in enumerate(ring)} for v, ring in rot.items()}
    seen = set()
    out = []
    for u, ring in rot.items():
        for v in ring:
            if (u, v) in seen:
                continue
            cycle = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                cycle.append(dart[0])
                dart = _next_dart(rot, pos, *dart)
            out.append(tuple(cycle))
    return out


@_oracle
def check_embedding(adj: Adjacency, rot: Rotation) -> int | None:
    """Face count if ``rot`` is a planar rotation system of ``adj``, else None."""
    verts = [v for v in adj if adj[v]]
    for v in verts:
        ring = rot.get(v, ())
        if len(ring) != len(set(ring)) or set(ring) != set(adj[v]):
            return None
    if any(rot.get(v) for v in adj if not adj[v]) or set(rot) - set(adj):
        return None
    rot = {v: rot[v] for v in verts}
    fs = faces.__wrapped__(rot)
    darts = [d for cyc in fs for d in zip(cyc, cyc[1:] + cyc[:1])]
    if len(darts) != len(set(darts)) or len(darts) != 2 * edge_count(adj):
        return None
    n, m, f = len(verts), edge_count(adj), len(fs)
    if n - m + f != 2:
        return None
    return f


@_oracle
def planar_rotation(adj: Adjacency, key: Callable | None = None) -> dict | None:
    """An anticlockwise planar rotation system, or None if nonplanar.

    Backed by networkx's planarity test.  Each rotation starts at the
    vertex's least neighbour under ``key`` so the result is reproducible.
    """
    verts = _sorted([v for v in adj if adj[v]], key)
    g = nx.Graph()
    g.add_nodes_from(verts)
    g.add_edges_from((u, w) for u in verts for w in _sorted(adj[u], key))
    ok, emb = nx.check_planarity(g)
    if not ok:
        return None
    rot = {}
    for v in verts:
        ring = list(reversed(list(emb.neighbors_cw_order(v))))
        first = ring.index(_sorted(ring, key)[0])
        rot[v] = ring[first:] + ring[:first]
    return rot


@_oracle
def rotation_systems(adj: Adjacency) -> Iterable[dict]:
    """Every rotation system of ``adj`` (exponential; tiny graphs only)."""
    verts = [v for v in adj if adj[v]]
    choices = []
    for v in verts:
        ns = sorted(adj[v], key=repr)
        head, rest = ns[0], ns[1:]
        choices.append([[head, *p] for p in itertools.permutations(rest)])
    for combo in itertools.product(*choices):
        yield dict(zip(verts, combo))


@_oracle
def planar_by_enumeration(adj: Adjacency) -> bool:
    return any(check_embedding.__wrapped__(adj, r) is not None for r in rotation_systems.__wrapped__(adj))


def _cbfs(adj: Adjacency, rot: Rotation, v, ve) -> tuple[list, dict]:
    pos = {u: {x: i for i, x in enumerate(ring)} for u, ring in rot.items()}
    parent = {v: ve}
    tree = []
    visited = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        up = parent[u]
        d = len(rot[u])
        k = pos[u][up]
        # the root sweeps its whole rotation starting at ve; others start past the parent
        steps = range(d) if u == v else range(1, d)
        for i in steps:
            w = rot[u][(k + i) % d]
            if w not in visited:
                visited.add(w)
                parent[w] = u
                tree.append((u, w))
                queue.append(w)
    return tree, parent


@_oracle
def scratch_cbfs(adj: Adjacency, rot: Rotation, v, ve) -> list[tuple]:
    """Tree edges (parent, child) of the canonical BFS tree [v, ve], in visit order."""
    return _cbfs(adj, rot, v, ve)[0]


@_oracle
def cbfs_rootpaths(adj: Adjacency, rot: Rotation, v, ve) -> dict:
    """Root path (v, ..., x) for every x of the canonical BFS tree [v, ve]."""
    tree, _ = _cbfs(adj, rot, v, ve)
    paths = {v: (v,)}
    for u, w in tree:
        paths[w] = paths[u] + (w,)
    return paths


def _path_key(rot: Rotation, path: Sequence, ve) -> tuple:
    pos = {u: {x: i for i, x in enumerate(ring)} for u, ring in rot.items()}
    key = []
    prev = ve
    for u, x in zip(path, path[1:]):
        d = len(rot[u])
        key.append((pos[u][x] - pos[u][prev]) % d)
        prev = u
    return tuple(key)


@_oracle
def shortest_paths(adj: Adjacency, v, x) -> list[tuple]:
    """All shortest v-x paths, by exhaustive extension over BFS layers."""
    level = _bfs_levels(adj, x)
    if v not in level:
        return []
    out = []

    def extend(path):
        u = path[-1]
        if u == x:
            out.append(tuple(path))
            return
        for w in adj[u]:
            if level[w] == level[u] - 1:
                extend(path + [w])

    extend([v])
    return out


@_oracle
def lexmin_shortest_path(adj: Adjacency, rot: Rotation, v, ve, x) -> tuple:
    """The least shortest v-x path under the canonical path order for [v, ve].

    Among all shortest paths, compares the sequences of parent-normalised
    embedding numbers, the root being normalised at ``ve``.
    """
    paths = shortest_paths.__wrapped__(adj, v, x)
    return min(paths, key=lambda p: _path_key(rot, p, ve))


@_oracle
def brute_iso(g: Adjacency, h: Adjacency) -> tuple[bool, dict | None]:
    """Backtracking isomorphism search over degree-compatible assignments."""
    gv = [v for v in g if g[v]]
    hv = [v for v in h if h[v]]
    if len(gv) != len(hv) or edge_count(g) != edge_count(h):
        return False, None
    if sorted(len(g[v]) for v in gv) != sorted(len(h[v]) for v in hv):
        return False, None
    # visit G in BFS order so each new vertex has mapped neighbours to check
    order = []
    seen = set()
    for s in sorted(gv, key=lambda v: -len(g[v])):
        if s in seen:
            continue
        seen.add(s)
        q = deque([s])
        while q:
            u = q.popleft()
            order.append(u)
            for w in g[u]:
                if w not in seen:
                    seen.add(w)
                    q.append(w)
    phi: dict = {}
    used: set = set()

    def ok(u, c):
        if len(g[u]) != len(h[c]):
            return False
        for w in g[u]:
            if w in phi and phi[w] not in h[c]:
                return False
        mapped_nbrs = sum(1 for w in g[u] if w in phi)
        return mapped_nbrs == sum(1 for y in h[c] if y in used)

    def search(i):
        if i == len(order):
            return True
        u = order[i]
        for c in hv:
            if c in used or not ok(u, c):
                continue
            phi[u] = c
            used.add(c)
            if search(i + 1):
                return True
            del phi[u]
            used.discard(c)
        return False

    if search(0):
        return True, dict(phi)
    return False, None


def is_isomorphism(g: Adjacency, h: Adjacency, phi: Mapping) -> bool:
    """True iff ``phi`` is a bijection preserving adjacency both ways."""
    gv = [v for v in g if g[v]]
    hv = {v for v in h if h[v]}
    if set(phi) != set(gv) or set(phi.values()) != hv or len(set(phi.values())) != len(gv):
        return False
    for u in gv:
        for w in gv:
            if (w in g[u]) != (phi[w] in h[phi[u]]):
                return False
    return True
