"""Graph fixtures and random generators shared by the tests, CLI and acceptance run."""

from __future__ import annotations

import random
from typing import Iterator

import networkx as nx
from scipy.spatial import Delaunay

from . import oracle
from .store import GraphState, classify


def k4():
    return [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def wheel(k: int):
    """Hub 0 joined to a rim cycle 1..k."""
    rim = [(i, i % k + 1) for i in range(1, k + 1)]
    return rim + [(0, i) for i in range(1, k + 1)]


def prism(k: int):
    """Two k-cycles 0..k-1 and k..2k-1 joined by rungs."""
    out = []
    for i in range(k):
        out.append((i, (i + 1) % k))
        out.append((k + i, k + (i + 1) % k))
        out.append((i, k + i))
    return out


def cube():
    return prism(4)


def dodecahedron():
    return sorted(tuple(sorted(e)) for e in nx.dodecahedral_graph().edges())


def octahedron():
    return sorted(tuple(sorted(e)) for e in nx.octahedral_graph().edges())


def icosahedron():
    return sorted(tuple(sorted(e)) for e in nx.icosahedral_graph().edges())


def truncated_prism():
    """Triangular prism with one corner cut off: cubic, 8 vertices, 12 edges, not the cube."""
    a = [0, 1, 2]
    b = [3, 4, 5]
    t = [6, 7, 8]
    edges = [(a[1], a[2]), (b[0], b[1]), (b[1], b[2]), (b[0], b[2]), (a[1], b[1]), (a[2], b[2])]
    edges += [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
    edges += [(t[0], a[1]), (t[1], a[2]), (t[2], b[0])]
    return edges


def figure_wheel():
    """Wheel with hub w and rim u-x-y-v, labelled as in the worked CBFS example.

    Rotations (anticlockwise): u: x v w, x: u w y, y: x w v, v: u y w, w: u v y x.
    """
    edges = [("u", "x"), ("x", "y"), ("y", "v"), ("v", "u"), ("w", "u"), ("w", "x"), ("w", "y"), ("w", "v")]
    rot = {
        "u": ("x", "v", "w"),
        "x": ("u", "w", "y"),
        "y": ("x", "w", "v"),
        "v": ("u", "y", "w"),
        "w": ("u", "v", "y", "x"),
    }
    return edges, rot


def corpus() -> dict:
    """The named fixture corpus: K4, wheels W5..W8, prisms, cube, dodecahedron."""
    out = {"K4": k4()}
    for k in range(5, 9):
        out[f"W{k}"] = wheel(k)
    for k in (3, 5, 6):
        out[f"prism{k}"] = prism(k)
    out["cube"] = cube()
    out["dodecahedron"] = dodecahedron()
    return out


def adjacency(edges):
    return oracle.adjacency(edges)


def relabel(edges, rng: random.Random, prefix: str = "r"):
    """Copy of ``edges`` under a random bijection onto fresh string symbols."""
    verts = sorted({v for e in edges for v in e}, key=repr)
    names = [f"{prefix}{i}" for i in range(len(verts))]
    rng.shuffle(names)
    phi = dict(zip(verts, names))
    out = [(phi[a], phi[b]) for a, b in edges]
    rng.shuffle(out)
    return out, phi


def random_3c_planar(n: int, rng: random.Random, thin: float | None = None):
    """A random 3-connected planar graph on n vertices (4 <= n).

    Starts from a Delaunay triangulation of n-1 random points, makes it
    maximal planar by joining every hull vertex to vertex n-1, then deletes
    a random number of edges while the graph stays 3-connected.
    """
    while True:
        pts = [(rng.random(), rng.random()) for _ in range(n - 1)]
        try:
            tri = Delaunay(pts)
        except Exception:
            continue
        edges = set()
        for s in tri.simplices:
            s = [int(x) for x in s]
            for i in range(3):
                u, w = s[i], s[(i + 1) % 3]
                edges.add((min(u, w), max(u, w)))
        # cone the hull from an extra vertex: a triangulation of the sphere
        hull = {int(x) for e in tri.convex_hull for x in e}
        edges |= {(h, n - 1) for h in hull}
        adj = oracle.adjacency(edges)
        if len(adj) == n and classify(adj) is GraphState.A:
            break
    target = rng.random() if thin is None else thin
    cand = sorted(edges)
    rng.shuffle(cand)
    budget = int(target * (len(edges) - (3 * n + 1) // 2))
    for e in cand:
        if budget <= 0:
            break
        trial = edges - {e}
        if classify(oracle.adjacency(trial)) is GraphState.A:
            edges = trial
            budget -= 1
    return sorted(edges)


def build_order(edges, rng: random.Random | None = None):
    """Insertion order for ``edges``; shuffled if ``rng`` given."""
    out = list(edges)
    if rng is not None:
        rng.shuffle(out)
    return out


def random_stream(rng: random.Random, n: int, ops: int, p_insert: float = 0.6) -> Iterator[tuple]:
    """Mixed ('insert'|'delete', a, b) requests over vertices 0..n-1, all valid."""
    present: set = set()
    plist: list = []
    for _ in range(ops):
        if plist and (rng.random() > p_insert or len(plist) == n * (n - 1) // 2):
            i = rng.randrange(len(plist))
            e = plist[i]
            plist[i] = plist[-1]
            plist.pop()
            present.discard(e)
            yield ("delete", *e)
            continue
        while True:
            a, b = rng.sample(range(n), 2)
            e = (min(a, b), max(a, b))
            if e not in present:
                break
        present.add(e)
        plist.append(e)
        yield ("insert", *e)


def perturbations(edges, rng: random.Random, steps: int) -> Iterator[tuple]:
    """Requests that keep a 3-connected planar graph 3-connected planar.

    Each step deletes an edge or inserts a chord between two cofacial
    non-adjacent vertices, chosen at random among moves whose result is
    still in state A.  Deleted edges are favoured for re-insertion.
    """
    cur = {tuple(sorted(e, key=repr)) for e in edges}
    verts = sorted({v for e in cur for v in e}, key=repr)
    removed: list = []
    for _ in range(steps):
        moves = []
        for e in sorted(cur, key=repr):
            moves.append(("delete", e))
        for i, u in enumerate(verts):
            for w in verts[i + 1:]:
                if (u, w) not in cur:
                    moves.append(("insert", (u, w)))
        rng.shuffle(moves)
        # bias toward undoing an earlier deletion
        for e in removed:
            if e not in cur and rng.random() < 0.5:
                moves.insert(0, ("insert", e))
        for kind, e in moves:
            trial = cur - {e} if kind == "delete" else cur | {e}
            if classify(oracle.adjacency(trial)) is GraphState.A:
                cur = trial
                if kind == "delete":
                    removed.append(e)
                yield (kind, *e)
                break
        else:
            return
