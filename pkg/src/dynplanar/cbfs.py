"""Canonical BFS trees [v, v_e] for every directed edge, kept current in state A.

Tree [v, v_e] is the one produced by the canonical search: v sweeps its
rotation starting at v_e, every other vertex sweeps starting just past its
parent.  Equivalently, the tree path to x is the least shortest v-x path
when a path is read as its sequence of normalised embedding numbers

    emnum(u, x) = (n_u(x) - n_u(parent of u)) mod d_u,   parent of v := v_e

and sequences of equal length are compared lexicographically.  The update
rules below rely on that reading: each one compares candidate paths by where
they first diverge and splices pieces of trees from the previous snapshot.

Trees use the same layout as the BFS forest: vertex -> root path tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from . import oracle
from .bfs import BFSForest, _cut_side, assert_tree, tree_path
from .embedding import PlanarEmbedding


class CBFSError(AssertionError):
    pass


def emnum(pos: Mapping, u, anchor, x) -> int:
    ring = pos[u]
    return (ring[x] - ring[anchor]) % len(ring)


def path_key(pos: Mapping, path, ve) -> tuple:
    out = []
    prev = ve
    for u, x in zip(path, path[1:]):
        out.append(emnum(pos, u, prev, x))
        prev = u
    return tuple(out)


@dataclass(frozen=True)
class CBFSForest:
    trees: Mapping = field(default_factory=dict)

    def edge_tuples(self) -> Iterator[tuple]:
        for (v, ve), tree in self.trees.items():
            for x, p in tree.items():
                if len(p) > 1:
                    yield (v, ve, p[-2], x)

    def path_tuples(self) -> Iterator[tuple]:
        for (v, ve), tree in self.trees.items():
            for x in tree:
                for y in tree:
                    for z in tree_path(tree, x, y):
                        yield (v, ve, x, y, z)

    def path_count(self) -> int:
        total = 0
        for tree in self.trees.values():
            for x in tree:
                for y in tree:
                    total += len(tree_path(tree, x, y))
        return total

    def tree_edges(self, v, ve) -> set:
        return {(p[-2], x) for x, p in self.trees[(v, ve)].items() if len(p) > 1}


def rebuild(adj: Mapping, emb: PlanarEmbedding) -> CBFSForest:
    """Every tree from scratch with the canonical search (oracle-backed)."""
    trees = {}
    for v, ring in emb.rot.items():
        for ve in ring:
            trees[(v, ve)] = oracle.cbfs_rootpaths(adj, emb.rot, v, ve)
    return CBFSForest(trees)


def lca(tree: Mapping, x, y):
    px, py = tree[x], tree[y]
    i = 0
    while i < len(px) and i < len(py) and px[i] == py[i]:
        i += 1
    return px[i - 1]


def path_less(tree: Mapping, pos: Mapping, ve, x1, x2) -> bool:
    """Canonical path order: shorter first, then by the branch at the LCA."""
    p1, p2 = tree[x1], tree[x2]
    if len(p1) != len(p2):
        return len(p1) < len(p2)
    return path_key(pos, p1, ve) < path_key(pos, p2, ve)


def _first_next_level(pos, u, anchor, level: Mapping, want: int):
    """Neighbour z of u with level[z] == want and least emnum anchored at ``anchor``."""
    best, best_n = None, None
    for z in pos[u]:
        p = level.get(z)
        if p is None or len(p) - 1 != want:
            continue
        n = emnum(pos, u, anchor, z)
        if best_n is None or n < best_n:
            best, best_n = z, n
    return best


def insert(forest: CBFSForest, emb: PlanarEmbedding, bfs_pre: BFSForest, bfs_post: BFSForest, a, b) -> CBFSForest:
    """Account for the new edge {a, b}.

    ``emb`` and ``bfs_post`` already include the edge; ``forest`` and
    ``bfs_pre`` are the previous snapshot.
    """
    pos = emb.pos
    pre = forest.trees
    out = {}
    for key, T in pre.items():
        v, ve = key
        la, lb = len(T[a]) - 1, len(T[b]) - 1
        if la == lb:
            # an edge inside one level is on no shortest path from v
            out[key] = T
            continue
        alpha, beta, lal = (a, b, la) if la < lb else (b, a, lb)
        lv_post = bfs_post.trees[v]
        tb = bfs_pre.trees[beta]
        pa = T[alpha]
        beta_e = None
        new = None
        for w, p1 in T.items():
            lnew = lal + 1 + len(tb[w]) - 1
            lold = len(p1) - 1
            if lnew > lold:
                continue
            if lnew == lold:
                i = 0
                while i < len(pa) and p1[i] == pa[i]:
                    i += 1
                d, d1 = p1[i - 1], p1[i]
                d2 = pa[i] if i < len(pa) else beta
                anchor = p1[i - 2] if i >= 2 else ve
                if emnum(pos, d, anchor, d2) > emnum(pos, d, anchor, d1):
                    continue
            if w == beta:
                path = pa + (beta,)
            else:
                if beta_e is None:
                    beta_e = _first_next_level(pos, beta, alpha, lv_post, lal + 2)
                    if beta_e is None:
                        raise CBFSError(f"[{v!r},{ve!r}]: no way onward from {beta!r}")
                path = pa + pre[(beta, beta_e)][w]
            if new is None:
                new = dict(T)
            new[w] = path
        if new is None:
            out[key] = T
        else:
            assert_tree(new, new, f"CBFS tree [{v!r},{ve!r}]")
            out[key] = new

    # the two trees rooted along the new edge
    for r, s in ((a, b), (b, a)):
        lr = bfs_post.trees[r]
        ring = emb.rot[r]
        k = pos[r][s]
        around = ring[k:] + ring[:k]
        s_e = None
        tree = {r: (r,)}
        for w, pw in lr.items():
            if w == r:
                continue
            want = len(pw) - 2
            c = next(c for c in around if len(bfs_post.trees[c][w]) - 1 == want)
            if c != s:
                tree[w] = out[(r, c)][w]
            elif w == s:
                tree[w] = (r, s)
            else:
                if s_e is None:
                    s_e = _first_next_level(pos, s, r, lr, 2)
                tree[w] = (r,) + pre[(s, s_e)][w]
        assert_tree(tree, tree, f"CBFS tree [{r!r},{s!r}]")
        out[(r, s)] = tree
    return CBFSForest(out)


def delete(forest: CBFSForest, emb: PlanarEmbedding, bfs_post: BFSForest, a, b) -> CBFSForest:
    """Account for removal of {a, b}; ``emb`` and ``bfs_post`` are post-update.

    For a tree that used the edge, each cut-off vertex w is reattached by the
    crossing edge (s, t) whose path v..s,t is least in the canonical order
    among those lying on a shortest v-w path.  Such prefixes are never
    prefixes of one another, so that comparison decides the whole path.
    """
    pos = emb.pos
    pre = forest.trees
    out = {}
    for key, T in pre.items():
        if key == (a, b) or key == (b, a):
            continue
        v, ve = key
        child = _cut_side(T, a, b)
        if child is None:
            out[key] = T
            continue
        depth = len(T[child]) - 1
        r2 = {x for x, p in T.items() if len(p) > depth and p[depth] == child}
        lv_post = bfs_post.trees[v]

        keyed = []
        pk_cache = {}
        for t in r2:
            for s in emb.rot[t]:
                if s in r2:
                    continue
                if s not in pk_cache:
                    pk_cache[s] = path_key(pos, T[s], ve)
                ps = T[s]
                anchor = ps[-2] if len(ps) > 1 else ve
                keyed.append((len(ps), pk_cache[s] + (emnum(pos, s, anchor, t),), s, t))
        keyed.sort(key=lambda e: e[1])

        new = {x: p for x, p in T.items() if x not in r2}
        t_e_cache = {}
        for w in r2:
            lw = len(lv_post[w]) - 1
            for ls, _, s, t in keyed:
                if ls + len(bfs_post.trees[t][w]) - 1 == lw:
                    break
            else:
                raise CBFSError(f"[{v!r},{ve!r}]: {w!r} cut off")
            if w == t:
                new[w] = T[s] + (t,)
                continue
            if (s, t) not in t_e_cache:
                t_e_cache[(s, t)] = _first_next_level(pos, t, s, lv_post, ls + 1)
            t_e = t_e_cache[(s, t)]
            new[w] = T[s] + pre[(t, t_e)][w]
        assert_tree(new, r2, f"CBFS tree [{v!r},{ve!r}]")
        out[key] = new
    return CBFSForest(out)
