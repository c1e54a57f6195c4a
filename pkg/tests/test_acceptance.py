"""Acceptance run: one test per criterion, each printing a PASS/FAIL line.

The lines are printed as they happen (visible with ``-s``) and repeated in
the terminal summary of every pytest run.
"""

import itertools
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_LINES
from dynplanar import fixtures, oracle
from dynplanar.canon import isomorphic
from dynplanar.cli import generate
from dynplanar.order import Order
from dynplanar.store import Engine, GraphState
from dynplanar.verify import lexmin_problems

PERTURB_STEPS = 20


@contextmanager
def criterion(num, title, limit=None):
    t0 = time.perf_counter()
    note = ""
    extra = {"seconds": 0.0}
    try:
        yield extra
        took = time.perf_counter() - t0 + extra["seconds"]
        if limit is not None and took > limit:
            note = f"too slow: {took:.1f}s > {limit}s"
            raise AssertionError(note)
        status = "PASS"
    except BaseException as exc:
        took = time.perf_counter() - t0 + extra["seconds"]
        status = "FAIL"
        if not note:
            note = str(exc).splitlines()[0][:100] if str(exc) else type(exc).__name__
        raise
    finally:
        line = f"criterion {num}: {status}  {title}  ({took:.2f}s)" + (f"  {note}" if note else "")
        ACCEPTANCE_LINES.append(line)
        print("\n" + line)


def test_c1_order_arithmetic():
    with criterion(1, "order example and sums", limit=1.0):
        eng = Engine()
        for a, b in [(9, 7), (4, 7), (4, 9), (4, 8)]:
            eng.insert(a, b)
        assert eng.store.order.elements == (9, 7, 4, 8)
        o = Order()
        for x in (9, 7, 4, 8, 3, 5, 1, 2, 6):
            o = o.register(x)
        assert o.add(7, 4) == 8
        assert o.add(9, 7) == 7
        assert o.add(8, 5) == 6
        assert o.add(1, 2) is None


def _bfs_streams():
    """Run the 100 random streams once; checks distances and the two-root property."""
    distance_errors, two_root_errors = [], []
    for seed in range(100):
        rng = random.Random(seed)
        n = rng.randint(5, 50)
        eng = Engine()
        for step, (kind, a, b) in enumerate(fixtures.random_stream(rng, n, 500)):
            pre = eng.store.bfs
            getattr(eng, kind)(a, b)
            s = eng.store
            want = oracle.all_pairs_distances(s.adj)
            for v, tree in s.bfs.trees.items():
                got = {x: len(p) - 1 for x, p in tree.items()}
                if got != want.get(v, {v: 0}):
                    distance_errors.append((seed, step, v))
            if kind == "insert" and a in pre.trees and b in pre.trees:
                ta0, tb0 = pre.trees[a], pre.trees[b]
                ta1, tb1 = s.bfs.trees[a], s.bfs.trees[b]
                for x in ta0:
                    if x in tb0 and len(ta0[x]) != len(ta1[x]) and len(tb0[x]) != len(tb1[x]):
                        two_root_errors.append((seed, step, x))
    return distance_errors, two_root_errors


@pytest.fixture(scope="module")
def bfs_runs():
    t0 = time.perf_counter()
    result = _bfs_streams()
    return result, time.perf_counter() - t0


def test_c2_bfs_streams(bfs_runs):
    (dist_err, _), took = bfs_runs
    with criterion(2, "100 streams x 500 ops, all-pairs distances = scratch_bfs", limit=300) as extra:
        extra["seconds"] = took
        assert not dist_err, f"{len(dist_err)} mismatches, first {dist_err[0]}"


def test_c3_two_root_levels(bfs_runs):
    (_, two_root_err), _ = bfs_runs
    with criterion(3, "no level changes in both endpoint trees on insert"):
        assert not two_root_err, f"{len(two_root_err)} violations, first {two_root_err[0]}"


def _corpus_runs():
    """Fixture corpus with perturbation streams; yields (name, kind, pre, post)."""
    for name, edges in fixtures.corpus().items():
        rng = random.Random(name)
        eng = Engine.from_edges(fixtures.build_order(edges, rng))
        yield name, None, None, eng.store
        for kind, a, b in fixtures.perturbations(edges, rng, PERTURB_STEPS):
            pre = eng.store
            getattr(eng, kind)(a, b)
            yield name, kind, pre, eng.store


def test_c4_embedding_integrity():
    with criterion(4, "Euler, faces +-1, check_embedding, numbers 0..d-1", limit=120):
        updates = 0
        for name, kind, pre, s in _corpus_runs():
            assert s.state is GraphState.A, name
            g = {v: ns for v, ns in s.adj.items() if ns}
            n, m, f = len(g), oracle.edge_count(g), s.emb.face_count
            assert n - m + f == 2, name
            assert oracle.check_embedding(g, s.emb.rot) == f, name
            for v in g:
                assert sorted(s.emb.pos[v].values()) == list(range(len(g[v]))), (name, v)
            if kind is not None:
                updates += 1
                assert f - pre.emb.face_count == (1 if kind == "insert" else -1), (name, kind)
        # K4 has no move that keeps it 3-connected; every other fixture runs the full stream
        assert updates == PERTURB_STEPS * (len(fixtures.corpus()) - 1)


def test_c5_cbfs_equivalence():
    with criterion(5, "CBFSEdges = scratch_cbfs, paths least shortest (n <= 10)", limit=600):
        checked = 0
        for name, kind, pre, s in _corpus_runs():
            g = {v: ns for v, ns in s.adj.items() if ns}
            want = {(v, ve, p, c) for v in g for ve in g[v] for p, c in oracle.scratch_cbfs(g, s.emb.rot, v, ve)}
            assert s.relation("CBFSEdges") == want, (name, kind)
            if len(g) <= 10:
                assert not lexmin_problems(s), (name, kind)
                checked += 1
        assert checked > 0


def test_c6_canon_injectivity():
    with criterion(6, "distinct canons per tree on every fixture"):
        extra = {"octahedron": fixtures.octahedron(), "icosahedron": fixtures.icosahedron(),
                 "truncated_prism": fixtures.truncated_prism()}
        for name, edges in {**fixtures.corpus(), **extra}.items():
            eng = Engine.from_edges(edges)
            verts = eng.store.vertices
            for v, ve in eng.store.cbfs.trees:
                for fl in (False, True):
                    cs = {eng.vertex_canon(v, ve, x, fl) for x in verts}
                    assert len(cs) == len(verts), (name, v, ve, fl)


def test_c7_isomorphism():
    with criterion(7, "isomorphic() = brute_iso on all pairs plus relabel pairs", limit=600):
        rng = random.Random(7)
        graphs = [Engine.from_edges(e).store for e in fixtures.corpus().values()]
        randoms = [fixtures.random_3c_planar(rng.randint(4, 10), rng) for _ in range(50)]
        graphs += [Engine.from_edges(e).store for e in randoms]
        positives = 0
        for g, h in itertools.combinations(graphs, 2):
            ok, phi = isomorphic(g, h)
            want, _ = oracle.brute_iso(g.adj, h.adj)
            assert ok == want
            if ok:
                positives += 1
                assert oracle.is_isomorphism(g.adj, h.adj, phi)
        assert positives > 0
        for i in range(50):
            edges = randoms[i] if i % 5 else list(fixtures.corpus().values())[i // 5 % 11]
            rel, _ = fixtures.relabel(edges, rng)
            g, h = Engine.from_edges(edges).store, Engine.from_edges(rel).store
            ok, phi = isomorphic(g, h)
            assert ok and oracle.brute_iso(g.adj, h.adj)[0]
            assert oracle.is_isomorphism(g.adj, h.adj, phi)


def test_c8_single_rebuild_no_oracle_calls():
    with criterion(8, "one rebuild, zero oracle calls from update paths"):
        for name, edges in fixtures.corpus().items():
            oracle.guard.reset()
            rng = random.Random(name)
            eng = Engine(check=False)
            entered = False
            for a, b in fixtures.build_order(edges, rng):
                eng.insert(a, b)
                entered = entered or eng.state is GraphState.A
                if entered:
                    assert eng.state is GraphState.A
            for kind, a, b in fixtures.perturbations(edges, rng, PERTURB_STEPS):
                getattr(eng, kind)(a, b)
                assert eng.state is GraphState.A
            assert eng.rebuilds == 1, name
            assert oracle.guard.violations == 0, name


def test_c9_replay_determinism(tmp_path):
    import io

    with criterion(9, "byte-identical CLI transcripts across hash seeds"):
        streams = []
        for i, fx in enumerate(["K4", "prism5", "dodecahedron", None]):
            buf = io.StringIO()
            generate(i, 12, 40, fx, buf)
            text = buf.getvalue()
            if fx is not None:
                text += "canon 0 1\niso other.txt\n"
            streams.append(text)
        rel, _ = fixtures.relabel(fixtures.prism(5), random.Random(0))
        (tmp_path / "other.txt").write_text("".join(f"insert {a} {b}\n" for a, b in rel))
        for i, text in enumerate(streams):
            f = tmp_path / f"s{i}.txt"
            f.write_text(text)
            outs = []
            for seed in ("0", "12345"):
                env = dict(os.environ, PYTHONHASHSEED=seed)
                res = subprocess.run([sys.executable, "-m", "dynplanar", str(f)], env=env, capture_output=True, check=True)
                outs.append(res.stdout)
            assert outs[0] == outs[1], f"stream {i} differs"
            assert outs[0]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
