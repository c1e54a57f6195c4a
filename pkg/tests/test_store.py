import random
import threading

import pytest
from hypothesis import given, settings, strategies as st

from dynplanar import fixtures, oracle
from dynplanar.store import (
    RELATIONS,
    Engine,
    GraphState,
    RejectedRequest,
    RelationStore,
    StateViolation,
    UpdateRequest,
    classify,
    update,
)
from dynplanar.verify import assert_consistent, problems


def test_first_insert_is_state_b():
    eng = Engine()
    assert eng.insert(9, 7) is GraphState.B
    assert eng.distance(9, 7) == 1
    assert eng.rebuilds == 0


def test_k4_sixth_insert_enters_a():
    eng = Engine()
    states = [eng.insert(a, b) for a, b in fixtures.k4()]
    assert states == [GraphState.B] * 5 + [GraphState.A]
    assert eng.rebuilds == 1
    assert not problems(eng.store)


def test_k4_delete_and_reinsert():
    eng = Engine.from_edges(fixtures.k4())
    assert eng.delete(0, 1) is GraphState.B
    assert eng.store.emb is None and eng.store.cbfs is None
    assert eng.distance(0, 1) == 2
    assert eng.insert(0, 1) is GraphState.A
    assert eng.rebuilds == 2
    assert not problems(eng.store)


@pytest.mark.parametrize(
    "edges, want",
    [
        (fixtures.k4(), GraphState.A),
        ([(0, 1), (1, 2), (2, 3), (3, 0)], GraphState.B),
        ([(a, b) for a in range(5) for b in range(a + 1, 5)], GraphState.B),
        (fixtures.wheel(5), GraphState.A),
        (fixtures.wheel(5)[:-1], GraphState.B),
        (fixtures.octahedron(), GraphState.A),
        # two K4s glued on an edge: 2-connected only
        (fixtures.k4() + [(0, 4), (1, 4), (0, 5), (1, 5), (4, 5)], GraphState.B),
    ],
)
def test_classify(edges, want):
    assert classify(oracle.adjacency(edges)) is want


def test_rebuild_contents():
    s = Engine.from_edges(fixtures.k4()).store
    assert len(s.relation("Emb")) == 12
    assert s.emb.face_count == 4
    assert len(s.cbfs.trees) == 12
    assert Engine.from_edges(fixtures.prism(3)).store.emb.face_count == 5
    c = Engine.from_edges(fixtures.cube()).store
    assert len(c.cbfs.trees) == 24
    assert all(len(t) == 8 for t in c.cbfs.trees.values())


def test_cardinalities_match_relations():
    s = Engine.from_edges(fixtures.k4()).store
    card = s.cardinalities()
    assert list(card) == list(RELATIONS)
    for name in RELATIONS:
        assert card[name] == len(s.relation(name)), name


def test_level_tuples_use_order_elements():
    s = Engine.from_edges(fixtures.k4()).store
    levels = {(v, x): l for v, x, l in s.relation("Level")}
    assert levels[(0, 0)] == s.order.element(0)
    assert levels[(0, 3)] == s.order.element(1)


def test_update_is_pure():
    s0 = Engine.from_edges(fixtures.cube()).store
    snap = (s0.version, s0.adj, s0.bfs.trees, s0.emb, s0.cbfs.trees)
    s1 = update(s0, UpdateRequest("insert", 0, 2))
    assert (s0.version, s0.adj, s0.bfs.trees, s0.emb, s0.cbfs.trees) == snap
    assert s1.version == s0.version + 1
    assert s1.has_edge(0, 2) and not s0.has_edge(0, 2)


@pytest.mark.parametrize(
    "req, reason",
    [
        (("insert", 0, 1), "edge 0 1 already present"),
        (("delete", 0, 2), "edge 0 2 not present"),
        (("insert", 3, 3), "self-loop 3"),
    ],
)
def test_rejections_leave_store_alone(req, reason):
    eng = Engine.from_edges(fixtures.cube())
    before = eng.store
    with pytest.raises(RejectedRequest, match=reason):
        eng.apply_request(UpdateRequest(*req))
    assert eng.store is before


def test_bad_request_kind():
    with pytest.raises(ValueError):
        UpdateRequest("flip", 0, 1)


def test_state_b_queries_refused():
    eng = Engine()
    eng.insert(0, 1)
    with pytest.raises(StateViolation):
        eng.face_count()
    with pytest.raises(StateViolation):
        eng.vertex_canon(0, 1, 1)
    for name in ("Emb", "Face", "CBFSEdges", "CPath"):
        assert eng.relation(name) == frozenset()


def test_no_oracle_calls_during_updates():
    oracle.guard.reset()
    eng = Engine.from_edges(fixtures.dodecahedron())
    rng = random.Random(2)
    for kind, a, b in fixtures.perturbations(fixtures.dodecahedron(), rng, 15):
        getattr(eng, kind)(a, b)
    assert eng.rebuilds == 1
    assert oracle.guard.violations == 0


def test_check_mode_passes():
    eng = Engine(check=True)
    for a, b in fixtures.wheel(6):
        eng.insert(a, b)
    eng.insert(1, 3)
    eng.delete(1, 3)
    assert eng.state is GraphState.A


def test_readers_see_whole_snapshots():
    eng = Engine.from_edges(fixtures.prism(5))
    moves = list(fixtures.perturbations(fixtures.prism(5), random.Random(1), 20))
    seen = []
    stop = threading.Event()

    def reader():
        while not stop.is_set():
            s = eng.store
            seen.append(not problems(s))

    th = threading.Thread(target=reader)
    th.start()
    try:
        for kind, a, b in moves:
            getattr(eng, kind)(a, b)
    finally:
        stop.set()
        th.join()
    assert seen and all(seen)


def test_empty_store():
    s = RelationStore()
    assert s.state is GraphState.B
    assert s.vertices == []
    assert s.cardinalities()["U"] == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_random_streams_stay_consistent(seed):
    rng = random.Random(seed)
    eng = Engine()
    for kind, a, b in fixtures.random_stream(rng, 7, 40):
        getattr(eng, kind)(a, b)
        assert eng.state is classify(eng.store.adj)
    assert_consistent(eng.store)
