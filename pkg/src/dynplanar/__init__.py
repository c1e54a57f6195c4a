"""Dynamic maintenance of BFS forests, planar embeddings and canonical BFS
trees under edge updates, with isomorphism testing for 3-connected planar
graphs."""

from .order import Order, UnknownElement
from .store import Engine, GraphState, RejectedRequest, RelationStore, StateViolation, UpdateRequest, classify

__all__ = [
    "Engine",
    "GraphState",
    "Order",
    "RejectedRequest",
    "RelationStore",
    "StateViolation",
    "UnknownElement",
    "UpdateRequest",
    "classify",
]
