"""Universe, total order and bounded addition over vertex symbols.

Symbols carry no value of their own.  The first time a symbol shows up in an
insert request it is appended to the order as the new maximum, and the
addition table is extended so that ``rank(x) + rank(y) = rank(t)`` holds for
every triple that stays at or below the maximum rank.  Nothing is removed on
edge deletion, so ranks are stable for the lifetime of an engine.
"""

from __future__ import annotations

from typing import Hashable, Iterator


class UnknownElement(KeyError):
    """Raised when a symbol that never entered the universe is queried."""


class Order:
    """Immutable snapshot of the relations U, O and Sum.

    ``register`` returns a new snapshot; the receiver is never modified.
    """

    __slots__ = ("_elements", "_rank", "_leq", "_sum")

    def __init__(self) -> None:
        self._elements: tuple = ()
        self._rank: dict = {}
        # O as stored pairs (x, y) meaning x <= y
        self._leq: frozenset = frozenset()
        # Sum as (x, y) -> t
        self._sum: dict = {}

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, x: Hashable) -> bool:
        return x in self._rank

    def __iter__(self) -> Iterator:
        return iter(self._elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Order):
            return NotImplemented
        return self._elements == other._elements and self._sum == other._sum

    def __repr__(self) -> str:
        return f"Order({' < '.join(map(str, self._elements))})"

    @property
    def elements(self) -> tuple:
        return self._elements

    @property
    def min(self):
        return self._elements[0] if self._elements else None

    @property
    def max(self):
        return self._elements[-1] if self._elements else None

    def register(self, a: Hashable) -> "Order":
        if a in self._rank:
            return self
        new = Order.__new__(Order)
        old_elems = self._elements
        new._elements = old_elems + (a,)
        new._rank = dict(self._rank)
        new._rank[a] = len(old_elems)
        # O'(x, y) = O(x, y) or (U'(x) and y = a)
        new._leq = self._leq | {(x, a) for x in new._elements}
        new._sum = dict(self._sum)
        if not old_elems:
            new._sum[(a, a)] = a
            return new
        lo, hi = old_elems[0], old_elems[-1]
        new._sum[(a, lo)] = a
        new._sum[(lo, a)] = a

        def succ(x):
            r = self._rank[x] + 1
            return old_elems[r] if r < len(old_elems) else a

        # pairs summing to max, shifted by one in either argument, sum to a
        for (x, y), t in self._sum.items():
            if t == hi:
                new._sum[(succ(x), y)] = a
                new._sum[(x, succ(y))] = a
        return new

    def register_pair(self, a: Hashable, b: Hashable) -> "Order":
        return self.register(a).register(b)

    def _r(self, x: Hashable) -> int:
        try:
            return self._rank[x]
        except KeyError:
            raise UnknownElement(x) from None

    def leq(self, x: Hashable, y: Hashable) -> bool:
        self._r(x)
        self._r(y)
        return (x, y) in self._leq

    def add(self, x: Hashable, y: Hashable):
        """Element of rank ``rank(x) + rank(y)``, or None past the maximum."""
        self._r(x)
        self._r(y)
        return self._sum.get((x, y))

    def sub(self, x: Hashable, y: Hashable):
        """The t with ``t + y = x``, read off Sum with permuted arguments."""
        self._r(x)
        self._r(y)
        for (p, q), t in self._sum.items():
            if q == y and t == x:
                return p
        return None

    def ordinal(self, x: Hashable) -> int:
        return self._r(x)

    def element(self, rank: int):
        """Inverse of ``ordinal``."""
        if not 0 <= rank < len(self._elements):
            raise IndexError(f"rank {rank} outside universe of size {len(self._elements)}")
        return self._elements[rank]

    def key(self, x: Hashable) -> int:
        """Sort key usable with ``sorted``; unknown symbols sort last."""
        return self._rank.get(x, len(self._elements))

    def relation_u(self) -> frozenset:
        return frozenset((x,) for x in self._elements)

    def relation_o(self) -> frozenset:
        return self._leq

    def relation_sum(self) -> frozenset:
        return frozenset((t, x, y) for (x, y), t in self._sum.items())
