"""Rotation system and faces of a planar graph, kept current under edge updates.

``rot[v]`` lists v's neighbours anticlockwise; the index of ``x`` in it is the
embedding number of the edge (v, x).  Faces are vertex cycles keyed by an
integer label.  They are traced with the rule "arriving at v from u, leave
towards ``rot[v][n(u) - 1]``", the same rule the oracle's face walk uses.

The Face relation (z lies on the arc x..y of face f) is the transitive
closure of each cycle; it is derived from the cycles when needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from .order import Order


class EmbeddingError(RuntimeError):
    """An update that cannot stay inside a 3-connected planar embedding."""


def _trace(rot: Mapping, verts) -> list[tuple]:
    pos = {v: {x: i for i, x in enumerate(rot[v])} for v in verts}
    seen = set()
    out = []
    for u in verts:
        for v in rot[u]:
            if (u, v) in seen:
                continue
            cyc = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                cyc.append(dart[0])
                p, q = dart
                ring = rot[q]
                dart = (q, ring[(pos[q][p] - 1) % len(ring)])
            out.append(tuple(cyc))
    return out


def _rotate_to(cyc: tuple, first, second=None) -> tuple:
    """Rotate ``cyc`` so it starts at ``first`` (followed by ``second`` if given)."""
    n = len(cyc)
    for i, x in enumerate(cyc):
        if x == first and (second is None or cyc[(i + 1) % n] == second):
            return cyc[i:] + cyc[:i]
    raise EmbeddingError(f"{first!r}->{second!r} not on face {cyc}")


def _least_unused(labels) -> int:
    used = set(labels)
    f = 0
    while f in used:
        f += 1
    return f


@dataclass(frozen=True)
class PlanarEmbedding:
    rot: Mapping
    faces: Mapping

    @cached_property
    def pos(self) -> dict:
        """Embedding number of every dart: ``pos[v][x]``."""
        return {v: {x: i for i, x in enumerate(r)} for v, r in self.rot.items()}

    def number(self, v, x) -> int:
        return self.pos[v][x]

    def degree(self, v) -> int:
        return len(self.rot.get(v, ()))

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def normalized(self, t, anchor) -> dict:
        """Numbers around ``t`` shifted so that ``anchor`` gets 0."""
        ring = self.rot[t]
        k = ring.index(anchor)
        d = len(ring)
        return {x: (i - k) % d for i, x in enumerate(ring)}

    def face_of_dart(self, u, v):
        for f, cyc in self.faces.items():
            n = len(cyc)
            for i, x in enumerate(cyc):
                if x == u and cyc[(i + 1) % n] == v:
                    return f
        return None

    def faces_with(self, *vs) -> list:
        return sorted(f for f, cyc in self.faces.items() if all(v in cyc for v in vs))

    def face_contains(self, f, x, y, z) -> bool:
        cyc = self.faces.get(f)
        if cyc is None or x not in cyc or y not in cyc or z not in cyc:
            return False
        c = _rotate_to(cyc, x)
        return c.index(z) <= c.index(y)

    def emb_tuples(self, order: Order) -> Iterator[tuple]:
        for v, ring in self.rot.items():
            for i, x in enumerate(ring):
                yield (v, x, order.element(i))

    def face_tuples(self) -> Iterator[tuple]:
        for f, cyc in self.faces.items():
            n = len(cyc)
            for i in range(n):
                for k in range(n):
                    # arc from cyc[i] forward k steps
                    for j in range(k + 1):
                        yield (f, cyc[i], cyc[(i + k) % n], cyc[(i + j) % n])

    def face_tuple_count(self) -> int:
        return sum(len(c) * len(c) * (len(c) + 1) // 2 for c in self.faces.values())

    def flipped(self) -> "PlanarEmbedding":
        """Mirror image: every rotation and face cycle reversed, labels kept."""
        rot = {v: tuple(reversed(r)) for v, r in self.rot.items()}
        faces = {f: tuple(reversed(c)) for f, c in self.faces.items()}
        return PlanarEmbedding(rot, faces)

    def flip_tuples(self, order: Order) -> Iterator[tuple]:
        for v, ring in self.rot.items():
            d = len(ring)
            for i, x in enumerate(ring):
                yield (v, x, order.element(d - 1 - i))


def from_rotation(rot: Mapping, order: Order | None = None) -> PlanarEmbedding:
    """Embedding with faces labelled 0.. in tracing order (vertices by rank)."""
    verts = sorted(rot, key=order.key) if order is not None else list(rot)
    rot = {v: tuple(rot[v]) for v in verts}
    faces = dict(enumerate(_trace(rot, verts)))
    return PlanarEmbedding(rot, faces)


def insert(emb: PlanarEmbedding, a, b) -> PlanarEmbedding:
    """Add {a, b} inside the face both endpoints lie on.

    The arc a..b keeps the old label; the arc b..a gets the least unused one.
    """
    if b in emb.rot.get(a, ()):
        raise EmbeddingError(f"{a!r}-{b!r} already embedded")
    common = emb.faces_with(a, b)
    if not common:
        raise EmbeddingError(f"{a!r} and {b!r} share no face")
    if len(common) > 1:
        raise EmbeddingError(f"{a!r} and {b!r} share faces {common}")
    f = common[0]
    c = _rotate_to(emb.faces[f], a)
    k = c.index(b)
    arc_ab = c[: k + 1]
    arc_ba = c[k:] + (a,)
    a2, b2 = c[-1], c[k - 1]

    rot = dict(emb.rot)
    ra = list(rot[a])
    ra.insert(ra.index(a2), b)
    rot[a] = tuple(ra)
    rb = list(rot[b])
    rb.insert(rb.index(b2), a)
    rot[b] = tuple(rb)

    faces = dict(emb.faces)
    faces[f] = arc_ab
    faces[_least_unused(faces)] = arc_ba
    return PlanarEmbedding(rot, faces)


def delete(emb: PlanarEmbedding, a, b) -> PlanarEmbedding:
    """Remove {a, b}, merging its two faces under the smaller label."""
    fq = emb.face_of_dart(a, b)
    fp = emb.face_of_dart(b, a)
    if fq is None or fp is None:
        raise EmbeddingError(f"{a!r}-{b!r} not embedded")
    if fq == fp:
        raise EmbeddingError(f"{a!r}-{b!r} has the same face on both sides")
    q = _rotate_to(emb.faces[fq], a, b)
    p = _rotate_to(emb.faces[fp], b, a)
    merged = p[1:] + q[1:]

    rot = dict(emb.rot)
    rot[a] = tuple(x for x in rot[a] if x != b)
    rot[b] = tuple(x for x in rot[b] if x != a)

    faces = dict(emb.faces)
    del faces[max(fp, fq)]
    faces[min(fp, fq)] = merged
    return PlanarEmbedding(rot, faces)


def canonical_faces(emb: PlanarEmbedding, key=repr) -> frozenset:
    """Label-free view of the faces, for comparing embeddings."""
    out = set()
    for cyc in emb.faces.values():
        start = min(cyc, key=key)
        out.add(_rotate_to(cyc, start))
    return frozenset(out)
