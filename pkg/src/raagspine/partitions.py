"""Whitehead partitions of a defining graph and their automorphism images.

A partition splits the signed vertex set V± into two thick sides and the
doubled link of its base vertex.  Enumeration works per base: the doubled
components other than the base singletons get distributed between the two
sides in every possible way, with the base and its inverse forced apart, and
thin results discarded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from .graph import (
    SimplicialGraph,
    doubled,
    mask_iter,
    sv_inverse,
    sv_neg,
    sv_pos,
    sv_vertex,
    sv_is_positive,
)

logger = logging.getLogger(__name__)


class PartitionError(ValueError):
    pass


def _side_key(mask: int) -> tuple[int, ...]:
    return tuple(mask_iter(mask))


@dataclass(frozen=True)
class Partition:
    """One Whitehead partition in canonical form.

    ``side_a``, ``side_b`` and ``link`` are signed masks partitioning V±.
    ``side_a`` is the side whose sorted signed-id tuple is lexicographically
    smaller, so equal partitions compare equal.  ``max_bases`` holds every
    legal base vertex; ``split`` the vertices separated from their inverses.
    ``thick`` is False only for the relaxed almost-partitions used while
    reasoning about hugging; enumeration never emits those.
    """

    side_a: int
    side_b: int
    link: int
    split: frozenset[int]
    max_bases: frozenset[int]
    thick: bool = True

    def sides(self) -> tuple[int, int]:
        return (self.side_a, self.side_b)

    def side_of(self, signed: int) -> int:
        """The side mask containing the given signed vertex."""
        if self.side_a >> signed & 1:
            return self.side_a
        if self.side_b >> signed & 1:
            return self.side_b
        raise PartitionError("signed vertex lies in the link")

    def other_side(self, side: int) -> int:
        return self.side_b if side == self.side_a else self.side_a

    def link_vertices(self) -> frozenset[int]:
        return frozenset(sv_vertex(s) for s in mask_iter(self.link) if sv_is_positive(s))

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (_side_key(self.side_a), _side_key(self.side_b))

    def render(self, g: SimplicialGraph) -> dict:
        return {
            "sideA": [g.signed_name(s) for s in mask_iter(self.side_a)],
            "sideB": [g.signed_name(s) for s in mask_iter(self.side_b)],
            "link": [g.signed_name(s) for s in mask_iter(self.link)],
            "max": [g.names[v] for v in sorted(self.max_bases)],
        }


def _compute_split(g: SimplicialGraph, side1: int, side2: int) -> frozenset[int]:
    return frozenset(
        v
        for v in range(g.n)
        if (side1 >> sv_pos(v) & 1 and side2 >> sv_neg(v) & 1)
        or (side2 >> sv_pos(v) & 1 and side1 >> sv_neg(v) & 1)
    )


def _compute_max(g: SimplicialGraph, split: frozenset[int]) -> frozenset[int]:
    """Maximal elements of split under <= (the legal bases)."""
    return frozenset(
        v
        for v in split
        if all(g.leq(w, v) for w in split if g.leq(v, w))
    )


def make_partition(
    g: SimplicialGraph, side1: Iterable[int], side2: Iterable[int], *, allow_thin: bool = False
) -> Partition:
    """Build a partition from two sides given as signed-vertex collections.

    The link is whatever remains of V±.  Validates the defining conditions;
    ``allow_thin`` relaxes only the two-elements-per-side requirement.
    """
    m1 = 0
    for s in side1:
        m1 |= 1 << s
    m2 = 0
    for s in side2:
        m2 |= 1 << s
    return _partition_from_masks(g, m1, m2, allow_thin=allow_thin, validate=True)


def _partition_from_masks(
    g: SimplicialGraph,
    m1: int,
    m2: int,
    *,
    allow_thin: bool = False,
    validate: bool = True,
) -> Partition:
    full = (1 << (2 * g.n)) - 1
    if m1 & m2:
        raise PartitionError("sides overlap")
    link = full & ~(m1 | m2)
    split = _compute_split(g, m1, m2)
    max_bases = _compute_max(g, split)
    thick = bin(m1).count("1") >= 2 and bin(m2).count("1") >= 2
    if validate:
        if not split:
            raise PartitionError("no vertex is split; the partition has no base")
        if not thick and not allow_thin:
            raise PartitionError("thin side: each side needs at least two elements")
        for m in max_bases:
            if link != g.link_mask(m):
                raise PartitionError(
                    f"link block is not the doubled link of base {g.names[m]}"
                )
        base = min(max_bases)
        for comp in g.components_minus_star(base):
            if len(comp) < 2:
                continue
            dbl = doubled(comp)
            if dbl & m1 != dbl and dbl & m2 != dbl:
                raise PartitionError(
                    "a component of the graph minus the base star is split across sides"
                )
    if _side_key(m1) > _side_key(m2):
        m1, m2 = m2, m1
    return Partition(
        side_a=m1, side_b=m2, link=link, split=split, max_bases=max_bases, thick=thick
    )


def enumerate_partitions(g: SimplicialGraph, base: int) -> list[Partition]:
    """All partitions admitting ``base`` as a base vertex.

    Every assignment of the non-base doubled components to the two sides is
    tried (base and inverse forced apart); thin assignments are dropped.  A
    non-relevant base yields an empty list (logged, not an error).
    """
    g._check_vertex(base)
    units = g.partition_units(base)
    k = len(units)
    if k < 2:
        logger.info(
            "vertex %s is not relevant: %d non-base component(s)", g.names[base], k
        )
        return []
    out = []
    pos = 1 << sv_pos(base)
    neg = 1 << sv_neg(base)
    for bits in range(1, (1 << k) - 1):
        m1, m2 = pos, neg
        for i in range(k):
            if bits >> i & 1:
                m1 |= units[i]
            else:
                m2 |= units[i]
        out.append(_partition_from_masks(g, m1, m2, validate=False))
    out.sort(key=Partition.key)
    return out


def all_partitions(g: SimplicialGraph) -> list[Partition]:
    """Canonical duplicate-free list of every partition of the graph."""
    seen: dict[tuple[int, int], Partition] = {}
    for v in range(g.n):
        if len(g.partition_units(v)) < 2:
            continue
        for p in enumerate_partitions(g, v):
            seen.setdefault((p.side_a, p.side_b), p)
    return sorted(seen.values(), key=Partition.key)


def split_of(p: Partition) -> frozenset[int]:
    return p.split


def max_of(p: Partition) -> frozenset[int]:
    return p.max_bases


def is_principal_partition(g: SimplicialGraph, p: Partition, principal: frozenset[int]) -> bool:
    """Whether some (hence any) base of p is a principal vertex."""
    return bool(p.max_bases & principal)


def whitehead_images(
    g: SimplicialGraph, p: Partition, base: int
) -> dict[int, tuple[int, ...]]:
    """Generator images of the automorphism attached to (p, base).

    ``base`` is a signed vertex whose underlying vertex is a legal base.  With
    S the side containing the positive base letter: a split generator in S
    maps to itself times the inverse base letter, a split generator opposite S
    picks up the base letter on the left, a non-split generator pair inside S
    is conjugated by the base letter, and everything else (the link, the other
    side's non-split pairs, the base vertex) is fixed.  Words are signed-id
    tuples, freely reduced as written.
    """
    m = sv_vertex(base)
    if m not in p.max_bases:
        raise PartitionError(f"{g.names[m]} is not a legal base of this partition")
    if not p.thick:
        raise PartitionError("automorphism images need a thick partition")
    s_pos = p.side_of(sv_pos(m))
    b = base
    b_inv = sv_inverse(base)
    images: dict[int, tuple[int, ...]] = {}
    for y in range(g.n):
        yp = sv_pos(y)
        if y == m or p.link >> yp & 1:
            images[y] = (yp,)
            continue
        in_active = bool(s_pos >> yp & 1)
        if y in p.split:
            images[y] = (yp, b_inv) if in_active else (b, yp)
        else:
            images[y] = (b, yp, b_inv) if in_active else (yp,)
    return images


def render_word(g: SimplicialGraph, word: tuple[int, ...]) -> str:
    return "".join(
        (g.names[sv_vertex(s)] if sv_is_positive(s) else g.names[sv_vertex(s)] + "^-1")
        + ("." if i < len(word) - 1 else "")
        for i, s in enumerate(word)
    )
