"""Exact clique search over the compatibility graph.

M(W) is the size of a largest pairwise-compatible set of partitions that can
all be based inside W.  The solver is a branch-and-bound over bitmasks with a
greedy colouring bound and a static degeneracy vertex order; the reported
witness is the lexicographically least maximum clique, found by a second
prefix-growing pass with existence queries.  No heuristics are ever reported
as answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .compat import CompatibilityGraph
from .graph import mask_iter


class CapExceededError(RuntimeError):
    """Enumeration aborted: the requested cap was exceeded."""

    def __init__(self, cap: int):
        super().__init__(f"enumeration exceeded cap of {cap} sets")
        self.cap = cap


@dataclass(frozen=True)
class MaxSetResult:
    size: int
    witness: frozenset[int]
    restricted_to: frozenset[int]


def _degeneracy_order(adj: list[int], mask: int) -> list[int]:
    """Repeatedly remove a minimum-degree vertex; ties broken by node id."""
    remaining = mask
    order = []
    while remaining:
        best_v, best_d = -1, 1 << 62
        for v in mask_iter(remaining):
            d = (adj[v] & remaining).bit_count()
            if d < best_d:
                best_v, best_d = v, d
        order.append(best_v)
        remaining &= ~(1 << best_v)
    return order


class _CliqueSolver:
    def __init__(self, adj: Iterable[int], mask: int):
        self.adj = list(adj)
        self.mask = mask
        # colouring in reverse degeneracy order tends to use few colours
        self.order = list(reversed(_degeneracy_order(self.adj, mask)))

    def _colour_sort(self, cand: int) -> list[tuple[int, int]]:
        """Greedy colouring of cand; returns (vertex, colour) sorted by colour."""
        adj = self.adj
        class_masks: list[int] = []
        class_members: list[list[int]] = []
        for v in self.order:
            if not cand >> v & 1:
                continue
            av = adj[v]
            for idx, cmask in enumerate(class_masks):
                if not av & cmask:
                    class_masks[idx] = cmask | 1 << v
                    class_members[idx].append(v)
                    break
            else:
                class_masks.append(1 << v)
                class_members.append([v])
        out = []
        for colour, members in enumerate(class_members, start=1):
            for v in members:
                out.append((v, colour))
        return out

    def max_size(self) -> int:
        best = 0

        def expand(size: int, cand: int) -> None:
            nonlocal best
            if not cand:
                if size > best:
                    best = size
                return
            if size + cand.bit_count() <= best:
                return
            coloured = self._colour_sort(cand)
            for v, colour in reversed(coloured):
                if size + colour <= best:
                    return
                expand(size + 1, cand & self.adj[v])
                cand &= ~(1 << v)

        expand(0, self.mask)
        return best

    def has_clique(self, cand: int, need: int) -> bool:
        """Whether cand contains a clique of the given size."""
        if need <= 0:
            return True

        def expand(size: int, cand: int) -> bool:
            if size >= need:
                return True
            if size + cand.bit_count() < need:
                return False
            coloured = self._colour_sort(cand)
            for v, colour in reversed(coloured):
                if size + colour < need:
                    return False
                if expand(size + 1, cand & self.adj[v]):
                    return True
                cand &= ~(1 << v)
            return False

        return expand(0, cand)

    def lex_least_clique(self, size: int) -> frozenset[int]:
        """Lexicographically least clique of exactly the given size."""
        chosen: list[int] = []
        cand = self.mask
        for _ in range(size):
            for v in mask_iter(cand):
                rest = cand & self.adj[v] & ~((1 << (v + 1)) - 1)
                if self.has_clique(rest, size - len(chosen) - 1):
                    chosen.append(v)
                    cand = rest
                    break
            else:
                raise RuntimeError("witness reconstruction failed")
        return frozenset(chosen)


def max_compatible(cg: CompatibilityGraph, vertices: Iterable[int]) -> MaxSetResult:
    """Largest pairwise-compatible set basable inside the given vertex set."""
    wanted = frozenset(vertices)
    mask = 0
    for i in cg.nodes_based_in(wanted):
        mask |= 1 << i
    if not mask:
        return MaxSetResult(size=0, witness=frozenset(), restricted_to=wanted)
    solver = _CliqueSolver(cg.adj, mask)
    size = solver.max_size()
    witness = solver.lex_least_clique(size)
    return MaxSetResult(size=size, witness=witness, restricted_to=wanted)


def naive_max_clique_size(adj: list[int], mask: int) -> int:
    """Independent oracle: exhaustive recursive enumeration, no bounds."""
    best = 0
    stack = [(0, mask)]
    while stack:
        size, cand = stack.pop()
        if size > best:
            best = size
        for v in mask_iter(cand):
            stack.append((size + 1, cand & adj[v] & ~((1 << (v + 1)) - 1)))
    return best


def is_inextendible(cg: CompatibilityGraph, members: Iterable[int]) -> bool:
    """No partition outside the set is compatible with every member."""
    ids = sorted(set(members))
    if not cg.is_clique(ids):
        raise ValueError("the given set is not pairwise compatible")
    mask = cg.members_mask(ids)
    for j in range(cg.n):
        if mask >> j & 1:
            continue
        if cg.adj[j] & mask == mask:
            return False
    return True


def enumerate_compatible_sets(
    cg: CompatibilityGraph, max_size: int | None = None, cap: int | None = None
) -> Iterator[frozenset[int]]:
    """All pairwise-compatible sets (cliques) of size <= max_size.

    Yields in lexicographic order of sorted member ids, the empty set first.
    Raises CapExceededError once more than ``cap`` sets would be produced;
    everything yielded before that is valid partial output.
    """
    limit = cg.n if max_size is None else max_size
    count = 0

    def bump():
        nonlocal count
        count += 1
        if cap is not None and count > cap:
            raise CapExceededError(cap)

    def recurse(members: list[int], cand: int) -> Iterator[frozenset[int]]:
        bump()
        yield frozenset(members)
        if len(members) >= limit:
            return
        for v in mask_iter(cand):
            members.append(v)
            yield from recurse(members, cand & cg.adj[v] & ~((1 << (v + 1)) - 1))
            members.pop()

    yield from recurse([], (1 << cg.n) - 1)
