"""The star of a Salvetti as a finite cube complex, and its retraction.

Cubes are addressed by pairs (lower, upper) of compatible sets with
lower ⊆ upper; the dimension is |upper \\ lower|.  The full star is face
closed: every (A, B) with lower ⊆ A ⊆ B ⊆ upper of a member is a member.

The retraction sweeps cubes in ascending (b, t, p) order, where b = |lower|,
t = M(V) - |upper| and p = M(L) - #principal members of upper.  For a cube
whose upper set contains hugged non-principal partitions outside the lower
set (the set H), the face (lower, upper \\ H) must be free at that moment:
every present cube containing it is a face of the processed cube.  Freeness
is audited at each event, never assumed; pushing in along the face removes
exactly the cubes between (lower, upper \\ H) and (lower, upper).

Markings are ignored throughout: the group action only changes markings, so
one copy of the star carries the combinatorial content.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .compat import CompatibilityGraph
from .conditions import is_spiky
from .graph import mask_iter
from .hugging import HugOracle
from .search import CapExceededError, max_compatible


class StructuralAssertionError(RuntimeError):
    """The free-face condition failed where the argument requires it."""

    def __init__(self, message: str, cube: tuple[int, int], face: tuple[int, int]):
        super().__init__(message)
        self.cube = cube
        self.face = face


def _submasks(mask: int):
    """All submasks of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _ids(mask: int) -> list[int]:
    return list(mask_iter(mask))


@dataclass(frozen=True)
class ComplexStats:
    dimension: int
    f_vector: tuple[int, ...]
    euler_characteristic: int
    cube_count: int

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "f_vector": list(self.f_vector),
            "euler_characteristic": self.euler_characteristic,
            "cube_count": self.cube_count,
        }


def complex_stats(cubes: Iterable[tuple[int, int]]) -> ComplexStats:
    counts: dict[int, int] = {}
    for lower, upper in cubes:
        d = (upper & ~lower).bit_count()
        counts[d] = counts.get(d, 0) + 1
    if not counts:
        return ComplexStats(dimension=-1, f_vector=(), euler_characteristic=0, cube_count=0)
    dim = max(counts)
    f_vector = tuple(counts.get(d, 0) for d in range(dim + 1))
    euler = sum((-1) ** d * c for d, c in counts.items())
    return ComplexStats(
        dimension=dim,
        f_vector=f_vector,
        euler_characteristic=euler,
        cube_count=sum(counts.values()),
    )


@dataclass(frozen=True)
class StarComplex:
    """All cubes sharing one Salvetti vertex, with indexes for collapsing."""

    cg: CompatibilityGraph
    cliques: tuple[int, ...]  # member masks of every compatible set
    supersets: dict  # clique mask -> tuple of clique masks containing it
    m_v: int
    m_l: int

    def cubes(self):
        for upper in self.cliques:
            for lower in _submasks(upper):
                yield (lower, upper)

    def cube_count(self) -> int:
        return sum(1 << c.bit_count() for c in self.cliques)

    def stats(self) -> ComplexStats:
        return complex_stats(self.cubes())


def build_star(cg: CompatibilityGraph, cap: int = 200000) -> StarComplex:
    """Enumerate every compatible set and assemble the face-closed cube set.

    ``cap`` bounds the number of compatible sets; beyond it the complex is
    considered out of the designed envelope and CapExceededError is raised.
    """
    cliques: list[int] = []
    count = 0

    def extend(mask: int, cand: int):
        nonlocal count
        count += 1
        if count > cap:
            raise CapExceededError(cap)
        cliques.append(mask)
        for v in mask_iter(cand):
            extend(mask | 1 << v, cand & cg.adj[v] & ~((1 << (v + 1)) - 1))

    extend(0, (1 << cg.n) - 1)
    clique_set = set(cliques)
    supersets: dict[int, list[int]] = {c: [] for c in cliques}
    for c in cliques:
        for s in _submasks(c):
            supersets[s].append(c)
    m_v = max(c.bit_count() for c in cliques)
    m_l = max_compatible(cg, cg.graph.classify_vertices().principal).size
    assert clique_set == set(supersets)
    return StarComplex(
        cg=cg,
        cliques=tuple(cliques),
        supersets={k: tuple(v) for k, v in supersets.items()},
        m_v=m_v,
        m_l=m_l,
    )


@dataclass(frozen=True)
class CollapseEvent:
    target: tuple[int, int]
    face: tuple[int, int]
    hugged: int  # mask of the hugged members motivating the event
    removed: int  # number of cubes removed
    kind: str = "drop-hugged"  # or "pair-down" for the cleanup phase

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "target": [_ids(self.target[0]), _ids(self.target[1])],
            "face": [_ids(self.face[0]), _ids(self.face[1])],
            "hugged": _ids(self.hugged),
            "removed": self.removed,
        }


@dataclass(frozen=True)
class RetractionTrace:
    events: tuple[CollapseEvent, ...]
    skipped: tuple[tuple[int, int], ...]  # still-blocked cubes with hugged members
    initial_stats: ComplexStats
    final_stats: ComplexStats
    final_cubes: frozenset[tuple[int, int]]
    strict_principal: bool

    def to_dict(self) -> dict:
        return {
            "events": [e.to_dict() for e in self.events],
            "skipped": [[_ids(l), _ids(u)] for l, u in self.skipped],
            "initial": self.initial_stats.to_dict(),
            "final": self.final_stats.to_dict(),
        }


def retract(
    star: StarComplex,
    *,
    warn_and_proceed: bool = False,
    strict_schedule: bool = False,
    strict_principal: bool = False,
    tie_break: Optional[Callable[[tuple[int, int]], object]] = None,
) -> RetractionTrace:
    """Run the ordered collapse over the star; returns the audited trace.

    Cubes are processed in ascending (b, t, p) order.  A cube whose upper set
    contains hugged members outside the lower set yields a collapse along the
    face that drops them, but only after the free-face condition is verified
    against the current complex; a cube whose designated face has cofaces
    outside it is left alone and retried on the next sweep, and sweeps repeat
    until no event fires.  Blocked cubes that remain blocked at the fixpoint
    are reported in the trace.  (There are graphs, the 2-rake among them,
    where a designated face is a face of a cube that genuinely survives, so a
    fully literal single sweep cannot complete; see the README.)

    ``strict_schedule`` raises a StructuralAssertionError at the first
    blocked event instead, reproducing the single-sweep schedule literally.
    Requires a spiky graph unless ``warn_and_proceed`` is set.  ``tie_break``
    overrides the order within one (b, t, p) batch (used by the
    order-insensitivity audit).
    """
    cg = star.cg
    spiky = is_spiky(cg.graph)
    if not spiky and not warn_and_proceed:
        raise StructuralAssertionError(
            "graph is not spiky; pass warn_and_proceed=True to collapse anyway",
            (0, 0),
            (0, 0),
        )
    principal_mask = 0
    for i in range(cg.n):
        if cg.principal[i]:
            principal_mask |= 1 << i

    if tie_break is None:
        tie_break = lambda cube: (_ids(cube[0]), _ids(cube[1]))

    def sort_key(cube: tuple[int, int]):
        lower, upper = cube
        b = lower.bit_count()
        t = star.m_v - upper.bit_count()
        p = star.m_l - (upper & principal_mask).bit_count()
        assert t >= 0 and p >= 0
        return (b, t, p, tie_break(cube))

    order = sorted(star.cubes(), key=sort_key)
    present: dict[int, set[int]] = {}
    for lower, upper in star.cubes():
        present.setdefault(upper, set()).add(lower)
    initial = complex_stats((l, u) for u, ls in present.items() for l in ls)

    oracle = HugOracle(cg, strict_principal=strict_principal)
    events: list[CollapseEvent] = []

    def attempt(lower: int, upper: int) -> bool:
        """Try one collapse event; True when the cube was collapsed."""
        lowers = present.get(upper)
        if lowers is None or lower not in lowers:
            return False
        hugged = oracle.hugged_mask(upper) & (upper & ~lower)
        if not hugged:
            return False
        face_upper = upper & ~hugged
        containing = [
            (a, b)
            for b in star.supersets[face_upper]
            if b in present
            for a in present[b]
            if not a & ~lower
        ]
        if (lower, face_upper) not in containing:
            raise StructuralAssertionError(
                "free face is absent although its cofaces are present",
                (lower, upper),
                (lower, face_upper),
            )
        if not all(a == lower and not b & ~upper for a, b in containing):
            if strict_schedule:
                raise StructuralAssertionError(
                    "free-face condition failed during the ordered collapse",
                    (lower, upper),
                    (lower, face_upper),
                )
            return False
        expected = {(lower, face_upper | sub) for sub in _submasks(hugged)}
        if set(containing) != expected:
            raise StructuralAssertionError(
                "collapse would not remove exactly the faces between the "
                "free face and the target",
                (lower, upper),
                (lower, face_upper),
            )
        for a, b in containing:
            present[b].discard(a)
        events.append(
            CollapseEvent(
                target=(lower, upper),
                face=(lower, face_upper),
                hugged=hugged,
                removed=len(containing),
            )
        )
        return True

    def attempt_pair_down(lower: int, upper: int) -> bool:
        """Cleanup collapse for a cube whose hugged members cannot be dropped.

        The cube pairs with the face extending its lower set by the least
        non-hugged member; the pair must form a genuine elementary collapse
        (the face's only present cofaces are itself and the cube).
        """
        lowers = present.get(upper)
        if lowers is None or lower not in lowers:
            return False
        hugged = oracle.hugged_mask(upper) & (upper & ~lower)
        if not hugged:
            return False
        rest = upper & ~oracle.hugged_mask(upper) & ~lower
        if not rest:
            return False
        y = rest & -rest
        face = (lower | y, upper)
        if face[0] not in lowers:
            return False
        containing = [
            (a, b)
            for b in star.supersets[upper]
            if b in present
            for a in present[b]
            if not a & ~face[0]
        ]
        if set(containing) != {(lower, upper), face}:
            return False
        present[upper].discard(lower)
        present[upper].discard(face[0])
        events.append(
            CollapseEvent(
                target=(lower, upper),
                face=face,
                hugged=hugged,
                removed=2,
                kind="pair-down",
            )
        )
        return True

    while True:
        progressed = False
        for lower, upper in order:
            if attempt(lower, upper):
                progressed = True
        if not progressed:
            break
    if not strict_schedule:
        while True:
            progressed = False
            for lower, upper in order:
                if attempt(lower, upper) or attempt_pair_down(lower, upper):
                    progressed = True
            if not progressed:
                break

    blocked: list[tuple[int, int]] = []
    for upper, lowers in present.items():
        hug_all = oracle.hugged_mask(upper)
        for lower in lowers:
            if hug_all & (upper & ~lower):
                blocked.append((lower, upper))
    blocked.sort(key=lambda cube: (_ids(cube[0]), _ids(cube[1])))

    final_cubes = frozenset(
        (l, u) for u, ls in present.items() for l in ls
    )
    final = complex_stats(final_cubes)
    return RetractionTrace(
        events=tuple(events),
        skipped=tuple(blocked),
        initial_stats=initial,
        final_stats=final,
        final_cubes=final_cubes,
        strict_principal=strict_principal,
    )


def crosscheck_survivors(star: StarComplex, trace: RetractionTrace) -> "CrosscheckResult":
    """Compare the retained cubes against the survivor predicate.

    A cube (lower, upper) should survive iff upper \\ lower contains no
    hugged non-principal member and no addable non-principal partition would
    be hugged in the enlarged set.  Computed with a fresh oracle over every
    original cube.
    """
    cg = star.cg
    oracle = HugOracle(cg, strict_principal=trace.strict_principal)
    mismatched_kept: list[tuple[int, int]] = []
    mismatched_lost: list[tuple[int, int]] = []
    for lower, upper in star.cubes():
        hug = oracle.hugged_mask(upper)
        survives = not hug & (upper & ~lower) and not oracle.extendable_by_hugged(upper)
        present = (lower, upper) in trace.final_cubes
        if present and not survives:
            mismatched_kept.append((lower, upper))
        elif survives and not present:
            mismatched_lost.append((lower, upper))
    return CrosscheckResult(
        ok=not mismatched_kept and not mismatched_lost,
        kept_but_redundant=tuple(mismatched_kept[:20]),
        surviving_but_removed=tuple(mismatched_lost[:20]),
    )


@dataclass(frozen=True)
class CrosscheckResult:
    ok: bool
    kept_but_redundant: tuple[tuple[int, int], ...]
    surviving_but_removed: tuple[tuple[int, int], ...]
