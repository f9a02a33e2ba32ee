"""Adjacency and compatibility of partitions; the full compatibility graph.

Two distinct partitions are compatible when they are adjacent (every base of
one lies in the other's link) or some side of one misses some side of the
other entirely.  The compatibility graph over all canonical partitions is the
substrate for every clique computation downstream; it can be cached on disk
keyed by a hash of the canonical graph text.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass

from .graph import SimplicialGraph, graph_to_text
from .partitions import Partition, all_partitions

logger = logging.getLogger(__name__)

CACHE_SCHEMA_VERSION = 1


def is_adjacent(g: SimplicialGraph, p: Partition, q: Partition) -> bool:
    """Whether every base of p commutes with every base of q.

    Computed in both directions (max(p) inside lk(q) and max(q) inside lk(p));
    the two always agree for genuine partitions, and a mismatch means the
    inputs are corrupt.
    """
    q_link = q.link_vertices()
    p_link = p.link_vertices()
    forward = p.max_bases <= q_link
    backward = q.max_bases <= p_link
    if forward != backward:
        raise RuntimeError(
            "adjacency asymmetry: the two defining formulations disagree"
        )
    return forward


def is_compatible(g: SimplicialGraph, p: Partition, q: Partition) -> bool:
    """Compatibility of two partitions; a partition is not compatible with itself."""
    if p == q:
        return False
    if (
        not (p.side_a & q.side_a)
        or not (p.side_a & q.side_b)
        or not (p.side_b & q.side_a)
        or not (p.side_b & q.side_b)
    ):
        return True
    return is_adjacent(g, p, q)


@dataclass(frozen=True)
class CompatibilityGraph:
    """All canonical partitions of a graph plus their compatibility relation.

    ``adj[i]`` is a bitmask over node indices; ``principal[i]`` says whether
    node i is a principal partition; ``bases[i]`` is its set of legal bases.
    """

    graph: SimplicialGraph
    nodes: tuple[Partition, ...]
    adj: tuple[int, ...]
    principal: tuple[bool, ...]
    bases: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.nodes)

    def edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def nodes_based_in(self, vertices: frozenset[int]) -> list[int]:
        return [i for i in range(self.n) if self.bases[i] & vertices]

    def members_mask(self, members) -> int:
        m = 0
        for i in members:
            m |= 1 << i
        return m

    def is_clique(self, members) -> bool:
        ids = list(members)
        mask = self.members_mask(ids)
        return all(self.adj[i] & mask == mask & ~(1 << i) for i in ids)


def graph_hash(g: SimplicialGraph) -> str:
    return hashlib.sha256(graph_to_text(g).encode()).hexdigest()


def _build(g: SimplicialGraph) -> CompatibilityGraph:
    nodes = tuple(all_partitions(g))
    principal_vertices = g.classify_vertices().principal
    n = len(nodes)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if is_compatible(g, nodes[i], nodes[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CompatibilityGraph(
        graph=g,
        nodes=nodes,
        adj=tuple(adj),
        principal=tuple(bool(p.max_bases & principal_vertices) for p in nodes),
        bases=tuple(p.max_bases for p in nodes),
    )


def default_cache_dir() -> str | None:
    return os.environ.get("RAAG_CACHE_DIR") or None


def compatibility_graph(
    g: SimplicialGraph, cache_dir: str | None = None
) -> CompatibilityGraph:
    """Build (or load from cache) the compatibility graph of g.

    ``cache_dir=None`` disables the disk cache.  Cache entries are
    content-addressed by the graph hash; a corrupt or mismatched entry is
    recomputed with a warning and rewritten.
    """
    if cache_dir is None:
        return _build(g)
    key = graph_hash(g)
    path = os.path.join(cache_dir, f"compat-{key}.json")
    if os.path.exists(path):
        try:
            cg = _load_cache(g, path, key)
            logger.info("compatibility cache hit: %s", path)
            return cg
        except Exception as exc:  # corrupt cache: recompute
            logger.warning("compatibility cache unusable (%s); recomputing", exc)
    cg = _build(g)
    try:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(_to_payload(cg, key), fh)
        os.replace(tmp, path)
    except OSError as exc:
        logger.warning("could not write compatibility cache: %s", exc)
    return cg


def _to_payload(cg: CompatibilityGraph, key: str) -> dict:
    return {
        "schema_version": CACHE_SCHEMA_VERSION,
        "graph_hash": key,
        "nodes": [[p.side_a, p.side_b] for p in cg.nodes],
        "adjacency_bits": [format(row, "x") for row in cg.adj],
    }


def _load_cache(g: SimplicialGraph, path: str, key: str) -> CompatibilityGraph:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("schema_version") != CACHE_SCHEMA_VERSION:
        raise ValueError("cache schema version mismatch")
    if payload.get("graph_hash") != key:
        raise ValueError("cache graph hash mismatch")
    from .partitions import _partition_from_masks

    nodes = tuple(
        _partition_from_masks(g, a, b, validate=False) for a, b in payload["nodes"]
    )
    adj = tuple(int(row, 16) for row in payload["adjacency_bits"])
    if len(adj) != len(nodes):
        raise ValueError("cache adjacency size mismatch")
    principal_vertices = g.classify_vertices().principal
    return CompatibilityGraph(
        graph=g,
        nodes=nodes,
        adj=adj,
        principal=tuple(bool(p.max_bases & principal_vertices) for p in nodes),
        bases=tuple(p.max_bases for p in nodes),
    )
