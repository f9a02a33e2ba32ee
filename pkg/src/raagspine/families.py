"""Generators for the graph families and named test fixtures.

All constructors are deterministic: regenerating a family gives a graph whose
canonical text form is byte-identical.
"""

from __future__ import annotations

from .graph import SimplicialGraph


def rake(d: int) -> SimplicialGraph:
    """The d-rake: a hub v with a leaf u and d paths v - a_i - b_i.

    v has valence d+1; the a_i have valence 2; u and the b_i are leaves.
    """
    if d < 1:
        raise ValueError("rake needs d >= 1")
    names = ["u", "v"] + [f"a{i}" for i in range(1, d + 1)] + [
        f"b{i}" for i in range(1, d + 1)
    ]
    edges = [("u", "v")]
    for i in range(1, d + 1):
        edges.append(("v", f"a{i}"))
        edges.append((f"a{i}", f"b{i}"))
    return SimplicialGraph(names, edges)


def rake_like(d: int, inner: SimplicialGraph) -> SimplicialGraph:
    """Replace the rake hub v by a graph with no non-principal vertices.

    Every inner vertex becomes adjacent to u and to each a_i; inner edges are
    preserved.  Inner vertex names must not clash with the rake's own names.
    """
    if d < 1:
        raise ValueError("rake_like needs d >= 1")
    cls = inner.classify_vertices()
    if cls.non_principal:
        bad = ", ".join(inner.names[v] for v in sorted(cls.non_principal))
        raise ValueError(f"inner graph has non-principal vertices: {bad}")
    outer = ["u"] + [f"a{i}" for i in range(1, d + 1)] + [
        f"b{i}" for i in range(1, d + 1)
    ]
    clash = set(outer) & set(inner.names)
    if clash:
        raise ValueError(f"inner vertex names clash with rake names: {sorted(clash)}")
    names = ["u"] + list(inner.names) + outer[1:]
    edges = [(inner.names[i], inner.names[j]) for i, j in sorted(inner.edges)]
    for w in inner.names:
        edges.append(("u", w))
        for i in range(1, d + 1):
            edges.append((w, f"a{i}"))
    for i in range(1, d + 1):
        edges.append((f"a{i}", f"b{i}"))
    return SimplicialGraph(names, edges)


def delta() -> SimplicialGraph:
    """Two hub-and-leaf pairs (u_i - v_i) sharing the middle tooth a2.

    10 vertices, 9 edges: u1-v1, u2-v2, v1-a1, v1-a2, v2-a2, v2-a3, a_i-b_i.
    """
    names = ["u1", "v1", "u2", "v2", "a1", "a2", "a3", "b1", "b2", "b3"]
    edges = [
        ("u1", "v1"),
        ("u2", "v2"),
        ("v1", "a1"),
        ("v1", "a2"),
        ("v2", "a2"),
        ("v2", "a3"),
        ("a1", "b1"),
        ("a2", "b2"),
        ("a3", "b3"),
    ]
    return SimplicialGraph(names, edges)


def path(n: int) -> SimplicialGraph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    names = [f"v{i}" for i in range(1, n + 1)]
    edges = [(names[i], names[i + 1]) for i in range(n - 1)]
    return SimplicialGraph(names, edges)


def cycle(n: int) -> SimplicialGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    names = [f"v{i}" for i in range(1, n + 1)]
    edges = [(names[i], names[(i + 1) % n]) for i in range(n)]
    return SimplicialGraph(names, edges)


def complete(n: int) -> SimplicialGraph:
    if n < 1:
        raise ValueError("complete needs n >= 1")
    names = [f"v{i}" for i in range(1, n + 1)]
    edges = [
        (names[i], names[j]) for i in range(n) for j in range(i + 1, n)
    ]
    return SimplicialGraph(names, edges)


def edgeless(n: int) -> SimplicialGraph:
    """n vertices, no edges: the free-group case."""
    if n < 1:
        raise ValueError("edgeless needs n >= 1")
    return SimplicialGraph([f"v{i}" for i in range(1, n + 1)], [])


def principal_not_maximal_example() -> SimplicialGraph:
    """Triangle with a leaf on two of its corners.

    The third corner v is principal but not maximal (v <= left and v <= right
    while neither link contains the other strictly).
    """
    names = ["leaf1", "left", "right", "leaf2", "v"]
    edges = [
        ("leaf1", "left"),
        ("left", "right"),
        ("right", "leaf2"),
        ("left", "v"),
        ("right", "v"),
    ]
    return SimplicialGraph(names, edges)


def partition_example_graph() -> SimplicialGraph:
    """11-vertex fixture with a unique-base partition.

    v's link is {l1, l2, l3}; removing st(v) leaves the singletons x, y and the
    components {c1a, c1b} and {c2a, c2b, c2c}.
    """
    names = ["x", "v", "y", "l1", "l2", "l3", "c1a", "c1b", "c2a", "c2b", "c2c"]
    edges = [
        ("x", "l1"),
        ("l1", "c1a"),
        ("c1a", "c1b"),
        ("v", "l1"),
        ("v", "l2"),
        ("v", "l3"),
        ("l2", "c2a"),
        ("l2", "c2b"),
        ("c2a", "c2b"),
        ("l3", "c2b"),
        ("l3", "y"),
        ("c2b", "c2c"),
    ]
    return SimplicialGraph(names, edges)


def compatibility_example_graph() -> SimplicialGraph:
    """Path a-b-c-d plus an isolated vertex e.

    Small fixture whose partitions witness that compatibility is not
    transitive.
    """
    return SimplicialGraph(
        ["a", "b", "c", "d", "e"], [("a", "b"), ("b", "c"), ("c", "d")]
    )


def condition1_counterexample() -> SimplicialGraph:
    """Hub v with leaves u, a and a path u2-m-m2 (plus leaf w) hung off it.

    u and u2 are non-principal at distance 2, and u2 commutes with the
    principal dominator m of u, so check_condition1 reports a violation.
    """
    names = ["u", "v", "u2", "m", "m2", "a", "w"]
    edges = [
        ("u", "v"),
        ("v", "u2"),
        ("v", "m"),
        ("v", "m2"),
        ("v", "a"),
        ("u2", "m"),
        ("m", "m2"),
        ("m2", "w"),
    ]
    return SimplicialGraph(names, edges)


def condition2_counterexample() -> SimplicialGraph:
    """14-vertex fixture where two commuting principal vertices sit near u.

    u is relevant non-principal with principal dominator m, and the principal
    vertex n lies outside st(u) with [m, n] = 1, so check_condition2 reports a
    violation.
    """
    names = [
        "u", "p1", "p2", "m", "m2", "n",
        "q1", "v", "q2", "q3", "q4", "r1", "r2", "r3",
    ]
    edges = [
        ("u", "p1"),
        ("u", "p2"),
        ("p2", "m"),
        ("p2", "n"),
        ("p2", "m2"),
        ("p1", "m"),
        ("p1", "m2"),
        ("m", "n"),
        ("n", "q4"),
        ("m", "q2"),
        ("m2", "v"),
        ("m2", "q1"),
        ("n", "q3"),
        ("m", "q3"),
        ("q4", "r1"),
        ("q3", "r1"),
        ("q3", "r2"),
        ("v", "r3"),
    ]
    return SimplicialGraph(names, edges)


FAMILIES = {
    "rake": rake,
    "rake-like": rake_like,
    "delta": delta,
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "edgeless": edgeless,
    "principal-not-maximal": principal_not_maximal_example,
    "partition-example": partition_example_graph,
    "compatibility-example": compatibility_example_graph,
    "condition1-counterexample": condition1_counterexample,
    "condition2-counterexample": condition2_counterexample,
}
