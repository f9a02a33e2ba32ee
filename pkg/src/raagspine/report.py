"""Analysis report assembly: the one-stop summary for a defining graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .compat import CompatibilityGraph
from .conditions import ConditionReport, condition_report
from .graph import SimplicialGraph
from .search import MaxSetResult, max_compatible

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AnalysisReport:
    graph: SimplicialGraph
    partition_count: int
    m_l: MaxSetResult
    m_v: MaxSetResult
    conditions: ConditionReport
    vcd_mode: str  # "exact" | "bounds"
    vcd_value: Optional[int]
    vcd_bounds: tuple[int, int]
    vcd_note: str
    retraction: Optional[dict] = None

    def to_dict(self, cg: CompatibilityGraph) -> dict:
        g = self.graph
        cls = g.classify_vertices()
        witness = lambda r: [cg.nodes[i].render(g) for i in sorted(r.witness)]
        payload = {
            "schema_version": SCHEMA_VERSION,
            "graph": {
                "vertices": list(g.names),
                "edges": [[g.names[i], g.names[j]] for i, j in sorted(g.edges)],
                "warnings": g.validation_warnings(),
            },
            "classification": {
                "principal": [g.names[v] for v in sorted(cls.principal)],
                "non_principal": [g.names[v] for v in sorted(cls.non_principal)],
                "relevant": [g.names[v] for v in sorted(cls.relevant)],
                "maximal": [g.names[v] for v in sorted(cls.maximal)],
            },
            "partition_count": self.partition_count,
            "principal_rank": {"size": self.m_l.size, "witness": witness(self.m_l)},
            "spine_dimension": {"size": self.m_v.size, "witness": witness(self.m_v)},
            "conditions": self.conditions.to_dict(g),
            "vcd": {
                "mode": self.vcd_mode,
                "value": self.vcd_value,
                "bounds": list(self.vcd_bounds),
                "note": self.vcd_note,
            },
        }
        if self.retraction is not None:
            payload["retraction"] = self.retraction
        return payload

    def to_text(self) -> str:
        g = self.graph
        cls = g.classify_vertices()
        names = lambda s: ", ".join(g.names[v] for v in sorted(s)) or "(none)"
        lines = [
            f"graph: {len(g.names)} vertices, {len(g.edges)} edges",
            f"principal vertices: {names(cls.principal)}",
            f"relevant non-principal: {names(cls.relevant - cls.principal)}",
            f"partitions: {self.partition_count}",
            f"principal rank M(L) = {self.m_l.size}",
            f"spine dimension M(V) = {self.m_v.size}",
            f"condition 1: {'holds' if self.conditions.condition1 else 'fails'}",
            f"condition 2: {'holds' if self.conditions.condition2 else 'fails'}",
            f"spiky: {self.conditions.spiky}   barbed: {self.conditions.barbed}",
            f"P(k): k = {self.conditions.p_k}",
        ]
        if self.vcd_mode == "exact":
            lines.append(f"vcd(U(A_Gamma)) = {self.vcd_value}  ({self.vcd_note})")
        else:
            lo, hi = self.vcd_bounds
            lines.append(f"vcd(U(A_Gamma)) in [{lo}, {hi}]  ({self.vcd_note})")
        if self.retraction is not None:
            fin = self.retraction["final"]
            lines.append(
                "retraction: dimension "
                f"{self.retraction['initial']['dimension']} -> {fin['dimension']}, "
                f"euler {fin['euler_characteristic']}, "
                f"{len(self.retraction['events'])} events"
            )
        return "\n".join(lines)


def analyze(
    g: SimplicialGraph,
    cg: CompatibilityGraph,
    retraction: Optional[dict] = None,
) -> AnalysisReport:
    """Aggregate search and condition results into one report.

    The vcd verdict is exact (= principal rank) when the graph is spiky and
    barbed; otherwise only the a-priori bounds [M(L), M(V)] are reported.
    """
    cls = g.classify_vertices()
    m_l = max_compatible(cg, cls.principal)
    m_v = max_compatible(cg, frozenset(range(g.n)))
    report = condition_report(g)
    if m_l.size > m_v.size:
        raise RuntimeError("principal rank exceeds spine dimension")
    if report.spiky and report.barbed:
        mode, value = "exact", m_l.size
        note = "graph is spiky and barbed, so the retracted spine realises M(L)"
    else:
        mode, value = "bounds", None
        note = "spiky/barbed does not hold; only the a-priori bounds apply"
        if report.barbed and not report.spiky:
            note += (
                "; the graph is barbed, so if the replacement property holds "
                "anyway (see the verify command), the value equals M(L)"
            )
    return AnalysisReport(
        graph=g,
        partition_count=cg.n,
        m_l=m_l,
        m_v=m_v,
        conditions=report,
        vcd_mode=mode,
        vcd_value=value,
        vcd_bounds=(m_l.size, m_v.size),
        vcd_note=note,
        retraction=retraction,
    )
