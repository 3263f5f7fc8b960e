"""Machine-checkable witnesses and their text serialisation.

Layout: line 1 is the kind, line 2 the graph digest, the rest the payload.
Partitions use the two-line partition format, cohesive pairs two vertex
lines plus ``k=<level>``, nonexistence records ``nodes=<count> fixed=<v>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    Bipartition,
    Graph,
    GraphFormatError,
    format_vertex_line,
    parse_vertex_line,
)

KINDS = ("internal-partition", "cohesive-pair", "nonexistence")


@dataclass
class Certificate:
    kind: str
    graph_hash: str
    partition: Bipartition | None = None
    sets: tuple[frozenset[int], frozenset[int]] | None = None
    level: int = 3
    nodes: int | None = None
    fixed: int = 0
    stats: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")

    @classmethod
    def internal(cls, g: Graph, p: Bipartition, **stats) -> "Certificate":
        return cls("internal-partition", g.digest(), partition=p, stats=stats)

    @classmethod
    def nonexistence(cls, g: Graph, nodes: int, fixed: int = 0) -> "Certificate":
        return cls("nonexistence", g.digest(), nodes=nodes, fixed=fixed)

    @classmethod
    def cohesive_pair(cls, g: Graph, s1, s2, level: int = 3) -> "Certificate":
        return cls("cohesive-pair", g.digest(), sets=(frozenset(s1), frozenset(s2)), level=level)

    def to_text(self, offset: int = 0) -> str:
        lines = [self.kind, self.graph_hash]
        if self.kind == "internal-partition":
            lines += [format_vertex_line(self.partition.a, offset), format_vertex_line(self.partition.b, offset)]
        elif self.kind == "cohesive-pair":
            lines += [format_vertex_line(self.sets[0], offset), format_vertex_line(self.sets[1], offset), f"k={self.level}"]
        else:
            lines.append(f"nodes={self.nodes} fixed={self.fixed}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, offset: int = 0) -> "Certificate":
        lines = text.rstrip("\n").split("\n")
        if len(lines) < 3 or lines[0] not in KINDS:
            raise GraphFormatError("not a certificate", 1)
        kind, digest = lines[0], lines[1].strip()
        if kind == "internal-partition":
            if len(lines) != 4:
                raise GraphFormatError("partition certificate needs 4 lines", len(lines))
            a = parse_vertex_line(lines[2], 3, offset)
            b = parse_vertex_line(lines[3], 4, offset)
            return cls(kind, digest, partition=Bipartition(a, b))
        if kind == "cohesive-pair":
            if len(lines) != 5 or not lines[4].startswith("k="):
                raise GraphFormatError("cohesive-pair certificate needs 2 sets and k=", len(lines))
            s1 = parse_vertex_line(lines[2], 3, offset)
            s2 = parse_vertex_line(lines[3], 4, offset)
            return cls(kind, digest, sets=(s1, s2), level=int(lines[4][2:]))
        fields = dict(tok.split("=", 1) for tok in lines[2].split())
        try:
            return cls(kind, digest, nodes=int(fields["nodes"]), fixed=int(fields.get("fixed", 0)))
        except (KeyError, ValueError) as exc:
            raise GraphFormatError("bad nonexistence record", 3) from exc

    def verify(self, g: Graph) -> bool:
        """Re-check the payload against ``g``.

        Nonexistence certificates are checked for a matching digest only; the
        search itself has to be re-run to confirm them.
        """
        from .engine import verify_cohesive, verify_internal

        if self.graph_hash != g.digest():
            return False
        if self.kind == "internal-partition":
            p = self.partition
            if p.trivial or len(p.a) + len(p.b) != g.n:
                return False
            return verify_internal(g, p).valid
        if self.kind == "cohesive-pair":
            s1, s2 = self.sets
            if not s1 or not s2:
                return False
            return verify_cohesive(g, s1, self.level).valid and verify_cohesive(g, s2, self.level).valid
        return True
