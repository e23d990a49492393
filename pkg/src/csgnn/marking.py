"""Node-marking strategies: the initial feature of a product-graph node (S, v)
describes how v relates to the super-node S.

Four kinds:
  simple           1 if v in S else 0
  node_size        (membership bit, |S|)
  min_distance     smallest hop distance from v to any member of S
  learned_distance the multiset of hop distances from v to the members of S,
                   kept as a sorted tuple; spd_dim keeps only that many
                   smallest entries (None keeps all). The learnable embedding
                   sum over the multiset lives in the model, not here.

Unreachable distances use the sentinel value num_nodes so every distance
indexes a bounded embedding table.
"""

from dataclasses import dataclass

from .coarsen import CoarsePartition
from .errors import ContractError
from .graph import Graph, SpdMatrix

MARKING_KINDS = ("simple", "node_size", "min_distance", "learned_distance")


@dataclass(frozen=True)
class MarkingSpec:
    kind: str = "learned_distance"
    spd_dim: int | None = None  # only used by learned_distance; None = no truncation

    def __post_init__(self):
        if self.kind not in MARKING_KINDS:
            raise ContractError(f"unknown marking kind: {self.kind!r}")
        if self.spd_dim is not None and self.spd_dim < 1:
            raise ContractError("spd_dim must be >= 1 when given")


def mark(g: Graph, cp: CoarsePartition, spec: MarkingSpec, spd: SpdMatrix) -> list:
    """Per-(S, v) descriptors in flattened order (super index major)."""
    if cp.source_n != g.num_nodes or spd.dist.shape[0] != g.num_nodes:
        raise ContractError("graph, partition and distances disagree on node count")
    dist = spd.dist
    out = []
    for s in cp.super_nodes:
        members = set(s)
        for v in range(g.num_nodes):
            if spec.kind == "simple":
                out.append(1 if v in members else 0)
            elif spec.kind == "node_size":
                out.append((1 if v in members else 0, len(s)))
            elif spec.kind == "min_distance":
                out.append(min(int(dist[v, u]) for u in s))
            else:
                ds = sorted(int(dist[v, u]) for u in s)
                if spec.spd_dim is not None:
                    ds = ds[: spec.spd_dim]
                out.append(tuple(ds))
    return out


def marking_sum_statistic(g: Graph, cp: CoarsePartition, spec: MarkingSpec, spd: SpdMatrix) -> int:
    """A single permutation-invariant number the model could output after one
    pooling step: the sum over all (S, v) of a scalar read off the marking.
    For learned_distance the scalar is the maximum over the full (untruncated)
    distance multiset."""
    dist = spd.dist
    total = 0
    for s in cp.super_nodes:
        members = set(s)
        for v in range(g.num_nodes):
            if spec.kind == "simple":
                total += 1 if v in members else 0
            elif spec.kind == "node_size":
                total += (1 if v in members else 0) + len(s)
            elif spec.kind == "min_distance":
                total += min(int(dist[v, u]) for u in s)
            else:
                total += max(int(dist[v, u]) for u in s)
    return total
