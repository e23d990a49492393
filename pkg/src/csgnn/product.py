"""The coarse product graph: nodes are (super-node, node) pairs carrying four
adjacency structures.

Flattened node index: super_idx * num_nodes + node_id. adj_g (original edges
within one row of super-nodes) and adj_tg (coarse edges at a fixed node) are
undirected and stored once per pair. adj_p1 and adj_p2 are broadcast message
structures and stored directed, source to target:

  p1: (S', v) -> (S, v)   for every super S and every S' containing v
  p2: (S, v') -> (S, v)   for every v and every v' inside S

Both include the self-message (S, v) -> (S, v) when v is in S. p1/p2 edges
carry the dense orbit code of (S_target, v_target, S_source, v_source).
"""

from dataclasses import dataclass

import numpy as np

from .coarsen import CoarsePartition
from .errors import ContractError
from .graph import Graph
from .symmetry import classify_quad, quad_orbit_code


@dataclass(frozen=True)
class ProductGraph:
    num_supers: int
    num_nodes: int
    adj_g: np.ndarray      # (E, 2) undirected flattened pairs, first < second
    efeat_g: np.ndarray    # original edge feature ids
    adj_tg: np.ndarray     # (E, 2) undirected
    efeat_tg: np.ndarray   # coarse edge feature ids (all 0)
    adj_p1: np.ndarray     # (E, 2) directed (source, target)
    efeat_p1: np.ndarray   # orbit codes
    adj_p2: np.ndarray     # (E, 2) directed (source, target)
    efeat_p2: np.ndarray   # orbit codes

    @property
    def num_pg_nodes(self) -> int:
        return self.num_supers * self.num_nodes

    def flat(self, super_idx: int, node_id: int) -> int:
        return super_idx * self.num_nodes + node_id

    def undirected_union(self) -> set:
        """Edge set of adj_g plus adj_tg as unordered flattened pairs."""
        out = set()
        for a, b in self.adj_g:
            out.add((int(a), int(b)))
        for a, b in self.adj_tg:
            out.add((int(a), int(b)))
        return out


def _edge_array(pairs) -> np.ndarray:
    if not pairs:
        return np.zeros((0, 2), dtype=np.int64)
    return np.array(pairs, dtype=np.int64)


def build_product(g: Graph, cp: CoarsePartition) -> ProductGraph:
    if cp.source_n != g.num_nodes:
        raise ContractError("partition was built for a different node count")
    n = g.num_nodes
    t = cp.num_supers
    super_sets = [frozenset(s) for s in cp.super_nodes]

    adj_g = []
    efeat_g = []
    for si in range(t):
        base = si * n
        for (u, v), f in zip(g.edges, g.edge_feat):
            adj_g.append((base + u, base + v))
            efeat_g.append(f)

    adj_tg = []
    for si, sj in cp.coarse_edges:
        for v in range(n):
            adj_tg.append((si * n + v, sj * n + v))

    memb = cp.membership()

    def code(s_target, v_target, s_source, v_source):
        orb = classify_quad(
            super_sets[s_target], v_target, super_sets[s_source], v_source, n
        )
        return quad_orbit_code(orb, n)

    adj_p1 = []
    efeat_p1 = []
    for si in range(t):
        for v in range(n):
            for sj in memb[v]:
                adj_p1.append((sj * n + v, si * n + v))
                efeat_p1.append(code(si, v, sj, v))

    adj_p2 = []
    efeat_p2 = []
    for si in range(t):
        base = si * n
        for v in range(n):
            for u in cp.super_nodes[si]:
                adj_p2.append((base + u, base + v))
                efeat_p2.append(code(si, v, si, u))

    return ProductGraph(
        num_supers=t,
        num_nodes=n,
        adj_g=_edge_array(adj_g),
        efeat_g=np.array(efeat_g, dtype=np.int64),
        adj_tg=_edge_array(adj_tg),
        efeat_tg=np.zeros(len(adj_tg), dtype=np.int64),
        adj_p1=_edge_array(adj_p1),
        efeat_p1=np.array(efeat_p1, dtype=np.int64),
        adj_p2=_edge_array(adj_p2),
        efeat_p2=np.array(efeat_p2, dtype=np.int64),
    )


def kron_oracle(a1: np.ndarray, a2: np.ndarray) -> np.ndarray:
    """Dense Cartesian-product adjacency a1 (x) I + I (x) a2 (test oracle)."""
    a1 = np.asarray(a1, dtype=np.float64)
    a2 = np.asarray(a2, dtype=np.float64)
    if a1.ndim != 2 or a1.shape[0] != a1.shape[1]:
        raise ContractError("a1 must be square")
    if a2.ndim != 2 or a2.shape[0] != a2.shape[1]:
        raise ContractError("a2 must be square")
    n1 = a1.shape[0]
    n2 = a2.shape[0]
    return np.kron(a1, np.eye(n2)) + np.kron(np.eye(n1), a2)


def coarse_dense_adjacency(cp: CoarsePartition) -> np.ndarray:
    a = np.zeros((cp.num_supers, cp.num_supers), dtype=np.float64)
    for i, j in cp.coarse_edges:
        a[i, j] = 1.0
        a[j, i] = 1.0
    return a
