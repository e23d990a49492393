"""Graph representation, hop distances, and Laplacian utilities.

Graphs are small, undirected, and immutable: dense f64 matrices are fine here.
Training code (model.py) works in f32; everything in this module stays f64.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError
from .kernels import bfs_all_pairs_kernel, jacobi_sweeps_kernel


@dataclass(frozen=True)
class Graph:
    """Undirected graph with categorical node/edge features.

    Node ids are 0..num_nodes-1. Edges are stored once, smaller id first,
    without self-loops or duplicates. edge_feat[i] belongs to edges[i].
    """

    num_nodes: int
    edges: tuple
    node_feat: tuple
    edge_feat: tuple = field(default=None)

    def __post_init__(self):
        if self.num_nodes < 0:
            raise ContractError("num_nodes must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        node_feat = tuple(int(f) for f in self.node_feat)
        if self.edge_feat is None:
            edge_feat = tuple(0 for _ in edges)
        else:
            edge_feat = tuple(int(f) for f in self.edge_feat)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "node_feat", node_feat)
        object.__setattr__(self, "edge_feat", edge_feat)
        if len(node_feat) != self.num_nodes:
            raise ContractError("node_feat length must equal num_nodes")
        if len(edge_feat) != len(edges):
            raise ContractError("edge_feat length must equal edge count")
        seen = set()
        for u, v in edges:
            if not (0 <= u < self.num_nodes and 0 <= v < self.num_nodes):
                raise ContractError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ContractError(f"self-loop at node {u}")
            if u > v:
                raise ContractError(f"edge ({u},{v}) not stored smaller id first")
            if (u, v) in seen:
                raise ContractError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
        if any(f < 0 for f in node_feat) or any(f < 0 for f in edge_feat):
            raise ContractError("feature ids must be non-negative")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.num_nodes, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.num_nodes, self.num_nodes), dtype=np.float64)
        for u, v in self.edges:
            a[u, v] = 1.0
            a[v, u] = 1.0
        return a

    def neighbors_csr(self):
        """(indptr, indices) in node-id order, both directions of each edge."""
        n = self.num_nodes
        counts = np.zeros(n + 1, dtype=np.int64)
        for u, v in self.edges:
            counts[u + 1] += 1
            counts[v + 1] += 1
        indptr = np.cumsum(counts)
        indices = np.zeros(indptr[-1], dtype=np.int64)
        cursor = indptr[:-1].copy()
        for u, v in self.edges:
            indices[cursor[u]] = v
            cursor[u] += 1
            indices[cursor[v]] = u
            cursor[v] += 1
        for u in range(n):
            indices[indptr[u]:indptr[u + 1]].sort()
        return indptr, indices

    def permuted(self, perm) -> "Graph":
        """Relabeled copy: node i becomes perm[i]."""
        perm = list(perm)
        edges = []
        efeat = []
        for (u, v), f in zip(self.edges, self.edge_feat):
            a, b = perm[u], perm[v]
            if a > b:
                a, b = b, a
            edges.append((a, b))
            efeat.append(f)
        order = sorted(range(len(edges)), key=lambda i: edges[i])
        nf = [0] * self.num_nodes
        for i, f in enumerate(self.node_feat):
            nf[perm[i]] = f
        return Graph(
            self.num_nodes,
            tuple(edges[i] for i in order),
            tuple(nf),
            tuple(efeat[i] for i in order),
        )


@dataclass(frozen=True)
class SpdMatrix:
    """All-pairs hop distances; unreachable pairs are capped at num_nodes."""

    dist: np.ndarray

    @property
    def sentinel(self) -> int:
        return self.dist.shape[0]


def all_pairs_spd(g: Graph) -> SpdMatrix:
    """Hop distance between every node pair (BFS per source)."""
    indptr, indices = g.neighbors_csr()
    dist = bfs_all_pairs_kernel(indptr, indices, g.num_nodes)
    dist.setflags(write=False)
    return SpdMatrix(dist)


def normalized_laplacian(g: Graph) -> np.ndarray:
    """L = I - D^{-1/2} A D^{-1/2}; an isolated node contributes a plain
    identity row (diagonal 1, off-diagonal 0)."""
    n = g.num_nodes
    a = g.adjacency()
    deg = a.sum(axis=1)
    inv_sqrt = np.zeros(n, dtype=np.float64)
    nz = deg > 0
    inv_sqrt[nz] = 1.0 / np.sqrt(deg[nz])
    lap = -a * inv_sqrt[:, None] * inv_sqrt[None, :]
    np.fill_diagonal(lap, 1.0)
    return lap


def fix_eigenvector_signs(vecs: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Flip each column so its first component larger than tol in magnitude
    is positive."""
    vecs = vecs.copy()
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        for x in col:
            if abs(x) > tol:
                if x < 0:
                    vecs[:, j] = -col
                break
    return vecs


def symmetric_eigs(m: np.ndarray, k: int):
    """k smallest eigenpairs of a symmetric matrix via cyclic Jacobi sweeps.

    Returns (eigenvalues ascending, eigenvectors as columns), with each
    eigenvector's sign fixed so its first nonzero component is positive.
    """
    m = np.asarray(m, dtype=np.float64)
    n = m.shape[0]
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError("matrix must be square")
    if not np.allclose(m, m.T, atol=1e-10):
        raise ContractError("matrix must be symmetric")
    if not (0 <= k <= n):
        raise ContractError(f"k={k} out of range for n={n}")
    a = m.copy()
    v = np.eye(n, dtype=np.float64)
    fro = float(np.sqrt((m * m).sum()))
    tol = (1e-14 * (1.0 + fro)) ** 2
    jacobi_sweeps_kernel(a, v, tol, 100)
    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    vals = vals[order][:k]
    vecs = fix_eigenvector_signs(v[:, order][:, :k])
    return vals, vecs
