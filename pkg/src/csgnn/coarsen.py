"""Coarsening policies: spectral clustering plus the deterministic policies
used by the expressivity harness (identity, degree-3, node+edge).

A coarse partition is a bag of non-empty super-nodes (subsets of the input
graph's nodes) with edges induced by the original connectivity: two
super-nodes are adjacent iff some original edge crosses between them.
Spectral and identity coarsening partition the node set; degree-3 and
node+edge are named non-partition policies (non-covering and overlapping,
respectively).
"""

from dataclasses import dataclass

import numpy as np

from .errors import CoarseningError, ContractError
from .graph import Graph, fix_eigenvector_signs, normalized_laplacian, symmetric_eigs

_ZERO_EIG_TOL = 1e-8
_KMEANS_SHIFT_TOL = 1e-9
_KMEANS_MAX_ITER = 100


@dataclass(frozen=True)
class CoarsePartition:
    """super_nodes: tuple of sorted node-id tuples; coarse_edges: unordered
    super-index pairs (i, j) with i < j; source_n: node count of the source
    graph."""

    super_nodes: tuple
    coarse_edges: tuple
    source_n: int

    def __post_init__(self):
        supers = tuple(tuple(sorted(int(v) for v in s)) for s in self.super_nodes)
        object.__setattr__(self, "super_nodes", supers)
        object.__setattr__(self, "coarse_edges", tuple((int(a), int(b)) for a, b in self.coarse_edges))
        if len(set(supers)) != len(supers):
            raise ContractError("duplicate super-nodes")
        for s in supers:
            if not s:
                raise ContractError("empty super-node")
            if s[0] < 0 or s[-1] >= self.source_n:
                raise ContractError("super-node id out of range")
            if len(set(s)) != len(s):
                raise ContractError("repeated node id inside super-node")
        t = len(supers)
        for a, b in self.coarse_edges:
            if not (0 <= a < b < t):
                raise ContractError("bad coarse edge")

    @property
    def num_supers(self) -> int:
        return len(self.super_nodes)

    def is_partition(self) -> bool:
        total = sum(len(s) for s in self.super_nodes)
        union = set()
        for s in self.super_nodes:
            union.update(s)
        return total == self.source_n and len(union) == self.source_n

    def membership(self):
        """For each node id, the sorted list of super indices containing it."""
        memb = [[] for _ in range(self.source_n)]
        for si, s in enumerate(self.super_nodes):
            for v in s:
                memb[v].append(si)
        return memb

    def permuted(self, perm) -> "CoarsePartition":
        """Apply a node relabeling inside every super-node; super order follows
        the sorted relabeled sets so the result is canonical."""
        perm = list(perm)
        supers = [tuple(sorted(perm[v] for v in s)) for s in self.super_nodes]
        order = sorted(range(len(supers)), key=lambda i: supers[i])
        rank = {old: new for new, old in enumerate(order)}
        edges = sorted(
            (min(rank[a], rank[b]), max(rank[a], rank[b])) for a, b in self.coarse_edges
        )
        return CoarsePartition(
            tuple(supers[i] for i in order), tuple(edges), self.source_n
        )


def induced_edges(g: Graph, supers) -> tuple:
    """Super-node pairs connected by at least one original edge (no coarse
    self-loops)."""
    supers = [frozenset(s) for s in supers]
    memb = {}
    for si, s in enumerate(supers):
        for v in s:
            memb.setdefault(v, []).append(si)
    found = set()
    for u, v in g.edges:
        for si in memb.get(u, ()):
            for sj in memb.get(v, ()):
                if si != sj:
                    found.add((min(si, sj), max(si, sj)))
    return tuple(sorted(found))


def identity_coarsen(g: Graph) -> CoarsePartition:
    """One singleton super-node per node; the coarse graph mirrors g."""
    supers = tuple((v,) for v in range(g.num_nodes))
    return CoarsePartition(supers, induced_edges(g, supers), g.num_nodes)


def degree3_coarsen(g: Graph) -> CoarsePartition:
    """A single super-node holding every node of degree exactly 3."""
    deg = g.degrees()
    members = tuple(int(v) for v in np.flatnonzero(deg == 3))
    if not members:
        raise CoarseningError("graph has no degree-3 node")
    return CoarsePartition((members,), (), g.num_nodes)


def node_plus_edge_coarsen(g: Graph) -> CoarsePartition:
    """All singletons plus one super-node per edge (overlapping bag)."""
    supers = tuple((v,) for v in range(g.num_nodes)) + tuple(g.edges)
    return CoarsePartition(supers, induced_edges(g, supers), g.num_nodes)


def single_coarsen(g: Graph) -> CoarsePartition:
    """The whole vertex set as one super-node."""
    return CoarsePartition((tuple(range(g.num_nodes)),), (), g.num_nodes)


def _canonical_zero_eigenspace(vecs: np.ndarray) -> np.ndarray:
    """Replace a basis of the (multiplicity > 1) zero eigenspace with the
    Gram-Schmidt basis of the projected coordinate vectors, taken in node-id
    order. Deterministic for a fixed node order."""
    n, m = vecs.shape
    proj = vecs @ vecs.T
    basis = []
    for j in range(n):
        w = proj[:, j].copy()
        for b in basis:
            w -= (b @ w) * b
        norm = np.linalg.norm(w)
        if norm > 1e-8:
            basis.append(w / norm)
        if len(basis) == m:
            break
    return np.stack(basis, axis=1)


def spectral_embedding(g: Graph, lap_dim: int) -> np.ndarray:
    """Rows are nodes, columns the lap_dim smallest Laplacian eigenvectors
    with deterministic signs."""
    n = g.num_nodes
    if not (1 <= lap_dim <= n):
        raise ContractError(f"lap_dim={lap_dim} out of range for n={n}")
    lap = normalized_laplacian(g)
    vals, vecs = symmetric_eigs(lap, n)
    num_zero = int(np.sum(np.abs(vals) < _ZERO_EIG_TOL))
    if num_zero > 1:
        vecs = vecs.copy()
        vecs[:, :num_zero] = _canonical_zero_eigenspace(vecs[:, :num_zero])
        vecs = fix_eigenvector_signs(vecs)
    return vecs[:, :lap_dim].copy()


def _kmeans_pp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centers = [int(rng.integers(n))]
    d2 = ((points - points[centers[0]]) ** 2).sum(axis=1)
    while len(centers) < k:
        total = float(d2.sum())
        if total <= 1e-24:
            break  # remaining points coincide with chosen centers
        nxt = int(rng.choice(n, p=d2 / total))
        centers.append(nxt)
        d2 = np.minimum(d2, ((points - points[nxt]) ** 2).sum(axis=1))
    return points[np.array(centers)].copy()


def kmeans(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Lloyd iterations with seeded k-means++ init. Equidistant points go to
    the lowest cluster index. Returns per-point labels; clusters may end up
    empty (callers drop them)."""
    centers = _kmeans_pp_init(points, k, rng)
    kk = centers.shape[0]
    labels = np.zeros(points.shape[0], dtype=np.int64)
    for _ in range(_KMEANS_MAX_ITER):
        d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = np.argmin(d2, axis=1)  # argmin takes the first minimum
        new_centers = centers.copy()
        for c in range(kk):
            mask = labels == c
            if mask.any():
                new_centers[c] = points[mask].mean(axis=0)
        shift = float(np.abs(new_centers - centers).max())
        centers = new_centers
        if shift < _KMEANS_SHIFT_TOL:
            break
    d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return np.argmin(d2, axis=1)


def spectral_coarsen(g: Graph, num_clusters: int, lap_dim: int, seed: int) -> CoarsePartition:
    """Partition the nodes by k-means over the spectral embedding; empty
    clusters are dropped, so the bag may come out smaller than requested."""
    n = g.num_nodes
    if not (1 <= num_clusters <= n):
        raise ContractError(f"num_clusters={num_clusters} out of range for n={n}")
    emb = spectral_embedding(g, lap_dim)
    rng = np.random.default_rng(seed)
    labels = kmeans(emb, num_clusters, rng)
    supers = []
    for c in range(num_clusters):
        members = tuple(int(v) for v in np.flatnonzero(labels == c))
        if members:
            supers.append(members)
    supers = tuple(supers)
    return CoarsePartition(supers, induced_edges(g, supers), n)


@dataclass(frozen=True)
class CoarsenSpec:
    """Which coarsening to run and its knobs (only spectral uses them)."""

    kind: str = "spectral"
    num_clusters: int = 2
    lap_dim: int = 1

    _KINDS = ("spectral", "identity", "degree3", "node_plus_edge", "single")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ContractError(f"unknown coarsening kind: {self.kind!r}")
        if self.num_clusters < 1 or self.lap_dim < 1:
            raise ContractError("num_clusters and lap_dim must be >= 1")

    def apply(self, g: Graph, seed: int = 0) -> CoarsePartition:
        if self.kind == "spectral":
            return spectral_coarsen(
                g, min(self.num_clusters, g.num_nodes), min(self.lap_dim, g.num_nodes), seed
            )
        if self.kind == "identity":
            return identity_coarsen(g)
        if self.kind == "degree3":
            return degree3_coarsen(g)
        if self.kind == "node_plus_edge":
            return node_plus_edge_coarsen(g)
        return single_coarsen(g)
