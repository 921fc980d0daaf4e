"""Random-walk community detection and Newman modularity.

Direction is discarded: both run on the undirected simple projection.
The agglomeration follows the short-random-walk scheme: each node carries
its t-step walk probability row, the distance between communities is the
degree-normalized euclidean gap between their (averaged) rows, and the
merge chosen at each step is the adjacent pair whose fusion least
increases the mean squared node-to-community distance. The reported
partition is the dendrogram cut with maximum modularity.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAnalysisError
from .network import DependencyNetwork
from .topology import weak_components_of


def _undirected_edges(n: DependencyNetwork) -> list[tuple[int, int]]:
    return sorted({(min(s, d), max(s, d)) for s, d in n.links})


def modularity(n: DependencyNetwork, assignment: dict[int, int]) -> float:
    """Q = sum_c [e_c/m - (d_c/2m)^2] over the undirected simple projection."""
    edges = _undirected_edges(n)
    if not edges:
        raise DegenerateAnalysisError("modularity", "no links")
    missing = [node.id for node in n.nodes if node.id not in assignment]
    if missing:
        raise ValueError(f"assignment misses nodes {missing[:5]}")
    m = len(edges)
    intra: dict[int, int] = {}
    degree_sum: dict[int, int] = {}
    for u, v in edges:
        cu, cv = assignment[u], assignment[v]
        degree_sum[cu] = degree_sum.get(cu, 0) + 1
        degree_sum[cv] = degree_sum.get(cv, 0) + 1
        if cu == cv:
            intra[cu] = intra.get(cu, 0) + 1
    q = 0.0
    for community, d_c in degree_sum.items():
        q += intra.get(community, 0) / m - (d_c / (2 * m)) ** 2
    return q


@dataclass
class CommunityPartition:
    assignment: dict[int, int]
    community_count: int
    modularity: float
    walktrap_t: int


@dataclass
class MergeStep:
    step: int
    community_a: int
    community_b: int
    delta_sigma: float


@dataclass
class WalktrapResult:
    partition: CommunityPartition
    merges: list[MergeStep]
    cut_modularities: list[float]  # modularity after 0..n-1 merges
    best_cut: int

    def assignment_at_cut(self, cut: int) -> dict[int, int]:
        """Node -> community ids (dense, by smallest member) after `cut` merges."""
        n = len(self.cut_modularities)
        parent = list(range(n + len(self.merges)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for step in range(cut):
            merge = self.merges[step]
            new_id = n + step
            parent[find(merge.community_a)] = new_id
            parent[find(merge.community_b)] = new_id
        roots: dict[int, int] = {}
        assignment = {}
        for node in range(n):
            root = find(node)
            if root not in roots:
                roots[root] = len(roots)
            assignment[node] = roots[root]
        return assignment


def walktrap(n: DependencyNetwork, t: int = 4) -> WalktrapResult:
    """Agglomerate the network and return the maximum-modularity cut.

    Requires a connected undirected projection with at least one link.
    Exact ties in the merge criterion go to the pair with the smallest
    (min community id, max community id), making the run deterministic.
    """
    if t < 1:
        raise ValueError("walk length t must be >= 1")
    undirected = n.undirected_adjacency()
    size = len(undirected)
    if size == 0:
        raise DegenerateAnalysisError("walktrap", "empty network")
    if len(weak_components_of(undirected)) > 1:
        raise ValueError("walktrap requires a connected network; pass one component")
    edges = _undirected_edges(n)
    if not edges:
        raise DegenerateAnalysisError("walktrap", "no links")
    m = len(edges)
    degrees = np.array([len(neigh) for neigh in undirected], dtype=float)

    transition = np.zeros((size, size))
    for u, neighbors in enumerate(undirected):
        transition[u, neighbors] = 1.0 / degrees[u]
    walk = np.linalg.matrix_power(transition, t)
    inv_degree = 1.0 / degrees

    comm_size: dict[int, int] = {i: 1 for i in range(size)}
    comm_vector: dict[int, np.ndarray] = {i: walk[i] for i in range(size)}
    comm_nodes: dict[int, list[int]] = {i: [i] for i in range(size)}
    comm_degree: dict[int, float] = {i: degrees[i] for i in range(size)}
    neighbors_of: dict[int, set[int]] = {i: set() for i in range(size)}
    for u, v in edges:
        neighbors_of[u].add(v)
        neighbors_of[v].add(u)

    def delta_sigma(a: int, b: int) -> float:
        gap = comm_vector[a] - comm_vector[b]
        r2 = float(np.sum(gap * gap * inv_degree))
        sa, sb = comm_size[a], comm_size[b]
        return (sa * sb) / (sa + sb) / size * r2

    current: dict[tuple[int, int], float] = {}
    heap: list[tuple[float, int, int]] = []
    for u, v in edges:
        d = delta_sigma(u, v)
        current[(u, v)] = d
        heap.append((d, u, v))
    heapq.heapify(heap)

    label = list(range(size))  # node -> current community id
    intra = {i: 0 for i in range(size)}

    def partition_modularity() -> float:
        q = 0.0
        for cid in comm_size:
            q += intra[cid] / m - (comm_degree[cid] / (2 * m)) ** 2
        return q

    cut_modularities = [partition_modularity()]
    merges: list[MergeStep] = []
    next_id = size
    edge_sets = [set(neigh) for neigh in undirected]

    for step in range(size - 1):
        while True:
            d, a, b = heapq.heappop(heap)
            if current.get((a, b)) == d:
                break
        del current[(a, b)]
        c = next_id
        next_id += 1
        sa, sb = comm_size[a], comm_size[b]
        comm_size[c] = sa + sb
        comm_vector[c] = (sa * comm_vector[a] + sb * comm_vector[b]) / (sa + sb)
        comm_degree[c] = comm_degree[a] + comm_degree[b]
        cross = sum(1 for node in comm_nodes[a] for other in edge_sets[node] if label[other] == b)
        intra[c] = intra[a] + intra[b] + cross
        comm_nodes[c] = comm_nodes[a] + comm_nodes[b]
        for node in comm_nodes[c]:
            label[node] = c
        new_neighbors = (neighbors_of[a] | neighbors_of[b]) - {a, b}
        neighbors_of[c] = new_neighbors
        for x in new_neighbors:
            neighbors_of[x].discard(a)
            neighbors_of[x].discard(b)
            neighbors_of[x].add(c)
            current.pop((min(a, x), max(a, x)), None)
            current.pop((min(b, x), max(b, x)), None)
            d_new = delta_sigma(c, x)
            key = (min(c, x), max(c, x))
            current[key] = d_new
            heapq.heappush(heap, (d_new, key[0], key[1]))
        for dead in (a, b):
            del comm_size[dead], comm_vector[dead], comm_nodes[dead], comm_degree[dead]
            del intra[dead], neighbors_of[dead]
        merges.append(MergeStep(step=step, community_a=a, community_b=b, delta_sigma=d))
        cut_modularities.append(partition_modularity())

    result = WalktrapResult(
        partition=CommunityPartition(assignment={}, community_count=0, modularity=0.0, walktrap_t=t),
        merges=merges,
        cut_modularities=cut_modularities,
        best_cut=0,
    )
    best_cut = max(range(len(cut_modularities)), key=lambda k: (cut_modularities[k], -k))
    assignment = result.assignment_at_cut(best_cut)
    result.best_cut = best_cut
    result.partition = CommunityPartition(
        assignment=assignment,
        community_count=len(set(assignment.values())),
        modularity=modularity(n, assignment),
        walktrap_t=t,
    )
    return result


def partition_csv(n: DependencyNetwork, partition: CommunityPartition) -> str:
    """CSV `node_id,label,community_id`, one row per node."""
    import csv
    import io

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["node_id", "label", "community_id"])
    for node in n.nodes:
        writer.writerow([node.id, node.label, partition.assignment[node.id]])
    return buffer.getvalue()


def dendrogram_csv(merges: list[MergeStep]) -> str:
    lines = ["step,community_a,community_b,delta_sigma\n"]
    for merge in merges:
        lines.append(f"{merge.step},{merge.community_a},{merge.community_b},{merge.delta_sigma!r}\n")
    return "".join(lines)
