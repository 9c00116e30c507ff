"""Clustering backends for neighborhood clouds: dbscan and Lloyd k-means.

Both operate on dense float64 point matrices.  The dbscan variant works in
cosine distance (1 - dot product) and therefore expects unit-norm rows;
k-means is plain Euclidean Lloyd iteration with a seeded farthest-first
initialization.  Cluster ids are always contiguous 0..n_clusters-1 with -1
reserved for dbscan noise.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ._util import atomic_write_text

NOISE = -1

_UNIT_TOL = 1e-6
_CHUNK_ELEMENTS = 4_000_000


@dataclass(frozen=True, eq=False)
class Clustering:
    """Per-point integer labels with contiguous cluster ids.

    Labels are in {-1} | {0..n_clusters-1}; every id below n_clusters has
    at least one member; -1 marks noise.
    """

    labels: np.ndarray
    n_clusters: int

    def __post_init__(self) -> None:
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ValueError(f"labels must be 1-d, got shape {labels.shape}")
        if self.n_clusters < 0:
            raise ValueError(f"n_clusters must be >= 0, got {self.n_clusters}")
        if labels.size:
            present = np.unique(labels)
            if present[0] < NOISE or (present.size and present[-1] >= self.n_clusters):
                raise ValueError(
                    f"labels must lie in [-1, {self.n_clusters}), got range "
                    f"[{present[0]}, {present[-1]}]"
                )
            expected = set(range(self.n_clusters))
            missing = expected.difference(present.tolist())
            if missing:
                raise ValueError(f"cluster ids {sorted(missing)} have no members")
        elif self.n_clusters != 0:
            raise ValueError("no points, so n_clusters must be 0")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    def members(self, cluster_id: int) -> np.ndarray:
        """Ascending point indices labeled `cluster_id` (NOISE allowed)."""
        return np.flatnonzero(self.labels == cluster_id)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(int((self.labels == c).sum()) for c in range(self.n_clusters))


def _within_eps_graph(points: np.ndarray, eps: float) -> csr_matrix:
    """Boolean adjacency of point pairs with cosine distance <= eps.

    Includes the diagonal (each point is within eps of itself).  Built in
    row chunks so the full similarity matrix never materializes.
    """
    n = points.shape[0]
    chunk = max(1, _CHUNK_ELEMENTS // max(1, n))
    row_parts: list[np.ndarray] = []
    col_parts: list[np.ndarray] = []
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        sims = points[start:stop] @ points.T
        local_rows, cols = np.nonzero((1.0 - sims) <= eps)
        row_parts.append(local_rows + start)
        col_parts.append(cols)
    rows = np.concatenate(row_parts) if row_parts else np.empty(0, dtype=np.int64)
    cols = np.concatenate(col_parts) if col_parts else np.empty(0, dtype=np.int64)
    data = np.ones(rows.shape[0], dtype=np.int8)
    graph = csr_matrix((data, (rows, cols)), shape=(n, n))
    graph.sort_indices()
    return graph


def dbscan(points: np.ndarray, eps: float = 0.09, min_pts: int = 2) -> Clustering:
    """Density clustering in cosine distance over unit-norm rows.

    A point is core when at least min_pts points (itself included) lie
    within eps.  Clusters are the connected components of the core points;
    ids are assigned in order of each component's smallest core index.  A
    non-core point within eps of some core joins the cluster of the
    lowest-index such core; everything else is labeled NOISE.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ValueError(f"points must be a 2-d matrix, got shape {points.shape}")
    if eps <= 0.0:
        raise ValueError(f"eps must be > 0, got {eps}")
    if min_pts < 1:
        raise ValueError(f"min_pts must be >= 1, got {min_pts}")
    n = points.shape[0]
    if n == 0:
        raise ValueError("dbscan needs at least one point")
    norms = np.linalg.norm(points, axis=1)
    if np.abs(norms - 1.0).max() > _UNIT_TOL:
        raise ValueError("dbscan expects unit-norm rows (cosine distance)")

    graph = _within_eps_graph(points, eps)
    neighbor_counts = np.diff(graph.indptr)
    core = neighbor_counts >= min_pts
    core_idx = np.flatnonzero(core)

    labels = np.full(n, NOISE, dtype=np.int64)
    if core_idx.size == 0:
        return Clustering(labels=labels, n_clusters=0)

    core_graph = graph[core_idx][:, core_idx]
    _, raw_comp = connected_components(core_graph, directed=False)
    # Contiguous ids ordered by each component's smallest core index.
    remap: dict[int, int] = {}
    for comp in raw_comp.tolist():
        if comp not in remap:
            remap[comp] = len(remap)
    core_labels = np.array([remap[c] for c in raw_comp.tolist()], dtype=np.int64)
    labels[core_idx] = core_labels

    border_idx = np.flatnonzero(~core)
    if border_idx.size:
        reach = graph[border_idx][:, core_idx]
        reach.sort_indices()
        starts, ends = reach.indptr[:-1], reach.indptr[1:]
        has_core = ends > starts
        # Sorted indices put the lowest-index core first in each row.
        first_core = reach.indices[starts[has_core]]
        labels[border_idx[has_core]] = core_labels[first_core]

    return Clustering(labels=labels, n_clusters=len(remap))


def _squared_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """All point-to-center squared Euclidean distances, clamped at zero."""
    sq = (
        (points * points).sum(axis=1)[:, None]
        + (centers * centers).sum(axis=1)[None, :]
        - 2.0 * (points @ centers.T)
    )
    np.maximum(sq, 0.0, out=sq)
    return sq


def farthest_first_centers(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Greedy farthest-first center rows: first uniform, rest by max-min.

    Distance ties resolve to the lowest point index.
    """
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    chosen = [int(rng.integers(n))]
    min_sq = _squared_distances(points, points[chosen[-1:]])[:, 0]
    while len(chosen) < k:
        nxt = int(np.argmax(min_sq))
        chosen.append(nxt)
        np.minimum(min_sq, _squared_distances(points, points[nxt : nxt + 1])[:, 0], out=min_sq)
    return points[np.array(chosen)].copy()


def lloyd_iterations(
    points: np.ndarray,
    centers: np.ndarray,
    max_iter: int = 100,
) -> Iterator[tuple[np.ndarray, np.ndarray, float]]:
    """Lloyd steps from the given centers, yielding (labels, centers, objective).

    Each step assigns points to their nearest center (ties to the lowest
    center id), repairs any emptied cluster by relocating its center to the
    point currently farthest from its own center, then recomputes means.
    Stops at the label fixpoint or after max_iter steps.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    centers = np.array(centers, dtype=np.float64, copy=True)
    k = centers.shape[0]
    prev_labels: np.ndarray | None = None
    for _ in range(max_iter):
        sq = _squared_distances(points, centers)
        labels = sq.argmin(axis=1)
        counts = np.bincount(labels, minlength=k)
        if (counts == 0).any():
            contributions = sq[np.arange(points.shape[0]), labels].copy()
            for empty in np.flatnonzero(counts == 0):
                pick = int(np.argmax(contributions))
                labels[pick] = empty
                contributions[pick] = -1.0
            counts = np.bincount(labels, minlength=k)
        for c in range(k):
            centers[c] = points[labels == c].mean(axis=0)
        objective = float(((points - centers[labels]) ** 2).sum())
        yield labels.copy(), centers.copy(), objective
        if prev_labels is not None and np.array_equal(labels, prev_labels):
            return
        prev_labels = labels


@dataclass(frozen=True, eq=False)
class KmeansResult:
    clustering: Clustering
    centers: np.ndarray
    objective: float
    n_iter: int
    converged: bool


def kmeans(points: np.ndarray, k: int, seed: int = 0, max_iter: int = 100) -> KmeansResult:
    """Euclidean Lloyd k-means with seeded farthest-first initialization.

    Deterministic for a fixed seed.  Every cluster id 0..k-1 ends up
    non-empty (empty clusters are repaired during iteration).
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ValueError(f"points must be a 2-d matrix, got shape {points.shape}")
    rng = np.random.default_rng(seed)
    centers = farthest_first_centers(points, k, rng)
    labels = np.zeros(points.shape[0], dtype=np.int64)
    objective = float("inf")
    n_iter = 0
    converged = False
    prev: np.ndarray | None = None
    for labels, centers, objective in lloyd_iterations(points, centers, max_iter=max_iter):
        n_iter += 1
        if prev is not None and np.array_equal(labels, prev):
            converged = True
        prev = labels
    return KmeansResult(
        clustering=Clustering(labels=labels.astype(np.int64), n_clusters=k),
        centers=centers,
        objective=objective,
        n_iter=n_iter,
        converged=converged,
    )


def save_clustering_csv(clustering: Clustering, words: Sequence[str], path) -> None:
    """Write "word,cluster_id" rows; noise points carry the id -1."""
    if len(words) != len(clustering):
        raise ValueError(f"{len(words)} words but {len(clustering)} labels")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["word", "cluster_id"])
    for word, label in zip(words, clustering.labels.tolist()):
        writer.writerow([word, str(label)])
    atomic_write_text(path, buffer.getvalue())
