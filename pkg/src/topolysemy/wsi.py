"""Word sense induction by clustering neighborhoods and overlap assignment.

Senses of a target word are induced by clustering the word vectors of its
punctured neighborhood; each induced cluster's member words form a sense
vocabulary.  An occurrence of the target is then assigned to the sense
whose vocabulary overlaps its context tokens the most, relative to the
vocabulary size.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Sequence

from ._util import ParseError, atomic_write_text, map_ordered
from .clustering import NOISE, dbscan, kmeans
from .embeddings import EmbeddingSet, l2_normalize_all
from .neighborhood import punctured_neighborhood
from .tps import PercentileTable, predicted_k, tps_batch

logger = logging.getLogger("topolysemy")


@dataclass(frozen=True)
class Instance:
    """One occurrence of a target word: its context as a token sequence."""

    target: str
    id: str
    tokens: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.target:
            raise ValueError("instance target must be non-empty")
        if not self.id:
            raise ValueError("instance id must be non-empty")
        if not self.tokens:
            raise ValueError(f"instance {self.id!r} has no context tokens")
        object.__setattr__(self, "tokens", tuple(self.tokens))


@dataclass(frozen=True)
class SenseKey:
    """Ordered (target, instance_id, sense_label) rows; ids unique per target.

    Serves both system output and gold keys; the two share one file format.
    """

    rows: tuple[tuple[str, str, str], ...]
    by_instance: dict[tuple[str, str], str] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(row) for row in self.rows))
        index: dict[tuple[str, str], str] = {}
        for target, instance_id, label in self.rows:
            pair = (target, instance_id)
            if pair in index:
                raise ValueError(f"duplicate instance {instance_id!r} for target {target!r}")
            index[pair] = label
        object.__setattr__(self, "by_instance", index)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def targets(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for target, _, _ in self.rows:
            seen.setdefault(target)
        return tuple(seen)


@dataclass(frozen=True)
class SenseClusters:
    """Induced sense vocabularies of one target.

    ``clusters`` holds the member words of each sense in neighborhood
    order; clusters are pairwise disjoint.  ``noise`` lists neighborhood
    words left out of every sense.  ``word`` is the vocabulary entry the
    target resolved to.
    """

    target: str
    word: str
    clusters: tuple[tuple[str, ...], ...]
    noise: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.clusters:
            raise ValueError(f"target {self.target!r} needs at least one sense cluster")
        seen: set[str] = set()
        for cluster in self.clusters:
            if len(cluster) == 0:
                raise ValueError(f"target {self.target!r} has an empty sense cluster")
            members = set(cluster)
            if seen & members:
                raise ValueError(f"target {self.target!r} has overlapping sense clusters")
            seen |= members
        object.__setattr__(self, "clusters", tuple(tuple(c) for c in self.clusters))
        object.__setattr__(self, "noise", tuple(self.noise))

    def __len__(self) -> int:
        return len(self.clusters)

    def label(self, index: int) -> str:
        if not 0 <= index < len(self.clusters):
            raise IndexError(f"sense index {index} out of range for {len(self.clusters)} senses")
        return f"{self.target}.sense_{index}"


@dataclass(frozen=True)
class DbscanConfig:
    """Density backend: cosine eps ball and the core threshold (self counts)."""

    eps: float = 0.09
    min_pts: int = 2


@dataclass(frozen=True)
class KmeansConfig:
    """Partition backend; k=None derives per-target k from score percentiles."""

    k: int | None = None
    seed: int = 0
    tps_n: int = 50


@dataclass(frozen=True)
class OpnConfig:
    """Neighborhood size, clustering backend, and worker pool size."""

    n: int = 5000
    backend: DbscanConfig | KmeansConfig = DbscanConfig()
    workers: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")


def target_lemma(target: str) -> str:
    """Strip a trailing part-of-speech suffix: 'pivot.n' -> 'pivot'."""
    head, _, _ = target.partition(".")
    return head


def resolve_target(embeddings: EmbeddingSet, target: str) -> str | None:
    """Vocabulary entry for a target: the raw string, else its lemma, else None."""
    if target in embeddings:
        return target
    lemma = target_lemma(target)
    if lemma in embeddings:
        return lemma
    return None


def induce_senses(
    embeddings: EmbeddingSet,
    target: str,
    n: int,
    backend: DbscanConfig | KmeansConfig,
    k: int | None = None,
) -> SenseClusters:
    """Cluster the target's neighborhood vectors into sense vocabularies.

    Requires L2-normalized embeddings.  With the density backend, noise
    words are excluded from every vocabulary, and an all-noise result falls
    back to a single sense holding the whole neighborhood.  With the
    partition backend, k comes from the argument (percentile-derived
    upstream) or the config, clamped to the neighborhood size.
    """
    word = resolve_target(embeddings, target)
    if word is None:
        raise KeyError(f"target {target!r} (lemma {target_lemma(target)!r}) not in vocabulary")
    cloud = punctured_neighborhood(embeddings, word, n)

    if isinstance(backend, DbscanConfig):
        result = dbscan(cloud.points, eps=backend.eps, min_pts=backend.min_pts)
        if result.n_clusters == 0:
            return SenseClusters(target=target, word=word, clusters=(cloud.words,))
        clusters = tuple(
            tuple(cloud.words[i] for i in result.members(c).tolist())
            for c in range(result.n_clusters)
        )
        noise = tuple(cloud.words[i] for i in result.members(NOISE).tolist())
        return SenseClusters(target=target, word=word, clusters=clusters, noise=noise)

    wanted = k if k is not None else backend.k
    if wanted is None:
        raise ValueError(f"target {target!r}: partition backend needs k (none derived)")
    if wanted < 1:
        raise ValueError(f"target {target!r}: k must be >= 1, got {wanted}")
    effective = min(wanted, len(cloud))
    if effective < wanted:
        logger.warning(
            "target %r: k=%d exceeds neighborhood size %d, clamped", target, wanted, len(cloud)
        )
    result = kmeans(cloud.points, k=effective, seed=backend.seed)
    clusters = tuple(
        tuple(cloud.words[i] for i in result.clustering.members(c).tolist())
        for c in range(result.clustering.n_clusters)
    )
    return SenseClusters(target=target, word=word, clusters=clusters)


def assign_instance(instance: Instance, senses: SenseClusters) -> str:
    """Label of the sense whose vocabulary best covers the context tokens.

    The context is deduplicated and the target's own word forms are
    ignored.  Senses are ranked by overlap relative to vocabulary size,
    ties by raw overlap, then by lower sense index.  A context with no
    overlap at all falls back to the largest sense (lowest index among
    equals).
    """
    context = set(instance.tokens)
    context.discard(senses.word)
    context.discard(target_lemma(senses.target))
    best_index = 0
    best_rank: tuple[float, int] = (-1.0, -1)
    for index, cluster in enumerate(senses.clusters):
        vocabulary = set(cluster)
        raw = len(context & vocabulary)
        rank = (raw / len(vocabulary), raw)
        if rank > best_rank:
            best_rank = rank
            best_index = index
    if best_rank[1] == 0:
        sizes = [len(cluster) for cluster in senses.clusters]
        best_index = sizes.index(max(sizes))
    return senses.label(best_index)


@dataclass(frozen=True)
class OpnResult:
    """Key over all instances plus the per-target induced senses."""

    key: SenseKey
    senses: dict[str, SenseClusters]


def run_opn(
    embeddings: EmbeddingSet,
    instances: Sequence[Instance],
    config: OpnConfig = OpnConfig(),
) -> OpnResult:
    """Induce senses for every target and label every instance.

    Aborts with a listing if any target is absent from the vocabulary
    under both its raw form and its lemma.  With the partition backend and
    k=None, per-target k is derived from each target's score percentile
    within the evaluated population.  Sense labels read
    "<target>.sense_<index>"; output is independent of instance order.
    """
    if not embeddings.normalized:
        embeddings = l2_normalize_all(embeddings)

    targets = sorted({instance.target for instance in instances})
    resolved = {t: resolve_target(embeddings, t) for t in targets}
    missing = [t for t in targets if resolved[t] is None]
    if missing:
        raise KeyError(f"{len(missing)} targets not in vocabulary: {missing}")

    k_by_target: dict[str, int | None] = {t: None for t in targets}
    backend = config.backend
    if isinstance(backend, KmeansConfig) and backend.k is None and targets:
        reports = tps_batch(
            embeddings,
            [resolved[t] for t in targets],
            n=backend.tps_n,
            workers=config.workers,
        )
        table = PercentileTable(scores={t: r.score for t, r in zip(targets, reports)})
        for t in targets:
            k_by_target[t] = predicted_k(table.percentile(t))

    induced = map_ordered(
        lambda t: induce_senses(embeddings, t, config.n, backend, k=k_by_target[t]),
        targets,
        workers=config.workers,
    )
    senses = dict(zip(targets, induced))

    by_target: dict[str, list[Instance]] = {t: [] for t in targets}
    for instance in instances:
        by_target[instance.target].append(instance)

    rows: list[tuple[str, str, str]] = []
    for t in targets:
        for instance in sorted(by_target[t], key=lambda inst: inst.id):
            rows.append((t, instance.id, assign_instance(instance, senses[t])))
    return OpnResult(key=SenseKey(rows=tuple(rows)), senses=senses)


def load_instances(path) -> list[Instance]:
    """Parse JSONL instances: {"target", "id", "tokens"} per line."""
    instances: list[Instance] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as err:
                raise ParseError(f"{path}:{lineno}: invalid JSON ({err.msg})") from None
            if not isinstance(record, dict):
                raise ParseError(f"{path}:{lineno}: expected a JSON object")
            missing = [name for name in ("target", "id", "tokens") if name not in record]
            if missing:
                raise ParseError(f"{path}:{lineno}: missing fields {missing}")
            target, instance_id, tokens = record["target"], record["id"], record["tokens"]
            if not isinstance(target, str) or not isinstance(instance_id, str):
                raise ParseError(f"{path}:{lineno}: 'target' and 'id' must be strings")
            if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
                raise ParseError(f"{path}:{lineno}: 'tokens' must be a list of strings")
            try:
                instances.append(Instance(target=target, id=instance_id, tokens=tuple(tokens)))
            except ValueError as err:
                raise ParseError(f"{path}:{lineno}: {err}") from None
    return instances


def write_key(key: SenseKey, path) -> None:
    """Write "target instance_id label" lines."""
    lines = [f"{target} {instance_id} {label}" for target, instance_id, label in key.rows]
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))


def load_key(path) -> SenseKey:
    """Parse the space-separated three-column key format."""
    rows: list[tuple[str, str, str]] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 3:
                raise ParseError(
                    f"{path}:{lineno}: expected 'target instance_id label', got {line.strip()!r}"
                )
            rows.append((fields[0], fields[1], fields[2]))
    try:
        return SenseKey(rows=tuple(rows))
    except ValueError as err:
        raise ParseError(f"{path}: {err}") from None
