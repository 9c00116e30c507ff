"""Topological polysemy scores and neighborhood-overlap word sense induction.

The pipeline: normalize an embedding, take a word's punctured neighborhood,
project it to the unit sphere, compute its degree-0 persistence diagram,
and report the diagram's Wasserstein norm as the word's polysemy score.
Sense induction clusters the raw neighborhood instead and assigns instances
by relative vocabulary overlap.
"""

from ._util import ParseError
from .clustering import (
    NOISE,
    Clustering,
    KmeansResult,
    dbscan,
    farthest_first_centers,
    kmeans,
    lloyd_iterations,
    save_clustering_csv,
)
from .embeddings import (
    CountTable,
    EmbeddingSet,
    count_corpus,
    count_frequencies,
    l2_normalize_all,
    load_count_table,
    load_vec_file,
    save_count_table,
    save_vec_file,
    tokenize,
)
from .metrics import (
    PairedFScore,
    PearsonResult,
    ScoreReport,
    ScoreRow,
    VMeasureScore,
    pair_counts,
    paired_fscore,
    pearson_with_p,
    save_score_report,
    score_keys,
    v_measure,
)
from .neighborhood import (
    NeighborhoodCloud,
    normalize_cloud,
    normalized_punctured_neighborhood,
    punctured_neighborhood,
    save_cloud_csv,
)
from .persistence import (
    PersistenceDiagram,
    degree0_diagram,
    save_diagram_csv,
    wasserstein_distance,
    wasserstein_norm,
)
from .synthetic import (
    PlantedDataset,
    pinched_neighborhood_embedding,
    planted_two_sense_dataset,
    random_embedding,
)
from .tps import (
    PercentileTable,
    TpsReport,
    load_tps_csv,
    predicted_k,
    save_tps_csv,
    tps_batch,
    tps_percentile,
    tps_score,
)
from .wsi import (
    DbscanConfig,
    Instance,
    KmeansConfig,
    OpnConfig,
    OpnResult,
    SenseClusters,
    SenseKey,
    assign_instance,
    induce_senses,
    load_instances,
    load_key,
    resolve_target,
    run_opn,
    target_lemma,
    write_key,
)

__version__ = "0.1.0"

__all__ = [
    "ParseError",
    "NOISE",
    "Clustering",
    "KmeansResult",
    "dbscan",
    "farthest_first_centers",
    "kmeans",
    "lloyd_iterations",
    "save_clustering_csv",
    "CountTable",
    "EmbeddingSet",
    "count_corpus",
    "count_frequencies",
    "l2_normalize_all",
    "load_count_table",
    "load_vec_file",
    "save_count_table",
    "save_vec_file",
    "tokenize",
    "PairedFScore",
    "PearsonResult",
    "ScoreReport",
    "ScoreRow",
    "VMeasureScore",
    "pair_counts",
    "paired_fscore",
    "pearson_with_p",
    "save_score_report",
    "score_keys",
    "v_measure",
    "NeighborhoodCloud",
    "normalize_cloud",
    "normalized_punctured_neighborhood",
    "punctured_neighborhood",
    "save_cloud_csv",
    "PersistenceDiagram",
    "degree0_diagram",
    "save_diagram_csv",
    "wasserstein_distance",
    "wasserstein_norm",
    "PlantedDataset",
    "pinched_neighborhood_embedding",
    "planted_two_sense_dataset",
    "random_embedding",
    "PercentileTable",
    "TpsReport",
    "load_tps_csv",
    "predicted_k",
    "save_tps_csv",
    "tps_batch",
    "tps_percentile",
    "tps_score",
    "DbscanConfig",
    "Instance",
    "KmeansConfig",
    "OpnConfig",
    "OpnResult",
    "SenseClusters",
    "SenseKey",
    "assign_instance",
    "induce_senses",
    "load_instances",
    "load_key",
    "resolve_target",
    "run_opn",
    "target_lemma",
    "write_key",
    "__version__",
]
