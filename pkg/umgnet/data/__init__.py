# flake8: noqa
"""Bipartite uplift datasets: graph, ingestion, simulation and folds
"""
from .dataset import (Dataset,
                      normalize_features)
from .folds import (FoldPlan,
                    split_folds)
from .graph import (BipartiteGraph,
                    build_adjacency,
                    degrees)
from .ingest import (load_dataset,
                     write_dataset)
from .synthetic import (SyntheticTruth,
                        generate_synthetic)
