# flake8: noqa
"""Batch acquisition: diversity clusters, scores, constrained selection and
the active learning loop
"""
from .active_learning import (ActiveLearningResult,
                              active_learning_run,
                              batch_sizes)
from .kmeans import (ClusterModel,
                     cluster_caps,
                     kmeans)
from .scores import (AcquisitionScores,
                     compute_scores,
                     minmax)
from .selection import (SelectionResult,
                        audit_selection,
                        greedy_select,
                        treated_cap)
