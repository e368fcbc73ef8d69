# flake8: noqa
"""Uplift metrics, baselines and the inverted k-fold experiment
"""
from .baselines import (BaselineModel,
                        fit_baseline,
                        predict_baseline)
from .experiment import (evaluate_ranking,
                         run_experiment)
from .metrics import (ate,
                      metric_name,
                      top_set,
                      uplift_at_k)
from .report import MetricsReport
