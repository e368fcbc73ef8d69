"""Inverted k-fold evaluation over several seeds

For each seed a fold plan over the labeled users is drawn; for each fold
the model trains on the small label set and is evaluated on all other
labeled users.  (seed, fold) jobs are independent and may run in worker
processes; their records are merged in (seed, fold) order.
"""
import logging
from concurrent.futures import ProcessPoolExecutor

import attr
import numpy as np
from tqdm import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

from umgnet.config import ModelConfig
from umgnet.config.evaluate import MODEL_SPECS
from umgnet.data import split_folds
from umgnet.errors import ParameterError
from umgnet.training import (predict_uplift,
                             train)
from umgnet.utils import named_seed

from .baselines import (fit_baseline,
                        predict_baseline)
from .metrics import (ate,
                      metric_name,
                      optional,
                      uplift_at_k)
from .report import MetricsReport

logger = logging.getLogger(__name__)


def predict_fold(dataset, train_users, model_spec, model_config, seed,
                 ridge_alpha=1e-2):
    """Fit `model_spec` on `train_users`, return predicted uplift of all
    users"""
    if model_spec in ("umgnet", "umgnet-dr"):
        config = attr.evolve(model_config, seed=seed,
                             dr_variant=model_spec == "umgnet-dr")
        model, _ = train(dataset, train_users, config)
        return predict_uplift(model, dataset).uplift
    baseline = fit_baseline(dataset, train_users, model_spec,
                            alpha=ridge_alpha)
    return predict_baseline(baseline, dataset.user_features)


def evaluate_fold(job):
    """Train and evaluate one (seed, fold) job

    Args
    ----
    job: tuple
        (dataset, model_spec, model_config, seed, stream, fold,
         train_users, eval_users, fractions, ridge_alpha); `stream` seeds
        the model, `seed` labels the record

    Returns
    -------
    dict
        Record of the job
    """
    (dataset, model_spec, model_config, seed, stream, fold, train_users,
     eval_users, fractions, ridge_alpha) = job
    uplift = predict_fold(dataset, train_users, model_spec, model_config,
                          stream, ridge_alpha=ridge_alpha)
    record = {"seed": int(seed),
              "fold": int(fold),
              "n_train": int(len(train_users)),
              "n_eval": int(len(eval_users))}
    record.update(evaluate_ranking(uplift, dataset, eval_users, fractions))
    logger.info("seed %d fold %d: %s", seed, fold, ", ".join(
        "%s %s" % (k, "missing" if record[k] is None else
                   "%.4f" % record[k])
        for k in ["ate"] + [metric_name(f) for f in fractions]))
    return record


def run_experiment(dataset, model_spec, folds, seeds, model_config=None,
                   fractions=(0.4, 0.2), ridge_alpha=1e-2, num_workers=1,
                   progress=False, config_hash=None, base_seed=0):
    """Evaluate a model spec with the inverted k-fold protocol

    Args
    ----
    dataset: Dataset
        Only users with a label are split and evaluated
    model_spec: str
        One of umgnet, umgnet-dr, baseline-S, baseline-T
    folds: int
        k; each label set of size about n / k trains once
    seeds: list of int
        One fold plan and one model init per entry, both drawn from the
        stream ("eval", seed) of `base_seed`
    model_config: ModelConfig, optional
        Architecture and schedule of the umgnet specs
    fractions: list of float
        Top fractions of the up@k metrics
    num_workers: int
        Number of worker processes for the (seed, fold) jobs
    config_hash: str, optional
        Stored in the report metadata
    base_seed: int
        Top-level seed of the run

    Returns
    -------
    MetricsReport
    """
    if model_spec not in MODEL_SPECS:
        raise ParameterError("unknown model spec %s, expected one of %s" % (
            model_spec, MODEL_SPECS))
    if model_config is None:
        model_config = ModelConfig()
    users = dataset.labeled_indices()
    jobs = []
    fingerprints = {}
    for seed in seeds:
        stream = named_seed(base_seed, "eval", seed)
        plan = split_folds(len(users), folds, stream)
        fingerprints[str(seed)] = plan.fingerprint()
        for fold in range(plan.k):
            train_idx, eval_idx = plan.split(fold)
            jobs.append((dataset, model_spec, model_config, seed, stream,
                         fold, users[train_idx], users[eval_idx],
                         list(fractions), ridge_alpha))

    logger.info("evaluating %s: %d seeds x %d folds on %d labeled users",
                model_spec, len(seeds), folds, len(users))
    with logging_redirect_tqdm():
        if num_workers > 1:
            with ProcessPoolExecutor(max_workers=num_workers) as pool:
                records = list(tqdm(pool.map(evaluate_fold, jobs),
                                    total=len(jobs), disable=not progress,
                                    desc=model_spec))
        else:
            records = [evaluate_fold(job) for job in tqdm(
                jobs, disable=not progress, desc=model_spec)]

    report = MetricsReport(
        metrics=["ate"] + [metric_name(f) for f in fractions],
        metadata={"model": model_spec,
                  "config_hash": config_hash,
                  "base_seed": int(base_seed),
                  "seeds": [int(s) for s in seeds],
                  "folds": int(folds),
                  "fractions": [float(f) for f in fractions],
                  "labeled_users": int(len(users)),
                  "fold_plans": fingerprints})
    for record in sorted(records, key=lambda r: (r["seed"], r["fold"])):
        report.add(record)
    return report


def evaluate_ranking(uplift, dataset, users, fractions=(0.4, 0.2)):
    """ATE and up@k of a given uplift ranking on `users`"""
    users = np.asarray(users, dtype=np.int64)
    y, t = dataset.outcome, dataset.treatment
    record = {"ate": optional(ate, y, t, users)}
    for frac in fractions:
        record[metric_name(frac)] = optional(uplift_at_k, uplift, y, t,
                                             users, frac)
    return record
