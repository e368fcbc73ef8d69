"""Active learning loop

Round 0 picks the seed set from degree and centroid distance only (no
model exists yet).  Every following round trains on the labeled set S,
estimates the uncertainty Q of all users with MC dropout, scores the
unlabeled users and adds a constrained batch to S.  The treatment and
outcome of a user are only read once the user is in S.
"""
import logging
import math

import attr
import numpy as np

from umgnet.data import (degrees,
                         normalize_features)
from umgnet.errors import ParameterError
from umgnet.training import (mc_dropout_predict,
                             train)
from umgnet.utils import (named_rng,
                          named_seed)

from .kmeans import kmeans
from .scores import compute_scores
from .selection import greedy_select

logger = logging.getLogger(__name__)


def _ceil(x):
    # round first so that e.g. 0.2 * 500 is not lifted to 101
    return int(math.ceil(round(x, 9)))


@attr.s(kw_only=True, frozen=True, eq=False)
class ActiveLearningResult:
    """Outcome of an active learning run

    Attributes
    ----------
    model: UpliftModel
        Model trained on the final labeled set
    prediction: UpliftPrediction
        MC dropout prediction of the final model for all users
    labeled: np.ndarray
        Final labeled set S, sorted
    history: list of dict
        One record per round: round, policy, budget, batch, objective,
        slack, caps, treated, labeled
    clusters: ClusterModel
        Diversity clusters used by all rounds
    """
    model = attr.ib()
    prediction = attr.ib()
    labeled = attr.ib()
    history = attr.ib(factory=list)
    clusters = attr.ib(default=None)


def batch_sizes(n, frac_initial, frac_target, rounds):
    """Seed set size, per-round budget b and target size of a run

    b = ceil((target - initial) * n / rounds)
    """
    if frac_target > 1.0:
        raise ParameterError("target fraction %s exceeds 1" % frac_target)
    if not 0.0 < frac_initial <= frac_target:
        raise ParameterError(
            "need 0 < initial fraction <= target fraction, got %s, %s" % (
                frac_initial, frac_target))
    seed_size = max(_ceil(frac_initial * n), 1)
    target_size = max(_ceil(frac_target * n), seed_size)
    if rounds <= 0:
        return seed_size, 0, seed_size
    budget = _ceil((frac_target - frac_initial) * n / rounds)
    return seed_size, budget, target_size


def _record(round_index, policy, result, treatment, labeled_size):
    return {"round": round_index,
            "policy": policy,
            "budget": result.budget,
            "batch": [int(u) for u in result.selected],
            "batch_size": len(result.selected),
            "objective": result.objective,
            "treated": int(np.sum(treatment[result.selected] > 0)),
            "caps": [int(c) for c in result.caps],
            "slack": result.slack,
            "labeled": labeled_size}


def active_learning_run(dataset, model_config, acquisition, seed,
                        frac_initial=None, frac_target=None, rounds=None,
                        policy=None, progress=False):
    """Build a training set by batch acquisition and train on it

    Args
    ----
    dataset: Dataset
        Users with a label form the pool whose labels can be revealed
    model_config: ModelConfig
        Model trained in every round
    acquisition: AcquisitionConfig
        Score weights, clusters, MC passes, policy and fractions
    seed: int
        Seed of the clustering, policy and MC dropout streams
    frac_initial, frac_target, rounds, policy: optional
        Override the values of `acquisition`

    Returns
    -------
    ActiveLearningResult

    Raises
    ------
    ParameterError
        If the target fraction exceeds 1 or is below the initial fraction
    """
    frac_initial = acquisition.frac_initial if frac_initial is None \
        else frac_initial
    frac_target = acquisition.frac_target if frac_target is None \
        else frac_target
    rounds = acquisition.rounds if rounds is None else rounds
    policy = acquisition.policy if policy is None else policy
    n = dataset.n
    seed_size, budget, target_size = batch_sizes(n, frac_initial,
                                                 frac_target, rounds)

    # users without an oracle label can never be revealed
    unavailable = np.flatnonzero(dataset.label_mask == 0)
    treatment = dataset.treatment
    clusters = kmeans(normalize_features(dataset.user_features),
                      min(acquisition.clusters, n), seed,
                      max_iterations=acquisition.kmeans_iterations)
    degree = degrees(dataset.graph)
    w_q, w_d, w_m = acquisition.weights

    def candidates(labeled):
        excluded = np.union1d(labeled, unavailable)
        return excluded, np.setdiff1d(np.arange(n), excluded)

    logger.info("active learning (%s): seed set %d, %d rounds of %d, "
                "target %d of %d users", policy, seed_size, rounds, budget,
                target_size, n)
    labeled = np.zeros(0, dtype=np.int64)
    excluded, pool = candidates(labeled)
    scores = compute_scores(np.zeros(n), degree, clusters.distances,
                            weights=(0.0, w_d, w_m), candidates=pool,
                            maximize_distance=acquisition
                            .maximize_centroid_distance)
    result = greedy_select(scores.combined, treatment,
                           clusters.assignments, seed_size,
                           labeled=excluded, k=clusters.k)
    labeled = np.union1d(labeled, result.selected)
    history = [_record(0, "seed", result, treatment, len(labeled))]

    policy_rng = named_rng(seed, "policy")
    for r in range(1, rounds + 1):
        b = min(budget, target_size - len(labeled))
        if b <= 0:
            logger.info("target size reached after %d rounds", r - 1)
            break
        model, _ = train(dataset, labeled, model_config, progress=progress)
        prediction = mc_dropout_predict(model, dataset,
                                        acquisition.mc_passes,
                                        named_seed(seed, "mc-round", r))
        excluded, pool = candidates(labeled)
        used = policy
        if policy == "eg":
            used = "random" if policy_rng.random() < acquisition.epsilon \
                else "greedy"
        if used == "random":
            combined = named_rng(seed, "random-scores", r).random(n)
        else:
            combined = compute_scores(
                prediction.uncertainty, degree, clusters.distances,
                weights=(w_q, w_d, w_m), candidates=pool,
                maximize_distance=acquisition.maximize_centroid_distance
            ).combined
        result = greedy_select(combined, treatment, clusters.assignments, b,
                               labeled=excluded, k=clusters.k)
        labeled = np.union1d(labeled, result.selected)
        history.append(_record(r, used, result, treatment, len(labeled)))
        logger.info("round %d (%s): %d users added, %d labeled", r, used,
                    len(result.selected), len(labeled))

    model, _ = train(dataset, labeled, model_config, progress=progress)
    prediction = mc_dropout_predict(model, dataset, acquisition.mc_passes,
                                    named_seed(seed, "mc-final"))
    return ActiveLearningResult(model=model,
                                prediction=prediction,
                                labeled=labeled,
                                history=history,
                                clusters=clusters)
