"""Full-batch training of UMGNet

Create model and train on the labeled users of one fold.
"""
import logging
import time

import numpy as np
import pandas as pd
from tqdm import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

from umgnet.tensor import (OptimizerState,
                           Tape,
                           add,
                           backward,
                           optimizer_step,
                           scale)
from umgnet.utils import named_rng

from .loss import (loss_t,
                   loss_y)
from .model import UpliftModel

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ["epoch", "loss", "loss_y", "loss_t"]


def training_loss(model, inputs, dataset, mask, training=True, rng=None):
    """Total loss of one full-batch forward pass

    loss_y, plus alpha * loss_t in the Dr variant.

    Returns
    -------
    (Tensor, Tensor, Tensor or None)
        total, outcome and treatment loss
    """
    out = model.forward(inputs, training=training, rng=rng)
    ly = loss_y(out.y_t, out.y_c, dataset.outcome, dataset.treatment, mask)
    if not model.config.dr_variant:
        return ly, ly, None
    lt = loss_t(out.logits, dataset.treatment, mask)
    return add(ly, scale(lt, model.config.alpha)), ly, lt


def train(dataset, labeled, config, progress=False):
    """Train UMGNet on the labeled users `labeled` of `dataset`

    All information is taken from the model config (architecture,
    dropout, optimizer, number of epochs).  Training is full-batch and
    deterministic given `config.seed`.

    Args
    ----
    dataset: Dataset
        Graph, features and (partially revealed) labels
    labeled: array of int
        Users whose treatment and outcome may be used
    config: ModelConfig
        Model configuration object
    progress: bool
        Show a progress bar over the epochs

    Returns
    -------
    (UpliftModel, pandas.DataFrame)
        The trained model and the per-epoch loss trace (losses before
        each update)

    Raises
    ------
    NoTrainingDataError
        If none of the `labeled` users carries a label
    """
    mask = dataset.mask_for(labeled)
    arms = dataset.treatment[mask > 0]
    if arms.min() == arms.max():
        logger.warning(
            "training set holds only %s users, the %s head stays untrained",
            "treated" if arms[0] > 0 else "control",
            "control" if arms[0] > 0 else "treated")

    model = UpliftModel.create(config, dataset.user_features.shape[1],
                               dataset.item_features.shape[1])
    params = model.parameters()
    state = OptimizerState.create(
        params, learning_rate=config.learning_rate,
        weight_decay=config.weight_decay, betas=config.betas,
        eps=config.eps)
    inputs = model.prepare(dataset)
    seed = config.seed if config.seed is not None else 0
    rng = named_rng(seed, "dropout")

    logger.info("training %s model on %d labeled users (%d treated) for %d "
                "epochs", config.gnn, int(mask.sum()), int(arms.sum()),
                config.epochs)
    start = time.time()
    trace = []
    with logging_redirect_tqdm():
        for epoch in tqdm(range(config.epochs), disable=not progress,
                          desc="train"):
            with Tape() as tape:
                total, ly, lt = training_loss(model, inputs, dataset, mask,
                                              training=True, rng=rng)
            gradients = backward(total, tape, params)
            optimizer_step(params, gradients, state)
            trace.append((epoch, total.item(), ly.item(),
                          lt.item() if lt is not None else np.nan))
            if epoch % 100 == 0:
                logger.debug("epoch %d: loss %.6f", epoch, total.item())

    if not model.is_finite():
        logger.warning("model has non-finite weights after training")
    trace = pd.DataFrame(trace, columns=TRACE_COLUMNS)
    if len(trace):
        logger.info("training done in %.1fs, loss %.6f -> %.6f",
                    time.time() - start, trace["loss"].iloc[0],
                    trace["loss"].iloc[-1])
    return model, trace
