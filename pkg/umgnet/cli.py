"""Command line interface

    umgnet synth  --config run.toml   simulate a dataset and write its tables
    umgnet train  --config run.toml   train on all labeled users
    umgnet eval   --config run.toml   inverted k-fold evaluation sweep
    umgnet active --config run.toml   active learning run

The configuration file is validated together with the command line flags
(flags win) and the input dataset is loaded before anything is written to
the output directory.  Failures print a single line

    umgnet-error <kind>: <message>

to stderr and exit with status 1.
"""
import argparse
import json
import logging
import os
import sys
import time

import numpy as np
import pandas as pd

from umgnet.acquisition import (active_learning_run,
                                batch_sizes)
from umgnet.config import (UpliftConfig,
                           config_hash,
                           dump_config)
from umgnet.data import (generate_synthetic,
                         load_dataset,
                         write_dataset)
from umgnet.errors import (ConfigurationError,
                           ParameterError,
                           UpliftError)
from umgnet.evaluation import (evaluate_ranking,
                               run_experiment)
from umgnet.training import (mc_dropout_predict,
                             save_checkpoint,
                             train)
from umgnet.utils import (named_seed,
                          print_time)

logger = logging.getLogger(__name__)

COMMANDS = ("synth", "train", "eval", "active")
LOG_FORMAT = '%(asctime)s %(name)s %(levelname)-8s %(message)s'

# command line flag -> dotted config key
OVERRIDES = {
    "seed": "general.seed",
    "out": "general.out_dir",
    "workers": "job.num_workers",
    "gnn": "model.gnn",
    "policy": "acquisition.policy",
    "folds": "evaluate.folds",
    "model": "evaluate.model",
    "frac_initial": "acquisition.frac_initial",
    "frac_target": "acquisition.frac_target",
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="umgnet",
        description="Uplift modeling with graph neural networks on "
                    "bipartite user-product graphs")
    parser.add_argument("command", choices=COMMANDS,
                        help="step to run")
    parser.add_argument("--config", type=str, required=True,
                        help="path to config file (toml or json)")
    parser.add_argument("--seed", type=int,
                        help="top-level seed")
    parser.add_argument("--out", type=str,
                        help="output directory")
    parser.add_argument("--workers", type=int,
                        help="number of worker processes for eval")
    parser.add_argument("--gnn", type=str.lower,
                        choices=("sage", "ngcf", "lgc"),
                        help="graph layer of the model")
    parser.add_argument("--policy", type=str.lower,
                        choices=("greedy", "eg", "random"),
                        help="batch policy of active learning")
    parser.add_argument("--folds", type=int,
                        help="k of the inverted k-fold evaluation")
    parser.add_argument("--model", type=str,
                        choices=("umgnet", "umgnet-dr", "baseline-S",
                                 "baseline-T"),
                        help="estimator evaluated by eval")
    parser.add_argument("--frac-initial", type=float,
                        help="labeled fraction after the seed round")
    parser.add_argument("--frac-target", type=float,
                        help="labeled fraction after the last round")
    return parser


def load_inputs(config):
    """Dataset of a run, from tables or simulated

    Returns
    -------
    (Dataset, SyntheticTruth or None)
    """
    if config.data.is_set():
        data = config.data
        dataset = load_dataset(data.edges, data.users, data.labels,
                               items=data.items)
        truth = None
    elif config.synthetic is not None:
        dataset, truth = generate_synthetic(config.synthetic)
    else:
        raise ConfigurationError(
            "no dataset configured, set [data] or [synthetic]")
    if config.data.normalize:
        dataset = dataset.normalized()
    return dataset, truth


def check_inputs(command, config, dataset):
    """Checks that need the dataset, run before any output is written"""
    labeled = len(dataset.labeled_indices())
    if command == "train" and labeled == 0:
        raise ParameterError("dataset has no labeled users to train on")
    if command == "eval":
        folds = config.evaluate.folds
        if not 2 <= folds <= labeled:
            raise ParameterError(
                "cannot split %d labeled users into %d folds" % (
                    labeled, folds))
    if command == "active":
        acq = config.acquisition
        batch_sizes(dataset.n, acq.frac_initial, acq.frac_target,
                    acq.rounds)


def _write_json(obj, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    return path


def cmd_synth(config, out_dir):
    """Write the tables, ground-truth effects and metadata of each
    simulation"""
    synthetic = config.synthetic
    if synthetic is None:
        raise ConfigurationError("synth needs a [synthetic] section")
    written = []
    for sim in range(synthetic.simulations):
        target = out_dir if synthetic.simulations == 1 else \
            os.path.join(out_dir, "sim_%d" % sim)
        dataset, truth = generate_synthetic(synthetic, simulation=sim)
        written += list(write_dataset(dataset, target).values())
        effects = os.path.join(target, "effects.csv")
        pd.DataFrame({"user_id": dataset.user_ids,
                      "y0": truth.y0,
                      "y1": truth.y1,
                      "effect": truth.effect}).to_csv(effects, index=False)
        written.append(effects)
        written.append(_write_json(dataset.metadata,
                                   os.path.join(target, "metadata.json")))
    return written


def cmd_train(config, out_dir, dataset):
    """Train on every labeled user, write checkpoint, predictions and
    loss trace"""
    model, trace = train(dataset, dataset.labeled_indices(), config.model,
                         progress=config.general.progress)
    checkpoint = os.path.join(out_dir, "model.npz")
    save_checkpoint(model, checkpoint)
    prediction = mc_dropout_predict(
        model, dataset, config.acquisition.mc_passes,
        named_seed(config.general.seed, "mc-train"))
    predictions = os.path.join(out_dir, "predictions.csv")
    prediction.to_frame(dataset.user_ids).to_csv(predictions, index=False)
    loss_trace = os.path.join(out_dir, "loss_trace.csv")
    trace.to_csv(loss_trace, index=False)
    return [checkpoint, predictions, loss_trace]


def cmd_eval(config, out_dir, dataset):
    """Run the evaluation sweep, write records and summary"""
    evaluate = config.evaluate
    report = run_experiment(dataset, evaluate.model, evaluate.folds,
                            evaluate.seeds, model_config=config.model,
                            fractions=evaluate.fractions,
                            ridge_alpha=evaluate.ridge_alpha,
                            num_workers=config.job.num_workers,
                            progress=config.general.progress,
                            config_hash=config_hash(config),
                            base_seed=config.general.seed)
    records = os.path.join(out_dir, "records.jsonl")
    report.to_jsonl(records)
    summary = os.path.join(out_dir, "summary.json")
    report.summary_json(summary)
    print(report.format_summary())
    return [records, summary]


def cmd_active(config, out_dir, dataset):
    """Run active learning, write history, predictions and metrics on the
    users that were never labeled"""
    result = active_learning_run(dataset, config.model, config.acquisition,
                                 config.general.seed,
                                 progress=config.general.progress)
    history = os.path.join(out_dir, "history.jsonl")
    with open(history, "w", encoding="utf-8") as f:
        for entry in result.history:
            f.write(json.dumps(entry, sort_keys=True) + "\n")

    frame = result.prediction.to_frame(dataset.user_ids)
    frame["labeled"] = np.isin(np.arange(dataset.n),
                               result.labeled).astype(int)
    frame["cluster"] = result.clusters.assignments
    predictions = os.path.join(out_dir, "predictions.csv")
    frame.to_csv(predictions, index=False)

    remainder = np.setdiff1d(dataset.labeled_indices(), result.labeled)
    metrics = evaluate_ranking(result.prediction.uplift, dataset, remainder,
                               config.evaluate.fractions)
    summary = {"metadata": {"config_hash": config_hash(config),
                            "policy": config.acquisition.policy,
                            "rounds": len(result.history) - 1,
                            "labeled": int(len(result.labeled)),
                            "evaluated": int(len(remainder))},
               "metrics": metrics}
    summary_path = _write_json(summary, os.path.join(out_dir,
                                                     "summary.json"))
    print("active learning (%s): %d labeled, %s" % (
        config.acquisition.policy, len(result.labeled), ", ".join(
            "%s %s" % (k, "missing" if v is None else "%.4f" % v)
            for k, v in metrics.items())))
    return [history, predictions, summary_path]


def run(command, config):
    """Validate inputs, then run `command` and write its outputs

    Returns
    -------
    list of str
        Written files
    """
    dataset = None
    if command != "synth":
        dataset, _ = load_inputs(config)
        check_inputs(command, config, dataset)
    elif config.synthetic is None:
        raise ConfigurationError("synth needs a [synthetic] section")

    out_dir = config.general.out_dir
    os.makedirs(out_dir, exist_ok=True)
    file_handler = logging.FileHandler(os.path.join(out_dir, "run.log"),
                                       mode="w")
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logging.getLogger().addHandler(file_handler)
    try:
        written = [dump_config(config, os.path.join(out_dir,
                                                    "config.toml"))]
        if command == "synth":
            written += cmd_synth(config, out_dir)
        elif command == "train":
            written += cmd_train(config, out_dir, dataset)
        elif command == "eval":
            written += cmd_eval(config, out_dir, dataset)
        else:
            written += cmd_active(config, out_dir, dataset)
        logger.info("wrote %s", ", ".join(written))
    finally:
        logging.getLogger().removeHandler(file_handler)
        file_handler.close()
    return written


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = {key: getattr(args, flag)
                 for flag, key in OVERRIDES.items()}
    start_time = time.time()
    try:
        config = UpliftConfig.from_file(args.config, overrides=overrides)
        logging.basicConfig(
            level=config.general.logging,
            handlers=[logging.StreamHandler(sys.stdout)],
            format=LOG_FORMAT,
            force=True)
        run(args.command, config)
    except UpliftError as e:
        print("umgnet-error %s: %s" % (e.kind, e), file=sys.stderr)
        return 1
    except OSError as e:
        print("umgnet-error io: %s" % e, file=sys.stderr)
        return 1
    print_time(time.time() - start_time)
    return 0


if __name__ == "__main__":
    sys.exit(main())
