import contextlib
import io
import json
import logging
import os
import tempfile
import unittest

import numpy as np
import pandas as pd
import toml

from umgnet import cli
from umgnet.acquisition import audit_selection
from umgnet.config import SyntheticConfig
from umgnet.data import (generate_synthetic,
                         load_dataset)
from umgnet.training import load_checkpoint

logging.basicConfig(level=logging.INFO)

SYNTH_FILES = ["edges.csv", "users.csv", "items.csv", "labels.csv",
               "effects.csv", "metadata.json"]

MODEL = {"hidden_sizes": [8, 8, 4], "epochs": 3, "dtype": "float64"}


class TestCli(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def write_config(self, name, **sections):
        sections.setdefault("general", {})
        sections["general"].setdefault("out_dir",
                                       os.path.join(self.dir, name))
        sections["general"].setdefault("progress", False)
        path = os.path.join(self.dir, name + ".toml")
        with open(path, "w", encoding="utf-8") as f:
            toml.dump(sections, f)
        return path, sections["general"]["out_dir"]

    def run_cli(self, *argv):
        stderr = io.StringIO()
        with contextlib.redirect_stderr(stderr), \
                contextlib.redirect_stdout(io.StringIO()):
            status = cli.main(list(argv))
        return status, stderr.getvalue()

    def synth_section(self, **kwargs):
        section = {"n": 40, "m": 12, "d": 3, "density": 0.3}
        section.update(kwargs)
        return section

    def test_synth_round_trip(self):
        config, out = self.write_config(
            "synth", synthetic={"n": 10, "m": 5, "d": 3, "density": 0.5})
        status, _ = self.run_cli("synth", "--config", config)
        self.assertEqual(status, 0)
        for name in SYNTH_FILES + ["config.toml", "run.log"]:
            self.assertTrue(os.path.isfile(os.path.join(out, name)), name)

        loaded = load_dataset(*(os.path.join(out, name) for name in
                                ("edges.csv", "users.csv", "labels.csv")),
                              items=os.path.join(out, "items.csv"))
        expected, truth = generate_synthetic(
            SyntheticConfig(n=10, m=5, d=3, density=0.5, seed=0))
        self.assertEqual(loaded.graph.edges(), expected.graph.edges())
        self.assertEqual(loaded.user_ids, expected.user_ids)
        np.testing.assert_array_equal(loaded.user_features,
                                      expected.user_features)
        np.testing.assert_array_equal(loaded.item_features,
                                      expected.item_features)
        np.testing.assert_array_equal(loaded.outcome, expected.outcome)
        np.testing.assert_array_equal(loaded.treatment, expected.treatment)
        effects = pd.read_csv(os.path.join(out, "effects.csv"))
        np.testing.assert_array_equal(effects["effect"].to_numpy(),
                                      truth.effect)
        with open(os.path.join(out, "metadata.json")) as f:
            self.assertEqual(json.load(f)["n"], 10)

    def test_synth_byte_identical(self):
        outputs = []
        for name in ("first", "second"):
            config, out = self.write_config(
                name, synthetic={"n": 10, "m": 5, "d": 3, "density": 0.5},
                general={"seed": 3})
            self.assertEqual(self.run_cli("synth", "--config", config)[0], 0)
            outputs.append(out)
        for name in SYNTH_FILES:
            with open(os.path.join(outputs[0], name), "rb") as a, \
                    open(os.path.join(outputs[1], name), "rb") as b:
                self.assertEqual(a.read(), b.read(), name)

    def test_rerun_replaces_log(self):
        config, out = self.write_config(
            "rerun", synthetic={"n": 10, "m": 5, "d": 3, "density": 0.5})
        contents = []
        for _ in range(2):
            self.assertEqual(self.run_cli("synth", "--config", config)[0], 0)
            with open(os.path.join(out, "run.log")) as f:
                log = f.read()
            self.assertEqual(log.count(" wrote "), 1)
            with open(os.path.join(out, "config.toml"), "rb") as f:
                contents.append(f.read())
        self.assertEqual(contents[0], contents[1])

    def test_synth_simulations(self):
        config, out = self.write_config(
            "sims", synthetic={"n": 10, "m": 5, "d": 3, "simulations": 2})
        self.assertEqual(self.run_cli("synth", "--config", config)[0], 0)
        for sim in range(2):
            self.assertTrue(os.path.isfile(
                os.path.join(out, "sim_%d" % sim, "labels.csv")))

    def test_invalid_config_writes_nothing(self):
        config, out = self.write_config(
            "bad", synthetic={"n": 10, "m": 5, "density": 0.0})
        status, stderr = self.run_cli("synth", "--config", config)
        self.assertEqual(status, 1)
        self.assertTrue(stderr.startswith("umgnet-error configuration:"))
        self.assertEqual(len(stderr.strip().splitlines()), 1)
        self.assertFalse(os.path.exists(out))

    def test_missing_dataset_path(self):
        missing = os.path.join(self.dir, "nowhere", "edges.csv")
        config, out = self.write_config(
            "missing", data={"edges": missing, "users": missing,
                             "labels": missing})
        status, stderr = self.run_cli("eval", "--config", config)
        self.assertEqual(status, 1)
        self.assertIn("umgnet-error ingestion", stderr)
        self.assertIn(missing, stderr)
        self.assertFalse(os.path.exists(out))

    def test_missing_config(self):
        status, stderr = self.run_cli(
            "train", "--config", os.path.join(self.dir, "none.toml"))
        self.assertEqual(status, 1)
        self.assertIn("none.toml", stderr)

    def test_train(self):
        config, out = self.write_config(
            "train", synthetic=self.synth_section(), model=MODEL,
            acquisition={"mc_passes": 4})
        self.assertEqual(self.run_cli("train", "--config", config,
                                      "--gnn", "ngcf")[0], 0)
        model = load_checkpoint(os.path.join(out, "model.npz"))
        self.assertEqual(model.config.gnn, "ngcf")
        predictions = pd.read_csv(os.path.join(out, "predictions.csv"))
        self.assertEqual(len(predictions), 40)
        trace = pd.read_csv(os.path.join(out, "loss_trace.csv"))
        self.assertEqual(list(trace["epoch"]), [0, 1, 2])

    def eval_summary(self, name, model):
        config, out = self.write_config(
            name, synthetic=self.synth_section(), model=MODEL,
            evaluate={"model": model, "folds": 5, "seeds": [0, 1, 2, 3, 4]})
        self.assertEqual(self.run_cli("eval", "--config", config)[0], 0)
        with open(os.path.join(out, "records.jsonl")) as f:
            records = [json.loads(line) for line in f]
        with open(os.path.join(out, "summary.json")) as f:
            summary = json.load(f)
        return records, summary

    def test_eval(self):
        records, summary = self.eval_summary("eval_t", "baseline-T")
        self.assertEqual(len(records), 25)
        self.assertEqual(set(summary["metrics"]), {"ate", "up@40", "up@20"})
        self.assertEqual(summary["metadata"]["model"], "baseline-T")

        records_gnn, summary_gnn = self.eval_summary("eval_gnn", "umgnet")
        self.assertEqual(len(records_gnn), 25)
        self.assertEqual(summary_gnn["metadata"]["fold_plans"],
                         summary["metadata"]["fold_plans"])

    def test_eval_seed_changes_fold_plans(self):
        config, tables = self.write_config(
            "tables", synthetic=self.synth_section())
        self.assertEqual(self.run_cli("synth", "--config", config)[0], 0)
        data = {name: os.path.join(tables, name + ".csv")
                for name in ("edges", "users", "labels", "items")}
        plans = []
        for seed in ("0", "0", "1"):
            config, out = self.write_config(
                "eval_seed_" + str(len(plans)), data=data,
                evaluate={"model": "baseline-T", "folds": 4, "seeds": [0]})
            self.assertEqual(self.run_cli("eval", "--config", config,
                                          "--seed", seed)[0], 0)
            with open(os.path.join(out, "summary.json")) as f:
                plans.append(json.load(f)["metadata"]["fold_plans"])
        self.assertEqual(plans[0], plans[1])
        self.assertNotEqual(plans[0], plans[2])

    def test_eval_too_many_folds(self):
        config, out = self.write_config(
            "folds", synthetic=self.synth_section(n=6),
            evaluate={"folds": 7})
        status, stderr = self.run_cli("eval", "--config", config)
        self.assertEqual(status, 1)
        self.assertIn("umgnet-error parameter", stderr)
        self.assertFalse(os.path.exists(out))

    def active(self, name, *flags, **acquisition):
        values = {"clusters": 3, "mc_passes": 3, "rounds": 2,
                  "frac_initial": 0.1, "frac_target": 0.3}
        values.update(acquisition)
        config, out = self.write_config(
            name, synthetic=self.synth_section(), model=MODEL,
            acquisition=values)
        self.assertEqual(self.run_cli("active", "--config", config,
                                      *flags)[0], 0)
        with open(os.path.join(out, "history.jsonl")) as f:
            history = [json.loads(line) for line in f]
        predictions = pd.read_csv(os.path.join(out, "predictions.csv"))
        return history, predictions

    def test_active_policies(self):
        greedy, predictions = self.active("greedy")
        random_policy, _ = self.active("random", "--policy", "random")
        self.assertEqual([h["batch_size"] for h in greedy],
                         [h["batch_size"] for h in random_policy])
        self.assertEqual(len(greedy), 3)
        self.assertEqual(int(predictions["labeled"].sum()), 12)

        data, _ = generate_synthetic(SyntheticConfig(**self.synth_section(),
                                                     seed=0))
        clusters = predictions["cluster"].to_numpy()
        for history in (greedy, random_policy):
            labeled = []
            for entry in history:
                self.assertEqual(audit_selection(
                    entry["batch"], data.treatment, clusters, entry["caps"],
                    entry["budget"], labeled), [])
                labeled += entry["batch"]

    def test_active_zero_rounds(self):
        history, _ = self.active("zero", "--frac-initial", "0.2",
                                 "--frac-target", "0.2")
        self.assertEqual(len(history), 1)
        self.assertEqual(history[0]["round"], 0)
