import logging
import os
import tempfile
import unittest

import attr
import toml

from umgnet.config import (AcquisitionConfig,
                           ModelConfig,
                           SyntheticConfig,
                           UpliftConfig,
                           config_hash,
                           dump_config,
                           load_config)
from umgnet.errors import ConfigurationError

logging.basicConfig(level=logging.INFO)


class TestUpliftConfig(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def write(self, config, name="config.toml"):
        path = os.path.join(self.dir, name)
        with open(path, "w", encoding="utf-8") as f:
            toml.dump(config, f)
        return path

    def test_defaults_and_seed_propagation(self):
        path = self.write({"general": {"seed": 7},
                           "synthetic": {"n": 10, "m": 5}})
        config = UpliftConfig.from_file(path)
        self.assertEqual(config.path, path)
        self.assertEqual(config.model.gnn, "sage")
        self.assertEqual(config.model.hidden_sizes, [64, 64, 32])
        self.assertEqual(config.model.seed, 7)
        self.assertEqual(config.synthetic.seed, 7)
        self.assertEqual(config.synthetic.product_dim, config.synthetic.d)
        self.assertEqual(config.acquisition.weights, [0.2, 0.1, 0.7])
        self.assertEqual(config.evaluate.seeds, [0, 1, 2, 3, 4])

    def test_overrides(self):
        path = self.write({"model": {"gnn": "ngcf"}})
        config = UpliftConfig.from_file(
            path, overrides={"model.gnn": "LGC", "general.seed": None,
                             "evaluate.folds": 10})
        self.assertEqual(config.model.gnn, "lgc")
        self.assertEqual(config.general.seed, 0)
        self.assertEqual(config.evaluate.folds, 10)

    def test_unknown_key(self):
        path = self.write({"model": {"layers": 3}})
        with self.assertRaises(ConfigurationError):
            UpliftConfig.from_file(path)
        path = self.write({"modle": {}}, name="typo.toml")
        with self.assertRaises(ConfigurationError):
            UpliftConfig.from_file(path)

    def test_invalid_values(self):
        for section in ({"model": {"gnn": "gat"}},
                        {"model": {"dropout": 1.0}},
                        {"model": {"hidden_sizes": [8, 8]}},
                        {"general": {"seed": -1}},
                        {"synthetic": {"n": 10, "m": 5, "density": 0.0}},
                        {"acquisition": {"frac_initial": 0.3,
                                         "frac_target": 0.2}},
                        {"acquisition": {"frac_target": 1.5}},
                        {"acquisition": {"weights": [0.5, -0.1, 0.6]}},
                        {"data": {"edges": "edges.csv"}}):
            with self.assertRaises(ConfigurationError, msg=str(section)):
                UpliftConfig.from_dict(section)

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_config(os.path.join(self.dir, "missing.toml"))

    def test_unparsable_file(self):
        path = os.path.join(self.dir, "broken.toml")
        with open(path, "w", encoding="utf-8") as f:
            f.write("[model\ngnn = ")
        with self.assertRaises(ConfigurationError):
            load_config(path)

    def test_dump_round_trip(self):
        config = UpliftConfig.from_dict(
            {"synthetic": {"n": 20, "m": 4, "w_t": 3.0},
             "model": {"gnn": "lgc", "epochs": 5}})
        path = dump_config(config, os.path.join(self.dir, "dumped.toml"))
        loaded = UpliftConfig.from_file(path)
        self.assertEqual(attr.asdict(loaded.model),
                         attr.asdict(config.model))
        self.assertEqual(attr.asdict(loaded.synthetic),
                         attr.asdict(config.synthetic))
        self.assertEqual(config_hash(loaded), config_hash(config))

    def test_hash_ignores_output_directory(self):
        a = UpliftConfig.from_dict({"general": {"out_dir": "a"}})
        b = UpliftConfig.from_dict({"general": {"out_dir": "b"}})
        c = UpliftConfig.from_dict({"general": {"seed": 1}})
        self.assertEqual(config_hash(a), config_hash(b))
        self.assertNotEqual(config_hash(a), config_hash(c))


class TestSections(unittest.TestCase):
    def test_policy_aliases(self):
        self.assertEqual(AcquisitionConfig(policy="epsilon-greedy").policy,
                         "eg")
        with self.assertRaises(ConfigurationError):
            AcquisitionConfig(policy="thompson")

    def test_model_defaults(self):
        config = ModelConfig()
        self.assertEqual(config.epochs, 2000)
        self.assertEqual(config.learning_rate, 0.01)
        self.assertEqual(config.weight_decay, 1e-4)
        self.assertEqual(config.dropout, 0.4)

    def test_simulation_index(self):
        with self.assertRaises(ConfigurationError):
            SyntheticConfig(n=5, m=5, simulations=2, simulation=2)
