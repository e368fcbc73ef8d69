"""Provides a class accumulating the metrics of an evaluation sweep

One record per (seed, fold) with the real ATE of the evaluated users and
up@k for each top fraction.  Undefined values are stored as missing and
left out of the aggregates (with a count).  Aggregates are the mean and
the population standard deviation over all records.
"""
import json
import logging
import math

import attr
import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ["mean", "std", "count", "missing", "uplift_ratio"]


def _clean(value):
    if value is None:
        return None
    if isinstance(value, (float, np.floating)) and math.isnan(value):
        return None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


@attr.s(kw_only=True)
class MetricsReport:
    """Records and aggregates of one evaluation sweep

    Attributes
    ----------
    records: list of dict
        seed, fold, n_train, n_eval, "ate" and one "up@k" entry per
        fraction; undefined metrics are None
    metrics: list of str
        Names of the metric columns, "ate" first
    metadata: dict
        Model spec, config hash, seeds, fold count and fold plan
        fingerprints
    """
    records = attr.ib(factory=list)
    metrics = attr.ib(factory=list)
    metadata = attr.ib(factory=dict)

    def add(self, record):
        self.records.append({k: _clean(v) for k, v in record.items()})

    def frame(self):
        """All records as pandas.DataFrame, missing values as NaN"""
        frame = pd.DataFrame(self.records)
        for name in self.metrics:
            if name not in frame:
                frame[name] = np.nan
            frame[name] = frame[name].astype(np.float64)
        return frame

    def summary(self):
        """Aggregate per metric

        Returns
        -------
        dict of str: dict
            mean, std, count and missing per metric; up@k metrics also
            carry uplift_ratio = mean up@k / mean ATE
        """
        frame = self.frame()
        summary = {}
        for name in self.metrics:
            values = frame[name].to_numpy() if len(frame) else np.zeros(0)
            present = values[~np.isnan(values)]
            missing = int(len(values) - len(present))
            if missing:
                logger.warning("%s missing in %d of %d records", name,
                               missing, len(values))
            summary[name] = {
                "mean": float(present.mean()) if len(present) else None,
                "std": float(present.std()) if len(present) else None,
                "count": int(len(present)),
                "missing": missing,
            }
        base = summary.get("ate", {}).get("mean")
        for name in self.metrics:
            if name == "ate":
                continue
            mean = summary[name]["mean"]
            summary[name]["uplift_ratio"] = (
                mean / base if mean is not None and base else None)
        return summary

    def summary_frame(self):
        """Summary as pandas.DataFrame, one row per metric"""
        frame = pd.DataFrame.from_dict(self.summary(), orient="index")
        return frame.reindex(columns=SUMMARY_COLUMNS)

    def format_summary(self):
        frame = self.summary_frame()
        lines = ["%s (%d records)" % (self.metadata.get("model", "model"),
                                      len(self.records))]
        for name, row in frame.iterrows():
            if row["count"] == 0:
                lines.append("  %-8s missing" % name)
                continue
            line = "  %-8s %8.4f +- %.4f" % (name, row["mean"], row["std"])
            if not pd.isna(row["uplift_ratio"]):
                line += "  (%.2fx ATE)" % row["uplift_ratio"]
            lines.append(line)
        return "\n".join(lines)

    def to_jsonl(self, path):
        """Write one JSON object per record, keys sorted"""
        with open(path, "w", encoding="utf-8") as f:
            for record in self.records:
                f.write(json.dumps(record, sort_keys=True) + "\n")

    def summary_json(self, path=None):
        """Summary plus metadata as JSON text, written to `path` if set"""
        text = json.dumps({"metadata": self.metadata,
                           "metrics": self.summary()},
                          sort_keys=True, indent=2) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text)
        return text

    @classmethod
    def from_jsonl(cls, path, metrics, metadata=None):
        with open(path, "r", encoding="utf-8") as f:
            records = [json.loads(line) for line in f if line.strip()]
        return cls(records=records, metrics=list(metrics),
                   metadata=metadata or {})
