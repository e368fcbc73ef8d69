"""Provides functions to read and write a dataset as csv tables

Tables (UTF-8, comma-separated, header required):

    edges.csv   user_id,item_id
    users.csv   user_id,f0,...,f{d-1}
    labels.csv  user_id,treatment,outcome
    items.csv   item_id,f0,...,f{d_p-1}   (optional)

User and product IDs are sorted lexicographically and re-indexed
contiguously, so the row order of the files does not matter.  Without an
items table, products are one-hot encoded.
"""
import logging
import os

import numpy as np
import pandas as pd

from umgnet.errors import IngestionError

from .dataset import Dataset
from .graph import BipartiteGraph

logger = logging.getLogger(__name__)

EDGE_COLUMNS = ["user_id", "item_id"]
LABEL_COLUMNS = ["user_id", "treatment", "outcome"]


def _read_table(path):
    if path is None or not os.path.isfile(path):
        raise IngestionError("file %s does not exist" % path)
    try:
        return pd.read_csv(path, dtype=str, keep_default_na=False,
                           encoding="utf-8", skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError,
            UnicodeDecodeError) as e:
        raise IngestionError("cannot parse %s: %s" % (path, e)) from e


def _check_columns(table, expected, path):
    found = [str(c).strip() for c in table.columns]
    if found != expected:
        unknown = sorted(set(found) - set(expected))
        missing = sorted(set(expected) - set(found))
        raise IngestionError(
            "unexpected header in %s: %s (unknown columns: %s, missing: %s)"
            % (path, ",".join(found), unknown, missing))


def _feature_columns(table, id_column, path):
    found = [str(c).strip() for c in table.columns]
    if not found or found[0] != id_column:
        raise IngestionError("first column of %s has to be %s" % (
            path, id_column))
    expected = [id_column] + ["f%d" % i for i in range(len(found) - 1)]
    _check_columns(table, expected, path)
    return expected[1:]


def _to_numbers(frame, path, what):
    try:
        values = frame.to_numpy(dtype=object).astype(np.float64)
    except (ValueError, TypeError) as e:
        raise IngestionError("non-numeric %s in %s: %s" % (
            what, path, e)) from e
    if not np.all(np.isfinite(values)):
        raise IngestionError("missing or non-finite %s in %s" % (
            what, path))
    return values


def _unique_ids(ids, path):
    ids = ids.str.strip()
    if (ids == "").any():
        raise IngestionError("empty ID in %s" % path)
    duplicated = ids[ids.duplicated()]
    if len(duplicated):
        raise IngestionError("duplicate IDs in %s: %s" % (
            path, sorted(set(duplicated))[:5]))
    return ids


def load_dataset(edges, users, labels, items=None):
    """Load a dataset from csv tables

    Args
    ----
    edges, users, labels: str
        Paths to the edge, user feature and label tables
    items: str, optional
        Path to the product feature table

    Returns
    -------
    Dataset
        Unlabeled users have label mask 0 and placeholder outcome 0

    Raises
    ------
    IngestionError
        On missing files, unknown columns, non-numeric values or IDs that
        are not consistent across tables
    """
    edge_table = _read_table(edges)
    _check_columns(edge_table, EDGE_COLUMNS, edges)
    user_table = _read_table(users)
    feature_columns = _feature_columns(user_table, "user_id", users)
    label_table = _read_table(labels)
    _check_columns(label_table, LABEL_COLUMNS, labels)

    user_ids = _unique_ids(user_table["user_id"], users)
    user_ids_sorted = sorted(user_ids)
    user_index = {uid: i for i, uid in enumerate(user_ids_sorted)}
    x_users = np.zeros((len(user_ids_sorted), len(feature_columns)))
    if len(user_ids):
        rows = user_ids.map(user_index).to_numpy()
        x_users[rows] = _to_numbers(user_table[feature_columns], users,
                                    "user feature")

    edge_users = edge_table["user_id"].str.strip()
    edge_items = edge_table["item_id"].str.strip()
    unknown = sorted(set(edge_users) - set(user_index))
    if unknown:
        raise IngestionError(
            "edges reference users without features: %s" % unknown[:5])

    if items is not None:
        item_table = _read_table(items)
        item_columns = _feature_columns(item_table, "item_id", items)
        item_ids = _unique_ids(item_table["item_id"], items)
        item_ids_sorted = sorted(item_ids)
        item_index = {iid: i for i, iid in enumerate(item_ids_sorted)}
        unknown = sorted(set(edge_items) - set(item_index))
        if unknown:
            raise IngestionError(
                "edges reference unknown products: %s" % unknown[:5])
        x_items = np.zeros((len(item_ids_sorted), len(item_columns)))
        if len(item_ids):
            rows = item_ids.map(item_index).to_numpy()
            x_items[rows] = _to_numbers(item_table[item_columns], items,
                                        "product feature")
    else:
        item_ids_sorted = sorted(set(edge_items))
        item_index = {iid: i for i, iid in enumerate(item_ids_sorted)}
        x_items = np.eye(len(item_ids_sorted))

    graph, dropped = BipartiteGraph.from_edges(
        len(user_ids_sorted), len(item_ids_sorted),
        zip(edge_users.map(user_index), edge_items.map(item_index)))
    if dropped:
        logger.warning("%s: %d duplicate edge rows ignored", edges, dropped)

    n = len(user_ids_sorted)
    treatment = np.zeros(n)
    outcome = np.zeros(n)
    mask = np.zeros(n)
    label_ids = _unique_ids(label_table["user_id"], labels)
    unknown = sorted(set(label_ids) - set(user_index))
    if unknown:
        raise IngestionError(
            "labels reference unknown users: %s" % unknown[:5])
    if len(label_ids):
        rows = label_ids.map(user_index).to_numpy()
        t = _to_numbers(label_table[["treatment"]], labels, "treatment")
        y = _to_numbers(label_table[["outcome"]], labels, "outcome")
        if not np.all(np.isin(t, (0.0, 1.0))):
            raise IngestionError("treatment in %s has to be 0 or 1" % labels)
        treatment[rows] = t[:, 0]
        outcome[rows] = y[:, 0]
        mask[rows] = 1.0

    logger.info("loaded dataset: %d users, %d products, %d edges, "
                "%d labeled", n, len(item_ids_sorted), graph.num_edges,
                int(mask.sum()))
    return Dataset(graph=graph,
                   user_features=x_users,
                   item_features=x_items,
                   treatment=treatment,
                   outcome=outcome,
                   label_mask=mask,
                   user_ids=user_ids_sorted,
                   item_ids=item_ids_sorted,
                   metadata={"source": os.path.dirname(
                       os.path.abspath(edges))})


def _feature_frame(id_column, ids, features):
    frame = pd.DataFrame(features,
                         columns=["f%d" % i for i in range(features.shape[1])])
    frame.insert(0, id_column, ids)
    return frame


def write_dataset(dataset, out_dir):
    """Write `dataset` as csv tables into `out_dir`

    Floats are written with full precision, so `load_dataset` restores
    the dataset exactly.

    Returns
    -------
    dict
        Table name to written path
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = {name: os.path.join(out_dir, name + ".csv")
             for name in ("edges", "users", "items", "labels")}
    user_ids = np.asarray(dataset.user_ids, dtype=object)
    item_ids = np.asarray(dataset.item_ids, dtype=object)
    graph = dataset.graph

    pd.DataFrame({"user_id": user_ids[graph.users],
                  "item_id": item_ids[graph.items]}).to_csv(
                      paths["edges"], index=False)
    _feature_frame("user_id", user_ids, dataset.user_features).to_csv(
        paths["users"], index=False)
    _feature_frame("item_id", item_ids, dataset.item_features).to_csv(
        paths["items"], index=False)
    labeled = dataset.labeled_indices()
    pd.DataFrame({"user_id": user_ids[labeled],
                  "treatment": dataset.treatment[labeled].astype(np.int64),
                  "outcome": dataset.outcome[labeled]}).to_csv(
                      paths["labels"], index=False)
    logger.info("wrote dataset tables to %s", out_dir)
    return paths
