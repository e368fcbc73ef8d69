"""Constrained batch selection

Choose at most b unlabeled users maximizing the sum of their scores such
that

    - at most cap_j users come from cluster j,
    - at most ceil(b / 2) selected users are treated.

Ranking by score and taking each candidate that keeps all constraints
satisfiable is not exact once the treatment cap and the cluster caps
interact, so the batch is computed as a min-cost flow

    source -> cluster j (cap_j) -> user u -> arm T_u -> total -> sink (b)

where the treated arm has capacity ceil(b / 2) and a zero-cost bypass
source -> total lets the flow skip users.  Scores are mapped to integer
costs with a perturbation that prefers lower user indices among equal
scores.

Cluster caps are floor(|C_j| / n * b).  If the batch is smaller than b
after a first solve, the remaining b - sum(caps) slots are handed out one
per cluster to the clusters of the highest ranked candidates rejected by
a full cluster, and the batch is solved again.
"""
import logging
import math

import attr
import networkx as nx
import numpy as np

from umgnet.errors import (ParameterError,
                           ShapeError)

from .kmeans import cluster_caps

logger = logging.getLogger(__name__)

SCORE_RESOLUTION = 10**9


@attr.s(kw_only=True, frozen=True, eq=False)
class SelectionResult:
    """A selected batch

    Attributes
    ----------
    selected: np.ndarray
        Sorted indices of the selected users, S
    objective: float
        Sum of the scores of the selected users
    budget: int
        Batch size b
    treated_cap: int
        ceil(b / 2)
    caps: np.ndarray
        Final per-cluster caps, after remainder redistribution
    slack: dict
        Unused capacity per constraint: "budget", "treated" and
        "clusters" (list, one per cluster)
    """
    selected = attr.ib()
    objective = attr.ib(type=float)
    budget = attr.ib(type=int)
    treated_cap = attr.ib(type=int)
    caps = attr.ib()
    slack = attr.ib(factory=dict)

    def __len__(self):
        return len(self.selected)

    def to_dict(self):
        return {"selected": [int(u) for u in self.selected],
                "objective": float(self.objective),
                "budget": int(self.budget),
                "treated_cap": int(self.treated_cap),
                "caps": [int(c) for c in self.caps],
                "slack": self.slack}


def treated_cap(b):
    return int(math.ceil(b / 2))


def audit_selection(selected, treatment, clusters, caps, b, labeled=()):
    """List the constraints a batch violates (empty if it is feasible)"""
    selected = np.asarray(selected, dtype=np.int64)
    violations = []
    if len(selected) > b:
        violations.append("batch of %d exceeds budget %d" % (
            len(selected), b))
    if len(np.unique(selected)) != len(selected):
        violations.append("batch selects a user twice")
    treated = int(np.sum(np.asarray(treatment)[selected] > 0))
    if treated > treated_cap(b):
        violations.append("%d treated users exceed cap %d" % (
            treated, treated_cap(b)))
    counts = np.bincount(np.asarray(clusters)[selected],
                         minlength=len(caps))
    for j in np.flatnonzero(counts > np.asarray(caps)):
        violations.append("cluster %d holds %d users, cap %d" % (
            j, counts[j], caps[j]))
    overlap = np.intersect1d(selected, np.asarray(labeled, dtype=np.int64))
    if len(overlap):
        violations.append("batch re-selects labeled users %s" %
                          overlap.tolist())
    return violations


def _integer_costs(scores, candidates, b):
    n = len(scores)
    scale = np.abs(scores[candidates]).max() if len(candidates) else 0.0
    factor = n * max(b, 1) + 1
    costs = {}
    for u in candidates:
        level = 0 if scale == 0 else int(round(
            scores[u] / scale * SCORE_RESOLUTION))
        costs[int(u)] = -(level * factor + (n - int(u)))
    return costs


def _solve(candidates, costs, treatment, clusters, caps, b, t_cap):
    flow_graph = nx.DiGraph()
    flow_graph.add_edge("source", "total", capacity=b, weight=0)
    flow_graph.add_edge("total", "sink", capacity=b, weight=0)
    flow_graph.add_edge(("arm", 1), "total", capacity=t_cap, weight=0)
    flow_graph.add_edge(("arm", 0), "total", weight=0)
    for j, cap in enumerate(caps):
        if cap > 0:
            flow_graph.add_edge("source", ("cluster", j), capacity=int(cap),
                                weight=0)
    for u in candidates:
        j = int(clusters[u])
        if caps[j] <= 0:
            continue
        flow_graph.add_edge(("cluster", j), ("user", int(u)), capacity=1,
                            weight=0)
        flow_graph.add_edge(("user", int(u)), ("arm", int(treatment[u] > 0)),
                            capacity=1, weight=costs[int(u)])
    flow = nx.max_flow_min_cost(flow_graph, "source", "sink")
    return np.array(sorted(
        u for u in candidates
        if ("user", int(u)) in flow
        and sum(flow[("user", int(u))].values()) > 0), dtype=np.int64)


def _rank(scores, users):
    users = np.asarray(users, dtype=np.int64)
    return users[np.lexsort((users, -scores[users]))]


def greedy_select(scores, treatment, clusters, b, labeled=(), caps=None,
                  k=None, redistribute=True):
    """Select a batch of at most b users

    Args
    ----
    scores: array
        Combined acquisition score per user
    treatment: array
        Binary treatment indicator per user
    clusters: array of int
        Cluster assignment per user
    b: int
        Batch size
    labeled: array of int
        Users that cannot be selected (already labeled)
    caps: array of int, optional
        Per-cluster caps; computed from the cluster sizes if not set
    k: int, optional
        Number of clusters, defaults to max(clusters) + 1
    redistribute: bool
        Hand the remainder b - sum(caps) to clusters that block the best
        rejected candidates and solve again

    Returns
    -------
    SelectionResult

    Raises
    ------
    ParameterError
        If b is negative
    ShapeError
        If the per-user vectors differ in length
    """
    scores = np.asarray(scores, dtype=np.float64).reshape(-1)
    treatment = np.asarray(treatment).reshape(-1)
    clusters = np.asarray(clusters, dtype=np.int64).reshape(-1)
    n = len(scores)
    if len(treatment) != n or len(clusters) != n:
        raise ShapeError("scores, treatment and clusters differ in length")
    if b < 0:
        raise ParameterError("batch size has to be non-negative, got %s" % b)
    b = int(b)
    if k is None:
        k = int(clusters.max()) + 1 if n else 0
    if caps is None:
        caps = cluster_caps(clusters, k, b)
    caps = np.asarray(caps, dtype=np.int64).copy()
    t_cap = treated_cap(b)

    excluded = np.zeros(n, dtype=bool)
    excluded[np.asarray(labeled, dtype=np.int64)] = True
    candidates = np.flatnonzero(~excluded)

    selected = np.zeros(0, dtype=np.int64)
    if b > 0 and len(candidates):
        costs = _integer_costs(scores, candidates, b)
        selected = _solve(candidates, costs, treatment, clusters, caps, b,
                          t_cap)
        remainder = b - int(caps.sum())
        if redistribute and len(selected) < b and remainder > 0:
            counts = np.bincount(clusters[selected], minlength=len(caps))
            rejected = np.setdiff1d(candidates, selected)
            blocked = [u for u in _rank(scores, rejected)
                       if counts[clusters[u]] >= caps[clusters[u]]]
            bumped = []
            for u in blocked:
                j = int(clusters[u])
                if j not in bumped:
                    bumped.append(j)
                if len(bumped) == remainder:
                    break
            if bumped:
                caps[bumped] += 1
                logger.debug("raised caps of clusters %s", bumped)
                selected = _solve(candidates, costs, treatment, clusters,
                                  caps, b, t_cap)

    counts = np.bincount(clusters[selected], minlength=len(caps))
    treated = int(np.sum(treatment[selected] > 0))
    slack = {"budget": b - len(selected),
             "treated": t_cap - treated,
             "clusters": [int(c) for c in caps - counts[:len(caps)]]}
    objective = float(scores[selected].sum())
    logger.debug("selected %d of %d candidates (budget %d, %d treated), "
                 "objective %.4f", len(selected), len(candidates), b,
                 treated, objective)
    return SelectionResult(selected=selected,
                           objective=objective,
                           budget=b,
                           treated_cap=t_cap,
                           caps=caps,
                           slack=slack)
