"""Clustering and embedding estimators over precomputed distance matrices."""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin

from .validation import check_distance_matrix


def _alternate(d: np.ndarray, medoids: np.ndarray, budget: int):
    """Assignment/medoid-update sweeps until stable; returns sweeps used."""
    k = len(medoids)
    for sweep in range(1, budget + 1):
        assign = np.argmin(d[:, medoids], axis=1)
        assign[medoids] = np.arange(k)
        new = medoids.copy()
        for c in range(k):
            members = np.flatnonzero(assign == c)
            costs = d[np.ix_(members, members)].sum(axis=1)
            new[c] = members[np.argmin(costs)]
        if np.array_equal(new, medoids):
            return medoids, sweep
        medoids = new
    return medoids, budget


def _best_swap(d: np.ndarray, medoids: np.ndarray):
    """Objective of the best single medoid<->point swap, or None."""
    m = d.shape[0]
    to_med = d[:, medoids]
    order = np.argsort(to_med, axis=1, kind="stable")
    nearest_pos = order[:, 0]
    nearest = to_med[np.arange(m), nearest_pos]
    second = (to_med[np.arange(m), order[:, 1]]
              if len(medoids) > 1 else np.full(m, np.inf))
    candidates = np.setdiff1d(np.arange(m), medoids)
    if candidates.size == 0:
        return None
    best = (np.inf, None, None)
    for i in range(len(medoids)):
        # cheapest alternative if medoid i is removed
        without_i = np.where(nearest_pos == i, second, nearest)
        costs = np.minimum(without_i[:, None], d[:, candidates]).sum(axis=0)
        j = int(np.argmin(costs))
        if costs[j] < best[0]:
            best = (float(costs[j]), i, int(candidates[j]))
    return best


class KMedoids(ClusterMixin, BaseEstimator):
    """PAM over a precomputed distance matrix.

    A single seeded run: random distinct-medoid initialization, then
    alternating assignment/medoid-update sweeps, then improving-swap
    passes until no single swap lowers the objective (the plain
    alternation can strand two medoids inside one tight cluster).
    """

    def __init__(self, n_clusters=2, max_sweeps=300, random_state=None):
        self.n_clusters = n_clusters
        self.max_sweeps = max_sweeps
        self.random_state = random_state

    def fit(self, X, y=None):
        d = check_distance_matrix(X)
        m = d.shape[0]
        k = int(self.n_clusters)
        if not 1 <= k <= m:
            raise ValueError(f"n_clusters={k} must be in [1, {m}]")
        rng = np.random.default_rng(self.random_state)
        medoids = rng.choice(m, size=k, replace=False)

        budget = int(self.max_sweeps)
        used = 0
        while used < budget:
            medoids, sweeps = _alternate(d, medoids, budget - used)
            used += sweeps
            current = d[:, medoids].min(axis=1).sum()
            swap = _best_swap(d, medoids)
            if swap is None or swap[0] >= current - 1e-12:
                break
            _, pos, point = swap
            medoids = medoids.copy()
            medoids[pos] = point
            used += 1

        assign = np.argmin(d[:, medoids], axis=1)
        assign[medoids] = np.arange(k)
        self.medoid_indices_ = medoids
        self.labels_ = assign
        self.inertia_ = float(d[np.arange(m), medoids[assign]].sum())
        self.n_sweeps_ = used
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_


class ClassicalMDS(TransformerMixin, BaseEstimator):
    """Torgerson scaling of a distance matrix into n_components axes.

    Eigenvalues below zero are clamped; each axis is sign-fixed so its
    first nonzero coordinate is positive, making output deterministic.
    """

    def __init__(self, n_components=2):
        self.n_components = n_components

    def fit(self, X, y=None):
        d = check_distance_matrix(X)
        m = d.shape[0]
        p = int(self.n_components)
        if not 1 <= p <= m:
            raise ValueError(f"n_components={p} must be in [1, {m}]")
        j = np.eye(m) - np.full((m, m), 1.0 / m)
        b = -0.5 * j @ (d * d) @ j
        vals, vecs = np.linalg.eigh((b + b.T) / 2)
        top = np.argsort(vals)[::-1][:p]
        lam = np.clip(vals[top], 0.0, None)
        points = vecs[:, top] * np.sqrt(lam)
        for c in range(p):
            col = points[:, c]
            nonzero = np.flatnonzero(np.abs(col) > 1e-12)
            if nonzero.size and col[nonzero[0]] < 0:
                points[:, c] = -col
        self.embedding_ = points
        self.eigenvalues_ = lam
        self.stress_ = self._stress(d, points)
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).embedding_

    @staticmethod
    def _stress(d, points):
        diff = points[:, None, :] - points[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        num = ((d - dist) ** 2).sum()
        den = (d * d).sum()
        return float(np.sqrt(num / den)) if den > 0 else 0.0
