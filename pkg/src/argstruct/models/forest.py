"""Bagged decision-tree ensemble with per-split feature subsampling.

Each tree draws its bootstrap and split-time feature subsets from an RNG
stream derived from (seed, tree index), so results do not depend on build
order. Feature subsets are sqrt-sized samples of the node's varying columns;
all-constant columns never enter the pool, so predictions are invariant to
appending constant columns.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import as_matrix as _as_matrix
from . import dedup_rows
from .tree import all_binary, entropy_gain, gini_gain, grow_tree, predict_tree


@dataclass(frozen=True)
class RandomForestModel:
    family: str
    trees: tuple
    n_features: int

    def predict_score(self, X):
        """Fraction of trees whose leaf votes hateful."""
        X, single = _as_matrix(X, self.n_features)
        votes = np.zeros(len(X))
        for root in self.trees:
            votes += predict_tree(root, X)
        scores = votes / len(self.trees)
        return float(scores[0]) if single else scores

    def predict(self, X):
        scores = self.predict_score(X)
        if isinstance(scores, float):
            return int(scores >= 0.5)
        return (scores >= 0.5).astype(int)


def fit_forest(spec, X, y) -> RandomForestModel:
    n, d = X.shape
    gain_fn = entropy_gain if spec.criterion == "entropy" else gini_gain
    unique, y_u, _, inverse = dedup_rows(X, y)
    binary = all_binary(unique)

    def leaf_fn(idx, w):
        # weighted majority vote, ties toward hateful
        return 1.0 if 2.0 * (w @ y_u[idx]) >= w.sum() else 0.0

    trees = []
    for t in range(spec.tree_count):
        rng = np.random.default_rng([spec.seed, t])
        bootstrap = rng.integers(0, n, n)
        weights = np.bincount(inverse[bootstrap], minlength=len(unique)).astype(float)
        rows = np.flatnonzero(weights)

        def choose_features(candidates, rng=rng):
            # sqrt-sized draw from the node's varying columns; the stream
            # consumed depends only on the candidate count
            m = max(1, math.isqrt(len(candidates)))
            if m >= len(candidates):
                return candidates
            pick = rng.permutation(len(candidates))[:m]
            return candidates[np.sort(pick)]

        trees.append(
            grow_tree(
                unique, y_u, rows, weights[rows], spec.max_depth, gain_fn,
                leaf_fn, choose_features, binary=binary,
            )
        )
    return RandomForestModel(family="rforest", trees=tuple(trees), n_features=d)
