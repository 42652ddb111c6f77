"""Gradient-boosted regression trees on the log-loss gradient (XGBoost-style
objective, classic Friedman fitting: squared-error splits on the residuals,
Newton-step leaf values, shrinkage on every round)."""

from dataclasses import dataclass

import numpy as np

from . import as_matrix as _as_matrix
from . import dedup_rows
from .linear import sigmoid
from .tree import all_binary, grow_tree, predict_tree, sse_gain


@dataclass(frozen=True)
class GradientBoostedModel:
    family: str
    base_score: float
    shrinkage: float
    trees: tuple
    n_features: int

    def raw_scores(self, X):
        F = np.full(len(X), self.base_score)
        for root in self.trees:
            F += self.shrinkage * predict_tree(root, X)
        return F

    def predict_score(self, X):
        X, single = _as_matrix(X, self.n_features)
        scores = sigmoid(self.raw_scores(X))
        return float(scores[0]) if single else scores

    def predict(self, X):
        scores = self.predict_score(X)
        if isinstance(scores, float):
            return int(scores >= 0.5)
        return (scores >= 0.5).astype(int)


def fit_gbt(spec, X, y) -> GradientBoostedModel:
    n, d = X.shape
    unique, y_u, counts, inverse = dedup_rows(X, y)
    binary = all_binary(unique)
    p0 = float((counts @ y_u) / n)
    base = float(np.log(p0 / (1.0 - p0)))
    F = np.full(len(unique), base)
    trees = []
    for r in range(spec.tree_count):
        p = sigmoid(F)
        grad = y_u - p  # negative log-loss gradient
        hess = p * (1.0 - p)

        def leaf_fn(idx, w, grad=grad, hess=hess):
            return float((w @ grad[idx]) / (w @ hess[idx] + 1e-16))

        if spec.subsample < 1.0:
            rng = np.random.default_rng([spec.seed, r])
            m = max(1, int(round(spec.subsample * n)))
            picked = rng.choice(n, size=m, replace=False)
            weights = np.bincount(inverse[picked], minlength=len(unique)).astype(float)
        else:
            weights = counts
        rows = np.flatnonzero(weights)
        root = grow_tree(
            unique, grad, rows, weights[rows], spec.max_depth, sse_gain, leaf_fn,
            binary=binary,
        )
        F += spec.learning_rate * predict_tree(root, unique)
        trees.append(root)
    return GradientBoostedModel(
        family="gbt",
        base_score=base,
        shrinkage=spec.learning_rate,
        trees=tuple(trees),
        n_features=d,
    )
