"""Depth-limited binary decision trees shared by the forest and boosting models.

Trees grow over weighted rows: callers collapse duplicate (row, target) pairs
into unique rows with integer multiplicities, which keeps every node-level
scan small without changing any statistic. Candidate thresholds are midpoints
between consecutive distinct values of a column within the node (0.5 for a
0/1 column). Columns constant within the node have no candidates, so tree
shape is invariant to appending all-constant columns. Equal-gain ties resolve
to the lowest feature index, then the lowest threshold, making construction
fully deterministic.
"""

import numpy as np

GAIN_EPS = 1e-12


class Node:
    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self, feature=None, threshold=0.0, left=None, right=None, value=0.0):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.value = value

    @property
    def is_leaf(self):
        return self.feature is None


def gini_gain(n, T, nL, TL):
    # T = weighted positive count; works elementwise on arrays
    nR = n - nL
    TR = T - TL
    parent = 1.0 - (T / n) ** 2 - ((n - T) / n) ** 2
    left = 1.0 - (TL / nL) ** 2 - ((nL - TL) / nL) ** 2
    right = 1.0 - (TR / nR) ** 2 - ((nR - TR) / nR) ** 2
    return parent - (nL / n) * left - (nR / n) * right


def _entropy(T, n):
    p = T / n
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        hp = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
        hq = np.where(q > 0, -q * np.log2(np.where(q > 0, q, 1.0)), 0.0)
    return hp + hq


def entropy_gain(n, T, nL, TL):
    nR = n - nL
    TR = T - TL
    return (
        _entropy(T, n)
        - (nL / n) * _entropy(TL, nL)
        - (nR / n) * _entropy(TR, nR)
    )


def sse_gain(n, T, nL, TL):
    # T = weighted target sum; variance-reduction form of the squared-error drop
    nR = n - nL
    TR = T - TL
    return TL * TL / nL + TR * TR / nR - T * T / n


def best_split(sub, tn, wn, feats, gain_fn):
    """Best (gain, feature, threshold) over candidate columns of ``sub``, or None.

    ``sub`` holds the node's unique rows for the candidate features only;
    ``feats`` maps its columns back to ascending original feature indices;
    ``wn`` are the row weights. Sufficient statistics are weighted per-side
    counts and target sums.
    """
    if len(feats) == 0:
        return None
    n = float(wn.sum())
    wt = wn * tn
    T = float(wt.sum())

    gains = np.full(len(feats), -np.inf)
    thresholds = np.zeros(len(feats))

    binary = ((sub == 0.0) | (sub == 1.0)).all(axis=0)
    if binary.any():
        b = sub[:, binary]
        nR = wn @ b
        TR = wt @ b
        gains[binary] = gain_fn(n, T, n - nR, T - TR)
        thresholds[binary] = 0.5

    for j in np.flatnonzero(~binary):
        vals = sub[:, j]
        order = np.argsort(vals, kind="stable")
        sv = vals[order]
        cn = np.cumsum(wn[order])
        ct = np.cumsum(wt[order])
        bp = np.flatnonzero(sv[:-1] != sv[1:])
        g = gain_fn(n, T, cn[bp], ct[bp])
        best = int(np.argmax(g))  # first max: lowest threshold wins ties
        thr = sv[bp[best]] + (sv[bp[best] + 1] - sv[bp[best]]) / 2
        if thr >= sv[bp[best] + 1]:  # midpoint rounded up to the right value
            thr = sv[bp[best]]
        gains[j] = g[best]
        thresholds[j] = thr

    best = int(np.argmax(gains))  # first max: lowest feature index wins ties
    if not gains[best] > GAIN_EPS:
        return None
    return float(gains[best]), int(feats[best]), float(thresholds[best])


def all_binary(X) -> bool:
    return bool(((X == 0.0) | (X == 1.0)).all())


def grow_tree(
    X,
    t,
    idx,
    w,
    max_depth,
    gain_fn,
    leaf_fn,
    choose_features=None,
    min_samples_split=2,
    binary=False,
    depth=0,
):
    """Recursively grow a tree over unique-row indices ``idx`` with weights ``w``.

    ``leaf_fn(idx, w)`` produces leaf values; ``choose_features`` optionally
    subsamples the node's varying columns (random-forest style); ``binary``
    asserts every column of X is 0/1, enabling a fused split search that is
    exactly equivalent to the generic one.
    """
    n = float(w.sum())
    if depth >= max_depth or n < min_samples_split:
        return Node(value=leaf_fn(idx, w))
    tn = t[idx]
    if np.all(tn == tn[0]):
        return Node(value=leaf_fn(idx, w))
    sub = X[idx]
    if binary:
        present = sub.sum(axis=0)
        varying = np.flatnonzero((present > 0.0) & (present < len(idx)))
    else:
        varying = np.flatnonzero(sub.min(axis=0) < sub.max(axis=0))
    if choose_features is not None:
        varying = choose_features(varying)
    if binary:
        if len(varying) == 0:
            return Node(value=leaf_fn(idx, w))
        cols = sub[:, varying]
        wt = w * tn
        T = float(wt.sum())
        nR = w @ cols
        TR = wt @ cols
        gains = gain_fn(n, T, n - nR, T - TR)
        best = int(np.argmax(gains))  # first max: lowest feature index wins ties
        if not gains[best] > GAIN_EPS:
            return Node(value=leaf_fn(idx, w))
        feature, threshold = int(varying[best]), 0.5
    else:
        split = best_split(sub[:, varying], tn, w, varying, gain_fn)
        if split is None:
            return Node(value=leaf_fn(idx, w))
        _, feature, threshold = split
    node = Node(feature=feature, threshold=threshold)
    mask = sub[:, feature] <= threshold
    node.left = grow_tree(
        X, t, idx[mask], w[mask], max_depth, gain_fn, leaf_fn, choose_features,
        min_samples_split, binary, depth + 1,
    )
    node.right = grow_tree(
        X, t, idx[~mask], w[~mask], max_depth, gain_fn, leaf_fn, choose_features,
        min_samples_split, binary, depth + 1,
    )
    return node


def predict_tree(root, X):
    out = np.empty(len(X))
    _fill(root, X, np.arange(len(X)), out)
    return out


def _fill(node, X, idx, out):
    if node.is_leaf:
        out[idx] = node.value
        return
    mask = X[idx, node.feature] <= node.threshold
    _fill(node.left, X, idx[mask], out)
    _fill(node.right, X, idx[~mask], out)


def node_to_obj(node):
    if node.is_leaf:
        return {"v": node.value}
    return {
        "f": node.feature,
        "t": node.threshold,
        "l": node_to_obj(node.left),
        "r": node_to_obj(node.right),
    }


def node_from_obj(obj):
    if "v" in obj:
        return Node(value=obj["v"])
    return Node(
        feature=obj["f"],
        threshold=obj["t"],
        left=node_from_obj(obj["l"]),
        right=node_from_obj(obj["r"]),
    )
