"""Self-describing JSON persistence for trained models.

Layout: {"format": "argstruct-model", "version": 1, "family": <tag>,
"n_features": <d>, "params": {...}} where params holds weights/bias for the
linear families, a tree list for the forest, and base score + shrinkage +
tree list for boosting. Trees serialize as nested objects: internal nodes
{"f": feature, "t": threshold, "l": ..., "r": ...}, leaves {"v": value}.
"""

import json
from pathlib import Path

import numpy as np

from .boosting import GradientBoostedModel
from .linear import LinearModel
from .forest import RandomForestModel
from .tree import node_from_obj, node_to_obj

FORMAT_NAME = "argstruct-model"
FORMAT_VERSION = 1


class ModelFormatError(Exception):
    pass


def model_to_dict(model) -> dict:
    if isinstance(model, LinearModel):
        params = {"weights": model.weights.tolist(), "bias": model.bias}
    elif isinstance(model, RandomForestModel):
        params = {"trees": [node_to_obj(t) for t in model.trees]}
    elif isinstance(model, GradientBoostedModel):
        params = {
            "base_score": model.base_score,
            "shrinkage": model.shrinkage,
            "trees": [node_to_obj(t) for t in model.trees],
        }
    else:
        raise ModelFormatError(f"cannot serialize {type(model).__name__}")
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "family": model.family,
        "n_features": model.n_features,
        "params": params,
    }


def model_from_dict(obj: dict):
    if obj.get("format") != FORMAT_NAME:
        raise ModelFormatError("not an argstruct model file")
    if obj.get("version") != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported version {obj.get('version')!r}")
    family = obj["family"]
    params = obj["params"]
    if family in ("lgr", "svm"):
        return LinearModel(
            family=family,
            weights=np.asarray(params["weights"], dtype=float),
            bias=float(params["bias"]),
        )
    if family == "rforest":
        return RandomForestModel(
            family=family,
            trees=tuple(node_from_obj(t) for t in params["trees"]),
            n_features=int(obj["n_features"]),
        )
    if family == "gbt":
        return GradientBoostedModel(
            family=family,
            base_score=float(params["base_score"]),
            shrinkage=float(params["shrinkage"]),
            trees=tuple(node_from_obj(t) for t in params["trees"]),
            n_features=int(obj["n_features"]),
        )
    raise ModelFormatError(f"unknown family {family!r}")


def save_model(model, path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model)), encoding="utf-8")


def load_model(path):
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
