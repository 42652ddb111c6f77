"""Command-line interface: validate, stats, encode, synth, run.

Exit codes: 0 success, 1 usage error, 2 data or validation error, 3 runtime
error. Diagnostics go to stderr; results go to stdout or the --out file.
The ARGSTRUCT_DATA_DIR environment variable supplies a fallback directory for
relative dataset paths.
"""

import argparse
import csv
import io
import json
import os
import sys
import warnings
from pathlib import Path

from .data import (
    EmptyDatasetError,
    MalformedRecordError,
    PartialAnnotationWarning,
    ValidationError,
    dataset_stats,
    dataset_to_jsonl,
    load_dataset,
    parse_dataset,
)
from .encodings import (
    FAMILIES,
    EncodingSpec,
    MissingStageOneScoreError,
    PremiseOverflowError,
    UnexpectedStageOneScoreError,
    encode_dataset,
    feature_names,
)
from .evaluation import (
    ClassTooSmallError,
    EmptyMatrixError,
    KTooSmallError,
    LengthMismatchError,
    TooFewFoldsError,
)
from .experiment import (
    MODEL_ORDER,
    REPORT_FORMATS,
    ExperimentConfig,
    emit_report,
    run_grid,
)
from .models import (
    DimensionMismatchError,
    EmptyTrainingSetError,
    ModelSpec,
    SingleClassError,
)
from .synth import MODES, GeneratorConfig, InvalidConfigError, generate

DATA_DIR_ENV = "ARGSTRUCT_DATA_DIR"

_MODEL_ALIASES = {
    "lgr": "lgr",
    "svm": "svm",
    "rforest": "rforest",
    "gbt": "gbt",
    "xgb": "gbt",
    "xgb-style-gbt": "gbt",
}

_DATA_ERRORS = (
    ValidationError,
    MalformedRecordError,
    EmptyDatasetError,
    PremiseOverflowError,
    MissingStageOneScoreError,
    UnexpectedStageOneScoreError,
    ClassTooSmallError,
    KTooSmallError,
    LengthMismatchError,
    EmptyMatrixError,
    TooFewFoldsError,
    SingleClassError,
    EmptyTrainingSetError,
    DimensionMismatchError,
    FileNotFoundError,
    IsADirectoryError,
)


class UsageError(Exception):
    pass


class OutputError(Exception):
    """Failed to write results; maps to the runtime-error exit code."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _resolve_dataset(path_str: str) -> Path:
    path = Path(path_str)
    if path.exists() or path.is_absolute():
        return path
    data_dir = os.environ.get(DATA_DIR_ENV)
    if data_dir:
        candidate = Path(data_dir) / path
        if candidate.exists():
            return candidate
    return path


def _write_output(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OutputError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(
        prog="argstruct",
        description=(
            "Predict message-level hatefulness from argument-component "
            "structure and annotations."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subparsers: dict[str, _Parser] = {}

    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = subs.add_parser(
        "validate", help="check every record of a dataset file", formatter_class=fmt
    )
    p.add_argument("--dataset", required=True, help="line-delimited JSON dataset")
    p.set_defaults(func=cmd_validate)
    subparsers["validate"] = p

    p = subs.add_parser(
        "stats", help="corpus statistics and contingency table", formatter_class=fmt
    )
    p.add_argument("--dataset", required=True, help="line-delimited JSON dataset")
    p.add_argument(
        "--format", choices=("markdown", "json"), default="markdown",
        help="report format",
    )
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_stats)
    subparsers["stats"] = p

    p = subs.add_parser(
        "encode", help="emit feature vectors as CSV", formatter_class=fmt
    )
    p.add_argument("--dataset", required=True, help="line-delimited JSON dataset")
    p.add_argument(
        "--encoding", required=True, choices=FAMILIES, help="encoding family"
    )
    p.add_argument(
        "--capacity",
        type=int,
        default=None,
        help="premise slot capacity L (default: the dataset's maximum)",
    )
    p.add_argument(
        "--truncate",
        action="store_true",
        help="drop surplus premises instead of failing on overflow",
    )
    p.add_argument(
        "--stage1-scores",
        default=None,
        help="JSON file of {message id: score} for the two-stage encodings",
    )
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(func=cmd_encode)
    subparsers["encode"] = p

    p = subs.add_parser(
        "synth", help="generate a synthetic dataset", formatter_class=fmt
    )
    p.add_argument("--mode", choices=MODES, default="table1", help="generator mode")
    p.add_argument("--n-hate", type=int, default=227, help="hateful messages")
    p.add_argument("--n-nohate", type=int, default=136, help="non-hateful messages")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument(
        "--max-premises", type=int, default=6, help="premise-count clamp bound"
    )
    p.add_argument(
        "--ensure-hateful-component",
        action="store_true",
        help="force at least one hateful component into every hateful message",
    )
    p.add_argument(
        "--premise-mean-hate", type=float, default=1.789,
        help="premise-count mean, hateful class",
    )
    p.add_argument(
        "--premise-std-hate", type=float, default=0.644,
        help="premise-count std, hateful class",
    )
    p.add_argument(
        "--premise-mean-nohate", type=float, default=2.654,
        help="premise-count mean, non-hateful class",
    )
    p.add_argument(
        "--premise-std-nohate", type=float, default=1.157,
        help="premise-count std, non-hateful class",
    )
    p.add_argument("--out", help="write the dataset here instead of stdout")
    p.set_defaults(func=cmd_synth)
    subparsers["synth"] = p

    p = subs.add_parser(
        "run", help="cross-validated encoding x model grid", formatter_class=fmt
    )
    p.add_argument(
        "--dataset", default=None, help="dataset path (flag or config key; required)"
    )
    p.add_argument(
        "--config",
        default=None,
        help="JSON file of flag defaults (explicit flags win)",
    )
    p.add_argument(
        "--encodings",
        default="all",
        help="comma-separated encoding families, or 'all'",
    )
    p.add_argument(
        "--models",
        default="all",
        help="comma-separated model families (lgr,svm,rforest,gbt; xgb is an "
        "alias for gbt), or 'all'",
    )
    p.add_argument("--k", type=int, default=5, help="number of folds")
    p.add_argument("--seed", type=int, default=0, help="fold-assignment seed")
    p.add_argument(
        "--format", choices=REPORT_FORMATS, default="markdown", help="report format"
    )
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="parallel cell workers (default: available parallelism)",
    )
    p.add_argument(
        "--inner-cv",
        action="store_true",
        help="use out-of-fold stage-1 scores for two-stage training rows",
    )
    p.add_argument(
        "--hard-stage1",
        action="store_true",
        help="threshold stage-1 scores at 0.5 before stage 2",
    )
    p.add_argument(
        "--sample-std",
        action="store_true",
        help="report sample (n-1) instead of population standard deviation",
    )
    p.add_argument(
        "--max-iter", type=int, default=1000, help="linear-model iteration cap"
    )
    p.add_argument("--model-seed", type=int, default=0, help="model RNG seed")
    hyper = [
        ("--lgr-learning-rate", float, "lgr step size (default: 0.1)"),
        ("--lgr-l2", float, "lgr L2 strength (default: 0)"),
        ("--svm-learning-rate", float, "svm step size (default: 0.1)"),
        ("--svm-l2", float, "svm L2 strength (default: 1e-3)"),
        ("--rf-trees", int, "forest size (default: 100)"),
        ("--rf-max-depth", int, "forest tree depth (default: 8)"),
        ("--gbt-rounds", int, "boosting rounds (default: 100)"),
        ("--gbt-max-depth", int, "boosting tree depth (default: 3)"),
        ("--gbt-shrinkage", float, "boosting shrinkage (default: 0.1)"),
        ("--gbt-subsample", float, "boosting row subsample (default: 1.0)"),
    ]
    for flag, kind, text in hyper:
        p.add_argument(flag, type=kind, default=None, help=text)
    p.add_argument(
        "--svm-loss", choices=("hinge", "log"), default=None,
        help="svm objective (default: hinge)",
    )
    p.add_argument(
        "--rf-criterion", choices=("gini", "entropy"), default=None,
        help="forest split impurity (default: gini)",
    )
    p.set_defaults(func=cmd_run)
    subparsers["run"] = p

    return parser, subparsers


def cmd_validate(args) -> int:
    path = _resolve_dataset(args.dataset)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PartialAnnotationWarning)
        try:
            result = parse_dataset(path, strict=False)
        except EmptyDatasetError as exc:
            for issue in exc.skipped:
                sys.stderr.write(f"invalid record at {issue}\n")
            raise
    for w in caught:
        if issubclass(w.category, PartialAnnotationWarning):
            sys.stderr.write(f"warning: {w.message}\n")
    if result.skipped:
        for issue in result.skipped:
            sys.stderr.write(f"invalid record at {issue}\n")
        sys.stderr.write(f"{len(result.skipped)} invalid record(s)\n")
        return 2
    d = result.dataset
    n_hate = sum(1 for m in d if m.label.value == "hate")
    sys.stdout.write(
        f"OK: {len(d)} messages ({n_hate} hate, {len(d) - n_hate} nohate), "
        f"premise capacity L={d.premise_capacity}\n"
    )
    return 0


def cmd_stats(args) -> int:
    d = load_dataset(_resolve_dataset(args.dataset))
    report = dataset_stats(d)
    if args.format == "json":
        text = json.dumps(report.to_dict(), indent=2) + "\n"
    else:
        text = report.to_markdown()
    _write_output(text, args.out)
    return 0


def cmd_encode(args) -> int:
    d = load_dataset(_resolve_dataset(args.dataset))
    capacity = args.capacity if args.capacity is not None else d.premise_capacity
    spec = EncodingSpec(args.encoding, capacity)
    scores = None
    if spec.two_stage:
        if not args.stage1_scores:
            raise UsageError(
                f"{spec.family} needs --stage1-scores (a JSON object of "
                "message id to score); scores are fold-dependent model "
                "outputs, produced by the run subcommand"
            )
        by_id = json.loads(Path(args.stage1_scores).read_text(encoding="utf-8"))
        missing = [m.id for m in d if m.id not in by_id]
        if missing:
            raise MalformedRecordError(0, f"no stage-1 score for ids {missing[:5]}")
        scores = [float(by_id[m.id]) for m in d]
    elif args.stage1_scores:
        raise UsageError(f"{spec.family} does not take --stage1-scores")
    X = encode_dataset(d, spec, stage1_scores=scores, truncate=args.truncate)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(feature_names(spec) + ["label"])
    for row, label in zip(X, d.labels()):
        cells = [str(int(v)) if v == int(v) else repr(float(v)) for v in row]
        writer.writerow(cells + [label])
    _write_output(buffer.getvalue(), args.out)
    return 0


def cmd_synth(args) -> int:
    cfg = GeneratorConfig(
        mode=args.mode,
        n_hateful=args.n_hate,
        n_nonhateful=args.n_nohate,
        seed=args.seed,
        max_premises=args.max_premises,
        hateful_premise_mean=args.premise_mean_hate,
        hateful_premise_std=args.premise_std_hate,
        nonhateful_premise_mean=args.premise_mean_nohate,
        nonhateful_premise_std=args.premise_std_nohate,
        ensure_hateful_component=args.ensure_hateful_component,
    )
    _write_output(dataset_to_jsonl(generate(cfg)), args.out)
    return 0


def _parse_encodings(text: str) -> tuple[str, ...]:
    if text.strip() == "all":
        return FAMILIES
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    unknown = [n for n in names if n not in FAMILIES]
    if unknown:
        raise UsageError(f"unknown encodings {unknown}; valid: {list(FAMILIES)}")
    if not names:
        raise UsageError("empty --encodings")
    return names


def _parse_models(text: str, args) -> tuple[ModelSpec, ...]:
    if text.strip() == "all":
        families = MODEL_ORDER
    else:
        names = [part.strip() for part in text.split(",") if part.strip()]
        if not names:
            raise UsageError("empty --models")
        unknown = [n for n in names if n not in _MODEL_ALIASES]
        if unknown:
            raise UsageError(
                f"unknown models {unknown}; valid: {sorted(_MODEL_ALIASES)}"
            )
        families = [_MODEL_ALIASES[n] for n in names]
    per_family = {
        "lgr": dict(
            learning_rate=args.lgr_learning_rate, regularization=args.lgr_l2
        ),
        "svm": dict(
            learning_rate=args.svm_learning_rate,
            regularization=args.svm_l2,
            loss=args.svm_loss,
        ),
        "rforest": dict(
            tree_count=args.rf_trees,
            max_depth=args.rf_max_depth,
            criterion=args.rf_criterion,
        ),
        "gbt": dict(
            tree_count=args.gbt_rounds,
            max_depth=args.gbt_max_depth,
            learning_rate=args.gbt_shrinkage,
            subsample=args.gbt_subsample if args.gbt_subsample is not None else 1.0,
        ),
    }
    specs = []
    seen = set()
    for family in families:
        if family in seen:
            continue
        seen.add(family)
        specs.append(
            ModelSpec(
                family=family,
                max_iter=args.max_iter,
                seed=args.model_seed,
                **per_family[family],
            )
        )
    return tuple(specs)


def cmd_run(args) -> int:
    if not args.dataset:
        raise UsageError("run needs --dataset (on the command line or in --config)")
    try:
        cfg = ExperimentConfig(
            encodings=_parse_encodings(args.encodings),
            models=_parse_models(args.models, args),
            k=args.k,
            seed=args.seed,
            inner_cv=args.inner_cv,
            hard_stage1=args.hard_stage1,
            sample_std=args.sample_std,
            jobs=args.jobs,
            dataset=args.dataset,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    d = load_dataset(_resolve_dataset(args.dataset))
    report = run_grid(d, cfg)
    _write_output(emit_report(report, args.format), args.out)
    return 0


def _apply_config_file(argv, args, subparsers) -> argparse.Namespace | None:
    config_path = getattr(args, "config", None)
    if not config_path:
        return None
    try:
        values = json.loads(Path(config_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {config_path}: {exc}") from exc
    if not isinstance(values, dict):
        raise UsageError("config file must hold a JSON object")
    sub = subparsers[args.command]
    valid = {a.dest for a in sub._actions}
    unknown = [k for k in values if k not in valid]
    if unknown:
        raise UsageError(f"unknown config keys {unknown}")
    fresh_parser, fresh_subs = build_parser()
    fresh_subs[args.command].set_defaults(**values)
    return fresh_parser.parse_args(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, subparsers = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        reparsed = _apply_config_file(argv, args, subparsers)
        if reparsed is not None:
            args = reparsed
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except _DATA_ERRORS as exc:
        sys.stderr.write(f"data error: {exc}\n")
        return 2
    except Exception as exc:  # noqa: BLE001 - map anything else to exit 3
        sys.stderr.write(f"runtime error: {type(exc).__name__}: {exc}\n")
        return 3


def console_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
