"""Fixed-length feature encodings of annotated messages.

Eight families. Layout is always: structure block, then checkworthiness
block (if any), then hatefulness block (if any). Within a block, slots run
premise-0 .. premise-(L-1), then the conclusion slot where the family
includes it. The two-stage (c-given-p) families instead produce
[stage-1 score, conclusion-present] plus, for the -cw variant, the
conclusion's checkworthiness one-hot.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .data import CW_ORDER, ComponentHate, Dataset, Message


class _Layout(NamedTuple):
    conclusion: bool
    cw: bool
    hs: bool
    two_stage: bool


_LAYOUTS: dict[str, _Layout] = {
    "arg-str": _Layout(True, False, False, False),
    "arg-str-p": _Layout(False, False, False, False),
    "arg-str-c-given-p": _Layout(True, False, False, True),
    "arg-str-cw": _Layout(True, True, False, False),
    "arg-str-p-cw": _Layout(False, True, False, False),
    "arg-str-c-given-p-cw": _Layout(True, True, False, True),
    "arg-str-hs": _Layout(True, False, True, False),
    "arg-str-cw-hs": _Layout(True, True, True, False),
}

FAMILIES: tuple[str, ...] = (
    "arg-str",
    "arg-str-p",
    "arg-str-c-given-p",
    "arg-str-cw",
    "arg-str-p-cw",
    "arg-str-c-given-p-cw",
    "arg-str-hs",
    "arg-str-cw-hs",
)

# stage-1 of a two-stage family trains on the premise-only counterpart
_STAGE_ONE: dict[str, str] = {
    "arg-str-c-given-p": "arg-str-p",
    "arg-str-c-given-p-cw": "arg-str-p-cw",
}


class PremiseOverflowError(Exception):
    def __init__(self, message_id: str, count: int, capacity: int):
        self.message_id = message_id
        super().__init__(
            f"message {message_id!r} has {count} premises, capacity is {capacity}"
        )


class MissingStageOneScoreError(Exception):
    pass


class UnexpectedStageOneScoreError(Exception):
    pass


@dataclass(frozen=True)
class EncodingSpec:
    """An encoding family plus the premise slot capacity L."""

    family: str
    capacity: int

    def __post_init__(self):
        if self.family not in _LAYOUTS:
            raise ValueError(f"unknown encoding family {self.family!r}")
        if self.capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {self.capacity}")

    @property
    def layout(self) -> _Layout:
        return _LAYOUTS[self.family]

    @property
    def two_stage(self) -> bool:
        return self.layout.two_stage

    @property
    def length(self) -> int:
        return encoding_length(self)


def encoding_length(spec: EncodingSpec) -> int:
    lay, L = spec.layout, spec.capacity
    if lay.two_stage:
        return 2 + (3 if lay.cw else 0)
    slots = L + (1 if lay.conclusion else 0)
    return slots * (4 if lay.cw else 1) + ((L + 1) if lay.hs else 0)


def stage_one_spec(spec: EncodingSpec) -> EncodingSpec:
    """Premise-only spec whose predictions feed a two-stage encoding."""
    if not spec.two_stage:
        raise ValueError(f"{spec.family} is not a two-stage family")
    return EncodingSpec(_STAGE_ONE[spec.family], spec.capacity)


def _checked_premises(m: Message, L: int, truncate: bool):
    premises = m.premises
    if len(premises) > L:
        if not truncate:
            raise PremiseOverflowError(m.id, len(premises), L)
        premises = premises[:L]
    return premises


def structure_vector(
    m: Message, L: int, include_conclusion: bool, truncate: bool = False
) -> np.ndarray:
    """Presence one-hot over premise slots (filled left to right), plus an
    always-1 conclusion slot when ``include_conclusion``."""
    premises = _checked_premises(m, L, truncate)
    out = np.zeros(L + (1 if include_conclusion else 0))
    out[: len(premises)] = 1.0
    if include_conclusion:
        out[L] = 1.0
    return out


def cw_block(
    m: Message, L: int, include_conclusion: bool, truncate: bool = False
) -> np.ndarray:
    """Per-slot (NFS, UFS, CFS) one-hots in structure-slot order; empty slots
    stay all-zero."""
    premises = _checked_premises(m, L, truncate)
    slots = L + (1 if include_conclusion else 0)
    out = np.zeros(3 * slots)
    for i, p in enumerate(premises):
        out[3 * i + CW_ORDER.index(p.cw)] = 1.0
    if include_conclusion:
        out[3 * L + CW_ORDER.index(m.conclusion.cw)] = 1.0
    return out


def hs_block(m: Message, L: int, truncate: bool = False) -> np.ndarray:
    """L+1 binary entries, 1 iff the slot's component is annotated hateful.
    Non-hateful, unannotated, and empty slots encode as 0."""
    premises = _checked_premises(m, L, truncate)
    out = np.zeros(L + 1)
    for i, p in enumerate(premises):
        if p.hate is ComponentHate.HATEFUL:
            out[i] = 1.0
    if m.conclusion.hate is ComponentHate.HATEFUL:
        out[L] = 1.0
    return out


def encode(
    m: Message,
    spec: EncodingSpec,
    stage1_score: float | None = None,
    truncate: bool = False,
) -> np.ndarray:
    """Encode one message under ``spec``.

    ``stage1_score`` (the premise-model's hateful-class probability) must be
    given exactly for the two-stage families.
    """
    lay, L = spec.layout, spec.capacity
    if lay.two_stage:
        if stage1_score is None:
            raise MissingStageOneScoreError(
                f"{spec.family} requires a stage-1 score for message {m.id!r}"
            )
        if not 0.0 <= stage1_score <= 1.0:
            raise ValueError(f"stage-1 score must be in [0, 1], got {stage1_score}")
        head = np.array([float(stage1_score), 1.0])
        if not lay.cw:
            return head
        concl_cw = np.zeros(3)
        concl_cw[CW_ORDER.index(m.conclusion.cw)] = 1.0
        return np.concatenate([head, concl_cw])
    if stage1_score is not None:
        raise UnexpectedStageOneScoreError(
            f"{spec.family} does not take a stage-1 score"
        )
    parts = [structure_vector(m, L, lay.conclusion, truncate)]
    if lay.cw:
        parts.append(cw_block(m, L, lay.conclusion, truncate))
    if lay.hs:
        parts.append(hs_block(m, L, truncate))
    return np.concatenate(parts)


def feature_names(spec: EncodingSpec) -> list[str]:
    """Column names matching the encode layout (used by the encode CSV output)."""
    lay, L = spec.layout, spec.capacity
    if lay.two_stage:
        names = ["stage1", "concl"]
        if lay.cw:
            names += [f"concl_{cw.value}" for cw in CW_ORDER]
        return names
    slots = [f"p{i}" for i in range(L)] + (["concl"] if lay.conclusion else [])
    names = list(slots)
    if lay.cw:
        names += [f"{slot}_{cw.value}" for slot in slots for cw in CW_ORDER]
    if lay.hs:
        names += [f"{slot}_hs" for slot in [f"p{i}" for i in range(L)] + ["concl"]]
    return names


def encode_dataset(
    d: Dataset,
    spec: EncodingSpec,
    stage1_scores=None,
    truncate: bool = False,
) -> np.ndarray:
    """Stack per-message encodings into an (n, encoding_length) design matrix."""
    if spec.two_stage:
        if stage1_scores is None:
            raise MissingStageOneScoreError(
                f"{spec.family} requires stage-1 scores for the whole dataset"
            )
        scores = np.asarray(stage1_scores, dtype=float)
        if scores.shape != (len(d),):
            raise ValueError(
                f"need {len(d)} stage-1 scores, got shape {scores.shape}"
            )
        rows = [
            encode(m, spec, stage1_score=float(s), truncate=truncate)
            for m, s in zip(d.messages, scores)
        ]
    else:
        if stage1_scores is not None:
            raise UnexpectedStageOneScoreError(
                f"{spec.family} does not take stage-1 scores"
            )
        rows = [encode(m, spec, truncate=truncate) for m in d.messages]
    return np.vstack(rows)
