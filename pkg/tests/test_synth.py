import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argstruct.data import ComponentHate, MessageLabel, validate_message
from argstruct.synth import GeneratorConfig, InvalidConfigError, generate


def test_deterministic_per_seed():
    cfg = GeneratorConfig(mode="table1", n_hateful=20, n_nonhateful=15, seed=5)
    assert generate(cfg) == generate(cfg)


def test_different_seeds_differ():
    a = generate(GeneratorConfig(mode="table1", n_hateful=30, n_nonhateful=30, seed=0))
    b = generate(GeneratorConfig(mode="table1", n_hateful=30, n_nonhateful=30, seed=1))
    assert a != b


@pytest.mark.parametrize("mode", ("table1", "separable"))
def test_generated_messages_are_valid(mode):
    d = generate(GeneratorConfig(mode=mode, n_hateful=40, n_nonhateful=30, seed=2))
    for m in d:
        validate_message(m)
    assert d.class_counts[MessageLabel.HATEFUL] == 40
    assert d.class_counts[MessageLabel.NON_HATEFUL] == 30


def test_ids_unique():
    d = generate(GeneratorConfig(mode="table1", n_hateful=50, n_nonhateful=50, seed=3))
    ids = [m.id for m in d]
    assert len(set(ids)) == len(ids)


def test_table1_nonhateful_components_unannotated():
    d = generate(GeneratorConfig(mode="table1", n_hateful=30, n_nonhateful=40, seed=4))
    for m in d:
        if m.label is MessageLabel.NON_HATEFUL:
            assert all(c.hate is ComponentHate.UNANNOTATED for c in m.components)
        else:
            assert all(c.hate is not ComponentHate.UNANNOTATED for c in m.components)


def test_separable_mode_plants_the_rule():
    d = generate(GeneratorConfig(mode="separable", n_hateful=60, n_nonhateful=60, seed=6))
    for m in d:
        has_hateful_component = any(
            c.hate is ComponentHate.HATEFUL for c in m.components
        )
        assert has_hateful_component == (m.label is MessageLabel.HATEFUL)


def test_separable_mode_is_stump_separable():
    # the conclusion hatefulness bit alone reproduces the gold label
    d = generate(GeneratorConfig(mode="separable", n_hateful=40, n_nonhateful=40, seed=3))
    for m in d:
        stump = m.conclusion.hate is ComponentHate.HATEFUL
        assert stump == (m.label is MessageLabel.HATEFUL)


def test_hateful_component_guarantee_flag():
    cfg = GeneratorConfig(
        mode="table1", n_hateful=80, n_nonhateful=10, seed=7,
        ensure_hateful_component=True,
    )
    for m in generate(cfg):
        if m.label is MessageLabel.HATEFUL:
            assert any(c.hate is ComponentHate.HATEFUL for c in m.components)


def test_premise_counts_respect_bounds():
    cfg = GeneratorConfig(mode="table1", n_hateful=200, n_nonhateful=200, seed=8,
                          max_premises=3)
    d = generate(cfg)
    counts = [m.premise_count for m in d]
    assert min(counts) >= 1 and max(counts) <= 3


def test_premise_count_means_near_targets():
    d = generate(GeneratorConfig(mode="table1", n_hateful=3000, n_nonhateful=3000, seed=9))
    hateful = [m.premise_count for m in d if m.label is MessageLabel.HATEFUL]
    nonhateful = [m.premise_count for m in d if m.label is MessageLabel.NON_HATEFUL]
    assert abs(np.mean(hateful) - 1.789) < 0.15
    assert abs(np.mean(nonhateful) - 2.654) < 0.15


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(mode="uniform", n_hateful=5, n_nonhateful=5),
        dict(mode="table1", n_hateful=0, n_nonhateful=5),
        dict(mode="table1", n_hateful=5, n_nonhateful=0),
        dict(mode="table1", n_hateful=5, n_nonhateful=5, hateful_premise_std=-1.0),
        dict(mode="table1", n_hateful=5, n_nonhateful=5, max_premises=0),
    ],
)
def test_invalid_configs_rejected(kwargs):
    with pytest.raises(InvalidConfigError):
        GeneratorConfig(**kwargs)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10 ** 6), mode=st.sampled_from(["table1", "separable"]))
def test_generation_always_valid(seed, mode):
    d = generate(GeneratorConfig(mode=mode, n_hateful=6, n_nonhateful=6, seed=seed))
    for m in d:
        validate_message(m)
    assert d.premise_capacity >= 1
