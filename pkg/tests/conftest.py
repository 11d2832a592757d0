"""Shared fixtures for the tnn-cluster test suite."""

import pytest

from tnn_cluster.config import TnnConfig, validate
from tnn_cluster.data import synth_two_tone

SIGNAL_LENGTH = 64


def two_tone_config(seed: int = 0, **overrides):
    """Validated default config for the two-tone fixture (L=64, C=2)."""
    return validate(TnnConfig(signal_length=SIGNAL_LENGTH, num_clusters=2, rng_seed=seed, **overrides))


@pytest.fixture(scope="session")
def two_tone_train():
    return synth_two_tone(50, SIGNAL_LENGTH, seed=0)


@pytest.fixture(scope="session")
def two_tone_test():
    return synth_two_tone(50, SIGNAL_LENGTH, seed=1)
