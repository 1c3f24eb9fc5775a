"""Shared test helpers: a programmable stand-in for the random generator."""

import numpy as np
import pytest


class FakeRng:
    """Deterministic rng double whose draws are scripted per call.

    Each entry of ``uniform`` / ``normal`` / ``ints`` is consumed by one call
    to random() / standard_normal() / integers() and broadcast to the
    requested shape. When a list runs out, its last value repeats.
    """

    def __init__(self, uniform=(0.5,), normal=(0.0,), ints=(0,)):
        self._uniform = list(uniform)
        self._normal = list(normal)
        self._ints = list(ints)

    @staticmethod
    def _pop(queue):
        return queue.pop(0) if len(queue) > 1 else queue[0]

    @staticmethod
    def _fill(value, size):
        if size is None:
            return float(value)
        return np.full(size, float(value))

    def random(self, size=None):
        return self._fill(self._pop(self._uniform), size)

    def standard_normal(self, size=None):
        return self._fill(self._pop(self._normal), size)

    def integers(self, *args, **kwargs):
        return int(self._pop(self._ints))


@pytest.fixture
def fake_rng_cls():
    return FakeRng
