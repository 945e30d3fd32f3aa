"""Shared fixtures: cached expansions and derived constants.

Expansion is deterministic, so tests share one CFData per (d, depth)
and one ShiftConstants per d.  Hypothesis deadlines are disabled: exact
rational arithmetic has high variance per example, not per test.
"""

from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import settings

from ostro import cfrac

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")


@lru_cache(maxsize=None)
def _expand(d: Fraction, depth: int):
    return cfrac.expand(d, depth)


@lru_cache(maxsize=None)
def _constants(d: Fraction, depth: int):
    return cfrac.derive_shift_constants(_expand(d, depth))


@pytest.fixture(scope="session")
def cf_of():
    def get(d, depth=64):
        return _expand(Fraction(d), depth)

    return get


@pytest.fixture(scope="session")
def sc_of():
    def get(d, depth=64):
        return _constants(Fraction(d), depth)

    return get
