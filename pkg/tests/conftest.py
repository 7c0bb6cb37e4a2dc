import sys
from pathlib import Path

import pytest
from hypothesis import settings

from rabicycle import CycleError, run_cycle

sys.path.insert(0, str(Path(__file__).parent))

from suite_helpers import PRESET_GROUPS, make_spec  # noqa: E402

settings.register_profile("suite", deadline=None, max_examples=25)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def preset_cycles():
    """CycleResult (or the CycleError) for every preset cycle.

    Keyed by (knob, method, alpha, xi1).  Computed once per session; the
    acceptance tests read their grid properties off this map.
    """
    out = {}
    for knob, methods, alphas, grid in PRESET_GROUPS:
        for method in methods:
            for alpha in alphas:
                for xi1 in grid:
                    spec = make_spec(knob, xi1, alpha, method)
                    try:
                        out[(knob, method, alpha, xi1)] = run_cycle(spec)
                    except CycleError as err:
                        out[(knob, method, alpha, xi1)] = err
    return out
