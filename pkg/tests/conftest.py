import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_collection_modifyitems(config, items):
    if os.environ.get("FUSION_RUN_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="long-running; set FUSION_RUN_LONG=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
