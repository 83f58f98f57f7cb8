import pytest
from hypothesis import HealthCheck, settings

from kfh.models import knot_models

settings.register_profile(
    "kfh", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("kfh")


@pytest.fixture(scope="session")
def models():
    return dict(knot_models(3))
