import pytest
from hypothesis import HealthCheck, settings

import ogroup as og

settings.register_profile(
    "ci",
    max_examples=40,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def s3():
    return og.build_named("symmetric", 3)


@pytest.fixture(scope="session")
def c6():
    return og.build_named("cyclic", 6)


@pytest.fixture(scope="session")
def c4():
    return og.build_named("cyclic", 4)


@pytest.fixture(scope="session")
def v4():
    return og.build_named("klein4")


@pytest.fixture(scope="session")
def a4():
    return og.build_named("alternating", 4)


@pytest.fixture(scope="session")
def a3_in_s3(s3):
    return og.generated_subgroup(s3, [3])
