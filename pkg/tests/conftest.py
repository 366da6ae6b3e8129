import pytest

from ethica_ar.vision import DetectionParams, default_marker_spec


@pytest.fixture(scope="session")
def spec():
    return default_marker_spec()


@pytest.fixture()
def params():
    return DetectionParams()
