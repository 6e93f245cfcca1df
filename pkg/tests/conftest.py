import pytest

from ZS_engine.config.precision import configure_precision


@pytest.fixture(autouse=True)
def default_precision():
    # tests that raise the precision must not leak it into the next test
    configure_precision(15)
    yield
    configure_precision(15)
