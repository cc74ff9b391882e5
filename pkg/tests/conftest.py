import pytest

from torsioncert.scalar import set_zero_tolerance, zero_tolerance

_DEFAULT_TOL = zero_tolerance()


@pytest.fixture(autouse=True)
def _restore_zero_tolerance():
    # the CLI sets the process-wide tolerance; keep tests independent
    yield
    set_zero_tolerance(_DEFAULT_TOL)
