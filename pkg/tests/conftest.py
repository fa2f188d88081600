import pytest

from entmac import _kernels


@pytest.fixture
def force_backend():
    """Switch the kernel backend inside a test, restoring auto-select after."""
    yield _kernels.use_backend
    _kernels.use_backend(None)
