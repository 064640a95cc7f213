import pytest

from blocknim import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # Compile the jitted kernels once so timed tests measure the solver,
    # not LLVM.
    _kernels.warm_up()
