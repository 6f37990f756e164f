import hypothesis
import pytest

from fastqaoa import _kernels

hypothesis.settings.register_profile(
    "default", deadline=None, max_examples=50, derandomize=True
)
hypothesis.settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    # Pay the JIT cost once, before any timed or allocation-sensitive test.
    _kernels.warm_up()
