import pytest

import config
from helpers.actions import e_k_g, sphere_action
from helpers.graphs import complete, cycle

_TUNABLES = [name for name in vars(config)
             if not name.startswith("_") and isinstance(getattr(config, name), (bool, int, str))]


@pytest.fixture(autouse=True)
def restore_config(tmp_path):
    """Every test starts from the shipped config and writes failures to a scratch log."""
    saved = {name: getattr(config, name) for name in _TUNABLES}
    config.error_log_path = str(tmp_path / "hindlab_errors.txt")
    yield
    for name, value in saved.items():
        setattr(config, name, value)


@pytest.fixture
def circle():
    return sphere_action(1)


@pytest.fixture
def two_sphere():
    return sphere_action(2)


@pytest.fixture
def e1_z3():
    return e_k_g(3, 1)


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def c5():
    return cycle(5)
