import logging
import os

import pytest

from hkernels.util import DEFAULT_PATH_BUDGET, force_delete_path, path_budget, setup_logging


def test_path_budget(monkeypatch):
    monkeypatch.delenv("HKERNEL_BUDGET", raising=False)
    assert path_budget() == DEFAULT_PATH_BUDGET
    assert path_budget(5) == 5
    monkeypatch.setenv("HKERNEL_BUDGET", "12")
    assert path_budget() == 12
    assert path_budget(3) == 3
    monkeypatch.setenv("HKERNEL_BUDGET", "many")
    with pytest.raises(ValueError):
        path_budget()
    with pytest.raises(ValueError):
        path_budget(0)


def test_setup_logging_adds_one_handler():
    package_logger = logging.getLogger("hkernels")
    before = list(package_logger.handlers)
    try:
        setup_logging(logging.INFO)
        setup_logging(logging.DEBUG)
        added = [h for h in package_logger.handlers if h not in before]
        assert len(added) <= 1
        assert package_logger.level == logging.DEBUG
    finally:
        for handler in package_logger.handlers[:]:
            if handler not in before:
                package_logger.removeHandler(handler)
        package_logger.setLevel(logging.NOTSET)


def test_force_delete_path(tmp_path):
    directory = os.path.join(tmp_path, "bundle")
    os.makedirs(os.path.join(directory, "inner"))
    force_delete_path(directory)
    assert not os.path.exists(directory)
    single = os.path.join(tmp_path, "state.json")
    with open(single, "w") as f:
        f.write("{}")
    force_delete_path(single)
    assert not os.path.exists(single)
    force_delete_path(single)
