from __future__ import annotations

import logging
import os
import shutil
from typing import TYPE_CHECKING

import tqdm

if TYPE_CHECKING:
    from typing import Iterable, Optional

logger = logging.getLogger(__name__)

DEFAULT_PATH_BUDGET = 10**7
BUDGET_ENV_VAR = "HKERNEL_BUDGET"
LOG_FORMAT = "[%(asctime)s] %(levelname)s [%(name)s.%(funcName)s:%(lineno)d] %(message)s"


def setup_logging(level=logging.INFO):
    """Attach a stderr handler to the package logger. Calling it again only changes the level."""
    package_logger = logging.getLogger("hkernels")
    package_logger.setLevel(level)
    if any(getattr(h, "_hkernels", False) for h in package_logger.handlers):
        return
    handler = logging.StreamHandler()
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._hkernels = True  # type: ignore[attr-defined]
    package_logger.addHandler(handler)


def path_budget(budget: Optional[int] = None) -> int:
    """Resolve the path-search expansion budget: explicit value, then $HKERNEL_BUDGET, then the default."""
    if budget is not None:
        if budget <= 0:
            raise ValueError("Path budget must be a positive integer")
        return budget
    env_value = os.environ.get(BUDGET_ENV_VAR)
    if env_value:
        try:
            value = int(env_value)
        except ValueError:
            raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {env_value!r}")
        if value <= 0:
            raise ValueError(f"{BUDGET_ENV_VAR} must be positive, got {value}")
        logger.debug("Using path budget %d from environment", value)
        return value
    return DEFAULT_PATH_BUDGET


def force_delete_path(path):
    if os.path.exists(path):
        if os.path.isfile(path):
            os.remove(path)
        elif os.path.isdir(path):
            shutil.rmtree(path)


def progress(iterable: Iterable, total: Optional[int] = None, desc: Optional[str] = None, enabled: bool = True):
    return tqdm.tqdm(iterable, total=total, desc=desc, disable=not enabled, leave=False)
