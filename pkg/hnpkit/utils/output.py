import logging
from pathlib import Path

from hnpkit.errors import UsageError

logger = logging.getLogger(__name__)


def ensure_output_dir(path: str | Path) -> Path:
    """Creates the designated output directory if it doesn't already exist."""
    directory = Path(path).resolve()
    if directory.is_dir():
        logger.info(f"Output directory {directory} already exists")
    else:
        directory.mkdir(parents=True, exist_ok=True)
        logger.info(f"Created output directory {directory}")
    return directory


def resolve_output(directory: str | Path, name: str) -> Path:
    """Path of `name` inside `directory`; anything escaping the directory is refused."""
    root = ensure_output_dir(directory)
    target = (root / name).resolve()
    if root != target.parent and root not in target.parents:
        raise UsageError(f"refusing to write {name!r} outside {root}")
    return target
