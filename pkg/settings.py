import time
from concurrent.futures import ThreadPoolExecutor

from decouple import config

from errors import ResourceCapExceeded

# Session defaults
PRIME = config("VIRTUA_PRIME", default=101, cast=int)
SEED = config("VIRTUA_SEED", default=0, cast=int)
WORKERS = config("VIRTUA_WORKERS", default=1, cast=int)
LOG_LEVEL = config("VIRTUA_LOG_LEVEL", default="WARNING")

# Resource caps
MAX_VARIABLES = config("VIRTUA_MAX_VARIABLES", default=12, cast=int)
MAX_MATRIX_DIM = config("VIRTUA_MAX_MATRIX_DIM", default=12, cast=int)
MAX_PAIRS = config("VIRTUA_MAX_PAIRS", default=200000, cast=int)
MAX_SECONDS = config("VIRTUA_MAX_SECONDS", default=0.0, cast=float)

SCHEMA = "virtua/1"

_deadline = None


def start_budget(seconds: float = None):
    """Install the wall clock budget for the current run (0 or None = unlimited)"""
    global _deadline
    seconds = MAX_SECONDS if seconds is None else seconds
    _deadline = time.monotonic() + seconds if seconds and seconds > 0 else None


def check_budget():
    if _deadline is not None and time.monotonic() > _deadline:
        raise ResourceCapExceeded("wall clock budget exhausted")


def check_variables(n: int):
    if n > MAX_VARIABLES:
        raise ResourceCapExceeded(f"{n} variables exceeds the cap of {MAX_VARIABLES}")


def check_matrix(rows: int, cols: int):
    """Caps the size of the square minors a matrix can have"""
    if min(rows, cols) > MAX_MATRIX_DIM:
        raise ResourceCapExceeded(
            f"matrix {rows}x{cols} exceeds the dimension cap of {MAX_MATRIX_DIM}"
        )


def parallel_map(fn, items, workers: int = None):
    """Order-preserving map, threaded when more than one worker is configured"""
    workers = WORKERS if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
