# utils/config.py

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}")
    if value < 0:
        raise RuntimeError(f"{name} must be non-negative, got {value}")
    return value


THREADS = max(1, _int_setting("LGL_THREADS", 1))
BUDGET = _int_setting("LGL_BUDGET", 1_000_000)
SEED = _int_setting("LGL_SEED", 0)
CASES = _int_setting("LGL_CASES", 200)

# fixtures/ ships next to app.py
FIXTURES_DIR = Path(os.getenv("LGL_FIXTURES") or Path(__file__).resolve().parent.parent / "fixtures")

LOG_LEVEL = os.getenv("LGL_LOG_LEVEL", "WARNING").upper()
