"""Small shared runtime helpers."""

import os


def worker_count() -> int:
    """Thread cap for embarrassingly parallel loops.

    Controlled by the HORNCODE_THREADS environment variable; defaults to 1
    (serial).  Results are always merged by index, so the count never
    affects output values.
    """
    raw = os.environ.get("HORNCODE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
