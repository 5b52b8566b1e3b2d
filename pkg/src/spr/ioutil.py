"""Small I/O helpers: atomic file writes and the canonical float format."""

import os
import tempfile

# All persisted floats use 12 significant digits: exact enough for 1e-9
# round trips, short enough to stay human-readable.
FLOAT_DIGITS = 12


def fmt_float(value: float) -> str:
    return format(float(value), f".{FLOAT_DIGITS}g")


def atomic_write_text(path: str, text: str) -> None:
    """Write `text` to `path` via a same-directory temp file and rename.

    Readers never observe a partially written file.
    """
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
