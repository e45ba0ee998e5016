"""Regenerate tests/golden/*.json from the current CLI.

    python tools/make_golden.py
"""

from __future__ import annotations

import contextlib
import io
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from golden_cases import cases  # noqa: E402

from rta.cli import main  # noqa: E402


def render(argv: list[str]) -> tuple[str, int]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main([*argv, "--json"])
    return buf.getvalue(), code


def write_all() -> None:
    out_dir = ROOT / "tests" / "golden"
    out_dir.mkdir(exist_ok=True)
    for name, argv in cases():
        text, code = render(argv)
        (out_dir / f"{name}.json").write_text(text)
        print(f"{name}: exit {code}")


if __name__ == "__main__":
    write_all()
