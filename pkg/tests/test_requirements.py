"""
Every declared requirement is used by the package, its entry point or its tests.
"""

import re
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent


def declared_requirements():
    names = []
    for line in (ROOT / "requirements.txt").read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            names.append(re.split(r"[\[<>=!~ ]", line, maxsplit=1)[0].lower())
    return names


def sources():
    tests = sorted(p for p in (ROOT / "tests").rglob("*.py") if p.name != Path(__file__).name)
    files = [ROOT / "hsac.py", *sorted((ROOT / "hsac").rglob("*.py")), *tests]
    return "\n".join(path.read_text(encoding="utf-8") for path in files)


USAGE = {
    "numpy": r"^import numpy as np",
    "mcp": r"^from mcp\.",
    "pytest": r"^import pytest",
    "pytest-asyncio": r"pytest_plugins = \[\"pytest_asyncio\"\]",
    "uvicorn": r"transport=\"streamable-http\"",
}


def test_requirements_are_the_used_stack():
    assert sorted(declared_requirements()) == sorted(USAGE)


@pytest.mark.parametrize("requirement", sorted(USAGE))
def test_requirement_is_used(requirement):
    assert re.search(USAGE[requirement], sources(), re.MULTILINE), f"{requirement} is declared but unused"


@pytest.mark.parametrize("tool", ["pylint", "mypy"])
def test_no_unused_dev_tooling(tool):
    assert tool not in declared_requirements()
