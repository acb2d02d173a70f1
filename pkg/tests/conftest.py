from __future__ import annotations

import pytest

from cipscan.detectors import Analysis
from oracles import FIXTURES

_CACHE: dict[tuple[str, ...], Analysis] = {}


def build(*names: str) -> Analysis:
    """Analysis over bundled fixture directories, cached per session."""
    key = tuple(names)
    if key not in _CACHE:
        _CACHE[key] = Analysis.build([FIXTURES / n for n in names])
    return _CACHE[key]


@pytest.fixture
def analysis_of():
    return build


@pytest.fixture
def write_java(tmp_path):
    def write(name: str, text: str):
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        return path

    return write
