#!/usr/bin/env python3

import os
import sys
from pathlib import Path

import pytest


def _repo_path() -> str:
    return os.path.dirname(os.path.dirname(os.path.realpath(__file__)))


def _add_python_paths() -> None:
    # make the repo directory available
    sys.path.insert(0, _repo_path())


_add_python_paths()


@pytest.fixture(autouse=True)
def _default_fullspace_cap(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("BARBELL_FULLSPACE_CAP", raising=False)


@pytest.fixture(name="outputs_folder")
def fixture_outputs_folder(tmp_path: Path) -> Path:
    folder = tmp_path / "outputs"
    folder.mkdir()
    return folder
