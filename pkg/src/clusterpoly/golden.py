"""Access to the reference data shipped in ``clusterpoly/data``.

Set ``CP_GOLDEN_DIR`` to read the JSON files from another directory instead
(useful for negative controls with deliberately corrupted data).
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

ENV_VAR = "CP_GOLDEN_DIR"

CASE_FILES = {1: "case1.json", 2: "case2.json", 3: "case3.json", 4: "case4.json", 5: "case5.json", 6: "case6.json"}
GP_FILES = {7: "gp_t7.json", 9: "gp_t9.json", 11: "gp_t11.json"}


class GoldenDataError(OSError):
    pass


def golden_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(str(resources.files("clusterpoly") / "data"))


def load(name: str) -> dict:
    path = golden_dir() / name
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise GoldenDataError(f"cannot read golden file {path}: {exc}") from exc


def matrix(name: str) -> list[list[int]]:
    return load(name)["matrix"]


def case_matrix(seed: int) -> list[list[int]]:
    """Normal matrix displayed for seed t1..t6 (t0 lives in eq2_2.json)."""
    if seed == 0:
        return matrix("eq2_2.json")
    return matrix(CASE_FILES[seed])


def gp_matrix(seed: int) -> list[list[int]]:
    return matrix(GP_FILES[seed])
