# core/file_reader.py
import json
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np

from common.errors import InputError, PolytopeError
from common.logger import log
from common.models import Halfspace, Polytope
from core.polytope import cube_section, from_halfspaces


class FileReader:
    """
    Loads polytopes from the two JSON input formats:
      {"dim": n, "halfspaces": [{"normal": [..], "offset": r}, ...]}
      {"N": N, "basis": [[..], ...]}
    Malformed files raise InputError; geometric problems propagate as PolytopeError.
    """

    def __init__(self, path):
        self.path = Path(path)

    def _load_json(self) -> Dict[str, Any]:
        if not self.path.exists():
            raise InputError(f"Input file not found: {self.path}")
        try:
            with open(self.path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"Invalid JSON in {self.path}: {e}") from e
        if not isinstance(data, dict):
            raise InputError(f"{self.path}: top-level JSON value must be an object")
        return data

    def _parse_halfspaces(self, data: Dict[str, Any]) -> List[Halfspace]:
        """Safely converts the halfspace list, checking every normal against the declared dimension."""
        raw = data["halfspaces"]
        if not isinstance(raw, list) or not raw:
            raise InputError(f"{self.path}: 'halfspaces' must be a non-empty list")
        dim = data.get("dim")

        halfspaces = []
        for i, item in enumerate(raw):
            try:
                normal = np.asarray(item["normal"], dtype=float)
                offset = float(item["offset"])
            except (KeyError, TypeError, ValueError) as e:
                raise InputError(f"{self.path}: halfspace {i} is malformed ({e})") from e
            if normal.ndim != 1:
                raise InputError(f"{self.path}: halfspace {i} normal must be a flat list")
            if dim is not None and len(normal) != dim:
                raise InputError(f"{self.path}: halfspace {i} has {len(normal)} coordinates, expected dim = {dim}")
            halfspaces.append(Halfspace(normal=normal, offset=offset))

        if len({len(h.normal) for h in halfspaces}) != 1:
            raise InputError(f"{self.path}: halfspace normals differ in length")
        return halfspaces

    def _parse_section(self, data: Dict[str, Any]) -> Tuple[int, np.ndarray]:
        try:
            N = int(data["N"])
            basis = np.asarray(data["basis"], dtype=float)
        except (TypeError, ValueError) as e:
            raise InputError(f"{self.path}: malformed section ({e})") from e
        if basis.ndim != 2:
            raise InputError(f"{self.path}: 'basis' must be a list of rows")
        if not 1 <= basis.shape[0] <= N <= 8:
            raise InputError(f"{self.path}: need 1 <= n <= N <= 8, got n = {basis.shape[0]}, N = {N}")
        return N, basis

    def read_arrays(self, *keys: str) -> Dict[str, np.ndarray]:
        """Named 2-D float arrays, e.g. {"vectors": [[..], ..]} for the lemma commands."""
        data = self._load_json()
        arrays = {}
        for key in keys:
            if key not in data:
                raise InputError(f"{self.path}: missing key '{key}'")
            try:
                arr = np.asarray(data[key], dtype=float)
            except (TypeError, ValueError) as e:
                raise InputError(f"{self.path}: '{key}' is not numeric ({e})") from e
            if arr.ndim != 2 or not np.all(np.isfinite(arr)):
                raise InputError(f"{self.path}: '{key}' must be a finite list of rows")
            arrays[key] = arr
        return arrays

    def read(self) -> Polytope:
        data = self._load_json()
        if "halfspaces" in data:
            log.debug(f"Reading H-representation from {self.path}")
            return from_halfspaces(self._parse_halfspaces(data))
        if "basis" in data and "N" in data:
            N, basis = self._parse_section(data)
            log.debug(f"Reading {basis.shape[0]}-dimensional section of the {N}-cube from {self.path}")
            return cube_section(N, basis)
        raise InputError(f"{self.path}: expected 'halfspaces' or 'N' and 'basis'")


def read_polytope(path) -> Polytope:
    """Loads either input format, logging files that describe no valid polytope."""
    try:
        return FileReader(path).read()
    except InputError:
        raise
    except PolytopeError as e:
        log.error(f"{path} does not describe a valid polytope: {e}")
        raise
