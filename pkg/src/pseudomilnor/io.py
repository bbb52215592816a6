"""JSON problem descriptions and reports.

Problem files use 1-based basis indices, matching the ``e_1, ..., e_n``
notation::

    {
      "algebra": {"builtin": "rhn", "n": 4},
      "metric": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
      "options": {"tol": 1e-9, "seed": 0, "samples": 200}
    }

A custom algebra is ``{"dim": 3, "brackets": [[i, j, k, c], ...]}`` with
``i < j``, meaning ``[e_i, e_j] += c e_k``.  A previously emitted report is
accepted as input too: its ``"problem"`` block is used.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .errors import InvalidAlgebra, NotSymmetric
from .forms import DEFAULT_TOL
from .lie import LieAlgebra, heisenberg3, rhn

__all__ = ["ProblemSpec", "load_problem", "parse_problem", "parse_algebra", "to_jsonable", "dumps"]


@dataclass
class ProblemSpec:
    algebra: LieAlgebra
    algebra_spec: dict
    metric: Optional[np.ndarray]
    tol: float = DEFAULT_TOL
    seed: int = 0
    samples: int = 200
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra_spec,
            "metric": None if self.metric is None else self.metric.tolist(),
            "options": {"tol": self.tol, "seed": self.seed, "samples": self.samples},
        }


def parse_algebra(spec: Any) -> tuple[LieAlgebra, dict]:
    """Return the algebra and a normalized echo of its description."""
    if isinstance(spec, str):
        name, _, arg = spec.partition(":")
        spec = {"builtin": name}
        if arg:
            spec["n"] = int(arg)
    if not isinstance(spec, dict):
        raise InvalidAlgebra("algebra must be an object")
    builtin = spec.get("builtin")
    if builtin == "rhn":
        n = spec.get("n")
        if not isinstance(n, int) or n < 2:
            raise InvalidAlgebra("rhn needs an integer n >= 2")
        return rhn(n), {"builtin": "rhn", "n": n}
    if builtin == "heisenberg3":
        return heisenberg3(), {"builtin": "heisenberg3"}
    if builtin is not None:
        raise InvalidAlgebra(f"unknown builtin algebra {builtin!r}")
    dim = spec.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise InvalidAlgebra("custom algebra needs an integer dim >= 1")
    raw = spec.get("brackets", [])
    brackets = []
    for entry in raw:
        if len(entry) != 4:
            raise InvalidAlgebra(f"bracket entry must be [i, j, k, c], got {entry!r}")
        i, j, k, c = entry
        if not all(isinstance(v, int) for v in (i, j, k)):
            raise InvalidAlgebra(f"bracket indices must be integers, got {entry!r}")
        if not (1 <= i < j <= dim and 1 <= k <= dim):
            raise InvalidAlgebra(f"bracket indices out of range in {entry!r}")
        brackets.append((i - 1, j - 1, k - 1, float(c)))
    alg = LieAlgebra.from_brackets(dim, brackets, name=spec.get("name"))
    echo = {"dim": dim, "brackets": [[i, j, k, float(c)] for i, j, k, c in raw]}
    if spec.get("name"):
        echo["name"] = spec["name"]
    return alg, echo


def parse_problem(data: dict, require_metric: bool = True) -> ProblemSpec:
    if "problem" in data and "algebra" not in data:
        data = data["problem"]
    if "algebra" not in data:
        raise ValueError("problem needs an 'algebra' entry")
    alg, echo = parse_algebra(data["algebra"])
    metric = data.get("metric")
    if metric is None:
        if require_metric:
            raise ValueError("problem needs a 'metric' entry")
        arr = None
    else:
        arr = np.asarray(metric, dtype=float)
        if arr.shape != (alg.dim, alg.dim):
            raise ValueError(f"metric must be {alg.dim}x{alg.dim}, got shape {arr.shape}")
        if not np.array_equal(arr, arr.T):
            raise NotSymmetric("metric matrix is not symmetric")
    opts = data.get("options") or {}
    return ProblemSpec(
        algebra=alg,
        algebra_spec=echo,
        metric=arr,
        tol=float(opts.get("tol", DEFAULT_TOL)),
        seed=int(opts.get("seed", 0)),
        samples=int(opts.get("samples", 200)),
    )


def load_problem(path: str, require_metric: bool = True) -> ProblemSpec:
    if path == "-":
        import sys

        data = json.load(sys.stdin)
    else:
        with open(path) as fh:
            data = json.load(fh)
    return parse_problem(data, require_metric=require_metric)


def to_jsonable(obj):
    """Convert numpy containers to plain Python; floats keep their shortest round-trip repr."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if not np.isfinite(v):
            return repr(v)
        return v
    return obj


def dumps(obj, pretty: bool = False) -> str:
    return json.dumps(to_jsonable(obj), indent=2 if pretty else None, sort_keys=False)
