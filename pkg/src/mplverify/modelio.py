"""Model file I/O and random system generation.

Models are UTF-8 JSON: a square ``matrix`` (``null`` marks the max-plus
-inf), an optional ``initial`` list of difference-constraint strings
`x<i> - x<j> <op> <c>`, and an optional ``spec`` string.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dbm import DBM
from .maxplus import DEFAULT_SCALE, MaxPlusMatrix, is_irreducible, to_scaled


class ModelError(ValueError):
    """Malformed model file or constraint string."""


_CONSTRAINT_RE = re.compile(
    r"^\s*x(\d+)\s*-\s*x(\d+)\s*(<=|<|>=|>)\s*(-?\d+(?:\.\d+)?)\s*$"
)


def parse_constraint(text: str, n: int, scale: int = DEFAULT_SCALE):
    """One `x<i> - x<j> <op> <c>` string to a 0-based (i, j, value, strict)
    upper-bound constraint; > and >= are normalized by swapping sides."""
    m = _CONSTRAINT_RE.match(text)
    if m is None:
        raise ModelError(f"bad constraint {text!r}")
    i, j = int(m.group(1)), int(m.group(2))
    op = m.group(3)
    c = to_scaled(Fraction(m.group(4)), scale)
    for idx in (i, j):
        if not 1 <= idx <= n:
            raise ModelError(f"constraint {text!r}: index x{idx} out of range 1..{n}")
    if i == j:
        raise ModelError(f"constraint {text!r}: indices must differ")
    if op in ("<", "<="):
        return (i - 1, j - 1, c, op == "<")
    # x_i - x_j >/>= c  <=>  x_j - x_i </<= -c
    return (j - 1, i - 1, -c, op == ">")


def constraints_to_dbm(lines, n: int, scale: int = DEFAULT_SCALE) -> DBM:
    return DBM.from_constraints(
        n, [parse_constraint(s, n, scale) for s in lines]
    ).canonicalize()


@dataclass
class Model:
    matrix: MaxPlusMatrix
    initial: Optional[DBM] = None  # None = full space
    initial_constraints: tuple = ()
    spec: Optional[str] = None

    @property
    def reducible(self) -> bool:
        return not is_irreducible(self.matrix)


def load_model(path: str, scale: int = DEFAULT_SCALE) -> Model:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ModelError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return model_from_dict(raw, scale=scale, where=path)


def model_from_dict(raw: dict, scale: int = DEFAULT_SCALE, where: str = "model") -> Model:
    if not isinstance(raw, dict) or "matrix" not in raw:
        raise ModelError(f"{where}: missing 'matrix' field")
    rows = raw["matrix"]
    n = len(rows)
    if any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ModelError(f"{where}: matrix must be square")
    try:
        a = MaxPlusMatrix.from_rows(rows, scale=scale)
    except (TypeError, ValueError) as exc:
        raise ModelError(f"{where}: bad matrix entry: {exc}") from exc
    for i in range(n):
        if not a.row_finite_columns(i):
            raise ModelError(f"{where}: row {i + 1} not regular (all entries null)")
    initial = None
    lines = tuple(raw.get("initial") or ())
    if lines:
        initial = constraints_to_dbm(lines, n, scale)
    spec = raw.get("spec")
    if spec is not None and not isinstance(spec, str):
        raise ModelError(f"{where}: 'spec' must be a string")
    return Model(a, initial, lines, spec)


def model_to_dict(model: Model) -> dict:
    out = {"matrix": model.matrix.to_rows()}
    # Fractions are not JSON-native; emit floats for non-integers
    out["matrix"] = [
        [v if v is None or isinstance(v, int) else float(v) for v in row]
        for row in out["matrix"]
    ]
    if model.initial_constraints:
        out["initial"] = list(model.initial_constraints)
    if model.spec is not None:
        out["spec"] = model.spec
    return out


def save_model(model: Model, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")


def random_mpl(
    n: int,
    m: int = 2,
    value_range=(1, 10),
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
    scale: int = DEFAULT_SCALE,
) -> MaxPlusMatrix:
    """Random regular matrix: each row gets m distinct finite entries at
    uniformly chosen columns with uniform integer values in value_range."""
    if m > n:
        raise ValueError("finite entries per row cannot exceed n")
    lo, hi = value_range
    if lo > hi:
        raise ValueError("empty value range")
    if rng is None:
        rng = random.Random(seed)
    rows = []
    for _ in range(n):
        cols = rng.sample(range(n), m)
        row = [None] * n
        for j in cols:
            row[j] = rng.randint(lo, hi)
        rows.append(row)
    return MaxPlusMatrix.from_rows(rows, scale=scale)


def random_irreducible_mpl(
    n: int,
    m: int = 2,
    value_range=(1, 10),
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
    scale: int = DEFAULT_SCALE,
    max_tries: int = 10000,
) -> MaxPlusMatrix:
    """Resample random_mpl until the precedence graph is strongly connected."""
    if rng is None:
        rng = random.Random(seed)
    for _ in range(max_tries):
        a = random_mpl(n, m, value_range, rng=rng, scale=scale)
        if is_irreducible(a):
            return a
    raise RuntimeError("failed to sample an irreducible matrix")
