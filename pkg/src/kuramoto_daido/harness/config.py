"""Experiment specification: file schema, flag overrides and validation.

A spec file (JSON or TOML) has the sections below; every key is optional
and falls back to the defaults of :class:`ExperimentSpec`::

    [density]            # kind = "lorentzian" | "gaussian" | "lorentzian_mixture"
    kind = "lorentzian"
    gamma = 1.0
    [coupling]
    alpha1 = 0.3
    alpha2 = 0.0
    h = 0.0
    [K]                  # either value = ..., or min/max/count
    min = 2.2
    max = 2.4
    count = 3
    [simulator]
    kind = "galerkin"    # or "finite-n"
    n = 10000
    j_max = 16
    m_nodes = 400
    [run]
    dt = 0.01
    t_end = 200.0
    burn_in = 100.0
    eps = 0.001
    seed = 0
    jobs = 1
    [output]
    dir = "results"
    svg = false
    [tolerance]
    amplitude = 0.15
    velocity = 0.10
    decay = 0.10

Command-line flags override file values.
"""
import json
import os
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from ..densities import density_from_dict
from ..spectral import CouplingParams

__all__ = ["ExperimentSpec", "SpecError", "load_spec_file", "spec_from_mapping"]


class SpecError(ValueError):
    """Invalid experiment specification (a usage error)."""


@dataclass(frozen=True)
class ExperimentSpec:
    density: dict = field(default_factory=lambda: {"kind": "lorentzian", "gamma": 1.0})
    alpha1: float = 0.0
    alpha2: float = 0.0
    h: float = 0.0
    K: Optional[float] = None
    K_min: Optional[float] = None
    K_max: Optional[float] = None
    K_count: Optional[int] = None
    simulator: str = "galerkin"
    n: int = 10000
    j_max: int = 16
    m_nodes: int = 400
    dt: float = 0.01
    t_end: float = 200.0
    burn_in: float = 100.0
    eps: float = 1e-3
    seed: int = 0
    jobs: int = 1
    out: Optional[str] = None
    svg: bool = False
    amplitude_tol: float = 0.15
    velocity_tol: float = 0.10
    decay_tol: float = 0.10

    def model(self):
        try:
            return density_from_dict(self.density)
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"bad density spec {self.density}: {exc}") from exc

    def params(self, K=None):
        K = self.K if K is None else K
        return CouplingParams(K if K is not None else 1.0,
                              self.alpha1, self.alpha2, self.h)

    def K_grid(self, required=True):
        """The requested couplings, strictly increasing."""
        if self.K_count is not None or self.K_min is not None or self.K_max is not None:
            if None in (self.K_min, self.K_max, self.K_count):
                raise SpecError("K grid needs --K-min, --K-max and --K-count")
            if self.K_count < 1:
                raise SpecError("K grid is empty")
            if self.K_count == 1:
                grid = [float(self.K_min)]
            else:
                if not self.K_max > self.K_min:
                    raise SpecError("K grid must be strictly increasing")
                grid = list(np.linspace(self.K_min, self.K_max, self.K_count))
        elif self.K is not None:
            grid = [float(self.K)]
        else:
            if required:
                raise SpecError("no coupling given (use --K or a K grid)")
            return []
        if any(not k > 0 for k in grid):
            raise SpecError("couplings must be positive")
        return [float(k) for k in grid]

    def validate(self):
        if self.simulator not in ("galerkin", "finite-n"):
            raise SpecError(f"unknown simulator {self.simulator!r}")
        if not 0 < self.dt <= 0.05:
            raise SpecError("dt must lie in (0, 0.05]")
        if not 0 <= self.burn_in < self.t_end:
            raise SpecError("need 0 <= burn_in < t_end")
        if self.jobs < 1:
            raise SpecError("jobs must be at least 1")
        if self.out is not None:
            os.makedirs(self.out, exist_ok=True)
            if not os.access(self.out, os.W_OK):
                raise SpecError(f"output directory {self.out} is not writable")
        self.model()
        return self

    def to_dict(self):
        return asdict(self)


_SECTIONS = {
    "coupling": {"alpha1": "alpha1", "alpha2": "alpha2", "h": "h"},
    "K": {"value": "K", "min": "K_min", "max": "K_max", "count": "K_count"},
    "simulator": {"kind": "simulator", "n": "n", "j_max": "j_max",
                  "m_nodes": "m_nodes"},
    "run": {"dt": "dt", "t_end": "t_end", "burn_in": "burn_in", "eps": "eps",
            "seed": "seed", "jobs": "jobs"},
    "output": {"dir": "out", "svg": "svg"},
    "tolerance": {"amplitude": "amplitude_tol", "velocity": "velocity_tol",
                  "decay": "decay_tol"},
}


def _coerce(name, value):
    if name in ("n", "j_max", "m_nodes", "seed", "jobs", "K_count"):
        return int(value)
    if name in ("simulator", "out"):
        return str(value)
    if name == "svg":
        return bool(value)
    if name == "density":
        return dict(value)
    return float(value)


def spec_from_mapping(data, base=None):
    """Build a spec from a parsed config mapping (nested sections)."""
    spec = base or ExperimentSpec()
    updates = {}
    for key, value in data.items():
        if key == "density":
            if not isinstance(value, dict):
                raise SpecError("density must be a table/object")
            updates["density"] = dict(value)
        elif key in _SECTIONS:
            if key == "K" and not isinstance(value, dict):
                updates["K"] = float(value)
                continue
            for sub, v in value.items():
                if sub not in _SECTIONS[key]:
                    raise SpecError(f"unknown key {key}.{sub}")
                updates[_SECTIONS[key][sub]] = v
        else:
            raise SpecError(f"unknown section {key!r}")
    try:
        updates = {k: _coerce(k, v) for k, v in updates.items()}
    except (TypeError, ValueError) as exc:
        raise SpecError(str(exc)) from exc
    return replace(spec, **updates)


def load_spec_file(path):
    """Parse a JSON (``.json``) or TOML (anything else) spec file."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    try:
        if str(path).endswith(".json"):
            data = json.loads(raw.decode())
        else:
            data = tomllib.loads(raw.decode())
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise SpecError(f"cannot parse {path}: {exc}") from exc
    return spec_from_mapping(data)
