"""Run configuration shared by the command-line verbs."""
import json
from dataclasses import dataclass, replace
from typing import Optional

from .quaternion import ExpSigmaModel

DOMAINS = ("unit-disk", "box")


class ConfigError(ValueError):
    """Invalid configuration or command-line usage."""


@dataclass(frozen=True)
class RunConfig:
    sigma1: float = 3.0
    sigma2: float = 1.0
    sigma3: float = 0.0
    fit: Optional[str] = None
    domain: str = "unit-disk"
    grid: int = 21
    tol_quadrature: float = 1e-9
    tol_residual: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.grid < 2:
            raise ConfigError("grid resolution must be at least 2")
        if not (self.tol_quadrature > 0 and self.tol_residual > 0):
            raise ConfigError("tolerances must be positive")
        if self.domain not in DOMAINS:
            raise ConfigError(f"domain must be one of {DOMAINS}, got {self.domain!r}")

    @property
    def model(self):
        return ExpSigmaModel(self.sigma1, self.sigma2, self.sigma3)

    def with_overrides(self, **kw):
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    @classmethod
    def from_dict(cls, d):
        """Parse the JSON layout::

            {"sigma": {"sigma1": 3, "sigma2": 1, "sigma3": 0} | {"fit": "fit.json"},
             "domain": "unit-disk", "grid": 21,
             "tolerances": {"quadrature": 1e-9, "residual": 1e-6}, "seed": 0}
        """
        if not isinstance(d, dict):
            raise ConfigError("configuration must be a JSON object")
        known = {"sigma", "domain", "grid", "tolerances", "seed"}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown configuration key(s): {', '.join(sorted(extra))}")
        kw = {}
        sigma = d.get("sigma", {})
        if not isinstance(sigma, dict):
            raise ConfigError("'sigma' must be an object")
        if "fit" in sigma:
            kw["fit"] = str(sigma["fit"])
        for k in ("sigma1", "sigma2", "sigma3"):
            if k in sigma:
                kw[k] = _num(sigma[k], k)
        tol = d.get("tolerances", {})
        if "quadrature" in tol:
            kw["tol_quadrature"] = _num(tol["quadrature"], "quadrature")
        if "residual" in tol:
            kw["tol_residual"] = _num(tol["residual"], "residual")
        if "domain" in d:
            kw["domain"] = d["domain"]
        if "grid" in d:
            kw["grid"] = _int(d["grid"], "grid")
        if "seed" in d:
            kw["seed"] = _int(d["seed"], "seed")
        return cls(**kw)

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                return cls.from_dict(json.load(fh))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc


def _num(v, name):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{name} must be a number")
    return float(v)


def _int(v, name):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{name} must be an integer")
    return v
