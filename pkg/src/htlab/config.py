"""Run configuration: flat key-value files with one include level.

The format is deliberately minimal for reproducibility: ``key = value``
lines, ``#`` comments, and at most one level of ``include = other.cfg``
(the included file may not itself include).  No environment-variable
overrides are honored except the output directory, which is a
command-line flag.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, fields
from pathlib import Path


class ConfigError(ValueError):
    """Raised for malformed or invalid run configurations."""


def _parse_kv(text: str, path: Path, allow_include: bool) -> dict:
    out: dict[str, str] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{ln}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "include":
            if not allow_include:
                raise ConfigError(f"{path}:{ln}: nested include not allowed")
            inc = (path.parent / value).resolve()
            try:
                inc_text = inc.read_text()
            except OSError as exc:
                raise ConfigError(f"{path}:{ln}: cannot read include: "
                                  f"{exc}") from exc
            for k, v in _parse_kv(inc_text, inc, allow_include=False).items():
                out.setdefault(k, v)
            continue
        out[key] = value
    return out


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.replace(",", " ").split())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(",", " ").split())


@dataclass
class RunConfig:
    """Everything a command needs to reproduce a run."""

    group: str = "heisenberg"
    d: int = 1
    p: int = 1
    basis_n: int = 24
    margin: int = 4
    v_box: float = 5.5
    z_box: float = 13.0
    v_orders: int = 56
    z_orders: int = 64
    kernel_v_box: float = 4.0
    kernel_z_box: float = 9.0
    kernel_v_orders: int = 28
    kernel_z_orders: int = 40
    lam_min: float = 1e-3
    lam_max: float = 4.0
    lam_nodes: int = 64
    eps_ladder: tuple[float, ...] = (0.4, 0.2, 0.1, 0.05)
    seed: int = 0
    tol_rel: float = 1e-6
    out_dir: str = "out"
    source_text: str = field(default="", repr=False)

    def __post_init__(self) -> None:
        if min(self.v_orders, self.z_orders, self.kernel_v_orders,
               self.kernel_z_orders, self.lam_nodes, self.basis_n) < 1:
            raise ConfigError("all orders must be >= 1")
        if self.lam_min <= 0.0:
            raise ConfigError("lam_min must be > 0")
        if self.lam_min >= self.lam_max:
            raise ConfigError("lam_min must be < lam_max")
        eps = self.eps_ladder
        if any(b >= a for a, b in zip(eps, eps[1:])) or not eps:
            raise ConfigError("eps ladder must be strictly decreasing")
        if self.group not in ("heisenberg", "quaternionic"):
            raise ConfigError(f"unknown group preset {self.group!r}")

    @property
    def config_hash(self) -> str:
        """Hash of the canonicalized settings (include-expanded)."""
        canon = "\n".join(
            f"{f.name}={getattr(self, f.name)!r}"
            for f in fields(self)
            if f.name not in ("source_text", "out_dir"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


_PARSERS = {
    "group": str,
    "d": int,
    "p": int,
    "basis_n": int,
    "margin": int,
    "v_box": float,
    "z_box": float,
    "v_orders": int,
    "z_orders": int,
    "kernel_v_box": float,
    "kernel_z_box": float,
    "kernel_v_orders": int,
    "kernel_z_orders": int,
    "lam_min": float,
    "lam_max": float,
    "lam_nodes": int,
    "eps_ladder": _floats,
    "seed": int,
    "tol_rel": float,
    "out_dir": str,
}


def load_config(path) -> RunConfig:
    """Parse and validate a flat key-value config file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    raw = _parse_kv(text, path, allow_include=True)
    kwargs = {}
    for key, value in raw.items():
        parser = _PARSERS.get(key)
        if parser is None:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            kwargs[key] = parser(value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {value!r}") from exc
    return RunConfig(source_text=text, **kwargs)
