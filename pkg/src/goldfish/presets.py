"""Bundled example configurations.

Six ready-made runs ship with the package: five two-body setups (small
displacements and velocity kicks around each of the four stationary
two-body configurations) and one three-body setup.  The CLI accepts their
names anywhere a configuration path is expected.
"""

from __future__ import annotations

from importlib import resources

from .model import SystemConfig, load_config

BUNDLED = ("n2a", "n2b", "n2c", "n2d", "n2e", "n3")


def bundled_config(name: str) -> SystemConfig:
    """Load one of the bundled configurations by name."""
    key = name.removesuffix(".json")
    if key not in BUNDLED:
        raise KeyError(f"no bundled configuration named {name!r}; have {BUNDLED}")
    data = resources.files(__package__).joinpath("configs", f"{key}.json").read_bytes()
    return load_config(data)


def bundled_config_names():
    return BUNDLED
