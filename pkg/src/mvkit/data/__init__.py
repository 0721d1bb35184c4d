"""Bundled index-specification documents (JSON, AlgebraDocument schema)."""

import json
from importlib import resources

BUNDLED = ("example_4_5", "example_4_6", "example_const_2")


def load(name: str) -> dict:
    """Parse a bundled document by stem name, e.g. load("example_4_5")."""
    if name not in BUNDLED:
        raise KeyError(f"no bundled document named {name!r}; have {BUNDLED}")
    text = resources.files(__package__).joinpath(f"{name}.json").read_text("utf-8")
    return json.loads(text)


def path(name: str):
    """Filesystem path of a bundled document (for CLI invocations)."""
    if name not in BUNDLED:
        raise KeyError(f"no bundled document named {name!r}; have {BUNDLED}")
    return resources.files(__package__).joinpath(f"{name}.json")
