"""Resource caps for the exhaustive enumerations."""
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import ResourceLimitError

ENV_VAR = "LATFLOW_CAPS"


@dataclass(frozen=True)
class Caps:
    max_edges: int = 10  # 3**max_edges partial orientations
    max_vertices: int = 8  # 2**n subsets, n**n level functions
    max_poset: int = 10_000
    max_halfspaces: int = 400
    max_dimension: int = 6
    max_circuits: int = 5_000

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")

    def check(self, name: str, size: int, what: str | None = None) -> None:
        cap = getattr(self, name)
        if size > cap:
            raise ResourceLimitError(what or name, size, cap)

    def replace(self, **kw) -> "Caps":
        return dataclasses.replace(self, **{k: v for k, v in kw.items() if v is not None})

    @classmethod
    def from_env(cls, base: "Caps | None" = None, environ=None) -> "Caps":
        """Apply ``LATFLOW_CAPS="max_edges=12,max_poset=20000"`` on top of ``base``."""
        base = base or cls()
        raw = (environ if environ is not None else os.environ).get(ENV_VAR, "").strip()
        if not raw:
            return base
        names = {f.name for f in dataclasses.fields(cls)}
        updates = {}
        for item in raw.split(","):
            if not item.strip():
                continue
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in names:
                raise ValueError(f"{ENV_VAR}: unknown cap {key!r}")
            updates[key] = int(value)
        return dataclasses.replace(base, **updates)


DEFAULT_CAPS = Caps()
