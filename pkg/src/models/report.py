from dataclasses import dataclass, fields
from typing import Optional

import pandas as pd

from src.tools.serialization import SimpleDict


@dataclass(frozen=True)
class ResourceReport:
    """Resource counts of a compiled pattern."""

    method: str
    n_main: int
    n_aux: int
    n_edges: int
    ladder_cnots: int
    active_profile: tuple[int, ...]
    max_active: int
    storage_profile: tuple[int, ...]
    intermediate_storage: int
    entangling_cost_per_step: int
    entangling_cost_total: int
    depth_bound: Optional[int] = None
    weight: Optional[int] = None
    aperiodicity: Optional[int] = None
    active_bound: Optional[int] = None
    linear_layout_qubits: Optional[int] = None

    def to_simple_dict(self) -> SimpleDict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out

    def rounds_frame(self) -> pd.DataFrame:
        # One row per measurement round
        storage = list(self.storage_profile) + [None] * (len(self.active_profile) - len(self.storage_profile))
        return pd.DataFrame(
            {"round": range(len(self.active_profile)), "active": list(self.active_profile), "storage": storage}
        )
