"""Solver output record shared by every solution method."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from .graph import Graph, LoadVector, flow

if TYPE_CHECKING:
    from .clique import CliqueResult
    from .transforms import TransformTrace


@dataclass
class SolveReport:
    method: str
    loads: LoadVector
    flow: float
    omega: int | None = None
    clique: CliqueResult | None = None
    trace: TransformTrace | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_loads(cls, method: str, g: Graph, loads: LoadVector, **kwargs) -> SolveReport:
        return cls(method, loads, flow(g, loads), **kwargs)
