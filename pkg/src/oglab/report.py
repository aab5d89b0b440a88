"""Verifier reports shared by the algebraic and motivic checks."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

from . import __version__

PASS, FAIL, REFUSED = "PASS", "FAIL", "REFUSED"


@dataclass
class Report:
    claim: str
    params: dict
    status: str
    witnesses: list = field(default_factory=list)
    elapsed_ms: int = 0
    version: str = __version__
    cache: bool | None = None

    def __post_init__(self):
        if self.status == FAIL and not self.witnesses:
            raise ValueError("a failing report must carry a witness")

    @property
    def ok(self) -> bool:
        return self.status == PASS

    @classmethod
    def from_witnesses(cls, claim: str, params: dict, witnesses: list,
                       started: float) -> "Report":
        return cls(claim, params, FAIL if witnesses else PASS, list(witnesses),
                   _ms(started))

    @classmethod
    def refused(cls, claim: str, params: dict, deficit: dict, started: float) -> "Report":
        return cls(claim, params, REFUSED, [{"rank_deficit": deficit}], _ms(started))

    def to_dict(self, stable: bool = False) -> dict:
        out = asdict(self)
        if stable:
            # wall time and cache state vary between identical runs
            out["elapsed_ms"] = 0
            out["cache"] = None
        return out

    def to_json(self, stable: bool = False) -> str:
        return json.dumps(self.to_dict(stable), sort_keys=True)


def _ms(started: float) -> int:
    return int(round((time.perf_counter() - started) * 1000))
