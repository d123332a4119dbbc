"""Run-wide configuration.

Depth thresholds are data, not constants baked into the algorithms:
several statements hold verbatim only above a genericity bound, and the
bounds attainable in practice depend on p (see max_presentation_depth).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GenericityConfig:
    rhobar_depth: int = 9
    tau_depth: int = 6
    weight_depth: int = 3

    def capped(self, p: int) -> "GenericityConfig":
        """Lower the thresholds to what is attainable for this p."""
        cap = (p - 4) // 4
        return GenericityConfig(
            rhobar_depth=min(self.rhobar_depth, cap),
            tau_depth=min(self.tau_depth, cap),
            weight_depth=min(self.weight_depth, cap),
        )


@dataclass(frozen=True)
class RunConfig:
    p: int = 37
    f: int = 1
    box_radius: int = 12
    seed: int = 0
    fmt: str = "json"
    genericity: GenericityConfig = GenericityConfig()

    def validate(self) -> None:
        if self.p < 5:
            raise ValueError("p must be at least 5")
        if self.f < 1:
            raise ValueError("f must be at least 1")
        if self.box_radius < 8:
            raise ValueError("box radius must be at least 8")
        if self.fmt not in ("json", "table", "dot"):
            raise ValueError("unknown output format %r" % (self.fmt,))
