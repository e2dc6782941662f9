"""Fixed quadrature rules on a finite interval."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError

RULES = ("gauss_legendre", "trapezoid")


@lru_cache(maxsize=32)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureSpec:
    rule: str = "gauss_legendre"
    nodes: int = 512

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"rule must be one of {RULES}, got {self.rule!r}")
        if int(self.nodes) != self.nodes or self.nodes < 2:
            raise ValueError(f"need an integer number of nodes >= 2, got {self.nodes!r}")

    def refined(self) -> "QuadratureSpec":
        """Same rule with twice the nodes (for convergence checks)."""
        return QuadratureSpec(self.rule, 2 * self.nodes)

    def nodes_weights(self, lo: float, hi: float):
        if not hi > lo:
            raise QuadratureError(f"empty integration window [{lo!r}, {hi!r}]")
        half = 0.5 * (hi - lo)
        if self.rule == "gauss_legendre":
            x, w = _leggauss(self.nodes)
            return lo + half * (x + 1.0), half * w
        x = np.linspace(lo, hi, self.nodes)
        w = np.full(self.nodes, (hi - lo) / (self.nodes - 1))
        w[0] *= 0.5
        w[-1] *= 0.5
        return x, w
