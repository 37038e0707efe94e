"""Integrable scatterer weights as functions of the spectral parameter.

Plain floating point; nothing here feeds the exact groundstate pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TOLERANCE = 1e-12


@dataclass(frozen=True)
class WeightSet:
    u: float
    omega_R: float
    omega_L: float
    omega_A: float
    omega_D: float

    def as_dict(self) -> dict[str, float]:
        return {
            "u": self.u,
            "R": self.omega_R,
            "L": self.omega_L,
            "A": self.omega_A,
            "D": self.omega_D,
        }


def weights(u: float) -> WeightSet:
    rotor = math.sin(u) * math.cos(2 * math.pi / 3 - u)
    return WeightSet(
        u=u,
        omega_R=rotor,
        omega_L=rotor,
        omega_A=math.sin(math.pi / 3 - u) * math.cos(2 * math.pi / 3 - u),
        omega_D=-math.sin(u) * math.cos(math.pi / 3 - u),
    )
