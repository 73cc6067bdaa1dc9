from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

EdgeBehaviour = Literal["sqrt", "inv_sqrt"]


@dataclass(frozen=True)
class SignedMeasureModel:
    """A (signed) measure: continuous part on [a, b] plus point masses.

    The continuous density is kernel(x)·Q(x) for edge="sqrt" and kernel(x)/Q(x)
    for edge="inv_sqrt", with Q(x) = √((b−x)(x−a)). Keeping Q out of the kernel
    lets quadrature absorb the edge behaviour with x = a + (b−a)sin²θ.
    """

    name: str
    a: float
    b: float
    kernel: Callable[[float], float] = field(repr=False)
    edge: EdgeBehaviour
    atoms: tuple[tuple[float, float], ...] = ()
    expected_mass: float = 1.0

    def edge_factor(self, x: float) -> float:
        q = float(np.sqrt(max((self.b - x) * (x - self.a), 0.0)))
        if self.edge == "sqrt":
            return q
        return 1.0 / q if q > 0 else float("inf")

    def density(self, x: float) -> float:
        """Continuous part at x; zero off (a, b)."""
        if not self.a < x < self.b:
            return 0.0
        return float(self.kernel(x)) * self.edge_factor(x)

    def density_grid(self, xs: np.ndarray) -> np.ndarray:
        return np.array([self.density(float(x)) for x in xs])

    def theta_integrand(self, theta: float, power: int) -> float:
        """Integrand of ∫ xⁿ dμ_cont after x = a + (b−a)sin²θ, θ ∈ (0, π/2)."""
        s, c = np.sin(theta), np.cos(theta)
        width = self.b - self.a
        x = self.a + width * s * s
        jacobian = 2.0 * width * s * c
        q = width * s * c
        weight = jacobian * q if self.edge == "sqrt" else 2.0
        return float(self.kernel(x) * x**power * weight)

    def atom_mass(self, location: float, tolerance: float = 1e-12) -> float:
        return sum(mass for where, mass in self.atoms if abs(where - location) <= tolerance)

    def grid(self, points: int) -> np.ndarray:
        """Midpoint grid on (a, b); endpoints are excluded."""
        return self.a + (self.b - self.a) * (np.arange(points) + 0.5) / points

    def to_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "support": [self.a, self.b],
            "edge": self.edge,
            "atoms": [{"location": where, "mass": mass} for where, mass in self.atoms],
            "total_mass": self.expected_mass,
        }
