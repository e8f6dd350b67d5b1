"""Concrete dynamical systems exposed as sampled orbit observables.

A system enters the averaging engines only through k -> g(T^k x) together
with its declared space mean; no measure-space machinery is modeled.
All evaluation is pure and safe to call from concurrent workers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidResidueError, UnknownSystemError


class ObservableOrbit:
    """Sampled observable g(T^k x) with declared space mean and sup bound."""

    space_mean: complex
    bound: float

    def value_at(self, k: int) -> complex:
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteRotation(ObservableOrbit):
    """Rotation on m points; value_at is periodic with period m."""

    m: int
    start: int
    g_values: tuple

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.start < self.m:
            raise InvalidResidueError(f"bad rotation (m={self.m}, start={self.start})")
        if len(self.g_values) != self.m:
            raise InvalidResidueError("g_values length must equal m")

    @property
    def space_mean(self) -> complex:
        return sum(self.g_values) / self.m

    @property
    def bound(self) -> float:
        return max(abs(v) for v in self.g_values)

    def value_at(self, k: int) -> complex:
        return self.g_values[(self.start + k) % self.m]


@dataclass(frozen=True)
class CircleRotation(ObservableOrbit):
    """Rotation of the circle by alpha full turns, observed through g.

    The space mean (the integral of g over [0, 1)) must be supplied by the
    caller; this module does not integrate arbitrary callables.
    continuity_bound is the declared modulus-of-continuity (Lipschitz) bound.
    """

    alpha: float
    start: float
    g: Callable[[float], complex]
    space_mean: complex
    bound: float
    continuity_bound: float = math.inf

    def value_at(self, k: int) -> complex:
        return self.g((self.start + k * self.alpha) % 1.0)


@dataclass(frozen=True)
class ExponentialOrbit(ObservableOrbit):
    """value_at(k) = e^{2 pi i beta k}."""

    beta: float

    @property
    def space_mean(self) -> complex:
        return 1.0 + 0.0j if float(self.beta) == int(self.beta) else 0.0j

    @property
    def bound(self) -> float:
        return 1.0

    def value_at(self, k: int) -> complex:
        return cmath.exp(2j * math.pi * self.beta * k)


@dataclass(frozen=True)
class SymbolicOrbit(ObservableOrbit):
    """Cylinder observable on the one-sided 0/1 shift: value_at(k) = a(k).

    The declared space mean is that of the point mass at the all-zero
    sequence, i.e. 0.
    """

    a: Callable[[int], int]
    space_mean: complex = 0.0
    bound: float = 1.0

    def value_at(self, k: int) -> complex:
        v = self.a(k)
        if v not in (0, 1):
            raise ValueError(f"symbolic sequence value a({k}) = {v} not in {{0, 1}}")
        return v


def rotation_two_points_liouville() -> FiniteRotation:
    """Rotation on two points with g = (+1, -1): value_at(k) = (-1)^k."""
    return FiniteRotation(m=2, start=0, g_values=(1, -1))


def residue_indicator_orbit(m: int, r: int) -> FiniteRotation:
    """Indicator of the residue class r mod m; space mean 1/m."""
    if m < 1 or not 0 <= r < m:
        raise InvalidResidueError(f"residue {r} mod {m} is invalid")
    return FiniteRotation(m=m, start=0, g_values=tuple(int(k == r) for k in range(m)))


def exponential_orbit(beta: float) -> ExponentialOrbit:
    return ExponentialOrbit(beta=beta)


def parse_system(spec: str) -> ObservableOrbit:
    """Build an orbit from a CLI string spec.

    Supported: ``liouville``, ``rot:m=3,r=1``, ``exp:beta=0.5``,
    ``circle:alpha=0.618`` (observable e^{2 pi i x}, space mean 0).
    """
    name, _, args = spec.partition(":")
    kv = dict(part.split("=", 1) for part in args.split(",") if part)
    if name == "liouville":
        return rotation_two_points_liouville()
    if name == "rot":
        return residue_indicator_orbit(int(kv["m"]), int(kv["r"]))
    if name == "exp":
        return exponential_orbit(float(kv["beta"]))
    if name == "circle":
        alpha = float(kv["alpha"])
        start = float(kv.get("start", 0.0))
        return CircleRotation(
            alpha=alpha,
            start=start,
            g=lambda x: cmath.exp(2j * math.pi * x),
            space_mean=0.0,
            bound=1.0,
            continuity_bound=2.0 * math.pi,
        )
    raise UnknownSystemError(f"unknown system spec: {spec!r}")
