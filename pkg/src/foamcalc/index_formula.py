"""The formal-dimension formula and the action-lattice checks.

Everything here is exact rational arithmetic on topological inputs that
the caller supplies (the self-intersection number in particular is never
computed from geometry; it is data).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class IndexInput:
    """Inputs of the dimension formula.

    kappa     -- the topological action; must lie in (1/32)Z.
    b1, bplus -- Betti numbers of the ambient 4-manifold.
    chi       -- Euler number of the 2-complex.
    self_int  -- self-intersection; may be a half-integer.
    tau       -- number of tetrahedral points.
    dots      -- dot count (only used by the action-bound helpers).
    """

    kappa: Fraction
    b1: int = 0
    bplus: int = 0
    chi: int = 0
    self_int: Fraction = Fraction(0)
    tau: int = 0
    dots: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kappa", Fraction(self.kappa))
        object.__setattr__(self, "self_int", Fraction(self.self_int))
        if (32 * self.kappa).denominator != 1:
            raise ValueError(f"kappa={self.kappa} is not in (1/32)Z")
        if (2 * self.self_int).denominator != 1:
            raise ValueError(f"self-intersection {self.self_int} is not a half-integer")
        if self.b1 < 0 or self.bplus < 0 or self.tau < 0 or self.dots < 0:
            raise ValueError("b1, bplus, tau and dots must be nonnegative")


@dataclass(frozen=True)
class FormalDimension:
    value: Fraction
    is_integer: bool  # non-integer values flag inadmissible input data


def formal_dimension(inp: IndexInput) -> FormalDimension:
    """d = 8 kappa - 3(1 - b1 + b+) + chi + (1/2) self_int - (1/2) tau."""
    d = (8 * inp.kappa
         - 3 * (1 - inp.b1 + inp.bplus)
         + inp.chi
         + Fraction(1, 2) * inp.self_int
         - Fraction(1, 2) * inp.tau)
    return FormalDimension(d, d.denominator == 1)


def min_dots_for_nonzero(chi: int, self_int: Rational, tau: int) -> Fraction:
    """Lower bound on the dot count for a non-zero closed evaluation:
    k >= chi + (1/2) self_int - (1/2) tau (the action is nonnegative)."""
    self_int = Fraction(self_int)
    if (2 * self_int).denominator != 1:
        raise ValueError(f"self-intersection {self_int} is not a half-integer")
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    return chi + Fraction(1, 2) * self_int - Fraction(1, 2) * tau


def kappa_admissible(kappa: Rational, has_tetra: bool) -> bool:
    """Bubble-quantum lattice test: the action of any bubble lies in
    (1/8)Z, or in (1/4)Z when there are no tetrahedral points."""
    kappa = Fraction(kappa)
    quantum = 8 if has_tetra else 4
    return (quantum * kappa).denominator == 1
