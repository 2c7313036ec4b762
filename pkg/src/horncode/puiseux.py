"""Finite sums of real monomials with exact rational exponents.

These model the coordinate functions of semialgebraic arcs and the profile
functions bounding strips: f(x) = sum_i c_i * x^(q_i) for x > 0, with float
coefficients but exact Fraction exponents (only the exponents ever decide an
invariant).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .rationals import as_rational, format_rational


@dataclass(frozen=True)
class PuiseuxExpr:
    """Immutable monomial sum, terms sorted by strictly decreasing exponent.

    ``terms`` is a tuple of (coefficient, exponent) pairs.  Zero coefficients
    are dropped at construction, so the zero function has no terms.
    """

    terms: tuple[tuple[float, Fraction], ...]

    @staticmethod
    def from_terms(pairs) -> "PuiseuxExpr":
        """Build from (coeff, exponent) pairs, merging equal exponents."""
        acc: dict[Fraction, float] = {}
        for coeff, exponent in pairs:
            q = as_rational(exponent)
            acc[q] = acc.get(q, 0.0) + float(coeff)
        kept = [(c, q) for q, c in acc.items() if c != 0.0]
        kept.sort(key=lambda cq: cq[1], reverse=True)
        return PuiseuxExpr(tuple(kept))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading(self) -> tuple[float, Fraction]:
        """(coefficient, exponent) of the dominant term as x -> infinity."""
        if self.is_zero:
            raise ValueError("zero expression has no leading term")
        return self.terms[0]

    def __call__(self, x):
        """Evaluate at a float or numpy array of positive arguments."""
        import numpy as np

        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for coeff, exponent in self.terms:
            out = out + coeff * x ** float(exponent)
        return out

    def log_terms(self, log_x: float) -> list[tuple[float, float]]:
        """Per-term (sign, log magnitude) at x = exp(log_x).

        Lets callers evaluate direction vectors at astronomically large x
        without overflowing: only exponent *differences* are exponentiated.
        """
        out = []
        for coeff, exponent in self.terms:
            if coeff == 0.0:
                continue
            out.append((math.copysign(1.0, coeff),
                        math.log(abs(coeff)) + float(exponent) * log_x))
        return out

    def scale(self, factor: float) -> "PuiseuxExpr":
        return PuiseuxExpr.from_terms((factor * c, q) for c, q in self.terms)

    def __add__(self, other: "PuiseuxExpr") -> "PuiseuxExpr":
        return PuiseuxExpr.from_terms(list(self.terms) + list(other.terms))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for coeff, exponent in self.terms:
            mono = "1" if exponent == 0 else (
                "t" if exponent == 1 else f"t^({format_rational(exponent)})")
            if exponent == 0:
                parts.append(f"{coeff:g}")
            elif coeff == 1.0:
                parts.append(mono)
            elif coeff == -1.0:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff:g}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")
