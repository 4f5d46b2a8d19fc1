"""Laurent-polynomial fields, the deformed derivative and the deformed
infinitesimal conformal transformations.

Monomial rules are closed-form in the bracket, so everything here is exact
up to floating-point rounding: no series expansion is ever taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NonMonomialEpsilon
from .params import DeformationParams, bracket

COEFF_TOL = 1e-12


@dataclass(frozen=True)
class LaurentPoly:
    """Finite complex-coefficient Laurent polynomial in one variable.

    Coefficients are kept in a canonical map exponent -> coefficient with
    exact zeros absent; comparison is coefficient-wise within tolerance.
    """

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): complex(c) for k, c in self.coeffs.items() if c != 0}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out: dict = {}
            for k1, c1 in self.coeffs.items():
                for k2, c2 in other.coeffs.items():
                    out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
            return LaurentPoly(out)
        return LaurentPoly({k: other * c for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by z**n."""
        return LaurentPoly({k + n: c for k, c in self.coeffs.items()})

    def scale_argument(self, factor: complex) -> "LaurentPoly":
        """z -> factor*z, i.e. coefficient of z**k picks up factor**k."""
        return LaurentPoly({k: c * factor ** k for k, c in self.coeffs.items()})

    def evaluate(self, z: complex) -> complex:
        if any(k < 0 for k in self.coeffs) and z == 0:
            raise ZeroDivisionError("negative exponents cannot be evaluated at 0")
        return sum(c * z ** k for k, c in self.coeffs.items())

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def isclose(self, other: "LaurentPoly", tol: float = COEFF_TOL) -> bool:
        return self.distance(other) <= tol

    def distance(self, other: "LaurentPoly") -> float:
        """Scaled worst coefficient difference (absolute below magnitude 1)."""
        keys = set(self.coeffs) | set(other.coeffs)
        scale = max(1.0, self.max_abs_coeff(), other.max_abs_coeff())
        worst = 0.0
        for k in keys:
            worst = max(worst, abs(self.coeffs.get(k, 0) - other.coeffs.get(k, 0)))
        return worst / scale

    def to_json_dict(self) -> dict:
        return {str(k): [c.real, c.imag] for k, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LaurentPoly":
        return cls({int(k): complex(re, im) for k, (re, im) in data.items()})


def deformed_derivative(phi: LaurentPoly, params: DeformationParams) -> LaurentPoly:
    """D phi(z) = (phi(P z) - phi(Q z)) / (z*(P**s - Q**s)): z**k -> [k] z**(k-1)."""
    return LaurentPoly({k - 1: c * bracket(float(k), params)
                        for k, c in phi.coeffs.items()})


def delta_n(phi: LaurentPoly, n: int, h: float,
            params: DeformationParams) -> LaurentPoly:
    """Deformed infinitesimal transformation z**k -> [k + h(n+1)] z**(k+n)."""
    return LaurentPoly({k + n: c * bracket(k + h * (n + 1), params)
                        for k, c in phi.coeffs.items()})


class _ShiftedLaurent:
    """Laurent data with a common real exponent offset (internal helper).

    Carries terms c_k * z**(k + offset); only the variation pipeline needs
    non-integer exponents, and only transiently.
    """

    def __init__(self, coeffs: dict, offset: float):
        self.coeffs = coeffs
        self.offset = offset

    def deformed_derivative(self, params: DeformationParams) -> "_ShiftedLaurent":
        return _ShiftedLaurent(
            {k: c * bracket(k + self.offset, params)
             for k, c in self.coeffs.items()},
            self.offset - 1.0)

    def to_laurent(self) -> LaurentPoly:
        snapped = round(self.offset)
        if abs(self.offset - snapped) > 1e-9:
            raise AssertionError(f"offset {self.offset} did not return to an integer")
        return LaurentPoly({k + int(snapped): c for k, c in self.coeffs.items()})


def general_variation(phi: LaurentPoly, eps: LaurentPoly, h: float,
                      params: DeformationParams) -> LaurentPoly:
    """Variation eps(z)**(1-h) * D(eps(z)**h * phi(z)) for monomial eps.

    eps must be a single monomial e_n z**(n+1); fractional powers of general
    polynomials have no branch convention and are rejected.  Principal
    complex powers are used for the split e_n**h * e_n**(1-h) = e_n.
    """
    if len(eps.coeffs) == 0:
        return LaurentPoly.zero()
    if len(eps.coeffs) != 1:
        raise NonMonomialEpsilon("variation parameter must be a single monomial")
    (exponent, e_n), = eps.coeffs.items()
    n = exponent - 1
    lifted = _ShiftedLaurent(
        {k: c * e_n ** h for k, c in phi.coeffs.items()},
        h * (n + 1))
    derived = lifted.deformed_derivative(params)
    lowered = _ShiftedLaurent(
        {k: c * e_n ** (1 - h) for k, c in derived.coeffs.items()},
        derived.offset + (1 - h) * (n + 1))
    return lowered.to_laurent()
