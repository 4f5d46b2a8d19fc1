"""Deformed operator products as two-pole rational data, residue extraction
with a numerical contour cross-check, the mode bracket and the centerless
deformed Virasoro structure constants.

Only the pole structure of the product of the stress tensor with a weight-h
field ever enters a computation; no operator-valued T(z) is constructed.
Radial ordering is realized implicitly by contour nesting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PoleOnContour
from .params import DeformationParams, bracket
from .qcalculus import LaurentPoly, delta_n
from .relations import DOC, ResidualReport


@dataclass(frozen=True)
class DeformedOPE:
    """Structured short-distance product (T(z) phi(w)) for a weight-h field.

    Two simple poles at z = w*P**h and z = w*Q**h with z-independent
    numerators phi(w*P)/(w*D) and -phi(w*Q)/(w*D).
    """

    h: float
    phi: LaurentPoly
    params: DeformationParams

    def pole_locations(self, w: complex) -> tuple[complex, complex]:
        pr = self.params
        return (w * pr.P ** self.h, w * pr.Q ** self.h)

    def numerators(self, w: complex) -> tuple[complex, complex]:
        pr = self.params
        base = 1.0 / (w * pr.D)
        return (base * self.phi.evaluate(w * pr.P),
                -base * self.phi.evaluate(w * pr.Q))

    def integrand(self, w: complex, n: int):
        """z -> z**(n+1) * (T(z) phi(w)) as a plain complex function."""
        (z1, z2), (c1, c2) = self.pole_locations(w), self.numerators(w)

        def f(z: complex) -> complex:
            return z ** (n + 1) * (c1 / (z - z1) + c2 / (z - z2))
        return f


def ope_residue_variation(phi: LaurentPoly, n: int, h: float,
                          params: DeformationParams) -> LaurentPoly:
    """Exact two-pole residue of z**(n+1) (T(z) phi(w)) around both poles.

    result = (1/(w D)) [ (w P**h)**(n+1) phi(wP) - (w Q**h)**(n+1) phi(wQ) ],
    which reproduces the deformed infinitesimal transformation of phi.
    """
    pr = params
    if pr.degenerate:
        # coincident-pole limit: the per-monomial coefficient collapses to
        # the bracket limit, identical to the transformation rule
        return delta_n(phi, n, h, params)
    P, Q, D = pr.P, pr.Q, pr.D
    out: dict = {}
    for k, c in phi.coeffs.items():
        coeff = (P ** (h * (n + 1)) * P ** k - Q ** (h * (n + 1)) * Q ** k) / D
        out[k + n] = out.get(k + n, 0) + c * coeff
    return LaurentPoly(out)


def contour_integral_numeric(f, center: complex, radius: float,
                             m_points: int = 256,
                             poles: tuple = ()) -> complex:
    """(1/2 pi i) times the circle integral of f, by the trapezoid rule.

    Uniform sampling on a circle is spectrally accurate for integrands
    analytic in a neighbourhood of the contour.  Any supplied pole closer to
    the contour than 10 * machine-epsilon * radius raises PoleOnContour.
    """
    if m_points < 64:
        raise ValueError("at least 64 quadrature points are required")
    guard = 10.0 * np.finfo(float).eps * radius
    for pole in poles:
        if abs(abs(pole - center) - radius) < guard:
            raise PoleOnContour(f"pole {pole} lies on the quadrature contour")
    theta = 2.0 * np.pi * np.arange(m_points) / m_points
    z = center + radius * np.exp(1j * theta)
    vals = np.array([f(zi) for zi in z], dtype=complex)
    return complex(np.mean(vals * (z - center)))


def ope_contour_check(phi: LaurentPoly, n: int, h: float,
                      params: DeformationParams, w: complex = 1.0,
                      m_points: int = 256) -> tuple[complex, complex]:
    """(numeric, exact) value of the variation integral at the point w.

    The numeric side integrates around each pole separately, so the origin
    (a pole of z**(n+1) for n <= -2) is never enclosed.
    """
    ope = DeformedOPE(h=h, phi=phi, params=params)
    z1, z2 = ope.pole_locations(w)
    f = ope.integrand(w, n)
    sep = abs(z1 - z2)
    if sep < 1e-12 * max(1.0, abs(z1)):
        radius = abs(z1) / 3.0
        numeric = contour_integral_numeric(f, z1, radius, m_points,
                                           poles=(z1, z2, 0.0))
    else:
        numeric = 0.0 + 0.0j
        for pole, other in ((z1, z2), (z2, z1)):
            radius = min(sep, abs(pole)) / 3.0
            numeric += contour_integral_numeric(f, pole, radius, m_points,
                                                poles=(pole, other, 0.0))
    exact = ope_residue_variation(phi, n, h, params).evaluate(w)
    return numeric, exact


# -- mode bracket -------------------------------------------------------------

@dataclass(frozen=True)
class ModeBracketResult:
    """Bracket of a stress-tensor mode with one field mode.

    `coefficients` maps surviving mode indices to their amplitudes; the
    outer extraction annihilates every input mode except n + m, so the
    support is contained in {n + m}.
    """

    n: int
    m: int
    h: float
    coefficients: dict
    expected: dict = field(default_factory=dict)

    def off_target_max(self) -> float:
        return max((abs(c) for k, c in self.coefficients.items()
                    if k != self.n + self.m), default=0.0)

    def residual(self) -> float:
        keys = set(self.coefficients) | set(self.expected)
        return max((abs(self.coefficients.get(k, 0) - self.expected.get(k, 0))
                    for k in keys), default=0.0)


def mode_bracket(n: int, m: int, h: float, modes: dict,
                 params: DeformationParams) -> ModeBracketResult:
    """Double-contour bracket of the n-th stress mode with the m-th field mode.

    Inner step: exact residues in z give, for each input mode k, the term
    phi_k [h n - k] w**(n - k - h).  Outer step: the weight w**(m + h - 1)
    cancels the fractional exponent, so coefficient extraction is exact
    integer matching (picks k = n + m).
    """
    coeffs: dict = {}
    for k, phi_k in modes.items():
        inner = phi_k * bracket(h * n - k, params)
        # exponent of w after multiplying by the extraction weight:
        # (n - k - h) + (m + h - 1) = n + m - k - 1; the contour keeps -1 only
        survives = (n + m - k - 1) == -1
        coeffs[k] = inner if survives else 0.0
    expected = {}
    if (n + m) in modes:
        expected[n + m] = modes[n + m] * bracket((h - 1) * n - m, params)
    return ModeBracketResult(n=n, m=m, h=h,
                             coefficients={k: c for k, c in coeffs.items()
                                           if c != 0 or k == n + m},
                             expected=expected)


# -- centerless deformed Virasoro structure -----------------------------------

@dataclass(frozen=True)
class VirasoroStructure:
    """Quommutator data of the centerless deformed Virasoro algebra.

    weight_nm * L_n L_m - weight_mn * L_m L_n = rhs * L_(n+m).
    """

    n: int
    m: int
    weight_nm: float
    weight_mn: float
    rhs: float


def virasoro_structure(n: int, m: int,
                       params: DeformationParams) -> VirasoroStructure:
    p, q, a, g = params.p, params.q, params.alpha, params.gamma
    return VirasoroStructure(
        n=n, m=m,
        weight_nm=p ** (a * (m + 2)) * q ** (-g * (n + 2)),
        weight_mn=p ** (a * (n + 2)) * q ** (-g * (m + 2)),
        rhs=float(bracket(float(n - m), params)))


def virasoro_antisymmetry_scan(params: DeformationParams,
                               window: tuple[int, int] = (-3, 3),
                               suite: str = "virasoro-antisymmetry"
                               ) -> ResidualReport:
    """Consistency audit |[d] + [-d]| over d in the window.

    The left side of the quommutator is manifestly antisymmetric under
    n <-> m while the bracket is odd only when PQ = 1; the resulting
    constraint surface is reported, not resolved.
    """
    lo, hi = window
    surface = {}
    worst = 0.0
    for d in range(int(lo), int(hi) + 1):
        r = abs(bracket(float(d), params) + bracket(float(-d), params))
        surface[str(d)] = r
        worst = max(worst, r)
    pq = params.P * params.Q
    note = (f"odd-bracket defect max over window {window}; vanishes on the "
            f"PQ = 1 surface (here PQ = {pq:.6g})")
    return ResidualReport(suite=suite, check="virasoro-antisymmetry",
                          params=params.as_dict(), variant=None, dim=None,
                          nu0=None, residual=float(worst), tolerance=None,
                          verdict=DOC, note=note, extra={"surface": surface})
