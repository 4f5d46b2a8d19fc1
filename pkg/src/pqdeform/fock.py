"""Truncated ladder representations of the deformed oscillator variants.

Basis vectors |0>,...,|dim-1> count ladder rungs; the physical occupation of
rung n is n*s, where s is the ladder step.  The creator maps the top rung to
zero, so operator identities are only exact on the interior rungs; every
checker in relations.py masks the edges accordingly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NegativeStructureValue
from .params import DeformationParams, bracket


class Variant(str, enum.Enum):
    GD = "gd"
    GCHJ = "gchj"
    GCHJ_SHIFTED = "gchj-shifted"
    GHY_SHIFTED = "ghy-shifted"


@dataclass(frozen=True)
class FockRep:
    """Dense matrices for one truncated oscillator representation.

    A annihilates the first basis vector, Adag is its transpose for the
    unshifted and weight-shifted variants, and Nop is diagonal with entries
    n*s + offset (offset nu0, -nu0 or 0 depending on the variant).
    """

    variant: Variant
    dim: int
    nu0: float
    params: DeformationParams
    A: np.ndarray
    Adag: np.ndarray
    Nop: np.ndarray

    @property
    def occupations(self) -> np.ndarray:
        """Physical occupation numbers n*s of the rungs."""
        return np.arange(self.dim) * self.params.s

    @property
    def number_values(self) -> np.ndarray:
        """Eigenvalues of the number operator (diagonal of Nop)."""
        return np.diag(self.Nop).copy()

    @property
    def bottom_margin(self) -> int:
        """Rungs to drop at the bottom of interior checks.

        The additive-shift variant has a nonzero annihilation amplitude on
        the lowest rung that truncation forces to zero, so that rung is an
        edge artifact exactly like the top one.
        """
        return 1 if (self.variant is Variant.GHY_SHIFTED and self.nu0 != 0) else 0

    def interior(self, top: int = 1, bottom: int | None = None) -> np.ndarray:
        """Boolean rung mask excluding `top` rungs and the bottom artifacts."""
        lo = self.bottom_margin if bottom is None else bottom
        mask = np.zeros(self.dim, dtype=bool)
        hi = self.dim - top
        if hi > lo:
            mask[lo:hi] = True
        return mask

    def diag_fn(self, fn) -> np.ndarray:
        """Function of the number operator, evaluated spectrally."""
        return np.diag(fn(self.number_values))


def _ladder_matrices(amps_down: np.ndarray, dim: int):
    """A with amps_down on the superdiagonal and its transpose."""
    A = np.zeros((dim, dim))
    if dim > 1:
        A[np.arange(dim - 1), np.arange(1, dim)] = amps_down
    return A, A.T.copy()


def _check_radicands(values: np.ndarray, what: str):
    if np.any(values < 0):
        bad = float(values[values < 0][0])
        raise NegativeStructureValue(
            f"{what} radicand is negative ({bad:.6g}); parameters outside "
            "the positivity region for this truncation")


def build_gchj(params: DeformationParams, dim: int) -> FockRep:
    """Multiplicative-relation representation: a|n> carries sqrt([n*s])."""
    s = params.s
    occ = np.arange(1, dim) * s
    radicands = bracket(occ, params) if dim > 1 else np.zeros(0)
    _check_radicands(radicands, "gchj ladder")
    A, Adag = _ladder_matrices(np.sqrt(radicands), dim)
    Nop = np.diag(np.arange(dim) * s)
    return FockRep(Variant.GCHJ, dim, 0.0, params, A, Adag, Nop)


def build_gchj_shifted(params: DeformationParams, dim: int, nu0: float) -> FockRep:
    """Weight-shifted variant: amplitudes scaled by q**(gamma*nu0/2),
    number eigenvalues shifted by +nu0."""
    s = params.s
    scale = params.q ** (params.gamma * nu0 / 2.0)
    occ = np.arange(1, dim) * s
    radicands = bracket(occ, params) if dim > 1 else np.zeros(0)
    _check_radicands(radicands, "gchj-shifted ladder")
    A, Adag = _ladder_matrices(scale * np.sqrt(radicands), dim)
    Nop = np.diag(np.arange(dim) * s + nu0)
    return FockRep(Variant.GCHJ_SHIFTED, dim, float(nu0), params, A, Adag, Nop)


def build_ghy_shifted(params: DeformationParams, dim: int, nu0: float) -> FockRep:
    """Additive-shift variant: a|n> carries sqrt([n*s - nu0] + [nu0]),
    number eigenvalues shifted by -nu0."""
    s = params.s
    occ = np.arange(1, dim) * s
    radicands = (bracket(occ - nu0, params) + bracket(float(nu0), params)) \
        if dim > 1 else np.zeros(0)
    _check_radicands(radicands, "ghy-shifted ladder")
    A, Adag = _ladder_matrices(np.sqrt(radicands), dim)
    Nop = np.diag(np.arange(dim) * s - nu0)
    return FockRep(Variant.GHY_SHIFTED, dim, float(nu0), params, A, Adag, Nop)


def build_gd(params: DeformationParams, dim: int) -> FockRep:
    """Canonical structure-function representation a+a = f(N), aa+ = f(N+s).

    Identical matrices to build_gchj by construction; kept as a separate
    variant because the defining relations it certifies differ.
    """
    rep = build_gchj(params, dim)
    return FockRep(Variant.GD, dim, 0.0, params, rep.A, rep.Adag, rep.Nop)
