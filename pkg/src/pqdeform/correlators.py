"""Infinite products, the two-point correlator ansatz and the deformed
Ward identities.

All products are of the form prod_j (1 - x r**j) and require |r| < 1;
parameter points with r = p**alpha * q**gamma >= 1 are rejected outright
because the products diverge there.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BaseNotContractive, DenominatorZero, OriginArgument
from .params import ConvergenceReport, DeformationParams, monotone_decreasing
from .relations import DOC, ResidualReport

# z2/z1 ratios used by the Ward-identity sample set; kept away from the
# product zeros (see pole_distance) by at least 1e-3.
DEFAULT_SAMPLES = (0.1, 0.3, 0.5 + 0.2j, 0.5 - 0.2j)


@dataclass(frozen=True)
class QPochhammer:
    """Adaptively truncated infinite product prod_{j=0}^{T-1} (1 - x r**j).

    `tail_bound` dominates the log-product remainder of the dropped factors,
    so doubling the order moves the value by less than the bound.
    """

    x: complex
    r: float
    order: int
    value: complex
    tail_bound: float


def qpochhammer(x: complex, r: float, rel_tol: float = 1e-12,
                max_terms: int = 10 ** 7) -> QPochhammer:
    if abs(r) >= 1.0:
        raise BaseNotContractive(f"product base must satisfy |r| < 1, got {r}")
    value = 1.0 + 0.0j
    ax = abs(x)
    term = ax  # |x| * |r|**j
    j = 0
    while j < max_terms:
        if term < 1.0:
            bound = term / ((1.0 - abs(r)) * (1.0 - term))
            if bound < rel_tol:
                return QPochhammer(x=complex(x), r=float(r), order=j,
                                   value=value, tail_bound=bound)
        factor = 1.0 - x * (r ** j)
        if factor == 0:
            return QPochhammer(x=complex(x), r=float(r), order=j + 1,
                               value=0.0 + 0.0j, tail_bound=0.0)
        value *= factor
        term *= abs(r)
        j += 1
    raise RuntimeError(f"product did not converge within {max_terms} factors")


def pole_distance(z: complex, r: float) -> float:
    """Distance from z to the nearest zero r**-j of the denominator product."""
    best = float("inf")
    point = 1.0
    bound = 2.0 * (abs(z) + 1.0)
    while point <= bound:
        best = min(best, abs(z - point))
        point /= abs(r)
        if abs(r) == 0:
            break
    return best


def h_ratio(z: complex, a: complex, r: float, rel_tol: float = 1e-12,
            max_terms: int = 10 ** 7) -> complex:
    """h_a(z) = (az; r)_inf / (z; r)_inf.

    Satisfies the contiguous relation h_a(z) = (1-az)/(1-z) h_a(rz) away
    from the simple poles at z = r**-j.  The ratio is accumulated factor by
    factor, (1 - a z r**j)/(1 - z r**j), so it stays well-scaled even where
    the individual products underflow (r close to 1).
    """
    if abs(r) >= 1.0:
        raise BaseNotContractive(f"product base must satisfy |r| < 1, got {r}")
    value = 1.0 + 0.0j
    power = 1.0  # r**j
    size = max(abs(z), abs(a * z))
    j = 0
    while j < max_terms:
        term = size * abs(power)
        if term < 0.5:
            bound = 2.0 * term / ((1.0 - abs(r)) * (1.0 - term))
            if bound < rel_tol:
                return value
        den = 1.0 - z * power
        if den == 0:
            raise DenominatorZero(f"z = {z} is a zero of the denominator product")
        value *= (1.0 - a * z * power) / den
        power *= r
        j += 1
    raise RuntimeError(f"ratio did not converge within {max_terms} factors")


def corr_base(params: DeformationParams) -> float:
    """Product base r = p**alpha * q**gamma of the correlator sector."""
    return params.p ** params.alpha * params.q ** params.gamma


def two_point_ansatz(z1: complex, z2: complex, h: float,
                     params: DeformationParams, omega: float) -> complex:
    """z1**omega h_a(x) with a = r**(2h) and x = r**(-h) z2/z1."""
    if z1 == 0:
        raise OriginArgument("the first insertion point must be nonzero")
    r = corr_base(params)
    if r >= 1.0:
        raise BaseNotContractive(
            f"correlator sector needs p**alpha * q**gamma < 1, got {r}")
    a = r ** (2.0 * h)
    x = r ** (-h) * z2 / z1
    return complex(z1) ** omega * h_ratio(x, a, r)


def two_point(z1: complex, z2: complex, h: float,
              params: DeformationParams) -> complex:
    """Two-point correlator of equal-weight fields; the exponent of z1 is
    -2h (verified by the scan in ward_omega_scan rather than assumed)."""
    return two_point_ansatz(z1, z2, h, params, omega=-2.0 * h)


def scaling_residuals(z1: complex, z2: complex, h: float,
                      params: DeformationParams,
                      omega: float | None = None) -> dict:
    """Residuals of the three one-step scaling relations of the ansatz.

    Both readings of the equal-argument q-scaling factor are reported: the
    pattern-consistent q**(gamma*omega) and the sometimes-quoted
    q**(alpha*omega) variant.
    """
    om = -2.0 * h if omega is None else omega
    pr = params
    P, Q = pr.P, pr.Q
    r = corr_base(pr)
    a = r ** (2.0 * h)
    x = r ** (-h) * z2 / z1
    G = two_point_ansatz(z1, z2, h, pr, om)

    def sc(u, v):
        return abs(u - v) / max(1.0, abs(u), abs(v))

    mixed = two_point_ansatz(P * z1, Q * z2, h, pr, om)
    both_p = two_point_ansatz(P * z1, P * z2, h, pr, om)
    both_q = two_point_ansatz(Q * z1, Q * z2, h, pr, om)
    return {
        "mixed-step": sc(mixed, pr.p ** (-pr.alpha * om) * (1 - x) / (1 - a * x) * G),
        "p-step": sc(both_p, pr.p ** (-pr.alpha * om) * G),
        "q-step-gamma": sc(both_q, pr.q ** (pr.gamma * om) * G),
        "q-step-alpha": sc(both_q, pr.q ** (pr.alpha * om) * G),
    }


def _guarded_samples(h: float, params: DeformationParams, samples, z1=1.0):
    """Keep sample ratios whose product arguments stay off the pole set."""
    r = corr_base(params)
    kept = []
    for t in samples:
        x = r ** (-h) * t
        if pole_distance(x, r) > 1e-3 and pole_distance(r * x, r) > 1e-3:
            kept.append((complex(z1), complex(z1) * t))
    return kept


def ward_lowering_residual(h1: float, h2: float, params: DeformationParams,
                           z1: complex, z2: complex, omega: float) -> float:
    """Residual of the coproduct-lowering constraint on the ansatz."""
    pr = params
    P, Q = pr.P, pr.Q
    h_eff = 0.5 * (h1 + h2)

    def G(u, v):
        return two_point_ansatz(u, v, h_eff, pr, omega)

    t_pp, t_pq, t_qq = G(P * z1, P * z2), G(P * z1, Q * z2), G(Q * z1, Q * z2)
    lhs = pr.p ** (-pr.alpha * h1) / z2 * (t_pp - t_pq) \
        + pr.q ** (pr.gamma * h2) / z1 * (t_pq - t_qq)
    scale = max(1.0, abs(t_pp), abs(t_pq), abs(t_qq))
    return abs(lhs) / scale


def ward_raising_residuals(h1: float, h2: float, params: DeformationParams,
                           z1: complex, z2: complex, omega: float) -> dict:
    """Both readings of the coproduct-raising constraint.

    The `derived` reading carries the weights exactly as the coproduct of
    the raising generator produces them; the `printed` reading flips one
    exponent sign and reuses h2 where the derivation yields h1.
    """
    pr = params
    P, Q = pr.P, pr.Q
    p, q, al, g = pr.p, pr.q, pr.alpha, pr.gamma
    h_eff = 0.5 * (h1 + h2)

    def G(u, v):
        return two_point_ansatz(u, v, h_eff, pr, omega)

    t_pp, t_pq, t_qq = G(P * z1, P * z2), G(P * z1, Q * z2), G(Q * z1, Q * z2)
    scale = max(1.0, abs(t_pp), abs(t_pq), abs(t_qq))
    derived = p ** (-al * h1) * z2 * (p ** (-2 * al * h2) * t_pp
                                      - q ** (2 * g * h2) * t_pq) \
        + q ** (g * h2) * z1 * (p ** (-2 * al * h1) * t_pq
                                - q ** (2 * g * h1) * t_qq)
    printed = p ** (-al * h1) * z2 * (p ** (-2 * al * h2) * t_pp
                                      - q ** (-2 * g * h2) * t_pq) \
        + q ** (g * h2) * z1 * (p ** (-2 * al * h1) * t_pq
                                - q ** (2 * g * h2) * t_qq)
    return {"derived": abs(derived) / scale, "printed": abs(printed) / scale}


def ward_residual(h1: float, h2: float, params: DeformationParams,
                  samples=DEFAULT_SAMPLES, omega: float | None = None,
                  tol: float = 1e-8, suite: str = "ward") -> ResidualReport:
    """Ward-identity check of the ansatz at the sample points.

    Gates on the lowering constraint; the two raising readings ride along in
    the extras.  Unequal weights are supported only as a residual surface.
    """
    om = (-2.0 * 0.5 * (h1 + h2)) if omega is None else omega
    pts = _guarded_samples(0.5 * (h1 + h2), params, samples)
    if not pts:
        return ResidualReport(suite=suite, check="ward-lowering",
                              params=params.as_dict(), variant=None, dim=None,
                              nu0=None, residual=0.0, tolerance=tol,
                              verdict="vacuous",
                              note="vacuous: all samples hit the pole guard")
    low = max(ward_lowering_residual(h1, h2, params, z1, z2, om)
              for z1, z2 in pts)
    raising = [ward_raising_residuals(h1, h2, params, z1, z2, om)
               for z1, z2 in pts]
    r_derived = max(r["derived"] for r in raising)
    r_printed = max(r["printed"] for r in raising)
    gated = h1 == h2
    if gated:
        verdict = "pass" if low <= tol else "fail"
        note = ""
    else:
        verdict = DOC
        note = "unequal weights: surface only, no gate"
    return ResidualReport(suite=suite, check="ward-lowering",
                          params=params.as_dict(), variant=None, dim=None,
                          nu0=None, residual=float(low),
                          tolerance=tol if gated else None, verdict=verdict,
                          note=note,
                          extra={"h1": h1, "h2": h2, "omega": om,
                                 "raising_derived": r_derived,
                                 "raising_printed": r_printed})


def ward_omega_scan(h: float, params: DeformationParams,
                    samples=DEFAULT_SAMPLES,
                    offsets=(-1.0, -0.1, 0.0, 0.1, 1.0)) -> dict:
    """Lowering residual as a function of the exponent offset from -2h."""
    out = {}
    for d in offsets:
        rep = ward_residual(h, h, params, samples, omega=-2.0 * h + d)
        out[float(d)] = rep.residual
    return out


def two_point_classical_check(h: float, z1: complex, z2: complex,
                              epsilons=(3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4)
                              ) -> ConvergenceReport:
    """Residual of the correlator against (z1 - z2)**(-2h) along p=q -> 1.

    The path approaches the classical point from below so the product base
    r = pq stays inside the unit disc.
    """
    from .params import validate
    target = complex(z1 - z2) ** (-2.0 * h)
    residuals = []
    for eps in epsilons:
        base = 1.0 - eps
        pr = validate(base, base, 1.0, 1.0, 1.0)
        val = two_point(z1, z2, h, pr)
        residuals.append(abs(val - target) / max(1.0, abs(target)))
    return ConvergenceReport(label=f"two-point h={h}",
                             residuals=tuple(residuals),
                             monotone=monotone_decreasing(residuals))
