"""Defining relations, Casimir invariants and implication experiments.

Every check evaluates both sides of an operator equation as dense matrices
on a truncated representation and reports the largest deviation over the
interior rungs.  Deviations are measured as

    max |L - R| / max(1, largest entry among the constituent terms)

which is an absolute residual at desk scale and a backward-style relative
one where matrix entries grow exponentially large, so exact identities sit
at machine epsilon across the whole parameter grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from .errors import WrongVariant
from .fock import FockRep, Variant, build_gchj, build_gchj_shifted, build_gd, \
    build_ghy_shifted
from .params import DeformationParams, bracket

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
DOC = "doc"  # documented discrepancy: reported, never gated

CORE_RELATIONS = ("gd-structure", "gchj-a", "gchj-b", "ghy-half", "ghy-full",
                  "number-comm")
CASIMIR_RELATIONS = ("c1-commutes", "c1-eigenvalue", "c1-witness",
                     "c2-commutes", "c2-eigenvalue")
IMPLICATIONS = ("gd-implies-gchj", "gchj-casimir-reconstruct",
                "gchj-to-ghy-correction", "ghy-to-gchj-correction")
RELATIONS = CORE_RELATIONS + CASIMIR_RELATIONS + IMPLICATIONS


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one identity check at one parameter point."""

    suite: str
    check: str
    params: dict
    variant: str | None
    dim: int | None
    nu0: float | None
    residual: float
    tolerance: float | None
    verdict: str
    note: str = ""
    extra: dict = field(default_factory=dict)

    def as_record(self) -> dict:
        rec = asdict(self)
        rec.update(rec.pop("params"))
        return rec


def scaled_deviation(lhs_terms, rhs_terms, mask2):
    """(scaled residual, raw deviation, scale) of sum(L) - sum(R) over mask2."""
    if not mask2.any():
        return None, None, None
    L = sum(lhs_terms)
    R = sum(rhs_terms) if rhs_terms else np.zeros_like(L)
    raw = float(np.max(np.abs((L - R)[mask2])))
    scale = 1.0
    for t in list(lhs_terms) + list(rhs_terms):
        scale = max(scale, float(np.max(np.abs(t[mask2]))))
    return raw / scale, raw, scale


def _mask2(rep: FockRep, top: int = 1, bottom: int | None = None) -> np.ndarray:
    m = rep.interior(top=top, bottom=bottom)
    return np.outer(m, m)


def _report(suite, check, rep: FockRep, residual, tol, note="", extra=None,
            doc=False):
    if residual is None:
        verdict, residual = VACUOUS, 0.0
        note = (note + "; " if note else "") + "vacuous: empty interior"
    elif doc:
        verdict = DOC
    else:
        verdict = PASS if residual <= tol else FAIL
    return ResidualReport(suite=suite, check=check, params=rep.params.as_dict(),
                          variant=rep.variant.value, dim=rep.dim, nu0=rep.nu0,
                          residual=float(residual), tolerance=None if doc else tol,
                          verdict=verdict, note=note, extra=extra or {})


# -- Casimir invariants -------------------------------------------------------

def casimir_c1(rep: FockRep) -> np.ndarray:
    """Invariant p**(alpha*N) ([N] - a+a) of the weighted relation
    aa+ - p**(-l/gamma) a+a = q**(gamma*N)."""
    if rep.variant not in (Variant.GD, Variant.GCHJ, Variant.GCHJ_SHIFTED):
        raise WrongVariant(f"c1 is not an invariant of variant {rep.variant.value}")
    nv = rep.number_values
    weight = rep.params.p ** (rep.params.alpha * nv)
    return np.diag(weight) @ (np.diag(bracket(nv, rep.params)) - rep.Adag @ rep.A)


def casimir_c2(rep: FockRep) -> np.ndarray:
    """Invariant (p**alpha q**-gamma)**N ([N] - a+a) of the symmetric-weight
    relation."""
    if rep.variant not in (Variant.GD, Variant.GHY_SHIFTED):
        raise WrongVariant(f"c2 is not an invariant of variant {rep.variant.value}")
    p, q = rep.params.p, rep.params.q
    nv = rep.number_values
    weight = (p ** rep.params.alpha * q ** (-rep.params.gamma)) ** nv
    return np.diag(weight) @ (np.diag(bracket(nv, rep.params)) - rep.Adag @ rep.A)


def _commutator_residual(C: np.ndarray, rep: FockRep):
    """Worst scaled deviation of [C, A], [C, Adag], [C, Nop] from zero."""
    mask2 = _mask2(rep)
    worst = None
    for X in (rep.A, rep.Adag, rep.Nop):
        res, _, _ = scaled_deviation([C @ X], [X @ C], mask2)
        if res is None:
            return None
        worst = res if worst is None else max(worst, res)
    return worst


# -- relation templates -------------------------------------------------------

def _relation_terms(rep: FockRep, relation: str):
    """Left/right term lists for the core defining relations."""
    pr = rep.params
    P, Q, s = pr.P, pr.Q, pr.s
    nv = rep.number_values
    AAd, AdA = rep.A @ rep.Adag, rep.Adag @ rep.A
    if relation == "gchj-a":
        return [AAd, -P ** s * AdA], [np.diag(Q ** nv)]
    if relation == "gchj-b":
        return [AAd, -Q ** s * AdA], [np.diag(P ** nv)]
    if relation == "ghy-half":
        lam = (P * Q) ** (s / 2.0)
        rhs = (P ** (nv + s / 2.0) + Q ** (nv + s / 2.0)) \
            / (P ** (s / 2.0) + Q ** (s / 2.0))
        return [AAd, -lam * AdA], [np.diag(rhs)]
    if relation == "ghy-full":
        lam = (P * Q) ** s
        rhs = bracket(nv + s, pr) - lam * bracket(nv, pr)
        return [AAd, -lam * AdA], [np.diag(rhs)]
    raise KeyError(relation)


def check_relation(rep: FockRep, relation: str, tol: float = 1e-10,
                   suite: str = "relation") -> ResidualReport:
    """Evaluate one defining relation on a representation.

    The relation is always evaluated as written; whether it is expected to
    hold on the given variant is the caller's concern (that distinction is
    exactly the content of the implication experiments).
    """
    pr = rep.params
    nv = rep.number_values
    mask2 = _mask2(rep)
    if relation == "gd-structure":
        r1 = scaled_deviation([rep.A @ rep.Adag],
                              [np.diag(bracket(nv + pr.s, pr))], mask2)[0]
        r2 = scaled_deviation([rep.Adag @ rep.A],
                              [np.diag(bracket(nv, pr))], mask2)[0]
        res = None if r1 is None else max(r1, r2)
        return _report(suite, relation, rep, res, tol)
    if relation == "number-comm":
        s = pr.s
        r1 = scaled_deviation([rep.Nop @ rep.A, -rep.A @ rep.Nop, s * rep.A],
                              [], mask2)[0]
        r2 = scaled_deviation([rep.Nop @ rep.Adag, -rep.Adag @ rep.Nop,
                               -s * rep.Adag], [], mask2)[0]
        res = None if r1 is None else max(r1, r2)
        return _report(suite, relation, rep, res, tol)
    if relation in ("gchj-a", "gchj-b", "ghy-half", "ghy-full"):
        lhs, rhs = _relation_terms(rep, relation)
        res = scaled_deviation(lhs, rhs, mask2)[0]
        return _report(suite, relation, rep, res, tol)
    if relation in CASIMIR_RELATIONS:
        return _casimir_check(rep, relation, tol, suite)
    raise KeyError(f"unknown relation {relation!r}")


def _casimir_check(rep: FockRep, relation: str, tol: float,
                   suite: str) -> ResidualReport:
    pr = rep.params
    mask2 = _mask2(rep)
    if relation.startswith("c1"):
        C = casimir_c1(rep)
    else:
        C = casimir_c2(rep)

    if relation in ("c1-commutes", "c2-commutes"):
        res = _commutator_residual(C, rep)
        doc = relation == "c2-commutes" and rep.nu0 != 0
        note = ""
        if doc:
            note = ("additive-shift ladder closes the symmetric-weight "
                    "relation only on the p**-alpha q**gamma = 1 surface, so "
                    "the invariance of c2 degrades off it; reported, not gated")
        return _report(suite, relation, rep, res, tol, note=note, doc=doc)

    if relation == "c1-eigenvalue":
        expected = pr.p ** (pr.alpha * rep.nu0) * bracket(float(rep.nu0), pr)
        res = scaled_deviation([C], [expected * np.eye(rep.dim)], mask2)[0]
        return _report(suite, relation, rep, res, tol,
                       note=f"expected constant diagonal {expected!r}")

    if relation == "c1-witness":
        # executable non-implication: for nu0 != 0 the invariant stays far
        # from zero, so the weighted relation cannot force the canonical one
        res = scaled_deviation([C], [], mask2)[0]
        if res is None:
            return _report(suite, relation, rep, None, tol)
        threshold = 0.1
        verdict = PASS if (res > threshold if rep.nu0 != 0 else res <= tol) else FAIL
        return ResidualReport(suite=suite, check=relation,
                              params=pr.as_dict(), variant=rep.variant.value,
                              dim=rep.dim, nu0=rep.nu0, residual=float(res),
                              tolerance=threshold, verdict=verdict,
                              note="pass requires deviation from zero above "
                                   "0.1 when nu0 is nonzero")

    if relation == "c2-eigenvalue":
        p, q = pr.p, pr.q
        nv = rep.number_values
        w = (p ** pr.alpha * q ** (-pr.gamma)) ** nv
        derived = np.diag(-w * bracket(float(rep.nu0), pr))
        occ = rep.occupations
        w_occ = (p ** pr.alpha * q ** (-pr.gamma)) ** occ
        printed = np.diag(w_occ * bracket(float(rep.nu0), pr))
        res_derived = scaled_deviation([C], [derived], mask2)[0]
        res_printed = scaled_deviation([C], [printed], mask2)[0]
        if res_derived is None:
            return _report(suite, relation, rep, None, tol)
        doc = rep.nu0 != 0
        note = (f"derived eigenvalue -(p**a q**-g)**N [nu0] deviates by "
                f"{res_derived:.3e}; the commonly quoted "
                f"+(p**a q**-g)**n [nu0] deviates by {res_printed:.3e} "
                "(sign and shift differ)") if doc else ""
        return _report(suite, relation, rep, res_derived, tol, note=note,
                       extra={"printed_form_residual": res_printed}, doc=doc)

    raise KeyError(relation)


# -- implication experiments --------------------------------------------------

def implication_experiment(which: str, params: DeformationParams, dim: int,
                           nu0: float = 1.0, tol: float = 1e-10,
                           suite: str = "implications") -> ResidualReport:
    """Executable dependence analysis between the algebra versions."""
    P, Q, s = params.P, params.Q, params.s

    if which == "gd-implies-gchj":
        rep = build_gd(params, dim)
        ra = check_relation(rep, "gchj-a", tol)
        rb = check_relation(rep, "gchj-b", tol)
        res = None if ra.verdict == VACUOUS else max(ra.residual, rb.residual)
        return _report(suite, which, rep, res, tol,
                       note="canonical structure-function rep satisfies both "
                            "weighted relations")

    if which == "gchj-casimir-reconstruct":
        rep = build_gchj_shifted(params, dim, nu0)
        C = casimir_c1(rep)
        nv = rep.number_values
        mask2 = _mask2(rep)
        r1 = scaled_deviation(
            [rep.Adag @ rep.A],
            [np.diag(bracket(nv, params)), -np.diag(P ** nv) @ C], mask2)[0]
        r2 = scaled_deviation(
            [rep.A @ rep.Adag],
            [np.diag(bracket(nv + s, params)), -np.diag(P ** (nv + s)) @ C],
            mask2)[0]
        res = None if r1 is None else max(r1, r2)
        return _report(suite, which, rep, res, tol,
                       note="a+a = [N] - p**(alpha N) -weighted c1 "
                            "reconstruction, and its one-step raise")

    if which == "gchj-to-ghy-correction":
        rep = build_gchj_shifted(params, dim, nu0)
        C = casimir_c1(rep)
        nv = rep.number_values
        mask2 = _mask2(rep)
        lam = (P * Q) ** s
        lhs = [rep.A @ rep.Adag, -lam * (rep.Adag @ rep.A)]
        base = np.diag(bracket(nv + s, params) - lam * bracket(nv, params))
        corr = -np.diag(P ** (nv + s) * (1.0 - Q ** s)) @ C
        res_with = scaled_deviation(lhs, [base, corr], mask2)[0]
        res_without = scaled_deviation(lhs, [base], mask2)[0]
        if res_with is None:
            return _report(suite, which, rep, None, tol)
        return _report(suite, which, rep, res_with, tol,
                       note=f"omitting the c1 correction leaves residual "
                            f"{res_without:.3e}",
                       extra={"uncorrected_residual": res_without})

    if which == "ghy-to-gchj-correction":
        rep = build_ghy_shifted(params, dim, nu0)
        C = casimir_c2(rep)
        nv = rep.number_values
        mask2 = _mask2(rep)
        u = np.diag((P * Q) ** nv)
        AAd, AdA = rep.A @ rep.Adag, rep.Adag @ rep.A
        sa, raw_a, scale_a = scaled_deviation(
            [AAd, -P ** s * AdA],
            [np.diag(Q ** nv), (P ** s * (1.0 - Q ** s)) * (C @ u)], mask2)
        sb, _, _ = scaled_deviation(
            [AAd, -Q ** s * AdA],
            [np.diag(P ** nv), (Q ** s * (1.0 - P ** s)) * (C @ u)], mask2)
        if sa is None:
            return _report(suite, which, rep, None, tol)
        res = max(sa, sb)
        # The additive-shift ladder satisfies the corrected identities only
        # where (PQ)**s = 1; elsewhere the deviation is exactly
        # |[nu0]| * |1 - (PQ)**s| on every interior rung.
        predicted = abs(bracket(float(nu0), params) * (1.0 - (P * Q) ** s))
        match = abs(raw_a - predicted) / max(1.0, predicted, scale_a)
        note = (f"corrected identity residual {res:.3e} matches the "
                f"prediction |[nu0]|*|1-(PQ)**s| = {predicted:.6e} "
                f"(agreement {match:.3e}); zero only when nu0 = 0 or "
                f"(p**-alpha q**gamma)**s = 1")
        return ResidualReport(suite=suite, check=which, params=params.as_dict(),
                              variant=rep.variant.value, dim=rep.dim,
                              nu0=rep.nu0, residual=float(res), tolerance=None,
                              verdict=DOC, note=note,
                              extra={"predicted_residual": predicted,
                                     "prediction_agreement": match})

    raise KeyError(f"unknown implication experiment {which!r}")
