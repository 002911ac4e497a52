"""Borcherds-form bookkeeping.

Principal-part extraction from a vector-valued input form, the divisor and
weight rules for the associated Borcherds form, the exact weight/degree
identity, and the assembly of the log-norm integral kappa with a full audit
breakdown and closed-form cross-checks for the classical examples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .arith import cohen_H
from .eisen import VOL_X, KappaTerm, degree_Z, kappa_mu
from .jacobi import (NonIntegralPrincipalPart, VectorValuedForm, build_vv_form,
                     scale_by_j_power)
from .lfun import (C0_SYMBOLIC, C_SYMBOLIC, DEFAULT_CONFIG, LogCombination,
                   PrecisionConfig, constants, zeta_logderiv)


class BorcherdsError(Exception):
    """Base class for Borcherds bookkeeping failures."""


class DegreeIdentityViolation(BorcherdsError):
    """The input form fails the exact weight/degree identity; it is not a
    valid Borcherds datum for this lattice."""


@dataclass(frozen=True)
class DivisorTerm:
    m: Fraction
    mu: int
    mult: int


@dataclass(frozen=True)
class Divisor:
    """div(Psi(f)^2) = sum c_mu(-m) Z(m, mu); zero multiplicities are dropped."""
    terms: tuple[DivisorTerm, ...]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{t.mult}*Z({t.m},phi_{t.mu})" for t in self.terms)


def extract_principal_part(f: VectorValuedForm) -> dict[tuple[Fraction, int], int]:
    """Coefficients c_mu(-m) at nonpositive exponents, keyed by (m >= 0, mu).

    The constant c_0(0) is always present.  Raises NonIntegralPrincipalPart
    if any such coefficient fails to be an integer.
    """
    for comp in (f.f0, f.f1):
        if comp.prec <= 0:
            raise BorcherdsError("precision must cover the nonpositive exponents")
    out: dict[tuple[Fraction, int], int] = {(Fraction(0), 0): 0}
    for mu in (0, 1):
        for e, c in f.component(mu).items():
            if e > 0:
                continue
            if c.denominator != 1:
                raise NonIntegralPrincipalPart(
                    f"coefficient {c} at q^{e} of component {mu} is not an integer")
            out[(-e, mu)] = int(c)
    return out


def divisor_of_psi(f: VectorValuedForm) -> Divisor:
    """div(Psi(f)^2) with multiplicities c_mu(-m), m > 0."""
    pp = extract_principal_part(f)
    terms = [DivisorTerm(m=m, mu=mu, mult=c)
             for (m, mu), c in sorted(pp.items()) if m > 0 and c != 0]
    return Divisor(terms=tuple(terms))


def weight_of_psi_squared(f: VectorValuedForm) -> Fraction:
    """Weight of Psi(f)^2, namely the constant coefficient c_0(0)."""
    return Fraction(extract_principal_part(f)[(Fraction(0), 0)])


def degree_identity_check(f: VectorValuedForm) -> tuple[Fraction, Fraction, bool]:
    """Exact check of -120 sum c_mu(-m) H(2, 4m) = c_0(0).

    Returns (lhs, rhs, pass); both sides are exact rationals and the check
    is equality, no tolerance.
    """
    pp = extract_principal_part(f)
    lhs = Fraction(0)
    for (m, mu), c in pp.items():
        if m > 0:
            lhs += c * cohen_H(2, int(4 * m))
    lhs = -120 * lhs
    rhs = Fraction(pp[(Fraction(0), 0)])
    return lhs, rhs, lhs == rhs


@dataclass(frozen=True)
class ClosedFormCheck:
    name: str
    closed_form: mpf
    difference: mpf


@dataclass(frozen=True)
class KappaReport:
    """Full audit record for one Borcherds form."""
    weight_half: Fraction                        # c_0(0)/2, weight of Psi(f)
    weight: Fraction                             # c_0(0), weight of Psi(f)^2
    divisor: Divisor
    degree_lhs: Fraction                         # sum c_mu(-m) deg Z(m, mu)
    degree_rhs: Fraction                         # -vol(X) c_0(0)
    kappa: mpf
    breakdown: tuple[tuple[Fraction, int, int, KappaTerm], ...]
    constant_contribution: mpf                   # c_0(0) * C0/2
    closed_form_check: ClosedFormCheck | None


def kappa_psi(f: VectorValuedForm, cfg: PrecisionConfig = DEFAULT_CONFIG) -> KappaReport:
    """kappa(Psi(f)) = sum_{mu, m>0} c_mu(-m) kappa_mu(m) + c_0(0) C0/2.

    The exact weight/degree identity is a precondition: failure means the
    input is not modular of the right type for this lattice and raises
    DegreeIdentityViolation.  For the t = 0 input (principal part
    q^{-1/4} on coset 1, constant 10) the report carries the closed-form
    comparison 10 [-4/3 - 2 zeta'(-3)/zeta(-3) + zeta'(-1)/zeta(-1)
    + (3/2) log 2 + log pi].
    """
    lhs, rhs, ok = degree_identity_check(f)
    if not ok:
        raise DegreeIdentityViolation(
            f"weight/degree identity fails: -120 sum c H = {lhs} but c_0(0) = {rhs}")
    pp = extract_principal_part(f)
    c00 = pp[(Fraction(0), 0)]
    degree_lhs = Fraction(0)
    breakdown = []
    with mp.workdps(cfg.wdps):
        kappa = mpf(0)
        for (m, mu), c in sorted(pp.items()):
            if m <= 0 or c == 0:
                continue
            degree_lhs += c * degree_Z(mu, m)
            term = kappa_mu(mu, m, cfg)
            breakdown.append((m, mu, c, term))
            kappa += c * term.numeric
        const = c00 * constants(cfg).C0 / 2
        kappa += const
        degree_rhs = -VOL_X * c00
        # the two degree normalizations must agree exactly for genuine inputs
        if degree_lhs != degree_rhs:
            raise DegreeIdentityViolation(
                f"degree mismatch: sum c deg Z = {degree_lhs} vs -vol(X) c_0(0) = {degree_rhs}")
        check = None
        if _is_t0_input(pp):
            cf = 10 * (-mpf(4) / 3 - 2 * zeta_logderiv(-3, cfg)
                       + zeta_logderiv(-1, cfg)
                       + mpf(3) / 2 * mp.log(2) + mp.log(mp.pi))
            check = ClosedFormCheck(name="t0_closed_form", closed_form=cf,
                                    difference=kappa - cf)
    return KappaReport(
        weight_half=Fraction(c00, 2),
        weight=Fraction(c00),
        divisor=divisor_of_psi(f),
        degree_lhs=degree_lhs,
        degree_rhs=degree_rhs,
        kappa=kappa,
        breakdown=tuple(breakdown),
        constant_contribution=const,
        closed_form_check=check,
    )


def _is_t0_input(pp: dict[tuple[Fraction, int], int]) -> bool:
    nonzero = {k: c for k, c in pp.items() if c != 0}
    return nonzero == {(Fraction(0), 0): 10, (Fraction(1, 4), 1): 1}


# the exact symbolic reduction used by the closed form: 10 C + 5 C0 = 15 log 2 + 10 log pi
T0_CONSTANT_IDENTITY = (
    C_SYMBOLIC.scale(10) + C0_SYMBOLIC.scale(5),
    LogCombination({"log2": Fraction(15), "logpi": Fraction(10)}),
)


def borcherds_family_form(t: int, prec) -> VectorValuedForm:
    """The input form j^t * f of the classical family, certified below prec - t."""
    return scale_by_j_power(build_vv_form(prec), t)


# ||Psi||^2 = 2^{-12} |Delta_5|^2 2^5 det(y)^5: the norm shift is -7 log 2
DELTA5_NORM_SHIFT = LogCombination({"log2": Fraction(-7)})


def delta5_normalization(cfg: PrecisionConfig = DEFAULT_CONFIG,
                         prec=12) -> mpf:
    """kappa(Psi(f)) - 7 log 2 for the t = 0 input.

    This is the volume-normalized integral -vol(X)^{-1} int log(|Delta_5|^2
    det(y)^5) of the weight-5 Siegel cusp form, obtained from kappa by the
    norm shift log||Psi||^2 = log(|Delta_5|^2 det(y)^5) - 7 log 2.
    """
    report = kappa_psi(build_vv_form(prec), cfg)
    with mp.workdps(cfg.wdps):
        return report.kappa + DELTA5_NORM_SHIFT.evaluate(cfg)


# ---------------------------------------------------------------------------
# JSON rendering of reports
# ---------------------------------------------------------------------------

def kappa_report_to_json_dict(report: KappaReport, digits: int) -> dict:
    def num(x):
        return mp.nstr(x, digits, strip_zeros=False)

    terms = []
    for m, mu, c, term in report.breakdown:
        entry = {
            "m": str(m), "mu": mu, "coefficient": c,
            "kappa_mu": num(term.numeric),
        }
        if term.breakdown is not None:
            bd = term.breakdown
            entry["breakdown"] = {
                "prefactor_120H": str(bd.prefactor),
                "const_block": num(bd.const_block),
                "log_d_term": num(bd.log_d_term),
                "l_logderiv_term": num(bd.l_logderiv_term),
                "conductor": bd.conductor,
                "discriminant": bd.discriminant,
                "prime_terms": [
                    {"p": t.p, "log_coeff": str(t.coeff), "value": num(t.value)}
                    for t in bd.prime_terms
                ],
            }
        terms.append(entry)
    out = {
        "weight_psi_squared": str(report.weight),
        "weight_psi_half": str(report.weight_half),
        "divisor": [
            {"m": str(t.m), "mu": t.mu, "mult": t.mult} for t in report.divisor.terms
        ],
        "degree_check": {
            "lhs_sum_c_degZ": str(report.degree_lhs),
            "rhs_minus_vol_c00": str(report.degree_rhs),
            "pass": report.degree_lhs == report.degree_rhs,
        },
        "kappa": num(report.kappa),
        "constant_contribution": num(report.constant_contribution),
        "digits": digits,
        "terms": terms,
    }
    if report.closed_form_check is not None:
        out["closed_form_check"] = {
            "name": report.closed_form_check.name,
            "closed_form": num(report.closed_form_check.closed_form),
            "difference": num(report.closed_form_check.difference),
        }
    return out
