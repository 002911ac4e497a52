"""The Gritsenko-Nikulin input data.

Builds the theta components h0, h1 of the weight-12 index-1 Jacobi cusp form,
the weight -1/2 vector-valued form f = (h0, h1)/Delta on the two cosets of
the signature (3,2) lattice, and its j-power multiples.

The cusp form is constructed as the difference of Jacobi-Eisenstein series

    phi = (E4^2 * E_{4,1} - E6 * E_{6,1}) / 144,

whose index-1 coefficients at discriminant D are the Cohen numbers
H(k-1, D) / zeta(3-2k).  Every run validates the resulting table against the
eleven classical reference values C12(0..20); a mismatch is a hard error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .arith import cohen_H, l_value_neg
from .qseries import QSeries, build_delta, build_e4, build_e6, build_j, PrecisionExhausted

Rational = Union[int, Fraction]


class JacobiError(Exception):
    """Base class for failures while building the input forms."""


class ConstructionMismatch(JacobiError):
    """The computed Jacobi coefficients disagree with the reference table."""


class NonIntegralPrincipalPart(JacobiError):
    """A coefficient at a nonpositive exponent is not an integer."""


# classical reference values C12(D) for the weight-12 index-1 cusp form
REFERENCE_C12 = {
    0: 0, 3: 1, 4: 10, 7: -88, 8: -132, 11: 1275,
    12: 736, 15: -8040, 16: -2880, 19: 24035, 20: 13080,
}


@dataclass(frozen=True)
class JacobiCuspCoefficients:
    """Table D -> C12(D), supported on D = 0, 3 mod 4, normalized C12(3) = 1."""
    c12: Mapping[int, Fraction]
    max_d: int

    def __getitem__(self, d: int) -> Fraction:
        if d < 0 or d > self.max_d:
            raise KeyError(f"C12({d}) not computed (table reaches {self.max_d})")
        if d % 4 in (1, 2):
            return Fraction(0)
        return self.c12.get(d, Fraction(0))


def _jacobi_eisenstein_components(k: int, prec: Fraction) -> tuple[QSeries, QSeries]:
    """Theta components of the index-1 Jacobi-Eisenstein series of weight k.

    Component mu collects H(k-1, D)/zeta(3-2k) at q^{D/4} over D = -mu mod 4.
    """
    norm = l_value_neg(2 * (k - 1), 1)    # zeta(3 - 2k)
    comps = []
    for mu in (0, 1):
        terms = {}
        d = (4 - mu) % 4
        while Fraction(d, 4) < prec:
            terms[Fraction(d, 4)] = cohen_H(k - 1, d) / norm
            d += 4
        comps.append(QSeries(4, terms, prec))
    return comps[0], comps[1]


def phi12_theta_components(prec: Rational) -> tuple[QSeries, QSeries]:
    """Theta components (h0, h1) of the weight-12 index-1 cusp form.

    h_mu = sum_{D >= 0, D = -mu mod 4} C12(D) q^{D/4}.  The construction is
    checked against the reference table; any disagreement raises
    ConstructionMismatch.
    """
    prec = Fraction(prec)
    if prec <= 0:
        raise ValueError("prec must be positive")
    e41_0, e41_1 = _jacobi_eisenstein_components(4, prec)
    e61_0, e61_1 = _jacobi_eisenstein_components(6, prec)
    e4sq = (build_e4(prec) ** 2).with_den(4)
    e6 = build_e6(prec).with_den(4)
    h0 = (e4sq * e41_0 - e6 * e61_0) * Fraction(1, 144)
    h1 = (e4sq * e41_1 - e6 * e61_1) * Fraction(1, 144)
    _validate_c12(h0, h1)
    return h0, h1


def jacobi_cusp_coefficients(max_d: int) -> JacobiCuspCoefficients:
    """The validated table C12(D) for 0 <= D <= max_d."""
    prec = Fraction(max_d, 4) + Fraction(1, 4)
    h0, h1 = phi12_theta_components(prec)
    table: dict[int, Fraction] = {}
    for h in (h0, h1):
        for e, c in h.items():
            table[int(e * 4)] = c
    return JacobiCuspCoefficients(c12=table, max_d=max_d)


def _validate_c12(h0: QSeries, h1: QSeries) -> None:
    computed: dict[int, Fraction] = {}
    for h, mu in ((h0, 0), (h1, 1)):
        for e, c in h.items():
            d = e * 4
            if d.denominator != 1 or int(d) % 4 != (4 - mu) % 4:
                raise ConstructionMismatch(
                    f"component {mu} carries exponent {e} off its coset")
            if c.denominator != 1:
                raise ConstructionMismatch(f"C12({d}) = {c} is not an integer")
            computed[int(d)] = c
        if Fraction(0) < h.prec and mu == 0 and computed.get(0, Fraction(0)) != 0:
            raise ConstructionMismatch("constant term of h0 must vanish (cusp form)")
    for d, want in REFERENCE_C12.items():
        if Fraction(d, 4) >= min(h0.prec, h1.prec):
            continue
        got = computed.get(d, Fraction(0)) if d % 4 in (0, 3) else Fraction(0)
        if got != want:
            raise ConstructionMismatch(f"C12({d}) = {got}, reference value is {want}")


# ---------------------------------------------------------------------------
# the weight -1/2 vector-valued form and its j-power family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VectorValuedForm:
    """Two-component form (f0, f1) on the cosets mu = 0, 1.

    f0 has integral exponents, f1 exponents in Z - 1/4; all coefficients at
    exponents <= 0 must be integers (they feed divisor multiplicities).
    """
    f0: QSeries
    f1: QSeries
    weight: Fraction
    principal_bound: Fraction

    def __post_init__(self):
        for e, _ in self.f0.items():
            if e.denominator != 1:
                raise JacobiError(f"f0 exponent {e} is not integral")
        for e, _ in self.f1.items():
            if (e + Fraction(1, 4)).denominator != 1:
                raise JacobiError(f"f1 exponent {e} is not in Z - 1/4")
        for comp in (self.f0, self.f1):
            for e, c in comp.items():
                if e <= 0 and c.denominator != 1:
                    raise NonIntegralPrincipalPart(
                        f"coefficient {c} at q^{e} must be an integer")
                if e < -self.principal_bound:
                    raise JacobiError(
                        f"term at q^{e} violates principal bound {self.principal_bound}")

    def component(self, mu: int) -> QSeries:
        if mu == 0:
            return self.f0
        if mu == 1:
            return self.f1
        raise KeyError(f"coset index must be 0 or 1, got {mu}")


def build_vv_form(prec: Rational) -> VectorValuedForm:
    """The weight -1/2 input form f = (h0, h1)/Delta, certified below prec."""
    prec = Fraction(prec)
    if prec <= 0:
        raise ValueError("prec must be positive")
    h0, h1 = phi12_theta_components(prec + 1)
    inv_delta = build_delta(prec + 3).inverse().with_den(4)
    f0 = (h0 * inv_delta).truncate(prec)
    f1 = (h1 * inv_delta).truncate(prec)
    return VectorValuedForm(f0=f0, f1=f1, weight=Fraction(-1, 2),
                            principal_bound=Fraction(1, 4))


def scale_by_j_power(f: VectorValuedForm, t: int) -> VectorValuedForm:
    """Multiply both components by j^t; the principal bound grows by t."""
    if t < 0:
        raise ValueError("t must be a nonnegative integer")
    if t == 0:
        return f
    base_prec = min(f.f0.prec, f.f1.prec)
    out_prec = base_prec - t
    if out_prec <= 0:
        raise PrecisionExhausted(
            f"precision {base_prec} cannot certify the principal part after j^{t}")
    jt = (build_j(base_prec + 2) ** t).with_den(4)
    return VectorValuedForm(
        f0=(f.f0 * jt).truncate(out_prec),
        f1=(f.f1 * jt).truncate(out_prec),
        weight=f.weight,
        principal_bound=f.principal_bound + t,
    )


# ---------------------------------------------------------------------------
# JSON ingestion / serialization
# ---------------------------------------------------------------------------

def vv_form_to_json_dict(f: VectorValuedForm) -> dict:
    return {
        "weight": str(f.weight),
        "components": [
            {"coset": 0, "series": f.f0.to_json_dict()},
            {"coset": 1, "series": f.f1.to_json_dict()},
        ],
    }


def vv_form_from_json_dict(data: dict) -> VectorValuedForm:
    comps: dict[int, QSeries] = {}
    for entry in data["components"]:
        mu = int(entry["coset"])
        if mu not in (0, 1):
            raise JacobiError(f"coset index must be 0 or 1, got {mu}")
        comps[mu] = QSeries.from_json_dict(entry["series"])
    if set(comps) != {0, 1}:
        raise JacobiError("both coset components 0 and 1 are required")
    bound = max(Fraction(0), -comps[0].lo, -comps[1].lo)
    return VectorValuedForm(f0=comps[0], f1=comps[1],
                            weight=Fraction(data["weight"]),
                            principal_bound=bound)


def vv_form_from_json(text: str) -> VectorValuedForm:
    return vv_form_from_json_dict(json.loads(text))
