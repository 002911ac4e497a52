"""Exact truncated Laurent series in q with fractional exponents.

A QSeries stores finitely many terms c * q^e with exact rational
coefficients, where every exponent e lies on the lattice (1/den)*Z and
satisfies lo <= e < prec.  The precision bound prec travels with the value:
every arithmetic operation computes the largest precision it can certify
from its inputs (for a product of series with precisions p1, p2 and lowest
exponents l1, l2, that is min(p1 + l2, p2 + l1)), so underflow of working
precision is detected where it happens and not at comparison time.

Coefficients are python Fractions throughout; nothing here ever rounds.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Mapping, Union

Rational = Union[int, Fraction]


class QSeriesError(Exception):
    """Base class for q-series failures."""


class ZeroLeadingCoefficient(QSeriesError):
    """Raised when inverting a series that is zero to its precision."""


class PrecisionExhausted(QSeriesError):
    """Raised when the truncation discipline cannot certify a requested precision."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class QSeries:
    """Immutable sparse Laurent series on the exponent lattice (1/den)*Z.

    For the empty (identically zero up to prec) series, ``lo`` is set to
    ``prec``: the series is known to vanish below its precision bound, and
    the truncation rules remain valid with that convention.
    """

    __slots__ = ("den", "lo", "prec", "_coeffs")

    def __init__(self, den: int, terms, prec: Rational):
        den = int(den)
        if den < 1:
            raise ValueError("den must be a positive integer")
        prec = _frac(prec)
        items = terms.items() if isinstance(terms, Mapping) else terms
        coeffs: dict[Fraction, Fraction] = {}
        for e, c in items:
            e = _frac(e)
            c = _frac(c)
            if (e * den).denominator != 1:
                raise ValueError(f"exponent {e} not on the lattice (1/{den})Z")
            if c == 0 or e >= prec:
                continue
            coeffs[e] = c
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "_coeffs", dict(sorted(coeffs.items())))
        object.__setattr__(self, "lo", min(coeffs) if coeffs else prec)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, den: int = 1, prec: Rational = 0) -> "QSeries":
        return cls(den, {}, prec)

    @classmethod
    def one(cls, den: int = 1, prec: Rational = 1) -> "QSeries":
        return cls(den, {Fraction(0): Fraction(1)}, prec)

    @classmethod
    def monomial(cls, exponent: Rational, coeff: Rational, den: int, prec: Rational) -> "QSeries":
        return cls(den, {_frac(exponent): _frac(coeff)}, prec)

    # -- inspection ---------------------------------------------------

    def coefficient(self, e: Rational) -> Fraction:
        e = _frac(e)
        if e >= self.prec:
            raise PrecisionExhausted(f"exponent {e} is beyond precision {self.prec}")
        return self._coeffs.get(e, Fraction(0))

    def items(self):
        """Terms as (exponent, coefficient) pairs in ascending exponent order."""
        return tuple(self._coeffs.items())

    def support(self):
        return tuple(self._coeffs.keys())

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.prec == other.prec and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.prec, tuple(self._coeffs.items())))

    def agrees_with(self, other: "QSeries", below: Rational | None = None) -> bool:
        """Coefficientwise equality below min(self.prec, other.prec, below)."""
        bound = min(self.prec, other.prec)
        if below is not None:
            bound = min(bound, _frac(below))
        for e, c in self._coeffs.items():
            if e < bound and other._coeffs.get(e, 0) != c:
                return False
        for e, c in other._coeffs.items():
            if e < bound and self._coeffs.get(e, 0) != c:
                return False
        return True

    # -- structural helpers -------------------------------------------

    def truncate(self, new_prec: Rational) -> "QSeries":
        """Shrink the precision bound (never extend it)."""
        new_prec = _frac(new_prec)
        if new_prec > self.prec:
            raise PrecisionExhausted(
                f"cannot extend precision from {self.prec} to {new_prec}")
        return QSeries(self.den, self._coeffs, new_prec)

    def with_den(self, den: int) -> "QSeries":
        """Re-declare the exponent lattice; den must keep all exponents integral."""
        return QSeries(den, self._coeffs, self.prec)

    def shift(self, delta: Rational) -> "QSeries":
        """Multiply by q^delta (exact, precision moves with the terms)."""
        delta = _frac(delta)
        if (delta * self.den).denominator != 1:
            raise ValueError(f"shift {delta} leaves the lattice (1/{self.den})Z")
        return QSeries(self.den, {e + delta: c for e, c in self._coeffs.items()},
                       self.prec + delta)

    # -- ring operations ----------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries(self.den, {e: -c for e, c in self._coeffs.items()}, self.prec)

    def __add__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            # exact scalar: known at every exponent, precision is untouched
            c0 = self._coeffs.get(Fraction(0), Fraction(0)) + other
            coeffs = dict(self._coeffs)
            coeffs[Fraction(0)] = c0
            return QSeries(self.den, coeffs, self.prec)
        if not isinstance(other, QSeries):
            return NotImplemented
        den = lcm(self.den, other.den)
        prec = min(self.prec, other.prec)
        coeffs = dict(self._coeffs)
        for e, c in other._coeffs.items():
            coeffs[e] = coeffs.get(e, Fraction(0)) + c
        return QSeries(den, coeffs, prec)

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return QSeries(self.den, {e: c * other for e, c in self._coeffs.items()},
                           self.prec)
        if not isinstance(other, QSeries):
            return NotImplemented
        den = lcm(self.den, other.den)
        prec = min(self.prec + other.lo, other.prec + self.lo)
        out: dict[Fraction, Fraction] = {}
        for ea, ca in self._coeffs.items():
            for eb, cb in other._coeffs.items():
                e = ea + eb
                if e >= prec:
                    continue
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return QSeries(den, out, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return QSeries.one(self.den, self.prec)
        result = None
        base = self
        k = n
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "QSeries":
        """Multiplicative inverse: b with self*b = 1 to the certified precision.

        If self is known below prec with valuation v, the inverse is certified
        below prec - 2v and has lowest exponent -v.
        """
        if self.is_zero:
            raise ZeroLeadingCoefficient("cannot invert a series with no tracked terms")
        v = self.lo
        lead = self._coeffs[v]
        # unit part u = (self / lead) >> v has constant term 1 and valuation 0;
        # invert it by the division recurrence on the integer index grid e*den.
        den = self.den
        unit: dict[int, Fraction] = {}
        for e, c in self._coeffs.items():
            unit[int((e - v) * den)] = c / lead
        unit_prec = self.prec - v           # unit part is certified below this
        out_prec = self.prec - 2 * v
        steps = (unit_prec * den)
        nsteps = int(steps) if steps.denominator == 1 else int(steps) + 1
        inv = [Fraction(0)] * max(nsteps, 0)
        if nsteps > 0:
            inv[0] = Fraction(1)
            supp = sorted(k for k in unit if 0 < k < nsteps)
            for k in range(1, nsteps):
                acc = Fraction(0)
                for j in supp:
                    if j > k:
                        break
                    cj = inv[k - j]
                    if cj:
                        acc += unit[j] * cj
                if acc:
                    inv[k] = -acc
        coeffs = {Fraction(k, den) - v: c / lead for k, c in enumerate(inv) if c}
        return QSeries(den, coeffs, out_prec)

    # -- rendering ----------------------------------------------------

    def text(self) -> str:
        if self.is_zero:
            return f"0 + O(q^({self.prec}))"
        parts = [f"{c} * q^({e})" for e, c in self._coeffs.items()]
        return " + ".join(parts) + f" + O(q^({self.prec}))"

    def __repr__(self):
        body = self.text()
        if len(body) > 120:
            body = body[:117] + "..."
        return f"QSeries(den={self.den}, {body})"

    def to_json_dict(self) -> dict:
        return {
            "den": self.den,
            "lo": str(self.lo),
            "prec": str(self.prec),
            "terms": [{"exp": str(e), "coeff": str(c)} for e, c in self._coeffs.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "QSeries":
        terms = [(Fraction(t["exp"]), Fraction(t["coeff"])) for t in data["terms"]]
        return cls(int(data["den"]), terms, Fraction(data["prec"]))

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        return cls.from_json_dict(json.loads(text))


# ---------------------------------------------------------------------------
# builders for the classical level-one series
# ---------------------------------------------------------------------------

def _euler_phi_series(prec: Fraction) -> QSeries:
    # prod_{n>=1} (1 - q^n) via the pentagonal number expansion
    terms = {Fraction(0): Fraction(1)}
    k = 1
    while True:
        e1 = Fraction(k * (3 * k - 1), 2)
        e2 = Fraction(k * (3 * k + 1), 2)
        if e1 >= prec and e2 >= prec:
            break
        sign = Fraction(-1 if k % 2 else 1)
        if e1 < prec:
            terms[e1] = sign
        if e2 < prec:
            terms[e2] = sign
        k += 1
    return QSeries(1, terms, prec)


def build_delta(prec: Rational) -> QSeries:
    """Discriminant cusp form: q * prod_{n>=1} (1 - q^n)^24."""
    prec = _frac(prec)
    if prec < 1:
        raise ValueError("prec must be at least 1")
    phi = _euler_phi_series(prec - 1)
    return (phi ** 24).shift(1)


def _sigma(k: int, n: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            if d != n // d:
                total += (n // d) ** k
        d += 1
    return total


def build_e4(prec: Rational) -> QSeries:
    """Eisenstein series of weight 4: 1 + 240 sum sigma_3(n) q^n."""
    prec = _frac(prec)
    if prec < 1:
        raise ValueError("prec must be at least 1")
    terms = {Fraction(0): Fraction(1)}
    n = 1
    while n < prec:
        terms[Fraction(n)] = Fraction(240 * _sigma(3, n))
        n += 1
    return QSeries(1, terms, prec)


def build_e6(prec: Rational) -> QSeries:
    """Eisenstein series of weight 6: 1 - 504 sum sigma_5(n) q^n."""
    prec = _frac(prec)
    if prec < 1:
        raise ValueError("prec must be at least 1")
    terms = {Fraction(0): Fraction(1)}
    n = 1
    while n < prec:
        terms[Fraction(n)] = Fraction(-504 * _sigma(5, n))
        n += 1
    return QSeries(1, terms, prec)


def build_j(prec: Rational) -> QSeries:
    """Modular j-invariant, E4^3 / Delta = q^-1 + 744 + 196884 q + ..."""
    prec = _frac(prec)
    if prec < 1:
        raise ValueError("prec must be at least 1")
    # Delta has valuation 1, so its inverse loses two exponents of precision
    # and the product with E4^3 one more; build with that much slack.
    work = prec + 3
    e4 = build_e4(work)
    delta = build_delta(work)
    j = (e4 ** 3) * delta.inverse()
    return j.truncate(prec)
