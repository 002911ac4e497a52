"""Eisenstein-coefficient layer for the signature (3,2) instance.

Exact value coefficients a_mu(m) and cycle degrees, the limiting derivative
coefficients kappa_mu(m) with their symbolic breakdowns, the finite-v
derivative coefficients b_mu(m, v), the correction integral J(3/2, t), and
the archimedean Whittaker special values for general signature (n, 2).

Only n = 3 is wired to exact Cohen data; the SignatureContext keeps n
generic so the Whittaker values can serve other lattices.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np
from mpmath import mp, mpf, mpc

from .arith import (cohen_H, factorize, fund_disc_decompose, local_b_logderiv)
from .lfun import (DEFAULT_CONFIG, PrecisionConfig, dirichlet_L_deriv,
                   constants, zeta_logderiv, _log_int)

Rational = Union[int, Fraction]


class EisenError(Exception):
    """Base class for Eisenstein-layer failures."""


class UnsupportedSignature(EisenError):
    """Exact coefficient data is wired for n = 3 only."""


class NonPositiveT(EisenError):
    """The correction integral needs t > 0."""


class MissingLFactor(EisenError):
    """b_mu at m < 0 needs a caller-supplied value of L(2, chi_m)."""


# ---------------------------------------------------------------------------
# signature context
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignatureContext:
    """Shape data for signature (n, 2): s0 = n/2 = ell + 1, weight n/2 + 1.

    vol_x is the exact volume of the arithmetic quotient and is only known
    here for the Siegel-threefold instance n = 3.
    """
    n: int
    ell: Fraction
    s0: Fraction
    weight_e: Fraction
    vol_x: Fraction | None

    def __post_init__(self):
        assert self.s0 == self.ell + 1


def signature_context(n: int) -> SignatureContext:
    if n < 1:
        raise ValueError("n must be a positive integer")
    return SignatureContext(
        n=n,
        ell=Fraction(n, 2) - 1,
        s0=Fraction(n, 2),
        weight_e=Fraction(n, 2) + 1,
        vol_x=Fraction(-1, 1440) if n == 3 else None,
    )


SIEGEL = signature_context(3)

VOL_X = Fraction(-1, 1440)          # zeta(-1) * zeta(-3)
PREFACTOR = 120                     # zeta(-3)^{-1}


def _require_quarter_integral(m: Rational) -> Fraction:
    m = Fraction(m)
    if (4 * m).denominator != 1:
        raise ValueError(f"m must lie on the (1/4)Z grid, got {m}")
    return m


def _to_mpf(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _admissible(mu: int, m: Fraction) -> bool:
    if mu not in (0, 1):
        raise ValueError("coset index must be 0 or 1")
    return int(4 * m) % 4 == mu


# ---------------------------------------------------------------------------
# exact value coefficients and degrees
# ---------------------------------------------------------------------------

def eis_value_coeff(ctx: SignatureContext, mu: int, m: Rational) -> Fraction:
    """Fourier coefficient a_mu(m) of the weight 5/2 series at its value point.

    a_mu(0) = delta_{mu,0}; for m > 0 on the admissible coset the value is
    120 H(2, 4m), otherwise 0.
    """
    if ctx.n != 3:
        raise UnsupportedSignature(f"exact coefficients are wired for n = 3, not n = {ctx.n}")
    m = _require_quarter_integral(m)
    if m < 0:
        raise ValueError("value coefficients are defined for m >= 0")
    if m == 0:
        return Fraction(1) if mu == 0 else Fraction(0)
    if not _admissible(mu, m):
        return Fraction(0)
    return PREFACTOR * cohen_H(2, int(4 * m))


def degree_Z(mu: int, m: Rational) -> Fraction:
    """Degree of the special cycle Z(m, mu): -(1/12) H(2, 4m) on its coset.

    Equals vol_x * a_mu(m) identically.
    """
    m = _require_quarter_integral(m)
    if m <= 0:
        raise ValueError("cycle degrees are defined for m > 0")
    if not _admissible(mu, m):
        return Fraction(0)
    return Fraction(-1, 12) * cohen_H(2, int(4 * m))


# ---------------------------------------------------------------------------
# kappa_mu(m) with symbolic breakdown
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeTerm:
    """One prime's contribution log|n|_p - b'_p(n,-1)/b_p(n,-1) = coeff * log p."""
    p: int
    coeff: Fraction     # -(ord_p(n) + logderiv coefficient)
    value: mpf


@dataclass(frozen=True)
class KappaBreakdown:
    """Named contributions: kappa = prefactor * (sum of the blocks)."""
    prefactor: Fraction            # 120 H(2, 4m)
    const_block: mpf               # 4/3 + 2 zeta'(-3)/zeta(-3) - C
    log_d_term: mpf                # -(1/2) log d
    l_logderiv_term: mpf           # -L'(-1, chi_d)/L(-1, chi_d)
    prime_terms: tuple[PrimeTerm, ...]
    conductor: int
    discriminant: int

    def bracket(self) -> mpf:
        acc = self.const_block + self.log_d_term + self.l_logderiv_term
        for t in self.prime_terms:
            acc += t.value
        return acc

    def recombined(self) -> mpf:
        pf = mpf(self.prefactor.numerator) / self.prefactor.denominator
        return pf * self.bracket()


@dataclass(frozen=True)
class KappaTerm:
    """kappa_mu(m) with its audit breakdown; zero off the admissible coset."""
    m: Fraction
    mu: int
    numeric: mpf
    breakdown: KappaBreakdown | None


def _const_block(cfg: PrecisionConfig) -> mpf:
    with mp.workdps(cfg.wdps):
        return (mpf(4) / 3 + 2 * zeta_logderiv(-3, cfg) - constants(cfg).C)


def kappa_mu(mu: int, m: Rational, cfg: PrecisionConfig = DEFAULT_CONFIG) -> KappaTerm:
    """The limiting derivative Laurent coefficient kappa_mu(m).

    For m > 0 on the admissible coset 4m = mu mod 4, with 4m = n^2 d:

        120 H(2,4m) [ 4/3 + 2 zeta'(-3)/zeta(-3) - (1/2) log d
                      - L'(-1,chi_d)/L(-1,chi_d) - C
                      + sum_{p|n} (log|n|_p - b'_p(n,-1)/b_p(n,-1)) ]

    where log|n|_p = -ord_p(n) log p.  For m = 0: (1/2) C0 on coset 0.
    """
    m = _require_quarter_integral(m)
    with mp.workdps(cfg.wdps):
        if m == 0:
            value = constants(cfg).C0 / 2 if mu == 0 else mpf(0)
            return KappaTerm(m=m, mu=mu, numeric=value, breakdown=None)
        if m < 0 or not _admissible(mu, m):
            return KappaTerm(m=m, mu=mu, numeric=mpf(0), breakdown=None)
        dec = fund_disc_decompose(m)
        prefactor = PREFACTOR * cohen_H(2, int(4 * m))
        log_d = -mp.log(dec.d) / 2 if dec.d != 1 else mpf(0)
        l_term = -dirichlet_L_deriv(-1, dec.d, cfg).logderiv
        primes = []
        for p, k in sorted(factorize(dec.n).items()):
            coeff = -(k + local_b_logderiv(p, dec.n, dec.d))
            primes.append(PrimeTerm(
                p=p, coeff=coeff,
                value=mpf(coeff.numerator) / coeff.denominator * _log_int(p)))
        breakdown = KappaBreakdown(
            prefactor=prefactor,
            const_block=_const_block(cfg),
            log_d_term=log_d,
            l_logderiv_term=l_term,
            prime_terms=tuple(primes),
            conductor=dec.n,
            discriminant=dec.d,
        )
        numeric = breakdown.recombined()
        return KappaTerm(m=m, mu=mu, numeric=numeric, breakdown=breakdown)


# ---------------------------------------------------------------------------
# the correction integral J(3/2, t)
# ---------------------------------------------------------------------------

def _integrand_factor(r: mpf) -> mpf:
    # ((1+r)^{3/2} - 1)/r, stable for tiny r; limit 3/2 at r = 0
    if r == 0:
        return mpf(3) / 2
    return mp.expm1(mpf(3) / 2 * mp.log1p(r)) / r


def j_integral(t, cfg: PrecisionConfig = DEFAULT_CONFIG) -> mpf:
    """J(3/2, t) = int_0^infty e^{-tr} ((1+r)^{3/2} - 1)/r dr for t > 0.

    Tanh-sinh quadrature on [0, R] with R chosen so the dropped tail,
    bounded by 2^{3/2} t^{-3/2} (sqrt(tR)+1) e^{-tR}, is far below the digit
    target.  Decays like 3/(2t) as t grows.
    """
    with mp.workdps(cfg.wdps):
        t = _to_mpf(t)
        if t <= 0:
            raise NonPositiveT(f"t must be positive, got {t}")
        R = (mp.log(10) * cfg.wdps + 30) / t
        points = sorted({mpf(0), min(1 / t, R / 2), min(10 / t, 3 * R / 4), R})
        val = mp.quad(lambda r: mp.exp(-t * r) * _integrand_factor(r), points)
        tail = 2 ** mpf("1.5") * t ** mpf("-1.5") * (mp.sqrt(t * R) + 1) * mp.exp(-t * R)
        if tail > cfg.tail_target():
            raise EisenError(f"truncation tail bound {tail} exceeds the digit target")
        return val


_LAGUERRE_CACHE: dict[tuple[int, int], tuple[list[mpf], list[mpf]]] = {}


def _gauss_laguerre_rule(order: int) -> tuple[list[mpf], list[mpf]]:
    """Nodes and weights for weight e^{-x} on [0, inf), refined to mp precision.

    float64 nodes seed a Newton iteration on the Laguerre recurrence; the
    weights use w_i = x_i / ((order+1) L_{order+1}(x_i))^2.
    """
    key = (order, mp.dps)
    cached = _LAGUERRE_CACHE.get(key)
    if cached is not None:
        return cached
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")     # numpy's own weight step overflows; only nodes are used
        seeds, _ = np.polynomial.laguerre.laggauss(order)
    nodes, weights = [], []
    tol = mpf(10) ** (-mp.dps + 3)
    for seed in seeds:
        x = mpf(float(seed))
        for _ in range(80):
            lkm1, lk = mpf(1), 1 - x
            for k in range(1, order):
                lkm1, lk = lk, ((2 * k + 1 - x) * lk - k * lkm1) / (k + 1)
            step = lk / (order * (lk - lkm1) / x)
            x -= step
            if abs(step) <= tol * max(abs(x), mpf(1)):
                break
        lkm1, lk = mpf(1), 1 - x
        for k in range(1, order + 1):
            lkm1, lk = lk, ((2 * k + 1 - x) * lk - k * lkm1) / (k + 1)
        nodes.append(x)
        weights.append(x / ((order + 1) * lk) ** 2)
    _LAGUERRE_CACHE[key] = (nodes, weights)
    return nodes, weights


def j_integral_gauss_laguerre(t, cfg: PrecisionConfig = DEFAULT_CONFIG,
                              order: int = 250) -> mpf:
    """Oracle evaluation of J(3/2, t) by Gauss-Laguerre after r -> x/t."""
    with mp.workdps(cfg.wdps):
        t = _to_mpf(t)
        if t <= 0:
            raise NonPositiveT(f"t must be positive, got {t}")
        nodes, weights = _gauss_laguerre_rule(order)
        return sum(w * _integrand_factor(x / t) for x, w in zip(nodes, weights)) / t


# ---------------------------------------------------------------------------
# the finite-v derivative coefficients b_mu(m, v)
# ---------------------------------------------------------------------------

def incomplete_tail_integral(a, cfg: PrecisionConfig = DEFAULT_CONFIG) -> mpf:
    """int_1^infty e^{-ar} r^{-3/2} dr, computed as e^{-a} int_0^infty
    e^{-au} (1+u)^{-3/2} du so the quadrature works on an O(1) integrand.

    Equals sqrt(a) * Gamma(-1/2, a), which tests use as the oracle.
    """
    with mp.workdps(cfg.wdps):
        a = _to_mpf(a)
        if a <= 0:
            raise NonPositiveT(f"decay rate must be positive, got {a}")
        R = (mp.log(10) * cfg.wdps + 30) / a
        points = sorted({mpf(0), min(1 / a, R / 2), R})
        core = mp.quad(lambda u: mp.exp(-a * u) * (1 + u) ** mpf("-1.5"), points)
        return mp.exp(-a) * core


def b_mu(mu: int, m: Rational, v, cfg: PrecisionConfig = DEFAULT_CONFIG,
         neg_l_factor=None) -> mpf:
    """Second Laurent coefficient b_mu(m, v) of the weight 5/2 series.

    m > 0 (admissible): 120 H(2,4m) [kappa bracket + J(3/2, 4 pi m v)/2];
    m = 0: (1/2) log v - (pi/6)(zeta(3)/zeta(4)) v^{-3/2} on coset 0, else 0;
    m < 0 (admissible): -(pi^2/3) (L(2,chi_m)/zeta(4)) (pi v)^{-3/2}
                        int_1^infty e^{-4 pi |m| v r} r^{-3/2} dr,
    with L(2, chi_m) supplied by the caller (MissingLFactor otherwise).
    """
    m = _require_quarter_integral(m)
    with mp.workdps(cfg.wdps):
        v = _to_mpf(v)
        if v <= 0:
            raise ValueError("v must be positive")
        if m == 0:
            if mu != 0:
                return mpf(0)
            cs = constants(cfg)
            return mp.log(v) / 2 - (cs.pi / 6) * (cs.zeta3 / cs.zeta4) * v ** mpf("-1.5")
        if not _admissible(mu, m):
            return mpf(0)
        if m > 0:
            term = kappa_mu(mu, m, cfg)
            jv = j_integral(4 * mp.pi * mpf(m.numerator) / m.denominator * v, cfg)
            pf = term.breakdown.prefactor
            return term.numeric + mpf(pf.numerator) / pf.denominator * jv / 2
        if neg_l_factor is None:
            raise MissingLFactor(
                "b_mu at m < 0 needs the caller to supply L(2, chi_m)")
        cs = constants(cfg)
        a = 4 * mp.pi * abs(mpf(m.numerator) / m.denominator) * v
        tail = incomplete_tail_integral(a, cfg)
        return (-(cs.pi ** 2) / 3 * mpf(neg_l_factor) / cs.zeta4
                * (cs.pi * v) ** mpf("-1.5") * tail)


# ---------------------------------------------------------------------------
# archimedean Whittaker special values (general n)
# ---------------------------------------------------------------------------

def whittaker_arch(ctx: SignatureContext, m: Rational, tau: tuple,
                   cfg: PrecisionConfig = DEFAULT_CONFIG,
                   derivative: bool = False) -> mpc:
    """Archimedean Whittaker value (or its s-derivative) at s0 = n/2.

    tau = (u, v) with v > 0; q^m = e^{2 pi i m (u + iv)}.  Principal branches
    throughout; callers should assert only absolute values and ratios.

    value:       m > 0: ((-2i)^{n/2+1} / Gamma(n/2+1)) m^{n/2} q^m
                 m < 0: 0
                 m = 0: 0  (the closed form vanishes at s = s0)
    derivative:  m < 0: pi (-i)^{-n/2-1} 2^{-n/2} q^m v^{-n/2}
                        int_1^infty e^{-4 pi |m| v r} r^{-n/2-1} dr
                 m = 0: pi (-i)^{n/2+1} 2^{-n/2} v^{-n/2} Gamma(n/2)/Gamma(n/2+1)
                 m > 0: not provided (no closed form in this layer)
    """
    m = Fraction(m)
    u, v = tau
    with mp.workdps(cfg.wdps):
        u = _to_mpf(u)
        v = _to_mpf(v)
        if v <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        nhalf = mpf(ctx.n) / 2
        mm = mpf(m.numerator) / m.denominator
        qm = mp.exp(2 * mp.pi * mpc(0, 1) * mm * mpc(u, v))
        if not derivative:
            if m > 0:
                return (mp.power(mpc(0, -2), nhalf + 1) / mp.gamma(nhalf + 1)
                        * mm ** nhalf * qm)
            return mpc(0)
        if m > 0:
            raise NotImplementedError(
                "the s-derivative closed form is provided for m <= 0 only")
        if m == 0:
            return (mp.pi * mp.power(mpc(0, -1), nhalf + 1) * 2 ** (-nhalf)
                    * v ** (-nhalf) * mp.gamma(nhalf) / mp.gamma(nhalf + 1))
        a = 4 * mp.pi * abs(mm) * v
        R = (mp.log(10) * cfg.wdps + 30) / a
        integral = mp.exp(-a) * mp.quad(
            lambda w: mp.exp(-a * w) * (1 + w) ** (-nhalf - 1),
            sorted({mpf(0), min(1 / a, R / 2), R}))
        return (mp.pi * mp.power(mpc(0, -1), -nhalf - 1) * 2 ** (-nhalf)
                * qm * v ** (-nhalf) * integral)


def whittaker_zero_value(ctx: SignatureContext, s, v,
                         cfg: PrecisionConfig = DEFAULT_CONFIG) -> mpc:
    """The constant-term Whittaker factor at general real s:

        2 pi (-i)^{n/2+1} v^{-(s+n/2)/2} 2^{-s}
            Gamma(s) (s - n/2)/2 / (Gamma((s+n/2+2)/2) Gamma((s-n/2+2)/2)).

    Vanishes at s = s0 = n/2; its s-derivative there is the m = 0 derivative
    value returned by whittaker_arch.
    """
    with mp.workdps(cfg.wdps):
        s = _to_mpf(s)
        v = _to_mpf(v)
        nhalf = mpf(ctx.n) / 2
        return (2 * mp.pi * mp.power(mpc(0, -1), nhalf + 1)
                * v ** (-(s + nhalf) / 2) * 2 ** (-s)
                * mp.gamma(s) * (s - nhalf) / 2
                / (mp.gamma((s + nhalf + 2) / 2) * mp.gamma((s - nhalf + 2) / 2)))
