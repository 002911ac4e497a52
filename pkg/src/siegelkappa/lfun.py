"""High-precision numerics.

Hurwitz zeta with s-derivative by Euler-Maclaurin summation, Dirichlet
L-functions and their derivatives at real points (s = -1 in particular),
zeta'/zeta at -1 and -3, and the archimedean constants gamma, C, C0.

The Euler-Maclaurin path is the primary evaluation route: it is uniform in
s, valid on the real line away from s = 1, and yields the s-derivative by
termwise differentiation.  A functional-equation route exists as an oracle;
it transports values from the convergent region s > 1 and, for spot checks,
can take its input from mpmath's own zeta implementation.

Error estimates are heuristic Euler-Maclaurin tail bounds (first omitted
correction term, value and derivative parts summed); this module does no
interval arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from mpmath import mp, mpf

from .arith import bernoulli_number, kronecker_chi, is_fundamental_discriminant, NotFundamental

Rational = Union[int, Fraction]

GUARD_DIGITS = 15


class LfunError(Exception):
    """Base class for numeric-layer failures."""


class PoleAtOne(LfunError):
    """Evaluation requested at the pole s = 1."""


class DualPathDisagreement(LfunError):
    """The Euler-Maclaurin and functional-equation routes disagree."""


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision: decimal digits plus Euler-Maclaurin cutoffs.

    em_initial is the number of directly summed terms, em_bernoulli the
    number of Bernoulli correction terms; None lets the engine choose from
    the digit target (and escalate until the tail estimate certifies
    10^-(digits+GUARD-5)).
    """
    digits: int = 50
    em_initial: int | None = None
    em_bernoulli: int | None = None

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("digits must be at least 15")

    @property
    def wdps(self) -> int:
        return self.digits + GUARD_DIGITS

    @property
    def em_fixed(self) -> bool:
        # explicit cutoffs are honored verbatim: no escalation, the caller
        # reads err_estimate and owns the consequences
        return self.em_initial is not None or self.em_bernoulli is not None

    def em_terms(self) -> tuple[int, int]:
        m = self.em_initial if self.em_initial is not None else max(24, int(0.55 * self.wdps) + 6)
        j = self.em_bernoulli if self.em_bernoulli is not None else max(24, int(0.85 * self.wdps) + 6)
        return m, j

    def tail_target(self) -> mpf:
        return mpf(10) ** (-(self.digits + GUARD_DIGITS - 5))


DEFAULT_CONFIG = PrecisionConfig()


@dataclass
class HurwitzResult:
    value: mpf
    deriv: mpf
    err_estimate: mpf


@dataclass
class LDerivResult:
    """Value/derivative pair for an L-function at a real point."""
    value: mpf
    deriv: mpf
    logderiv: mpf
    err_estimate: mpf


# ---------------------------------------------------------------------------
# Euler-Maclaurin core
# ---------------------------------------------------------------------------

def _bern_factor(j: int) -> mpf:
    # B_{2j} / (2j)!  at the current working precision
    b = bernoulli_number(2 * j)
    fact = 1
    for i in range(2, 2 * j + 1):
        fact *= i
    return mpf(b.numerator) / b.denominator / fact


def _poch_sequence(s: mpf, jmax: int) -> list[tuple[mpf, mpf]]:
    """(P_j, P_j') for P_j = s (s+1) ... (s+2j-2), j = 1..jmax.

    The derivative is carried along the product recurrence, so a vanishing
    factor (s at a nonpositive integer) costs nothing: no divisions occur.
    """
    out = []
    p, dp = s, mpf(1)
    out.append((p, dp))
    for j in range(1, jmax):
        a = s + (2 * j - 1)
        b = s + 2 * j
        dp = dp * a * b + p * (a + b)
        p = p * a * b
        out.append((p, dp))
    return out


def _em_tail(s: mpf, x_plus_m: mpf, log_xm: mpf, J: int,
             poch: list[tuple[mpf, mpf]]) -> tuple[mpf, mpf, mpf]:
    """Correction terms of the Euler-Maclaurin formula beyond the plain sum.

    Returns (value part, derivative part, tail estimate) where the parts are

        (x+M)^{1-s}/(s-1) + (x+M)^{-s}/2
            + sum_{j=1}^{J} B_{2j}/(2j)! P_j(s) (x+M)^{1-s-2j}

    and their termwise s-derivatives; the estimate is the magnitude of the
    first omitted correction term (value and derivative parts summed).
    """
    one = mpf(1)
    pow_neg_s = x_plus_m ** (-s)
    pow_1ms = pow_neg_s * x_plus_m
    sm1 = s - 1
    t1 = pow_1ms / sm1
    t1d = pow_1ms * (-log_xm / sm1 - one / (sm1 * sm1))
    t2 = pow_neg_s / 2
    t2d = -log_xm * pow_neg_s / 2
    val = t1 + t2
    dval = t1d + t2d
    w = pow_neg_s / x_plus_m            # (x+M)^{-s-1}
    ratio = one / (x_plus_m * x_plus_m)
    for j in range(1, J + 1):
        p, dp = poch[j - 1]
        bf = _bern_factor(j)
        val += bf * p * w
        dval += bf * (dp - p * log_xm) * w
        w *= ratio
    p, dp = poch[J]
    bf = _bern_factor(J + 1)
    err = abs(bf * p * w) + abs(bf * (dp - p * log_xm) * w)
    return val, dval, err


def hurwitz_zeta_deriv(s: Rational | float, x: Rational | float,
                       cfg: PrecisionConfig = DEFAULT_CONFIG) -> HurwitzResult:
    """Hurwitz zeta(s, x) and d/ds zeta(s, x) for real s != 1 and x in (0, 1].

    Analytic continuation is automatic: the Euler-Maclaurin formula is used
    verbatim at negative s, where the correction series for the value
    terminates (rising factorials vanish) while the derivative series
    remains asymptotic and is cut with a certified-by-estimate tail.
    """
    if s == 1:
        raise PoleAtOne("hurwitz zeta has its pole at s = 1")
    with mp.workdps(cfg.wdps):
        sm = mpf(s) if not isinstance(s, Fraction) else mpf(s.numerator) / s.denominator
        xm = mpf(x) if not isinstance(x, Fraction) else mpf(x.numerator) / x.denominator
        if not 0 < xm <= 1:
            raise ValueError("x must lie in (0, 1]")
        M, J = cfg.em_terms()
        target = cfg.tail_target()
        for _ in range(5):
            val = mpf(0)
            dval = mpf(0)
            for k in range(M):
                xk = xm + k
                lg = mp.log(xk)
                pw = mp.exp(-sm * lg)
                val += pw
                dval -= lg * pw
            xM = xm + M
            log_xm = mp.log(xM)
            poch = _poch_sequence(sm, J + 1)
            tval, tdval, err = _em_tail(sm, xM, log_xm, J, poch)
            if cfg.em_fixed or err <= target:
                return HurwitzResult(value=val + tval, deriv=dval + tdval,
                                     err_estimate=err)
            M = int(M * 1.6) + 8
            J = int(J * 1.4) + 8
        raise LfunError(f"Euler-Maclaurin tail did not reach {target} "
                        f"(last estimate {err})")


# ---------------------------------------------------------------------------
# integer logarithm cache (shared across Dirichlet sweeps)
# ---------------------------------------------------------------------------

_LOG_CACHE: dict[int, tuple[int, mpf]] = {}


def _log_int(n: int) -> mpf:
    entry = _LOG_CACHE.get(n)
    if entry is not None and entry[0] >= mp.dps:
        return entry[1]
    val = mp.log(n)
    _LOG_CACHE[n] = (mp.dps, val)
    return val


def _pow_int_neg_s(n: int, s: int) -> mpf:
    # n^{-s} for integer s, cheap paths for the two hot exponents
    if s == -1:
        return mpf(n)
    if s == 2:
        return mpf(1) / (mpf(n) * n)
    return mp.power(n, -s)


# ---------------------------------------------------------------------------
# Dirichlet L and derivative
# ---------------------------------------------------------------------------

def dirichlet_L_deriv(s: Rational | float, d: int,
                      cfg: PrecisionConfig = DEFAULT_CONFIG) -> LDerivResult:
    """L(s, chi_d) with its s-derivative, via L = sum_a chi(a) |d|^{-s} zeta(s, a/|d|).

    d must be 1 (Riemann zeta) or a fundamental discriminant.  The only pole
    in range is d = 1, s = 1.
    """
    if not is_fundamental_discriminant(d):
        raise NotFundamental(f"{d} is not 1 or a fundamental discriminant")
    if s == 1 and d == 1:
        raise PoleAtOne("zeta has its pole at s = 1")
    f = abs(d)
    with mp.workdps(cfg.wdps):
        if isinstance(s, int):
            value, deriv, err = _dirichlet_em_int(s, d, cfg)
        else:
            value = mpf(0)
            deriv = mpf(0)
            err = mpf(0)
            sm = mpf(s) if not isinstance(s, Fraction) else mpf(s.numerator) / s.denominator
            fpow = mp.power(f, -sm)
            logf = _log_int(f)
            for a in range(1, f + 1):
                chi = kronecker_chi(d, a)
                if chi == 0:
                    continue
                hz = hurwitz_zeta_deriv(s, Fraction(a, f), cfg)
                value += chi * fpow * hz.value
                deriv += chi * fpow * (hz.deriv - logf * hz.value)
                err += abs(fpow) * hz.err_estimate
        if value == 0:
            raise LfunError(f"L({s}, chi_{d}) evaluated to zero; logderiv undefined")
        return LDerivResult(value=value, deriv=deriv, logderiv=deriv / value,
                            err_estimate=err)


def _dirichlet_em_int(s: int, d: int, cfg: PrecisionConfig) -> tuple[mpf, mpf, mpf]:
    """Euler-Maclaurin sweep for integer s, sharing integer-log lookups.

    The initial blocks of all |d| Hurwitz zetas merge into a single Dirichlet
    sum over n <= M|d|; only the correction terms stay per-residue.
    """
    f = abs(d)
    chi_row = [0] + [kronecker_chi(d, a) for a in range(1, f + 1)]
    M, J = cfg.em_terms()
    target = cfg.tail_target()
    logf = _log_int(f)
    for _ in range(5):
        sm = mpf(s)
        value = mpf(0)
        deriv = mpf(0)
        for n in range(1, M * f + 1):
            r = n % f
            chi = chi_row[r if r else f]
            if chi == 0:
                continue
            pw = _pow_int_neg_s(n, s)
            value += chi * pw
            deriv -= chi * pw * _log_int(n)
        poch = _poch_sequence(sm, J + 1)
        fpow = _pow_int_neg_s(f, s)
        err = mpf(0)
        for a in range(1, f + 1):
            chi = chi_row[a]
            if chi == 0:
                continue
            xM = mpf(a + M * f) / f
            log_xm = _log_int(a + M * f) - logf
            tval, tdval, terr = _em_tail(sm, xM, log_xm, J, poch)
            value += chi * fpow * tval
            deriv += chi * fpow * (tdval - logf * tval)
            err += abs(fpow) * terr
        if cfg.em_fixed or err <= target:
            return value, deriv, err
        M = int(M * 1.6) + 8
        J = int(J * 1.4) + 8
    raise LfunError(f"Euler-Maclaurin tail did not reach {target}")


def dirichlet_L_fe_oracle(d: int, cfg: PrecisionConfig = DEFAULT_CONFIG,
                          backend: str = "em") -> LDerivResult:
    """L(-1, chi_d) and L'(-1, chi_d) transported from s = 2 by the functional
    equation of the completed L-function (even character, d > 0 or d = 1):

        Lambda(s) = (|d|/pi)^{s/2} Gamma(s/2) L(s, chi_d) = Lambda(1-s).

    backend "em" computes the s = 2 side with this module's Euler-Maclaurin
    sweep; backend "mpmath" takes it from mpmath's zeta (value and
    derivative), giving a fully third-party reference.
    """
    if not is_fundamental_discriminant(d):
        raise NotFundamental(f"{d} is not 1 or a fundamental discriminant")
    if d < 0:
        raise ValueError("the even-character functional equation needs d > 0")
    f = abs(d)
    with mp.workdps(cfg.wdps):
        if backend == "em":
            at2 = dirichlet_L_deriv(2, d, cfg)
            l2, dl2, err2 = at2.value, at2.deriv, at2.err_estimate
        elif backend == "mpmath":
            l2 = mpf(0)
            dl2 = mpf(0)
            finv2 = mpf(1) / (mpf(f) * f)
            logf = mp.log(f)
            for a in range(1, f + 1):
                chi = kronecker_chi(d, a)
                if chi == 0:
                    continue
                z = mp.zeta(2, mpf(a) / f)
                zd = mp.zeta(2, mpf(a) / f, 1)
                l2 += chi * finv2 * z
                dl2 += chi * finv2 * (zd - logf * z)
            err2 = mpf(10) ** (-(cfg.wdps - 5))
        else:
            raise ValueError(f"unknown backend {backend!r}")
        # L(-1) = (f/pi)^{3/2} Gamma(1)/Gamma(-1/2) L(2),  Gamma(-1/2) = -2 sqrt(pi)
        ratio = mp.power(mpf(f) / mp.pi, mpf(3) / 2) / (-2 * mp.sqrt(mp.pi))
        value = ratio * l2
        # log-derivative transport:
        # L'/L(-1) = -log(f/pi) - psi(1)/2 - psi(-1/2)/2 - L'/L(2)
        logderiv = (-mp.log(mpf(f) / mp.pi)
                    - mp.digamma(1) / 2 - mp.digamma(mpf(-1) / 2) / 2
                    - dl2 / l2)
        deriv = logderiv * value
        err = abs(ratio) * err2 * 3
        return LDerivResult(value=value, deriv=deriv, logderiv=logderiv,
                            err_estimate=err)


# ---------------------------------------------------------------------------
# zeta'/zeta at -1 and -3
# ---------------------------------------------------------------------------

_ZETA_LOGDERIV_CACHE: dict[tuple[int, int], mpf] = {}


def zeta_logderiv(point: int, cfg: PrecisionConfig = DEFAULT_CONFIG) -> mpf:
    """zeta'(point)/zeta(point) for point in {-1, -3}, dual-path validated.

    The Euler-Maclaurin value must agree with the functional-equation
    transport from 1 - point (computed with mpmath's zeta) to within
    10^-(digits-10); disagreement raises DualPathDisagreement.
    """
    if point not in (-1, -3):
        raise ValueError("point must be -1 or -3")
    key = (point, cfg.digits)
    cached = _ZETA_LOGDERIV_CACHE.get(key)
    if cached is not None:
        return cached
    with mp.workdps(cfg.wdps):
        hz = hurwitz_zeta_deriv(point, 1, cfg)
        em_value = hz.deriv / hz.value
        fe_value = zeta_logderiv_fe_oracle(point, cfg)
        if abs(em_value - fe_value) > mpf(10) ** (-(cfg.digits - 10)):
            raise DualPathDisagreement(
                f"zeta'/zeta({point}): EM {em_value} vs FE {fe_value}")
    _ZETA_LOGDERIV_CACHE[key] = em_value
    return em_value


def zeta_logderiv_fe_oracle(point: int, cfg: PrecisionConfig = DEFAULT_CONFIG) -> mpf:
    """Functional-equation route: zeta'/zeta(s) = log(2 pi) - psi(1-s) - zeta'/zeta(1-s)
    at s = -1, -3 (the cot(pi s/2) term vanishes at odd negative integers).

    The s = 1 - point side uses mpmath's zeta value and derivative.
    """
    if point not in (-1, -3):
        raise ValueError("point must be -1 or -3")
    with mp.workdps(cfg.wdps):
        sprime = 1 - point
        return (mp.log(2 * mp.pi) - mp.digamma(sprime)
                - mp.zeta(sprime, 1, 1) / mp.zeta(sprime))


# ---------------------------------------------------------------------------
# archimedean constants, numeric and symbolic
# ---------------------------------------------------------------------------

_BASIS = ("one", "log2", "logpi", "gamma")


@dataclass(frozen=True)
class LogCombination:
    """Exact rational combination q0 + q1 log2 + q2 log(pi) + q3 gamma."""
    coeffs: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: Fraction(v) for k, v in self.coeffs.items()
                 if k in _BASIS and Fraction(v) != 0}
        unknown = set(self.coeffs) - set(_BASIS)
        if unknown:
            raise ValueError(f"unknown symbols {unknown}")
        object.__setattr__(self, "coeffs", clean)

    def __add__(self, other: "LogCombination") -> "LogCombination":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LogCombination(out)

    def __sub__(self, other: "LogCombination") -> "LogCombination":
        return self + other.scale(-1)

    def scale(self, q: Rational) -> "LogCombination":
        q = Fraction(q)
        return LogCombination({k: v * q for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogCombination):
            return NotImplemented
        return self.coeffs == other.coeffs

    def evaluate(self, cfg: PrecisionConfig = DEFAULT_CONFIG) -> mpf:
        with mp.workdps(cfg.wdps):
            vals = {"one": mpf(1), "log2": mp.log(2),
                    "logpi": mp.log(mp.pi), "gamma": +mp.euler}
            acc = mpf(0)
            for k, v in self.coeffs.items():
                acc += mpf(v.numerator) / v.denominator * vals[k]
            return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*{k}" for k, v in self.coeffs.items())


# C with 2C = log(4 pi) + gamma;  C0 = log(2 pi) - gamma
C_SYMBOLIC = LogCombination({"log2": Fraction(1), "logpi": Fraction(1, 2),
                             "gamma": Fraction(1, 2)})
C0_SYMBOLIC = LogCombination({"log2": Fraction(1), "logpi": Fraction(1),
                              "gamma": Fraction(-1)})


@dataclass(frozen=True)
class Constants:
    gamma: mpf
    C: mpf
    C0: mpf
    zeta3: mpf
    zeta4: mpf
    pi: mpf


def constants(cfg: PrecisionConfig = DEFAULT_CONFIG) -> Constants:
    """gamma, C = (log 4pi + gamma)/2, C0 = log 2pi - gamma, zeta(3), zeta(4), pi."""
    with mp.workdps(cfg.wdps):
        gamma = +mp.euler
        pi = +mp.pi
        return Constants(
            gamma=gamma,
            C=(mp.log(4 * pi) + gamma) / 2,
            C0=mp.log(2 * pi) - gamma,
            zeta3=mp.zeta(3),
            zeta4=pi ** 4 / 90,
            pi=pi,
        )
