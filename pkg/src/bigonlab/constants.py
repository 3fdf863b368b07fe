"""Exact-arithmetic derivation of the thin-bigon constant pipeline.

All quantities are exact integers / rationals except the floor in K, which
is certified with interval arithmetic (precision doubles until the interval
of log_mu(2/rho) pins down an integer floor).  The final constant C is
astronomically large at realistic parameters, so it is always reported in
log10 and materialized exactly only below a digit cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

C_DIGIT_CAP = 10_000
_PREC_CAP = 1 << 16


class ParameterError(ValueError):
    """Raised for parameters outside the pipeline's domain."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def n_sequence(theta, i: int) -> int:
    """n_0 = 6, n_{k+1} = 1 + floor((2 n_k + 1) / (1 - theta))."""
    theta = _frac(theta)
    if not 0 < theta < 1:
        raise ParameterError(f"theta must be in (0,1), got {theta}")
    if i < 0:
        raise ParameterError("index must be nonnegative")
    n = 6
    for _ in range(i):
        n = 1 + (2 * n + 1) * theta.denominator // (
            theta.denominator - theta.numerator
        )
    return n


def derive_R(epsilon, a: int, nu) -> int:
    """Smallest R with (epsilon * a) * l + a < nu * l for all l >= R."""
    epsilon, nu = _frac(epsilon), _frac(nu)
    margin = nu - epsilon * a
    if margin <= 0:
        raise ParameterError(
            f"need epsilon * a < nu (got {epsilon * a} >= {nu})"
        )
    return int(a / margin) + 1


def _iv_fraction(f: Fraction):
    return mpmath.iv.mpf(f.numerator) / mpmath.iv.mpf(f.denominator)


def certified_floor_log(base: Fraction, value: Fraction,
                        start_prec: int = 128) -> int:
    """floor(log_base(value)) with directed rounding, base > 1, value >= 1.

    Doubles working precision until the interval enclosure of the logarithm
    contains exactly one integer floor; an exact power hit (value = base^k)
    is detected by exact rational powering when feasible.
    """
    base, value = _frac(base), _frac(value)
    if base <= 1 or value < 1:
        raise ParameterError("need base > 1 and value >= 1")
    prec = start_prec
    while prec <= _PREC_CAP:
        with mpmath.workprec(prec):
            old = mpmath.iv.prec
            mpmath.iv.prec = prec
            try:
                ratio = mpmath.iv.log(_iv_fraction(value)) / \
                    mpmath.iv.log(_iv_fraction(base))
                lo = mpmath.floor(ratio.a)
                hi = mpmath.floor(ratio.b)
            finally:
                mpmath.iv.prec = old
        if lo == hi:
            return int(lo)
        # straddling an integer: maybe value is exactly base**k
        k = int(hi)
        digits = k * len(str(base.numerator))
        if digits <= 10 * C_DIGIT_CAP:
            return k if base ** k <= value else k - 1
        prec *= 2
    raise ParameterError(
        "could not certify the floor of the logarithm within precision cap"
    )


@dataclass(frozen=True)
class ConstantBundle:
    Y: int
    theta: Fraction
    Z: int
    lam: Fraction
    nu: Fraction
    epsilon: Fraction
    a_minus: int
    a_plus: int
    a: int
    D: int
    rho: Fraction
    R: int
    N: int
    mu: Fraction
    K: int
    C_exact: Fraction | None   # only when materializable under the digit cap
    C_log10: str               # 12 significant digits
    C_branch: str              # "R" or "main"

    def n_seq(self, i: int) -> int:
        return n_sequence(self.theta, i)

    def _main_branch_log10(self) -> mpmath.mpf:
        with mpmath.workprec(96):
            t = (1 + mpmath.mpf(self.theta.numerator) / self.theta.denominator) / \
                (1 - mpmath.mpf(self.theta.numerator) / self.theta.denominator)
            return (mpmath.log10(self.D) + (self.K + 1) * mpmath.log10(self.N)
                    + mpmath.log10(t))

    def gap_leq_C(self, gap: int) -> bool:
        """Whether gap <= C; uses a certified lower bound when C is huge."""
        if gap <= self.R:
            return True
        if self.C_exact is not None:
            return gap <= self.C_exact
        # C >= 10^(C_log10 - 1) with slack far beyond rounding error
        return mpmath.mpf(gap) < mpmath.power(10, self._main_branch_log10() - 1)

    def to_json_dict(self) -> dict:
        def rat(f: Fraction) -> str:
            return f"{f.numerator}/{f.denominator}"

        return {
            "Y": str(self.Y), "theta": rat(self.theta), "Z": str(self.Z),
            "lambda": rat(self.lam), "nu": rat(self.nu),
            "epsilon": rat(self.epsilon),
            "a_minus": str(self.a_minus), "a_plus": str(self.a_plus),
            "a": str(self.a), "D": str(self.D), "rho": rat(self.rho),
            "R": str(self.R), "N": str(self.N), "mu": rat(self.mu),
            "K": str(self.K),
            "C": ("overflow" if self.C_exact is None
                  else rat(self.C_exact)),
            "C_log10": self.C_log10,
            "C_branch": self.C_branch,
        }


def pipeline(Y: int, theta, Z: int, lam, nu=None) -> ConstantBundle:
    theta, lam = _frac(theta), _frac(lam)
    if Y < 0 or Z < 0:
        raise ParameterError("Y and Z must be nonnegative integers")
    if not 0 < theta < 1:
        raise ParameterError(f"theta must be in (0,1), got {theta}")
    if not 0 < lam < 1:
        raise ParameterError(f"lambda must be in (0,1), got {lam}")
    nu = (1 + lam) / 2 if nu is None else _frac(nu)
    if not lam < nu < 1:
        raise ParameterError(f"nu must be in (lambda, 1), got {nu}")
    a_minus = a_plus = 2 * Y + 1
    a = a_minus + a_plus
    epsilon = lam / a
    D = (2 * Y + 1) * (2 * Z + 1)
    rho = (1 - nu) / (D + 1)
    R = derive_R(epsilon, a, nu)
    N = n_sequence(theta, D + 1)
    mu = Fraction(N, N - 1)
    K = 1 + certified_floor_log(mu, 2 / rho)

    # C = max{R, D * N^(K+1) * (1+theta)/(1-theta)}
    t = (1 + theta) / (1 - theta)
    with mpmath.workprec(96):
        main_log10 = (mpmath.log10(D) + (K + 1) * mpmath.log10(N)
                      + mpmath.log10(mpmath.mpf(t.numerator)
                                     / t.denominator))
        r_log10 = mpmath.log10(R) if R > 0 else mpmath.mpf(0)
        if main_log10 >= r_log10:
            branch = "main"
            c_log10 = main_log10
        else:
            branch = "R"
            c_log10 = r_log10
    digits = int(mpmath.floor(main_log10)) + 1
    if digits <= C_DIGIT_CAP:
        main = D * Fraction(N) ** (K + 1) * t
        c_exact = max(Fraction(R), main)
        with mpmath.workprec(96):
            c_log10 = mpmath.log10(mpmath.mpf(c_exact.numerator)) - \
                mpmath.log10(mpmath.mpf(c_exact.denominator))
        branch = "main" if main >= R else "R"
    else:
        c_exact = None
    return ConstantBundle(
        Y=Y, theta=theta, Z=Z, lam=lam, nu=nu, epsilon=epsilon,
        a_minus=a_minus, a_plus=a_plus, a=a, D=D, rho=rho, R=R,
        N=N, mu=mu, K=K, C_exact=c_exact,
        C_log10=mpmath.nstr(c_log10, 12), C_branch=branch,
    )
