"""
Regularized incomplete beta function.

The continued fraction is evaluated with the modified Lentz scheme
(Numerical Recipes ``betacf``) and switched to the complementary
argument outside its fast-convergence region. The prefactor
x^a (1-x)^b / B(a, b) is built from Stirling remainders and the binomial
deviance (Loader's saddle-point form), so no two large logarithms are
subtracted and the posterior CDF stays accurate at a million trials.
"""
import math

from induction_confidence.utils.errors import ConvergenceError, DomainError

EPS = 1.0e-15
FPMIN = 1.0e-300
MAX_ITERATIONS = 100_000

LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Below this size the smaller shape parameter is expanded as an exact product.
SMALL_INTEGER_SHAPE = 64
# From here on the Stirling remainder is taken from its asymptotic series.
STIRLING_SERIES_FROM = 15.0

# Stirling series coefficients 1/12, 1/360, 1/1260, 1/1680, 1/1188
S0 = 1.0 / 12.0
S1 = 1.0 / 360.0
S2 = 1.0 / 1260.0
S3 = 1.0 / 1680.0
S4 = 1.0 / 1188.0


def stirling_remainder(n: float) -> float:
    """
    log Γ(n + 1) - [(n + 1/2) log n - n + log sqrt(2π)], the error of Stirling's formula.

    Also equals log Γ(n) - [(n - 1/2) log n - n + log sqrt(2π)].
    """
    if n <= 0.0:
        return 0.0
    if n <= STIRLING_SERIES_FROM:
        return math.lgamma(n + 1.0) - (n + 0.5) * math.log(n) + n - LN_SQRT_2PI
    nn = n * n
    if n > 500.0:
        return (S0 - S1 / nn) / n
    if n > 80.0:
        return (S0 - (S1 - S2 / nn) / nn) / n
    if n > 35.0:
        return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n


def binomial_deviance(x: float, mean: float) -> float:
    """
    x log(x / mean) + mean - x, evaluated without cancellation when x is near mean.
    """
    if abs(x - mean) < 0.1 * (x + mean):
        v = (x - mean) / (x + mean)
        s = (x - mean) * v
        ej = 2.0 * x * v
        v2 = v * v
        for j in range(1, 1000):
            ej *= v2
            s_next = s + ej / (2 * j + 1)
            if s_next == s:
                return s_next
            s = s_next
        return s
    return x * math.log(x / mean) + mean - x


def log_beta(a: float, b: float) -> float:
    """
    Logarithm of the complete beta function B(a, b) for a, b > 0.

    When one shape parameter is a small integer the ratio Γ(a+b)/Γ(a) is
    expanded as a finite product. Large shapes use Stirling remainders
    so the result does not come from a difference of large log-gammas.
    """
    if a <= 0 or b <= 0:
        raise DomainError(f"beta shape parameters must be positive, got a={a}, b={b}")
    small, large = (a, b) if a <= b else (b, a)
    if small == int(small) and small <= SMALL_INTEGER_SHAPE:
        k = int(small)
        return math.lgamma(small) - math.fsum(math.log(large + j) for j in range(k))
    total = small + large
    if small >= 10.0:
        correction = stirling_remainder(small) + stirling_remainder(large) - stirling_remainder(total)
        return (-0.5 * math.log(large) + LN_SQRT_2PI + correction
                + (small - 0.5) * math.log(small / total) + large * math.log1p(-small / total))
    if large >= 10.0:
        correction = stirling_remainder(large) - stirling_remainder(total)
        return (math.lgamma(small) + correction + small - small * math.log(total)
                + (large - 0.5) * math.log1p(-small / total))
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(total)


def log_beta_prefactor(a: float, b: float, x: float) -> float:
    """
    log of x^a (1-x)^b / B(a, b) for 0 < x < 1.

    Written as (ab / (a+b)) times the binomial term C(a+b, a) x^a (1-x)^b,
    which is evaluated through Stirling remainders and deviances.
    """
    n = a + b
    y = 1.0 - x
    log_term = (stirling_remainder(n) - stirling_remainder(a) - stirling_remainder(b)
                - binomial_deviance(a, n * x) - binomial_deviance(b, n * y))
    log_spread = 2.0 * LN_SQRT_2PI + math.log(a) + math.log1p(-a / n)
    return math.log(a * b / n) + log_term - 0.5 * log_spread


def beta_continued_fraction(a: float, b: float, x: float,
                            eps: float = EPS, max_iterations: int = MAX_ITERATIONS) -> float:
    """Continued fraction part of I_x(a, b), modified Lentz evaluation."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d

    for m in range(1, max_iterations + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h

    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x} "
        f"within {max_iterations} iterations"
    )


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """
    I_x(a, b) = (1 / B(a, b)) * integral_0^x t^(a-1) (1-t)^(b-1) dt.

    Args:
        a: first shape parameter, a > 0
        b: second shape parameter, b > 0
        x: upper limit, 0 <= x <= 1

    Returns:
        float: the regularized incomplete beta function, in [0, 1]
    """
    if a <= 0 or b <= 0:
        raise DomainError(f"beta shape parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0

    front = math.exp(log_beta_prefactor(a, b, x))
    if x < (a + 1.0) / (a + b + 2.0):
        value = front * beta_continued_fraction(a, b, x) / a
    else:
        value = 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    return min(1.0, max(0.0, value))
