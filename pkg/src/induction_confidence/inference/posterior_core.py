"""
Uniform-prior posterior for Bernoulli evidence.

With p uniform on [0, 1] and N_A successes in N trials, the posterior of p
is Beta(N_A + 1, N - N_A + 1). The confidence on an interval D is the
posterior mass of D.
"""
import math
from typing import Iterable, Literal

import numpy as np
import pandas as pd

from induction_confidence.inference.models import ConfidenceReport, Evidence, ProbInterval
from induction_confidence.inference.special import (
    SMALL_INTEGER_SHAPE,
    log_beta,
    log_beta_prefactor,
    regularized_incomplete_beta,
)
from induction_confidence.utils.errors import DomainError, NoObservationsError, require_probability
from induction_confidence.utils.logging_config import logger

UrnModel = Literal["fixed", "per_draw"]


def mle_estimate(evidence: Evidence) -> float:
    """Maximum-likelihood estimate N_A / N."""
    if evidence.trials == 0:
        raise NoObservationsError("no observations: the maximum-likelihood estimate needs trials >= 1")
    return evidence.occurrences / evidence.trials


def _log_kernel(evidence: Evidence, x: float) -> float:
    """log of x^N_A (1-x)^(N-N_A), with 0 * log(0) taken as 0."""
    k, f = evidence.occurrences, evidence.failures
    if (x == 0.0 and k > 0) or (x == 1.0 and f > 0):
        return -math.inf
    left = k * math.log(x) if k > 0 else 0.0
    right = f * math.log1p(-x) if f > 0 else 0.0
    return left + right


def binomial_likelihood(evidence: Evidence, p: float) -> float:
    """P(e | p) = C(N, N_A) p^N_A (1-p)^(N-N_A)."""
    p = require_probability(p, "p")
    log_kernel = _log_kernel(evidence, p)
    if log_kernel == -math.inf:
        return 0.0
    n, k = evidence.trials, evidence.occurrences
    log_choose = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    return math.exp(log_choose + log_kernel)


def posterior_log_density(evidence: Evidence, x: float) -> float:
    """Log of the normalized posterior density at x; -inf where the kernel vanishes."""
    x = require_probability(x, "x")
    log_kernel = _log_kernel(evidence, x)
    if log_kernel == -math.inf:
        return -math.inf
    a, b = evidence.shape
    if 0.0 < x < 1.0 and min(a, b) > SMALL_INTEGER_SHAPE:
        return log_beta_prefactor(a, b, x) - math.log(x) - math.log1p(-x)
    return log_kernel - log_beta(a, b)


def posterior_cdf(evidence: Evidence, x: float) -> float:
    """P(p <= x | e), i.e. I_x(N_A + 1, N - N_A + 1)."""
    x = require_probability(x, "x")
    a, b = evidence.shape
    return regularized_incomplete_beta(a, b, x)


def posterior_mass(evidence: Evidence, lo: float, hi: float) -> float:
    """Posterior mass of [lo, hi] without building report objects."""
    if evidence.trials == 0:
        return hi - lo
    return max(0.0, posterior_cdf(evidence, hi) - posterior_cdf(evidence, lo))


def confidence_on_interval(evidence: Evidence, interval: ProbInterval) -> ConfidenceReport:
    """Confidence that the true probability lies in `interval` given `evidence`."""
    confidence = posterior_mass(evidence, interval.lo, interval.hi)
    logger.debug(
        f"confidence N={evidence.trials} N_A={evidence.occurrences} "
        f"[{interval.lo}, {interval.hi}] -> {confidence}"
    )
    return ConfidenceReport(evidence=evidence, interval=interval, confidence=min(1.0, confidence))


def all_success_confidence(n: int, lo: float) -> float:
    """Closed form 1 - lo^(n+1) for n successes in n trials on [lo, 1]."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    lo = require_probability(lo, "lo")
    return 1.0 - lo ** (n + 1)


def confidence_curve(lo: float, n_values: Iterable[int]) -> pd.DataFrame:
    """Confidence on [lo, 1] for all-success evidence at each n."""
    interval = ProbInterval(lo=lo, hi=1.0)
    n_array = np.asarray(list(n_values), dtype=np.int64)
    confidences = [
        confidence_on_interval(Evidence.all_success(int(n)), interval).confidence for n in n_array
    ]
    return pd.DataFrame({"n": n_array, "confidence": np.asarray(confidences, dtype=np.float64)})


def trials_for_confidence(lo: float, target: float) -> int:
    """Smallest n such that n straight successes give confidence >= target on [lo, 1]."""
    lo = float(lo)
    target = float(target)
    if not 0.0 <= lo < 1.0:
        raise DomainError(f"lo must lie in [0, 1), got {lo}")
    if not 0.0 < target < 1.0:
        raise DomainError(f"target must lie in (0, 1), got {target}")
    if lo == 0.0:
        return 0
    n = max(0, math.ceil(math.log1p(-target) / math.log(lo)) - 1)
    # guard the boundary against rounding in the logarithms
    while n > 0 and all_success_confidence(n - 1, lo) >= target:
        n -= 1
    while all_success_confidence(n, lo) < target:
        n += 1
    return n


def evidence_probability(evidence: Evidence, urn: UrnModel = "fixed") -> float:
    """
    Probability of observing exactly this evidence in Laplace's urn experiment.

    `fixed` draws p once and runs N trials with it, giving 1 / (N + 1) for every N_A.
    `per_draw` draws a fresh p for every ball, so each draw succeeds with
    probability 1/2 and the evidence has probability C(N, N_A) / 2^N.
    """
    n, k = evidence.trials, evidence.occurrences
    if urn == "fixed":
        return 1.0 / (n + 1)
    if urn == "per_draw":
        log_choose = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        return math.exp(log_choose - n * math.log(2.0))
    raise DomainError(f"unknown urn model {urn!r}; expected 'fixed' or 'per_draw'")
