"""
Bayes' rule, Laplace's Rule of Succession and a Monte-Carlo urn oracle.

The urn experiment: draw p uniformly on [0, 1], run N Bernoulli(p) trials,
keep the run only if it reproduces the evidence, then record whether
trial N + 1 succeeds. The kept-run success frequency converges to
(N_A + 1) / (N + 2).
"""
import math

import numpy as np

from induction_confidence.inference.models import Evidence, SuccessionEstimate, UrnExperimentReport
from induction_confidence.utils.errors import (
    DomainError,
    InconsistentProbabilityError,
    InsufficientAcceptanceError,
    UndefinedConditionalError,
    require_probability,
)
from induction_confidence.utils.logging_config import logger

GENERATOR = "PCG64"
MAX_URN_TRIALS = 30
BLOCK_SIZE = 1_000_000


def bayes_posterior(likelihood: float, prior: float, marginal: float) -> float:
    """P(h | e) = P(e | h) P(h) / P(e)."""
    likelihood = require_probability(likelihood, "likelihood")
    prior = require_probability(prior, "prior")
    marginal = require_probability(marginal, "marginal")
    if marginal == 0.0:
        raise UndefinedConditionalError("P(e) = 0: the conditional probability is undefined")
    joint = likelihood * prior
    if joint > marginal * (1.0 + 1e-12):
        raise InconsistentProbabilityError(
            f"P(e|h) * P(h) = {joint} exceeds P(e) = {marginal}"
        )
    return min(1.0, joint / marginal)


def rule_of_succession(evidence: Evidence) -> SuccessionEstimate:
    """Laplace's (N_A + 1) / (N + 2)."""
    return SuccessionEstimate(
        evidence=evidence,
        probability_next=(evidence.occurrences + 1) / (evidence.trials + 2),
    )


def run_urn_experiment(evidence: Evidence, samples: int, seed: int) -> UrnExperimentReport:
    """
    Simulate Laplace's urn `samples` times and condition on the evidence by rejection.

    Args:
        evidence: the evidence to condition on (trials <= 30)
        samples: number of attempts, accepted or not
        seed: seed for numpy's PCG64 generator

    Returns:
        UrnExperimentReport with the success frequency on the next draw
    """
    if samples < 1:
        raise DomainError(f"samples must be at least 1, got {samples}")
    if evidence.trials > MAX_URN_TRIALS:
        raise DomainError(
            f"rejection conditioning supports at most {MAX_URN_TRIALS} trials, got {evidence.trials}"
        )

    logger.debug(
        f"urn experiment N={evidence.trials} N_A={evidence.occurrences} samples={samples} seed={seed}"
    )
    rng = np.random.default_rng(seed)
    accepted = 0
    successes = 0
    remaining = samples
    while remaining > 0:
        size = min(BLOCK_SIZE, remaining)
        p = rng.random(size)
        counts = rng.binomial(evidence.trials, p)
        next_draw = rng.random(size) < p
        keep = counts == evidence.occurrences
        accepted += int(np.count_nonzero(keep))
        successes += int(np.count_nonzero(next_draw & keep))
        remaining -= size

    if accepted == 0:
        raise InsufficientAcceptanceError(
            f"no run out of {samples} reproduced N={evidence.trials}, N_A={evidence.occurrences}"
        )

    estimate = successes / accepted
    standard_error = math.sqrt(estimate * (1.0 - estimate) / accepted)
    logger.info(f"urn experiment accepted {accepted}/{samples}, estimate {estimate}")
    return UrnExperimentReport(
        evidence=evidence,
        attempts=samples,
        accepted=accepted,
        estimate=estimate,
        standard_error=standard_error,
        generator=GENERATOR,
        seed=seed,
    )


def succession_monte_carlo(evidence: Evidence, samples: int, seed: int) -> float:
    """Monte-Carlo estimate of the next-success probability; see run_urn_experiment."""
    return run_urn_experiment(evidence, samples, seed).estimate
