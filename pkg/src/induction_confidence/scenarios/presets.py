"""
Worked examples: white swans, Russell's turkey and the sunrise.

Each point preset reports the confidence computed from the posterior, the
closed form 1 - lo^(N+1), and the figure as quoted in prose, which uses
the exponent N rather than N + 1 for the turkey and the sunrise.
"""
from typing import Any

import numpy as np
import pandas as pd

from induction_confidence.inference.models import Evidence, ProbInterval
from induction_confidence.inference.posterior_core import (
    all_success_confidence,
    confidence_curve,
    confidence_on_interval,
)
from induction_confidence.utils.logging_config import logger

SWANS_LO = 0.9
SWANS_N_MAX = 100

# sunrises over a million years
SUNRISE_HISTORY_DAYS = 365 * 1_000_000


def swans_curve(n_max: int = SWANS_N_MAX) -> pd.DataFrame:
    """Confidence on [0.9, 1] after N white swans, N = 1..n_max."""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    logger.debug(f"building swans curve up to N={n_max}")
    return confidence_curve(SWANS_LO, np.arange(1, n_max + 1))


def _all_success_report(name: str, n: int, lo: float, quoted_exponent: int) -> dict[str, Any]:
    report = confidence_on_interval(Evidence.all_success(n), ProbInterval(lo=lo, hi=1.0))
    return {
        "scenario": name,
        "trials": n,
        "occurrences": n,
        "lo": lo,
        "hi": 1.0,
        "confidence": report.confidence,
        "closed_form": all_success_confidence(n, lo),
        "quoted": 1.0 - lo ** quoted_exponent,
    }


def turkey() -> dict[str, Any]:
    """61 mornings of feeding; confidence that the feeding probability exceeds 0.99."""
    return _all_success_report("turkey", 61, 0.99, quoted_exponent=61)


def sunrise() -> dict[str, Any]:
    """10000 sunrises; confidence that the sunrise probability exceeds 0.999."""
    return _all_success_report("sunrise", 10_000, 0.999, quoted_exponent=10_000)


def sunrise_history() -> dict[str, Any]:
    """A million years of recorded sunrises on the much narrower interval [0.999999, 1]."""
    return _all_success_report(
        "sunrise-history", SUNRISE_HISTORY_DAYS, 0.999999, quoted_exponent=SUNRISE_HISTORY_DAYS
    )
