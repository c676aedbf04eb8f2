"""
Maximum-confidence intervals and the degree of confirmation.

For a fixed width d the best interval is the window [a, a + d] with the
largest posterior mass. The posterior is unimodal, so that window covers
the mode and the mass is unimodal in a; a golden-section search over
a in [max(0, mode - d), min(mode, 1 - d)] finds it.

The degree of confirmation is C = max_d (1 - d) * c*(d), located by a
coarse grid over d followed by golden-section refinement of the best cell.
"""
import math
from typing import Callable, Iterable

import numpy as np
import pandas as pd

from induction_confidence.inference.models import ConfirmationReport, Evidence, ProbInterval
from induction_confidence.inference.posterior_core import mle_estimate, posterior_mass
from induction_confidence.inference.succession import rule_of_succession
from induction_confidence.utils.errors import DomainError
from induction_confidence.utils.logging_config import logger

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
WINDOW_TOLERANCE = 1e-9
WIDTH_TOLERANCE = 1e-9
WIDTH_GRID_POINTS = 1024
TIE_TOLERANCE = 1e-15


def golden_section_maximize(f: Callable[[float], float], lo: float, hi: float,
                            tol: float = WINDOW_TOLERANCE) -> tuple[float, float]:
    """
    Maximize a unimodal function on [lo, hi] by golden-section search.

    Returns:
        (x, f(x)) for the best point evaluated, the smaller x on ties.
    """
    if hi - lo <= tol:
        x = lo
        return x, f(x)

    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _best_candidate(candidates: Iterable[tuple[float, float]]) -> tuple[float, float]:
    """Largest value wins; values within TIE_TOLERANCE go to the smaller argument."""
    ordered = sorted(candidates, key=lambda item: item[0])
    best_x, best_value = ordered[0]
    for x, value in ordered[1:]:
        if value > best_value + TIE_TOLERANCE:
            best_x, best_value = x, value
    return best_x, best_value


def _window_search(evidence: Evidence, width: float) -> tuple[float, float]:
    """Left endpoint and mass of the best width-d window."""
    if width >= 1.0:
        return 0.0, 1.0
    if evidence.trials == 0:
        # flat posterior: every window ties
        return 0.0, width

    mode = mle_estimate(evidence)
    lo = max(0.0, mode - width)
    hi = min(mode, 1.0 - width)
    if hi < lo:
        hi = lo

    def mass(a: float) -> float:
        return posterior_mass(evidence, a, min(1.0, a + width))

    a_star, m_star = golden_section_maximize(mass, lo, hi)
    return _best_candidate([(lo, mass(lo)), (a_star, m_star), (hi, mass(hi))])


def max_confidence_interval(evidence: Evidence, width: float) -> tuple[ProbInterval, float]:
    """
    Interval of the given width carrying the most posterior mass.

    Args:
        evidence: observed trials and occurrences
        width: interval width d in [0, 1]

    Returns:
        (interval, confidence); for trials >= 1 the interval contains N_A / N
    """
    width = float(width)
    if not 0.0 <= width <= 1.0:
        raise DomainError(f"width must lie in [0, 1], got {width}")
    if width == 1.0:
        return ProbInterval.unit(), 1.0

    a, mass = _window_search(evidence, width)
    interval = ProbInterval(lo=a, hi=min(1.0, a + width))
    return interval, min(1.0, mass)


def _objective(evidence: Evidence, width: float) -> float:
    _, mass = _window_search(evidence, width)
    return (1.0 - width) * mass


def degree_of_confirmation(evidence: Evidence) -> ConfirmationReport:
    """C = max over d of (1 - d) * c*(d), with the maximizing width and interval."""
    logger.debug(f"degree of confirmation search N={evidence.trials} N_A={evidence.occurrences}")
    grid = np.linspace(0.0, 1.0, WIDTH_GRID_POINTS)
    values = np.array([_objective(evidence, float(d)) for d in grid])
    i = int(np.argmax(values))

    left = float(grid[max(0, i - 1)])
    right = float(grid[min(len(grid) - 1, i + 1)])
    d_refined, c_refined = golden_section_maximize(
        lambda d: _objective(evidence, d), left, right, tol=WIDTH_TOLERANCE
    )
    best_width, _ = _best_candidate([(float(grid[i]), float(values[i])), (d_refined, c_refined)])

    interval, confidence = max_confidence_interval(evidence, best_width)
    degree = (1.0 - best_width) * confidence
    logger.info(
        f"degree of confirmation N={evidence.trials} N_A={evidence.occurrences}: "
        f"C={degree} at d*={best_width}"
    )
    return ConfirmationReport(
        evidence=evidence,
        best_width=best_width,
        best_interval=interval,
        best_confidence=confidence,
        degree=degree,
    )


def all_success_confirmation(n: int) -> float:
    """Closed form (N+2)^(-1/(N+1)) * (N+1)/(N+2) for N straight successes."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    return (n + 2) ** (-1.0 / (n + 1)) * (n + 1) / (n + 2)


def confirmation_profile(evidence: Evidence, widths: Iterable[float]) -> pd.DataFrame:
    """c*(d) and (1 - d) * c*(d) along the given widths."""
    rows = []
    for d in widths:
        interval, confidence = max_confidence_interval(evidence, d)
        rows.append({
            "width": float(d),
            "lo": interval.lo,
            "hi": interval.hi,
            "confidence": confidence,
            "objective": (1.0 - float(d)) * confidence,
        })
    return pd.DataFrame(rows, columns=["width", "lo", "hi", "confidence", "objective"])


def compare_with_succession(evidence: Evidence) -> dict[str, float | bool]:
    """Degree of confirmation next to Laplace's rule for the same evidence."""
    degree = degree_of_confirmation(evidence).degree
    succession = rule_of_succession(evidence).probability_next
    return {
        "degree": degree,
        "succession": succession,
        "more_conservative": degree < succession,
    }
