from typing import Callable, Dict, Tuple

from induction_confidence.scenarios.presets import sunrise, sunrise_history, swans_curve, turkey
from induction_confidence.utils.logging_config import logger


def get_scenarios() -> Dict[str, Tuple[str, Callable]]:
    """Get available scenarios with their display names and builders"""
    logger.debug("Getting available scenarios")
    scenarios = {
        'swans': ('White swans: confidence on [0.9, 1] vs N', swans_curve),
        'turkey': ("Russell's turkey: 61 feedings, [0.99, 1]", turkey),
        'sunrise': ('Sunrise: 10000 days, [0.999, 1]', sunrise),
        'sunrise-history': ('Sunrise: a million years, [0.999999, 1]', sunrise_history),
        # Add new scenarios here
    }
    logger.debug(f"Found {len(scenarios)} scenarios")
    return scenarios
