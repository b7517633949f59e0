"""Constructive colorings by reducible configurations."""

from .configs import (KINDS, Configuration, Reduction, find_configuration, find_configurations,
                      reduce_configuration)
from .small import NO_COLORING, NoColoring, color_53, detect_bad_blocks, small_case_table
from .theorem5 import Attempt, Trace, color_theorem5, extend_by_template, extend_pendant, template_attempts

__all__ = [
    "KINDS", "Configuration", "Reduction", "find_configuration", "find_configurations", "reduce_configuration",
    "NO_COLORING", "NoColoring", "color_53", "detect_bad_blocks", "small_case_table",
    "Attempt", "Trace", "template_attempts", "color_theorem5", "extend_by_template", "extend_pendant",
]
