"""Odd and even templates."""

from .core import (EVEN, ODD, Labeling, TemplatePartition, hole_shape, hole_shape_ok, make_twinless,
                   pretemplate_to_template, recover_hx, template_violations, validate_even_pretemplate,
                   validate_odd_pretemplate, validate_partition, validate_pretemplate)
from .even import (EvenTemplateSpec, build_even_template, derived_hypergraph, even_to_proper,
                   is_proper_even)
from .hypercycle import HyperCycle, find_hyper_cycle, has_hyper_cycle_gt2, is_hyper_cycle
from .odd import OddTemplateSpec, build_odd_template, is_proper_odd, to_proper_partition

__all__ = [
    "EVEN", "ODD", "Labeling", "TemplatePartition", "hole_shape", "hole_shape_ok", "make_twinless",
    "pretemplate_to_template", "recover_hx", "template_violations", "validate_even_pretemplate",
    "validate_odd_pretemplate", "validate_partition", "validate_pretemplate", "EvenTemplateSpec",
    "build_even_template", "derived_hypergraph", "even_to_proper", "is_proper_even", "HyperCycle",
    "find_hyper_cycle", "has_hyper_cycle_gt2", "is_hyper_cycle", "OddTemplateSpec",
    "build_odd_template", "is_proper_odd", "to_proper_partition",
]
