"""Absolute continuity of convolutions of orbital measures in the classical
compact Lie algebras, with span-oracle and Wright-criterion cross-checks."""

__version__ = "0.1.0"

from .classifier import (  # noqa: E402
    ElementType,
    GroupTorusElement,
    Reason,
    Status,
    TorusElement,
    Verdict,
    annihilator,
    decide,
    element_type,
    group_decide,
    is_eligible,
    is_exceptional,
    min_power,
    reduce,
    s_value,
)
from .errors import CapacityError, DomainError, OrbitError  # noqa: E402
from .parsing import parse_element  # noqa: E402
from .roots import RootSubsystem, RootSystem, build_root_system  # noqa: E402
from .span_oracle import SpanReport, dimension_shortcut, eigenvalue_witness, verify_span  # noqa: E402
from .wright import WrightReport, min_intersection, wright_check  # noqa: E402

__all__ = [
    "CapacityError", "DomainError", "ElementType", "GroupTorusElement", "OrbitError", "Reason",
    "RootSubsystem", "RootSystem", "SpanReport", "Status", "TorusElement", "Verdict", "WrightReport",
    "annihilator", "build_root_system", "decide", "dimension_shortcut", "eigenvalue_witness",
    "element_type", "group_decide", "is_eligible", "is_exceptional", "min_intersection", "min_power",
    "parse_element", "reduce", "s_value", "verify_span", "wright_check",
]
