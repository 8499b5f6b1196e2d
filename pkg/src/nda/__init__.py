"""Projective non-Diophantine arithmetics on the naturals."""

from nda.arithmetic import ProjectiveArithmetic, format_element, parse_element
from nda.carrier import (
    DIOPHANTINE,
    NAT,
    AbstractPrearithmetic,
    Carrier,
    CarrierMap,
    DomainError,
    check_reverse_projectivity,
    induce_prearithmetic,
    residue_prearithmetic,
)
from nda.generator import (
    BelowRangeError,
    Generator,
    GeneratorSpec,
    GeneratorSpecError,
    ValidationReport,
    parse_generator_spec,
    parse_spec,
    validate,
)
from nda.laws import RelationSpec, machine_infinity_demo, run_law, search_counterexample
from nda.report import LawVerdict
from nda.sparse import SparseNat

__all__ = [
    "AbstractPrearithmetic", "BelowRangeError", "Carrier", "CarrierMap", "DIOPHANTINE",
    "DomainError", "Generator", "GeneratorSpec", "GeneratorSpecError", "LawVerdict", "NAT",
    "ProjectiveArithmetic", "RelationSpec", "SparseNat", "ValidationReport",
    "check_reverse_projectivity", "format_element", "induce_prearithmetic",
    "machine_infinity_demo", "parse_element", "parse_generator_spec", "parse_spec",
    "residue_prearithmetic", "run_law", "search_counterexample", "validate",
]
