"""
Random generation of well-typed configurations and executable checks of
the metatheory.
"""

from .enumeration import (
    Disagreement,
    TermEnumerator,
    TermGrammar,
    compare_checkers,
    core_grammar,
    small_grammar,
)
from .generator import (
    GeneratedConfiguration,
    GenerationFailure,
    GenSpec,
    TermGenerator,
    generate_configuration,
    generate_well_typed,
    random_circuit,
    unary_paths,
)
from .properties import (
    DEFAULT_FUEL,
    Counterexample,
    PropertyReport,
    PropertySuite,
    run_properties,
)

__all__ = (
    "Counterexample",
    "DEFAULT_FUEL",
    "Disagreement",
    "GenSpec",
    "GeneratedConfiguration",
    "GenerationFailure",
    "PropertyReport",
    "PropertySuite",
    "TermEnumerator",
    "TermGenerator",
    "TermGrammar",
    "compare_checkers",
    "core_grammar",
    "generate_configuration",
    "generate_well_typed",
    "random_circuit",
    "run_properties",
    "small_grammar",
    "unary_paths",
)
