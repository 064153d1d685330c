"""Exact arithmetic for order-p^2 torsion in the Nottingham group.

The package models continuous characters of the principal unit group of
F_p[[t]] with values in Z/p^2 Z, the conjugation-style action of the
Nottingham group on them, the constructive reduction of a character to
its canonical reduced form, and exhaustive brute-force oracles for the
strict and weak equivalence relations that classify such characters.
"""

from .series import (
    ExponentVector,
    NottinghamElement,
    ParseError,
    Prime,
    UnitSeries,
    as_prime,
    format_nottingham_product,
    format_unit,
    nott_compose,
    nott_inverse,
    parse_nottingham,
    parse_unit,
    unit_decompose,
    unit_mul,
    unit_pow,
    unit_recompose,
    unit_subst,
)

from .characters import (
    Character,
    CharType,
    ReducedForm,
    StandardExpansion,
    break_sequence,
    char_act,
    char_eval,
    character_count,
    character_from_json,
    character_to_json,
    enumerate_characters,
    enumerate_reduced_forms,
    format_character,
    format_character_literal,
    is_reduced,
    parse_character,
    parse_character_literal,
    require_valid_type,
    scalar_mul,
    standard_expansion,
    validate_type,
    window_indices,
)

from .reduction import (
    Witness,
    WitnessCheck,
    clear_low_p_part,
    reduce,
    reduce_mod_p,
    verify_witness,
)

from .equivalence import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    ClassReport,
    bound_exponents,
    count_classes,
    order_p_class_count,
    partition_reduced_forms,
    power_conjugacy_criterion,
    power_conjugacy_oracle,
    reduced_form_bound,
    strict_equiv_search,
    type_1m_class_count,
    type_2m_weak_class_count,
    weak_class_count,
    weak_equiv_search,
)

from .acceptance import (
    CriterionResult,
    run_all,
    run_criterion,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CharType",
    "Character",
    "ClassReport",
    "CriterionResult",
    "DEFAULT_BUDGET",
    "ExponentVector",
    "NottinghamElement",
    "ParseError",
    "Prime",
    "ReducedForm",
    "StandardExpansion",
    "UnitSeries",
    "Witness",
    "WitnessCheck",
    "as_prime",
    "bound_exponents",
    "break_sequence",
    "char_act",
    "char_eval",
    "character_count",
    "character_from_json",
    "character_to_json",
    "clear_low_p_part",
    "count_classes",
    "enumerate_characters",
    "enumerate_reduced_forms",
    "format_character",
    "format_character_literal",
    "format_nottingham_product",
    "format_unit",
    "is_reduced",
    "nott_compose",
    "nott_inverse",
    "order_p_class_count",
    "parse_character",
    "parse_character_literal",
    "parse_nottingham",
    "parse_unit",
    "partition_reduced_forms",
    "power_conjugacy_criterion",
    "power_conjugacy_oracle",
    "reduce",
    "reduce_mod_p",
    "reduced_form_bound",
    "require_valid_type",
    "scalar_mul",
    "standard_expansion",
    "strict_equiv_search",
    "type_1m_class_count",
    "type_2m_weak_class_count",
    "unit_decompose",
    "unit_mul",
    "unit_pow",
    "unit_recompose",
    "unit_subst",
    "validate_type",
    "verify_witness",
    "weak_class_count",
    "weak_equiv_search",
    "window_indices",
    "__version__",
]
