"""equiloc: exact fixed loci, concentration sections and Euler-class localization."""

from _equiloc import (
    InputError,
    ResourceError,
    bott_pushforward,
    canonical_problem,
    concentration_determinant,
    concentration_section,
    euler_class,
    fixed_locus,
    fixed_points,
    groebner_basis,
    ideal_member,
    power_on_inverse,
    quotient_invariants,
    restrict_character,
    run_problem,
    smith_normal_form,
    smith_ranks,
    total_power_of_v,
)

__all__ = [
    "InputError",
    "ResourceError",
    "bott_pushforward",
    "canonical_problem",
    "concentration_determinant",
    "concentration_section",
    "euler_class",
    "fixed_locus",
    "fixed_points",
    "groebner_basis",
    "ideal_member",
    "power_on_inverse",
    "quotient_invariants",
    "restrict_character",
    "run_problem",
    "smith_normal_form",
    "smith_ranks",
    "total_power_of_v",
]
