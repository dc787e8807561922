"""Recognizability of morphisms and the substitution shifts they generate."""
from .core import (
    DegenerateSequence,
    Morphism,
    MorphismError,
    SequenceGen,
    apply,
    compose,
    erasable_letters,
    expand,
    incidence_matrix,
    is_primitive,
    morphism_profile,
    parse_morphism,
    power,
    seed_generators,
)
from .language import (
    EmptyShift,
    HorizonError,
    build_language,
    complexity_profile,
    find_periodic_points,
    return_words,
    special_factors,
)
from .recognizability import (
    asymptotic_report,
    cutting_points,
    desubstitute,
    exceptional_points,
    interpretations,
    is_legal,
    left_special_sequences,
    mosse_check,
    one_sided_verdict,
    tower_partition,
    tower_walk,
    two_sided_verdict,
    verify_witness,
    weak_one_sided_check,
    witness_search,
)
from .spectra import eigen_check

__all__ = [name for name in dir() if not name.startswith("_")]
