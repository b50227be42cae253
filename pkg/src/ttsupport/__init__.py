"""Support theory at desk scale: finite spectral spaces, frames and their
assemblies, and small/big/residue-field support of complexes over concrete
commutative rings."""

from .errors import InputError, ResourceLimitError
from .poset import FinitePoset, enumerate_posets
from .spectral import SpectralSpace, generate_topology
from .frames import (
    FiniteFrame,
    FrameHom,
    Nucleus,
    assembly,
    closed_nucleus,
    frame_of,
    nucleus_join,
    open_nucleus,
    sigma,
    spc,
    universal_factorization,
    validate_nucleus,
)
from .homalg import (
    CanonicalModule,
    ChainComplex,
    IntegersLocalized,
    LnaModule,
    LocalNilpotentAlgebra,
    ModularIntegers,
    PresentedModule,
    cone,
    derived_tensor_residue,
    hom_complex_h0,
    koszul_stable,
    localize,
    localize_by_element,
    module_complex,
    ring_from_json,
    zero_complex,
)
from .smith import smith_normal_form
from .support import (
    SupportDescriptor,
    base_change_check,
    big_support,
    detect_vanishing,
    foxby_support,
    localize_support_check,
    main1_property_suite,
    orthogonality_check,
    small_support,
    spec,
    weakly_associated,
)
from .axioms import (
    SupportDatum,
    canonical_datum,
    check_complements,
    construct_eta,
    eta_is_unique,
    is_supportive,
    thomason_frame,
)
from .battery import run_battery

__version__ = "1.0.0"

__all__ = [
    "CanonicalModule",
    "ChainComplex",
    "FiniteFrame",
    "FinitePoset",
    "FrameHom",
    "InputError",
    "IntegersLocalized",
    "LnaModule",
    "LocalNilpotentAlgebra",
    "ModularIntegers",
    "Nucleus",
    "PresentedModule",
    "ResourceLimitError",
    "SpectralSpace",
    "SupportDatum",
    "SupportDescriptor",
    "assembly",
    "base_change_check",
    "big_support",
    "canonical_datum",
    "check_complements",
    "closed_nucleus",
    "cone",
    "construct_eta",
    "derived_tensor_residue",
    "detect_vanishing",
    "enumerate_posets",
    "eta_is_unique",
    "foxby_support",
    "frame_of",
    "generate_topology",
    "hom_complex_h0",
    "is_supportive",
    "koszul_stable",
    "localize",
    "localize_by_element",
    "localize_support_check",
    "main1_property_suite",
    "module_complex",
    "nucleus_join",
    "open_nucleus",
    "orthogonality_check",
    "ring_from_json",
    "run_battery",
    "sigma",
    "small_support",
    "smith_normal_form",
    "spc",
    "spec",
    "thomason_frame",
    "universal_factorization",
    "validate_nucleus",
    "weakly_associated",
    "zero_complex",
]
