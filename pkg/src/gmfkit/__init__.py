"""gmfkit: generalized-Morse jet/family classification and mod-2 series checks."""

from .graded_f2 import (
    DEFAULT_TRUNCATION,
    GradedMap,
    MonomialBasis,
    PoincareSeries,
    rank_f2,
    rref_f2,
    series_add,
    series_BO,
    series_BSO,
    series_equal,
    series_from_coeffs,
    series_grassmannian,
    series_mul,
    series_shift,
)
from .jet_core import (
    BIRTH_DEATH,
    DEGENERATE,
    GmfClass,
    Jet3,
    NONDEGENERATE,
    REGULAR,
    SpectralSplit,
    birth_death_linear_normal_form,
    classify,
    compose_linear,
    evaluate,
    jet_from_json_dict,
    jet_from_parts,
    jet_to_json_dict,
    spectral_split,
)
from .family_analysis import (
    BirthDeathEvent,
    DegenerateFlag,
    FamilyAxiomReport,
    PolyFamily,
    Tolerances,
    TraceResult,
    check_family_axioms,
    family_from_json_dict,
    family_to_json_dict,
    fiber_critical_points,
    fiber_jet3,
    preset_family,
    trace_birth_death,
)
from .char_class_maps import ProductSWRing, RingMap, build_Y, build_Y1, map_f, map_g
from .moduli_calc import (
    CheckReport,
    HocolimResult,
    MtgmfResult,
    SpectrumSeries,
    ZigzagDiagram,
    build_zigzag,
    cofiber_series,
    connectivity_and_pi0_checks,
    d1_oracle_check,
    gysin_check,
    hocolim_cofiber_check,
    hocolim_series,
    mt_series,
    mtgmf_series,
    sigma_gmf_series,
    sigma_mf_cofibration_check,
    sigma_mf_series,
    wedge_target_series,
)

__version__ = "0.1.0"
