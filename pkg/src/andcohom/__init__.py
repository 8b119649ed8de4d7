"""Exact AND-complexity bounds: set-cover LP, free categories on DAGs and
cohomological complexity of presheaves, with machine-checked inequalities."""
from .boolfun import BoolFun, GroundSet, conj, conj_all, leq, neg
from .cohomology import (
    CohomModel,
    ExtProfile,
    VerificationError,
    and_measure_from_model,
    cc,
    check_lemma,
    check_theorem1,
    ext_profile,
    lp_recovery,
)
from .freecat import ClosedSet, CubeCat, Dag, OpenSet, Path, hom_count, hom_z_count
from .linalg import RATIONAL, Field
from .measures import Measure, check_and_measure, depth_lower_bound, size_lower_bound
from .setcover import (
    INFINITE,
    AndInstance,
    build_program,
    demanders,
    exact_size,
    exactness_certificate,
    literal_size,
    lp_bound,
)
from .sheaves import NatTrans, Presheaf, kp_star, skyscraper, superskyscraper
from .virtualzero import check_vze, construct_vze

__version__ = "0.1.0"

__all__ = [
    "AndInstance", "BoolFun", "ClosedSet", "CohomModel", "CubeCat", "Dag", "ExtProfile",
    "Field", "GroundSet", "INFINITE", "Measure", "NatTrans", "OpenSet", "Path", "Presheaf",
    "RATIONAL", "VerificationError", "and_measure_from_model", "build_program", "cc",
    "check_and_measure", "check_lemma", "check_theorem1", "check_vze", "conj", "conj_all",
    "construct_vze", "demanders", "depth_lower_bound", "exact_size", "exactness_certificate",
    "ext_profile", "hom_count", "hom_z_count", "kp_star", "leq", "literal_size", "lp_bound",
    "lp_recovery", "neg", "size_lower_bound", "skyscraper", "superskyscraper",
]
