from .engines import (
    BoundaryContribution,
    IrregularElement,
    NoncompactCentralizer,
    TestFn,
    eval_spherical_conv,
    kappa_orbital,
    orb_gl_eta,
    orb_unitary,
    r_shriek,
    relative_orbital,
    relative_orbital_direct,
)
from .verify import (
    verify_elementary_lemma,
    verify_hecke_fl,
    verify_jr_fl,
    verify_orbital_reduction,
    verify_relative_fl,
    verify_split_transfer,
)

__all__ = [
    "BoundaryContribution", "IrregularElement", "NoncompactCentralizer", "TestFn",
    "eval_spherical_conv", "kappa_orbital", "orb_gl_eta", "orb_unitary", "r_shriek",
    "relative_orbital", "relative_orbital_direct", "verify_elementary_lemma",
    "verify_hecke_fl", "verify_jr_fl", "verify_orbital_reduction", "verify_relative_fl",
    "verify_split_transfer",
]
