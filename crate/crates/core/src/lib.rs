//! Exact combinatorial invariants of log canonical surface germs and of
//! non-normal (semi-log-canonical) surface germs glued from them.
//!
//! Everything is computed in exact rational arithmetic:
//!
//! * [`dualgraph`]: extended dual graphs, negative definiteness, the
//!   discrepancy solver, log canonical class and Cartier index;
//! * [`germs`]: cyclic quotient models, Hirzebruch–Jung strings, the
//!   taxonomy of lc germs with a coefficient-one branch, differents and the
//!   non-normal trichotomy;
//! * [`residue`]: degree calculus of Poincaré residue maps;
//! * [`stdcoeff`]: standard coefficients and the vanishing hypotheses.

pub mod dualgraph;
pub mod error;
pub mod germs;
pub mod linalg;
pub mod rat;
pub mod residue;
pub mod stdcoeff;

pub use dualgraph::{Attach, BoundaryBranch, GraphDivisor, LogCanonicalClass, ResolutionGraph, VertexId};
pub use error::{Error, Result};
pub use germs::{
    check_slc_glue, classify_lc_germ, classify_nonnormal, hj_contract, hj_expand, ClassGroup,
    CyclicQuotientGerm, GermClass, GermTag, NonNormalGerm, ShapeViolation, Trichotomy,
};
pub use rat::{ceil_scale, floor_scale, Rat};
pub use residue::{
    dihedral_image_twist, find_failure_m, glued_mcartier, glued_restriction_coeff,
    multibranch_deficit, single_branch_report, ResidueReport,
};
pub use stdcoeff::{bracket_bound_holds, is_standard, plt_modification, vanishing_hypothesis, CoeffCheck};
