//! Local branches, vanishing sequences of restricted monomial systems,
//! inflection data and recognition of the special loci.

pub mod branch;
pub mod classical;
pub mod report;
pub mod sequence;
pub mod special;

pub use branch::{branch_of_form, local_branch, Branch};
pub use classical::{hessian_determinant, hessian_matrix};
pub use report::{inflection_report, InflectionReport};
pub use sequence::{
    inflection_weight, intersection_multiplicity, vanishing_sequence, vanishing_sequence_of_form, Order,
    VanishingSequence, Weight,
};
pub use special::{special_locus_membership, Membership, SpecialDetails, SpecialLoci};
