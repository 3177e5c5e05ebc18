//! The numerical criterion: μ for diagonal subgroups, exact torus
//! (semi)stability, destabilizer search, monomial claims and verdicts.

pub mod claim;
pub mod mu;
pub mod search;
pub mod stabilizer;
pub mod torus;
pub mod verdict;

pub use claim::{interval_mu_claim, Claim, ClaimOutcome, Counterexample, ExponentSet, SlopeSpec, Strictness};
pub use mu::{mu_min, MuValue, OneParamSubgroup};
pub use stabilizer::{stabilizer_dimension, Stabilizer};
pub use torus::{torus_verdict, TorusVerdict};
pub use search::{destabilizer_search, zero_certificate_search, Certificate, SearchOptions, SearchOutcome};
pub use verdict::{stability_verdict, stability_verdict_with, SlopePosition, StabilityVerdict, Status};
